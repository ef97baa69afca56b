#include <doctest.h>

#include <cmath>
#include <random>

#include "rbc/coverage.hpp"
#include "rbc/error.hpp"

using namespace rbc;

TEST_CASE("default optical constants") {
  const RbcParams p;
  CHECK(p.a == 1.5);
  CHECK(p.lambda == 1.064e-3);
  CHECK(p.m == 0.8);
  CHECK(p.eta_t == 0.2849);
  CHECK(p.C == -5.64);
  CHECK(p.alpha == 0.3487);
  CHECK(p.beta == -1.535);
  CHECK(p.R == 0.88);
  CHECK(p.l == 0.0);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("derived constants") {
  const auto k = DerivedConstants::from(RbcParams{});
  CHECK(k.M == doctest::Approx(-13286.811034919237).epsilon(1e-12));
  CHECK(k.K == doctest::Approx(0.01907416896).epsilon(1e-12));
  CHECK(k.Z == doctest::Approx(1.88));
  CHECK(k.U == doctest::Approx(6.58313584).epsilon(1e-12));
  CHECK(k.N == doctest::Approx(-0.12783337150988489).epsilon(1e-12));
}

TEST_CASE("invalid optical parameters are rejected") {
  RbcParams p;
  p.R = 1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.eta_t = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.l = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("diffraction loss") {
  const RbcParams p;
  CHECK(diffraction_loss(6042.3, p) == doctest::Approx(0.1109).epsilon(1e-3));
  CHECK(diffraction_loss(-DerivedConstants::from(p).M, p) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(diffraction_loss(1e12, p) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK_THROWS_AS(diffraction_loss(0.0, p), DomainError);
  CHECK_THROWS_AS(diffraction_loss(-5.0, p), DomainError);
}

TEST_CASE("attenuation") {
  RbcParams p;
  CHECK(attenuation(6042.3, p) == doctest::Approx(0.42776).epsilon(2e-4));
  CHECK(attenuation(1000.0, p) > attenuation(2000.0, p));
  p.R = 1.0 - 1e-12;
  CHECK(attenuation(6042.3, p) < 1e-10);
}

TEST_CASE("output power") {
  RbcParams p;
  const double base = output_power(200.0, 6042.3, p);
  CHECK(base == doctest::Approx(4.99741834034612).epsilon(1e-10));
  CHECK(base == doctest::Approx(5.0).epsilon(1e-3));
  CHECK(output_power(150.0, 6042.3, p) < base);

  RbcParams doubled = p;
  doubled.alpha *= 2.0;
  CHECK(output_power(200.0, 6042.3, doubled) - p.beta == doctest::Approx(2.0 * (base - p.beta)).epsilon(1e-12));

  // large distances are not clamped
  CHECK(output_power(200.0, 1e7, p) < 0.0);
}

TEST_CASE("max distance") {
  const RbcParams p;
  const double d = max_distance(200.0, 5.0, p);
  CHECK(d == doctest::Approx(6040.50387831354).epsilon(1e-10));
  CHECK(output_power(200.0, d, p) == doctest::Approx(5.0).epsilon(1e-9));

  const auto k = DerivedConstants::from(p);
  const double too_much = (k.K * 200.0 / (-k.N) - k.U) / k.Z + 1.0;
  CHECK_THROWS_AS(max_distance(200.0, too_much, p), UnreachablePowerError);
  CHECK_THROWS_AS(max_distance(200.0, 1e6, p), UnreachablePowerError);
  CHECK_THROWS_AS(max_distance(200.0, -10.0, p), UnreachablePowerError);
}

TEST_CASE("covering radius at 3 m and 5 m mounting height") {
  const RbcParams p;
  CHECK(std::abs(covering_radius({200.0, 3.0, 5.0}, p) - 5.2425) <= 0.01);
  CHECK(std::abs(covering_radius({200.0, 5.0, 5.0}, p) - 3.3888) <= 0.01);
  CHECK(covering_radius({200.0, 3.0, 5.0}, p) == doctest::Approx(5.24287012083276).epsilon(1e-10));
}

TEST_CASE("covering radius edge cases") {
  const RbcParams p;
  const double reach_m = max_distance(200.0, 5.0, p) / 1000.0;
  CHECK(covering_radius({200.0, reach_m, 5.0}, p) == 0.0);
  CHECK_THROWS_AS(covering_radius({200.0, reach_m + 0.01, 5.0}, p), HeightExceedsReachError);
  CHECK_THROWS_AS(covering_radius({200.0, 3.0, 500.0}, p), UnreachablePowerError);
  CHECK_THROWS_AS(covering_radius({0.0, 3.0, 5.0}, p), ValidationError);
  CHECK_THROWS_AS(covering_radius({200.0, -1.0, 5.0}, p), ValidationError);
}

TEST_CASE("property: forward/inverse round trip over random (p_in, d)") {
  const RbcParams p;
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> pin(20.0, 1000.0);
  std::uniform_real_distribution<double> dist(1000.0, 20000.0);  // below ~1 m the inverse loses precision
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const double pi = pin(gen);
    const double d = dist(gen);
    const double out = output_power(pi, d, p);
    double back;
    try {
      back = max_distance(pi, out, p);
    } catch (const UnreachablePowerError&) {
      continue;  // output below the closed-form's valid branch
    }
    REQUIRE(std::abs(back - d) / d < 1e-9);
    ++checked;
  }
  CHECK(checked > 5000);
}

TEST_CASE("property: diffraction loss stays inside (0, 1)") {
  const RbcParams p;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> logd(2.0, 8.0);
  for (int i = 0; i < 2000; ++i) {
    const double d = std::pow(10.0, logd(gen));
    const double v = diffraction_loss(d, p);
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
  }
}

TEST_CASE("property: covering radius monotonicity") {
  const RbcParams p;
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> pin(150.0, 400.0), h(1.0, 4.0), pmin(2.0, 6.0), bump(0.01, 0.5);
  for (int i = 0; i < 500; ++i) {
    const TransmitterConfig c{pin(gen), h(gen), pmin(gen)};
    double r;
    try {
      r = covering_radius(c, p);
    } catch (const ValidationError&) {
      continue;
    }
    const double b = bump(gen);
    TransmitterConfig more_power = c;
    more_power.p_in += 10.0 * b;
    CHECK(covering_radius(more_power, p) >= r);

    TransmitterConfig lower = c;
    lower.h = std::max(0.01, c.h - b);
    CHECK(covering_radius(lower, p) >= r);

    TransmitterConfig easier = c;
    easier.p_min = std::max(0.1, c.p_min - b);
    CHECK(covering_radius(easier, p) >= r);
  }
}
