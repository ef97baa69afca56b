#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rbc/coverage.hpp"
#include "rbc/geometry.hpp"
#include "rbc/scenario.hpp"

namespace rbc {

struct Deployment {
  std::vector<Point> positions;
  TransmitterConfig cfg;

  void validate(const Region& region) const;

  friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct Weights {
  double omega1{0.5};  // coverage fairness
  double omega2{0.5};  // low-charge service quality

  void validate() const;
};

struct CoverageReport {
  std::vector<bool> covered;
  std::size_t n_covered{0};
  double q1{0.0};
  double q2{0.0};
  double q{0.0};
  bool degenerate_q2{false};  // every receiver was full, so Q2 had no denominator
};

/// Coverage flags only; a receiver counts when some transmitter lies within
/// the covering radius (boundary inclusive).
CoverageReport covered_mask(const Deployment& dep, const Scenario& scenario);

/// Flags plus Q1, Q2 and Q = omega1 Q1 + omega2 Q2.
CoverageReport evaluate(const Deployment& dep, const Scenario& scenario, const Weights& w);

double fitness(const Deployment& dep, const Scenario& scenario, const Weights& w);

inline constexpr std::ptrdiff_t kUnassigned = -1;

/// Nearest covering transmitter per receiver, lowest index on ties, kUnassigned when uncovered.
std::vector<std::ptrdiff_t> assign_nearest(const Deployment& dep, const Scenario& scenario);

/// Candidate transmitter layout inside an optimizer population.
using Candidate = std::vector<Point>;

/// Objective evaluator bound to one immutable scenario, transmitter config and
/// weight pair. Receiver data is held as flat arrays; evaluation is const and
/// safe to call concurrently.
class FitnessKernel {
 public:
  FitnessKernel(const Scenario& scenario, const TransmitterConfig& cfg, const Weights& w);

  double operator()(std::span<const Point> transmitters) const;
  CoverageReport report(std::span<const Point> transmitters) const;

  double radius() const { return radius_; }
  std::size_t receiver_count() const { return xs_.size(); }

 private:
  double combine(std::size_t n_covered, double need_covered) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> need_;  // 1 - SOC fraction
  double need_total_{0.0};
  double radius_{0.0};
  double radius_sq_{0.0};
  Weights w_;
};

/// Reference evaluation, one candidate after another.
void evaluate_population_serial(const FitnessKernel& kernel, std::span<const Candidate> population,
                                std::span<double> out);

/// OpenMP evaluation across candidates. Bitwise identical to the serial path.
void evaluate_population(const FitnessKernel& kernel, std::span<const Candidate> population, std::span<double> out);

}  // namespace rbc
