#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rbc/battery.hpp"
#include "rbc/coverage.hpp"
#include "rbc/geometry.hpp"
#include "rbc/rng.hpp"

namespace rbc {

/// Thomas cluster process: Poisson(lambda) cluster heads over the whole region,
/// isotropic Gaussian(sigma) scatter of receivers around their head.
struct ThomasParams {
  double lambda{9.0};
  double sigma{3.0};

  void validate() const;

  friend bool operator==(const ThomasParams&, const ThomasParams&) = default;
};

struct ThomasSample {
  std::vector<Point> points;
  std::vector<Point> heads;
  std::vector<std::size_t> head_of;  // parent head index per point
};

inline constexpr int kThomasRetryCap = 1000;

/// Exactly n_total receiver positions, all inside the region. At least one head is drawn.
ThomasSample thomas_sample(const Region& region, const ThomasParams& params, std::size_t n_total, Rng& rng);

/// Initial residual energies, uniform in [0.1, 0.9] * e_total.
std::vector<double> init_soc(std::size_t n_total, const BatterySpec& spec, Rng& rng);

struct Receiver {
  Point pos;
  double energy{0.0};

  friend bool operator==(const Receiver&, const Receiver&) = default;
};

struct Scenario {
  Region region;
  ThomasParams thomas;
  std::size_t cluster_heads{0};
  std::uint64_t seed{0};
  BatteryModel battery;
  RbcParams rbc;
  std::vector<Receiver> receivers;

  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct ScenarioParams {
  Region region;
  ThomasParams thomas;
  std::size_t receivers{300};
  BatteryModel battery;
  RbcParams rbc;

  void validate() const;
};

/// Positions first, then energies, from one stream seeded with `seed`.
Scenario generate_scenario(const ScenarioParams& params, std::uint64_t seed);

inline constexpr int kScenarioFormatVersion = 1;

void write_scenario(const Scenario& s, std::ostream& out, const std::string& header_comment = {});
Scenario read_scenario(std::istream& in, const std::string& source = "<scenario>");
void save_scenario(const Scenario& s, const std::filesystem::path& path, const std::string& header_comment = {});
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace rbc
