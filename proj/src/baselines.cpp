#include <algorithm>
#include <string>
#include <tuple>

#include "rbc/error.hpp"
#include "rbc/optimizers.hpp"

namespace rbc {

std::vector<std::pair<std::size_t, std::size_t>> uniform_cell_order(std::size_t grid) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(grid * grid);
  for (std::size_t row = 0; row < grid; ++row)
    for (std::size_t col = 0; col < grid; ++col) cells.emplace_back(col, row);

  // Offsets from the grid center in half-cell units, so even grids stay integral.
  const auto g = static_cast<long>(grid);
  const auto ring = [g](const std::pair<std::size_t, std::size_t>& c) {
    const long dx = 2 * static_cast<long>(c.first) + 1 - g;
    const long dy = 2 * static_cast<long>(c.second) + 1 - g;
    return dx * dx + dy * dy;
  };
  std::stable_sort(cells.begin(), cells.end(), [&](const auto& a, const auto& b) { return ring(a) < ring(b); });
  return cells;
}

Deployment uniform_deploy(const Region& region, std::size_t n_t, const TransmitterConfig& cfg) {
  region.validate();
  if (n_t < 1) throw ValidationError("transmitter count must be at least 1");
  std::size_t grid = 1;  // n + 1 with n^2 < n_t <= (n+1)^2
  while (grid * grid < n_t) ++grid;

  const double cell_x = region.length / static_cast<double>(grid);
  const double cell_y = region.width / static_cast<double>(grid);
  const auto order = uniform_cell_order(grid);

  Deployment dep;
  dep.cfg = cfg;
  dep.positions.reserve(n_t);
  for (std::size_t k = 0; k < n_t; ++k) {
    const auto [col, row] = order[k];
    dep.positions.push_back({(static_cast<double>(col) + 0.5) * cell_x, (static_cast<double>(row) + 0.5) * cell_y});
  }
  return dep;
}

Deployment random_deploy(const Region& region, std::size_t n_t, Rng& rng, const TransmitterConfig& cfg) {
  region.validate();
  if (n_t < 1) throw ValidationError("transmitter count must be at least 1");
  Deployment dep;
  dep.cfg = cfg;
  dep.positions.resize(n_t);
  for (auto& p : dep.positions) {
    p.x = uniform(rng, 0.0, region.length);
    p.y = uniform(rng, 0.0, region.width);
  }
  return dep;
}

std::string_view planner_name(Planner p) {
  switch (p) {
    case Planner::ga: return "ga";
    case Planner::pso: return "pso";
    case Planner::uniform: return "uniform";
    case Planner::random: return "random";
  }
  return "?";
}

Planner parse_planner(std::string_view name) {
  for (Planner p : {Planner::ga, Planner::pso, Planner::uniform, Planner::random})
    if (planner_name(p) == name) return p;
  throw ValidationError("unknown planner '" + std::string(name) + "' (expected ga, pso, uniform or random)");
}

PlanResult run_planner(Planner planner, const Scenario& scenario, const TransmitterConfig& cfg, std::size_t n_t,
                       const GaConfig& ga, const PsoConfig& pso, std::uint64_t seed) {
  switch (planner) {
    case Planner::ga: {
      GaConfig c = ga;
      c.seed = seed;
      return ga_deploy(scenario, cfg, n_t, c);
    }
    case Planner::pso: {
      PsoConfig c = pso;
      c.seed = seed;
      return pso_deploy(scenario, cfg, n_t, c);
    }
    case Planner::uniform: {
      PlanResult r;
      r.deployment = uniform_deploy(scenario.region, n_t, cfg);
      r.fitness = fitness(r.deployment, scenario, ga.weights);
      return r;
    }
    case Planner::random: {
      Rng rng(seed);
      PlanResult r;
      r.deployment = random_deploy(scenario.region, n_t, rng, cfg);
      r.fitness = fitness(r.deployment, scenario, ga.weights);
      return r;
    }
  }
  throw InvariantError("unhandled planner");
}

}  // namespace rbc
