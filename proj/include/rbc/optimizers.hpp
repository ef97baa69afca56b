#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rbc/objective.hpp"
#include "rbc/rng.hpp"
#include "rbc/scenario.hpp"

namespace rbc {

/// Granularity of one GA mutation trial.
enum class MutationScope {
  axis,         // each x and each y redrawn independently with mutation_prob
  transmitter,  // each transmitter point redrawn with mutation_prob
  individual,   // with mutation_prob, one uniformly chosen transmitter of the individual is redrawn
};

struct GaConfig {
  std::size_t population_size{100};
  std::size_t max_generations{5000};
  double crossover_prob{0.8};
  double mutation_prob{0.15};
  MutationScope mutation_scope{MutationScope::axis};
  Weights weights;
  std::uint64_t seed{1};
  bool parallel{true};  // OpenMP population evaluation

  void validate() const;
};

struct PsoConfig {
  std::size_t swarm_size{100};
  std::size_t max_iterations{5000};
  double c1{2.0};
  double c2{2.0};
  double omega_start{0.9};
  double omega_end{0.2};
  std::optional<double> v_max;  // m/iteration per axis; unset means 20% of the region diagonal
  bool random_initial_velocity{true};
  Weights weights;
  std::uint64_t seed{1};
  bool parallel{true};

  void validate() const;
  double velocity_cap(const Region& region) const;
};

struct HistoryRow {
  std::size_t iteration;
  double best_q;
  double mean_q;
};

struct PlanResult {
  Deployment deployment;
  double fitness{0.0};
  std::vector<HistoryRow> history;  // empty for the deterministic and random baselines
};

/// Genetic search. Random draws per generation, in order: roulette picks,
/// then per adjacent pair a crossover trial (and its cut point), then per
/// individual, transmitter and axis a mutation trial (and its new value).
/// Fitness evaluation consumes no randomness, so serial and parallel runs agree.
PlanResult ga_deploy(const Scenario& scenario, const TransmitterConfig& cfg, std::size_t n_t, const GaConfig& ga);

/// Particle swarm with linearly decaying inertia, per-axis velocity cap and
/// region clamping. One (rand1, rand2) pair per particle, transmitter and iteration.
PlanResult pso_deploy(const Scenario& scenario, const TransmitterConfig& cfg, std::size_t n_t, const PsoConfig& pso);

/// Grid cell (column, row) order used by uniform_deploy for an g x g partition.
std::vector<std::pair<std::size_t, std::size_t>> uniform_cell_order(std::size_t grid);

/// Centers of the smallest (n+1) x (n+1) partition holding n_t transmitters, center first.
Deployment uniform_deploy(const Region& region, std::size_t n_t, const TransmitterConfig& cfg = {});

Deployment random_deploy(const Region& region, std::size_t n_t, Rng& rng, const TransmitterConfig& cfg = {});

enum class Planner { ga, pso, uniform, random };

std::string_view planner_name(Planner p);
Planner parse_planner(std::string_view name);

/// Dispatch to one planner. Baselines are scored with ga.weights; random uses `seed`.
PlanResult run_planner(Planner planner, const Scenario& scenario, const TransmitterConfig& cfg, std::size_t n_t,
                       const GaConfig& ga, const PsoConfig& pso, std::uint64_t seed);

}  // namespace rbc
