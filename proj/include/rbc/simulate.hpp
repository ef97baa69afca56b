#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rbc/battery.hpp"
#include "rbc/objective.hpp"
#include "rbc/rng.hpp"
#include "rbc/scenario.hpp"

namespace rbc {

struct SimConfig {
  double slot_hours{1.0 / 60.0};
  double total_hours{1.0};
  bool uncovered_discharge{true};  // uncovered receivers keep being used
  bool discharge_enabled{true};    // false forces P_d = 0 everywhere
  bool record_receivers{false};    // keep per-receiver energy series
  std::uint64_t seed{1};

  void validate() const;
  /// Number of slot updates; the trace holds one more sample than this.
  std::size_t slot_count() const;
};

struct SimulationTrace {
  double slot_hours{0.0};
  std::vector<double> avg_soc;                     // percent, one per sample
  std::vector<std::vector<double>> energy_series;  // [sample][receiver], only when recorded
  std::vector<double> final_energy;
  double final_avg_soc{0.0};
};

/// One explicit-Euler slot. Covered receivers charge at P_c(e) unless already
/// full; every receiver in use discharges at a fresh draw. `draw` is called once
/// per discharging receiver, in receiver order.
template <typename DrawDischarge>
void step_with(std::span<double> energies, std::span<const std::ptrdiff_t> assignment, const BatteryModel& battery,
               const SimConfig& cfg, DrawDischarge&& draw) {
  const double e_total = battery.spec.e_total;
  const double t_d = cfg.slot_hours;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    double& e = energies[i];
    const bool assigned = assignment[i] != kUnassigned;
    if (!assigned && !cfg.uncovered_discharge) continue;
    const double p_c = (assigned && e < e_total) ? preferred_power(e, battery.fit, e_total) : 0.0;
    const double p_d = cfg.discharge_enabled ? draw() : 0.0;
    e = std::clamp(e + (p_c - p_d) * t_d, 0.0, e_total);
  }
}

void step(std::span<double> energies, std::span<const std::ptrdiff_t> assignment, const BatteryModel& battery,
          const SimConfig& cfg, Rng& rng);

/// Assignment is fixed up front (receivers are static), then every slot is stepped.
SimulationTrace run(const Deployment& dep, const Scenario& scenario, const SimConfig& cfg);

/// Final average SOC in percent.
double charging_efficiency(const SimulationTrace& trace);

}  // namespace rbc
