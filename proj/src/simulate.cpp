#include "rbc/simulate.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "rbc/error.hpp"

namespace rbc {

void SimConfig::validate() const {
  if (!(slot_hours > 0.0) || !std::isfinite(slot_hours)) throw ValidationError("slot duration must be positive");
  if (!(total_hours >= 0.0) || !std::isfinite(total_hours))
    throw ValidationError("total duration must be non-negative");
}

std::size_t SimConfig::slot_count() const {
  return static_cast<std::size_t>(std::floor(total_hours / slot_hours + 1e-9));
}

void step(std::span<double> energies, std::span<const std::ptrdiff_t> assignment, const BatteryModel& battery,
          const SimConfig& cfg, Rng& rng) {
  step_with(energies, assignment, battery, cfg, [&] { return sample_discharge(battery.discharge, rng); });
}

namespace {

double average_soc(const std::vector<double>& energies, double e_total) {
  const double sum = std::accumulate(energies.begin(), energies.end(), 0.0);
  return 100.0 * sum / (e_total * static_cast<double>(energies.size()));
}

void check_bounds(const std::vector<double>& energies, double e_total, std::size_t slot) {
  for (std::size_t i = 0; i < energies.size(); ++i)
    if (!(energies[i] >= 0.0 && energies[i] <= e_total))
      throw InvariantError("receiver " + std::to_string(i) + " energy left [0, e_total] at slot " +
                           std::to_string(slot));
}

}  // namespace

SimulationTrace run(const Deployment& dep, const Scenario& scenario, const SimConfig& cfg) {
  cfg.validate();
  scenario.validate();
  dep.validate(scenario.region);

  const auto assignment = assign_nearest(dep, scenario);
  const double e_total = scenario.battery.spec.e_total;
  std::vector<double> energies;
  energies.reserve(scenario.receivers.size());
  for (const auto& r : scenario.receivers) energies.push_back(r.energy);

  const std::size_t slots = cfg.slot_count();
  SimulationTrace trace;
  trace.slot_hours = cfg.slot_hours;
  trace.avg_soc.reserve(slots + 1);
  trace.avg_soc.push_back(average_soc(energies, e_total));
  if (cfg.record_receivers) trace.energy_series.push_back(energies);

  Rng rng(cfg.seed);
  for (std::size_t k = 1; k <= slots; ++k) {
    step(energies, assignment, scenario.battery, cfg, rng);
    check_bounds(energies, e_total, k);
    trace.avg_soc.push_back(average_soc(energies, e_total));
    if (cfg.record_receivers) trace.energy_series.push_back(energies);
  }
  trace.final_energy = std::move(energies);
  trace.final_avg_soc = trace.avg_soc.back();
  return trace;
}

double charging_efficiency(const SimulationTrace& trace) {
  if (trace.avg_soc.empty()) throw ValidationError("charging_efficiency: empty trace");
  return trace.avg_soc.back();
}

}  // namespace rbc
