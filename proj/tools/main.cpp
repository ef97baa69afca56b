// rbcplan: scenario generation, transmitter planning, charging simulation and sweeps.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "rbc/error.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> scenario;
  std::optional<std::string> deployment;
  std::optional<std::string> out;
  std::optional<std::string> planner;
  std::optional<std::size_t> transmitters;
  std::optional<double> height;
  std::optional<double> input_power;
  std::optional<double> pmin;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> receivers;
  std::optional<double> length;
  std::optional<double> width;
  std::optional<double> lambda;
  std::optional<double> sigma;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  std::optional<double> slot_minutes;
  std::optional<double> hours;
  std::optional<std::size_t> seeds_per_cell;
  std::optional<int> workers;
  std::vector<std::string> sweep_axes;
  bool per_receiver{false};
  bool hold_uncovered{false};
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON run-config file; flags override it");
  cmd->add_option("--seed", f.seed, "master random seed");
  cmd->add_option("--out", f.out, "output file (gen) or directory");
}

void add_region(CLI::App* cmd, Flags& f) {
  cmd->add_option("--receivers", f.receivers, "receiver count");
  cmd->add_option("--length", f.length, "region length L, m");
  cmd->add_option("--width", f.width, "region width W, m");
  cmd->add_option("--lambda", f.lambda, "expected cluster-head count");
  cmd->add_option("--sigma", f.sigma, "cluster Gaussian spread, m");
}

void add_transmitter(CLI::App* cmd, Flags& f) {
  cmd->add_option("--transmitters", f.transmitters, "transmitter count");
  cmd->add_option("--height", f.height, "transmitter height h, m");
  cmd->add_option("--input-power", f.input_power, "transmitter input power, W");
  cmd->add_option("--pmin", f.pmin, "minimum received power, W");
}

void add_search(CLI::App* cmd, Flags& f) {
  cmd->add_option("--planner", f.planner, "ga | pso | uniform | random");
  cmd->add_option("--generations", f.generations, "GA generations and PSO iterations");
  cmd->add_option("--population", f.population, "GA population and PSO swarm size");
}

void add_sim(CLI::App* cmd, Flags& f) {
  cmd->add_option("--slot-minutes", f.slot_minutes, "simulation slot length, minutes");
  cmd->add_option("--hours", f.hours, "simulated duration, hours");
  cmd->add_flag("--hold-uncovered", f.hold_uncovered, "uncovered receivers hold their charge");
}

rbc::cli::RunConfig resolve(const Flags& f) {
  rbc::cli::RunConfig c = f.config ? rbc::cli::load_run_config(*f.config) : rbc::cli::RunConfig{};
  if (f.scenario) c.scenario_path = *f.scenario;
  if (f.deployment) c.deployment_path = *f.deployment;
  if (f.out) c.out = *f.out;
  if (f.planner) c.planner = rbc::parse_planner(*f.planner);
  if (f.transmitters) c.transmitters = *f.transmitters;
  if (f.height) c.tx.h = *f.height;
  if (f.input_power) c.tx.p_in = *f.input_power;
  if (f.pmin) c.tx.p_min = *f.pmin;
  if (f.seed) c.seed = *f.seed;
  if (f.receivers) c.scenario_params.receivers = *f.receivers;
  if (f.length) c.scenario_params.region.length = *f.length;
  if (f.width) c.scenario_params.region.width = *f.width;
  if (f.lambda) c.scenario_params.thomas.lambda = *f.lambda;
  if (f.sigma) c.scenario_params.thomas.sigma = *f.sigma;
  if (f.generations) c.ga.max_generations = c.pso.max_iterations = *f.generations;
  if (f.population) c.ga.population_size = c.pso.swarm_size = *f.population;
  if (f.slot_minutes) c.sim.slot_hours = *f.slot_minutes / 60.0;
  if (f.hours) c.sim.total_hours = *f.hours;
  if (f.hold_uncovered) c.sim.uncovered_discharge = false;
  if (f.seeds_per_cell) c.seeds_per_cell = *f.seeds_per_cell;
  if (f.workers) c.workers = *f.workers;
  if (f.per_receiver) c.per_receiver = true;
  for (const auto& axis : f.sweep_axes) rbc::cli::apply_sweep_axis(c, axis);
  c.finalize();
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonant-beam charging transmitter planner"};
  app.require_subcommand(1);
  Flags f;

  auto* gen = app.add_subcommand("gen", "generate a Thomas-cluster receiver scenario");
  add_common(gen, f);
  add_region(gen, f);

  auto* plan = app.add_subcommand("plan", "place transmitters over a scenario");
  add_common(plan, f);
  plan->add_option("--scenario", f.scenario, "scenario file");
  add_transmitter(plan, f);
  add_search(plan, f);

  auto* sim = app.add_subcommand("simulate", "run the time-slotted charging simulation");
  add_common(sim, f);
  sim->add_option("--scenario", f.scenario, "scenario file");
  sim->add_option("--deployment", f.deployment, "deployment file written by plan");
  add_sim(sim, f);
  sim->add_flag("--per-receiver", f.per_receiver, "also write per-receiver energies");

  auto* sweep = app.add_subcommand("sweep", "grid experiment over transmitters, receivers, heights and planners");
  add_common(sweep, f);
  add_region(sweep, f);
  add_transmitter(sweep, f);
  add_search(sweep, f);
  add_sim(sweep, f);
  sweep->add_option("--sweep-axis", f.sweep_axes,
                    "axis=values, e.g. transmitters=1..9, receivers=100,300, height=3,5, planners=ga,uniform");
  sweep->add_option("--seeds-per-cell", f.seeds_per_cell, "seeds per grid cell");
  sweep->add_option("--workers", f.workers, "concurrent sweep runs (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const auto cfg = resolve(f);
    if (*gen) return rbc::cli::cmd_gen(cfg, std::cout);
    if (*plan) return rbc::cli::cmd_plan(cfg, std::cout);
    if (*sim) return rbc::cli::cmd_simulate(cfg, std::cout);
    if (*sweep) return rbc::cli::cmd_sweep(cfg, std::cout);
  } catch (const rbc::Error& e) {
    std::cerr << "rbcplan: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "rbcplan: internal error: " << e.what() << '\n';
    return 3;
  }
  return 3;
}
