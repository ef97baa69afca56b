#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbc/objective.hpp"
#include "rbc/optimizers.hpp"
#include "rbc/scenario.hpp"
#include "rbc/simulate.hpp"

namespace rbc::cli {

/// Everything a command needs. Loaded from an optional JSON run-config and
/// then overridden by command-line flags.
struct RunConfig {
  ScenarioParams scenario_params;
  std::filesystem::path scenario_path;
  std::filesystem::path deployment_path;
  std::filesystem::path out;

  Planner planner{Planner::ga};
  std::size_t transmitters{5};
  TransmitterConfig tx;
  Weights weights;
  GaConfig ga;
  PsoConfig pso;
  SimConfig sim;
  bool per_receiver{false};
  std::uint64_t seed{1};

  std::vector<std::size_t> sweep_transmitters{1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<std::size_t> sweep_receivers{300};
  std::vector<double> sweep_heights{3.0, 5.0};
  std::vector<Planner> sweep_planners{Planner::ga, Planner::pso, Planner::uniform, Planner::random};
  std::size_t seeds_per_cell{5};
  int workers{0};  // 0 = OpenMP default

  /// Push shared weights and the master seed into the optimizer blocks.
  void finalize();
  void validate() const;
};

nlohmann::json to_json(const RunConfig& cfg);
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

/// Parse one --sweep-axis value: transmitters=1..9, receivers=100,300, height=3,5, planners=ga,pso.
void apply_sweep_axis(RunConfig& cfg, const std::string& spec);

/// "config_hash=0x... seed=N" for output-file headers. Output paths do not enter the hash.
std::string provenance(const RunConfig& cfg, const std::string& command);

inline constexpr int kDeploymentFormatVersion = 1;

struct DeploymentFile {
  Deployment deployment;
  std::string planner;
  double radius{0.0};
  std::size_t n_covered{0};
  double q{0.0};
  double q1{0.0};
  double q2{0.0};
};

void write_deployment(const DeploymentFile& d, std::ostream& out, const std::string& header_comment = {});
DeploymentFile read_deployment(std::istream& in, const std::string& source = "<deployment>");
void save_deployment(const DeploymentFile& d, const std::filesystem::path& path, const std::string& header_comment = {});
DeploymentFile load_deployment(const std::filesystem::path& path);

void write_history_csv(const std::vector<HistoryRow>& history, std::ostream& out, const std::string& header_comment);
void write_trace_csv(const SimulationTrace& trace, std::ostream& out, const std::string& header_comment);
void write_receivers_csv(const SimulationTrace& trace, std::ostream& out, const std::string& header_comment);

struct SweepRow {
  double height{0.0};
  std::size_t receivers{0};
  std::size_t transmitters{0};
  Planner planner{Planner::ga};
  std::size_t seeds{0};
  double q_mean{0.0};
  double q_std{0.0};
  double soc_mean{0.0};
  double soc_std{0.0};
  std::size_t failures{0};
  std::string error;
};

/// Cross product of heights x receivers x transmitters x planners, each cell
/// averaged over seeds_per_cell paired scenarios. Result order is the loop
/// order regardless of worker scheduling.
std::vector<SweepRow> run_sweep(const RunConfig& cfg);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out, const std::string& header_comment);

int cmd_gen(const RunConfig& cfg, std::ostream& log);
int cmd_plan(const RunConfig& cfg, std::ostream& log);
int cmd_simulate(const RunConfig& cfg, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, std::ostream& log);

}  // namespace rbc::cli
