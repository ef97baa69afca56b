#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rbc/error.hpp"

namespace fs = std::filesystem;
using namespace rbc;
using namespace rbc::cli;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("rbc_cli_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int rbcplan(const std::string& args) {
  const std::string cmd = std::string(RBCPLAN_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> data_lines(const fs::path& csv) {
  std::ifstream in(csv);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("gen writes the default scenario and is byte-identical per seed") {
  TempDir t("gen");
  REQUIRE(rbcplan("gen --seed 42 --out " + (t.path / "a.txt").string()) == 0);
  REQUIRE(rbcplan("gen --seed 42 --out " + (t.path / "b.txt").string()) == 0);
  REQUIRE(rbcplan("gen --seed 43 --out " + (t.path / "c.txt").string()) == 0);
  CHECK(slurp(t.path / "a.txt") == slurp(t.path / "b.txt"));
  CHECK(slurp(t.path / "a.txt") != slurp(t.path / "c.txt"));

  const auto s = load_scenario(t.path / "a.txt");
  CHECK(s.receivers.size() == 300);
  CHECK(s.region.length == 25.0);
  CHECK(s.region.width == 20.0);
  CHECK(slurp(t.path / "a.txt").find("config_hash=0x") != std::string::npos);
}

TEST_CASE("exit codes") {
  TempDir t("codes");
  CHECK(rbcplan("gen --receivers 0 --out " + (t.path / "s.txt").string()) == 1);
  CHECK(rbcplan("plan --scenario " + (t.path / "missing.txt").string() + " --out " + t.path.string()) == 2);
  CHECK(rbcplan("plan --bogus-flag") == 1);
  CHECK(rbcplan("plan --planner annealing --out " + t.path.string()) == 1);
  CHECK(rbcplan("gen --height 50 --out " + (t.path / "s.txt").string()) == 1);
}

TEST_CASE("plan and simulate end to end") {
  TempDir t("plan");
  const auto scen = (t.path / "s.txt").string();
  REQUIRE(rbcplan("gen --seed 3 --out " + scen) == 0);

  const auto uni = t.path / "uni";
  REQUIRE(rbcplan("plan --scenario " + scen + " --planner uniform --transmitters 1 --out " + uni.string()) == 0);
  const auto dep = load_deployment(uni / "deployment.txt");
  CHECK(dep.deployment.positions == std::vector<Point>{{12.5, 10.0}});
  CHECK(!fs::exists(uni / "history.csv"));

  const auto ga = t.path / "ga";
  REQUIRE(rbcplan("plan --scenario " + scen + " --planner ga --generations 30 --population 20 --out " +
                  ga.string()) == 0);
  const auto hist = data_lines(ga / "history.csv");
  REQUIRE(hist.size() == 32);
  CHECK(hist[0] == "generation,best_q,mean_q");
  double prev = -1.0;
  for (std::size_t i = 1; i < hist.size(); ++i) {
    const double best = std::stod(hist[i].substr(hist[i].find(',') + 1));
    REQUIRE(best >= prev);
    prev = best;
  }

  REQUIRE(rbcplan("simulate --scenario " + scen + " --deployment " + (ga / "deployment.txt").string() +
                  " --hours 1 --per-receiver --out " + ga.string()) == 0);
  const auto trace = data_lines(ga / "trace.csv");
  CHECK(trace.size() == 62);
  CHECK(trace[0] == "slot_index,time_hours,avg_soc_percent");
  CHECK(data_lines(ga / "receivers.csv").size() == 62);
}

TEST_CASE("sweep produces one row per cell") {
  TempDir t("sweep");
  REQUIRE(rbcplan("sweep --sweep-axis transmitters=1..9 --sweep-axis height=3,5 --generations 3 --population 6 "
                  "--receivers 40 --seeds-per-cell 1 --hours 0.05 --out " +
                  t.path.string()) == 0);
  const auto rows = data_lines(t.path / "sweep.csv");
  REQUIRE(rows.size() == 1 + 9 * 2 * 4);
  CHECK(rows[0] == "height_m,receivers,transmitters,planner,seeds,q_mean,q_std,soc_mean,soc_std,failures,error");
}

TEST_CASE("sweep results do not depend on the worker count") {
  RunConfig cfg;
  cfg.scenario_params.receivers = 40;
  cfg.sweep_transmitters = {2, 4};
  cfg.sweep_heights = {5.0};
  cfg.seeds_per_cell = 2;
  cfg.ga.max_generations = cfg.pso.max_iterations = 5;
  cfg.ga.population_size = cfg.pso.swarm_size = 8;
  cfg.sim.total_hours = 0.1;
  cfg.workers = 1;
  cfg.finalize();
  const auto a = run_sweep(cfg);
  cfg.workers = 3;
  const auto b = run_sweep(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].q_mean == b[i].q_mean);
    CHECK(a[i].soc_mean == b[i].soc_mean);
    CHECK(a[i].failures == 0);
  }
}

TEST_CASE("sweep axis parsing") {
  RunConfig cfg;
  apply_sweep_axis(cfg, "transmitters=2..4");
  CHECK(cfg.sweep_transmitters == std::vector<std::size_t>{2, 3, 4});
  apply_sweep_axis(cfg, "receivers=100,300");
  CHECK(cfg.sweep_receivers == std::vector<std::size_t>{100, 300});
  apply_sweep_axis(cfg, "height=3,5");
  CHECK(cfg.sweep_heights == std::vector<double>{3.0, 5.0});
  apply_sweep_axis(cfg, "planners=ga,random");
  CHECK(cfg.sweep_planners == std::vector<Planner>{Planner::ga, Planner::random});
  CHECK_THROWS_AS(apply_sweep_axis(cfg, "colour=red"), ValidationError);
  CHECK_THROWS_AS(apply_sweep_axis(cfg, "transmitters=5..2"), ValidationError);
}

TEST_CASE("run config JSON round trip and provenance") {
  RunConfig cfg;
  cfg.transmitters = 7;
  cfg.tx.h = 5.0;
  cfg.ga.max_generations = 123;
  cfg.ga.mutation_scope = MutationScope::transmitter;
  cfg.sim.total_hours = 3.0;
  cfg.seed = 99;
  cfg.finalize();

  RunConfig back;
  apply_json(back, to_json(cfg));
  back.finalize();
  CHECK(back.transmitters == 7);
  CHECK(back.tx.h == 5.0);
  CHECK(back.ga.max_generations == 123);
  CHECK(back.ga.mutation_scope == MutationScope::transmitter);
  CHECK(back.sim.total_hours == doctest::Approx(3.0));
  CHECK(back.seed == 99);
  CHECK(provenance(back, "plan") == provenance(cfg, "plan"));

  RunConfig moved = cfg;
  moved.out = "/somewhere/else";
  CHECK(provenance(moved, "plan") == provenance(cfg, "plan"));
  moved.seed = 100;
  CHECK(provenance(moved, "plan") != provenance(cfg, "plan"));

  TempDir t("json");
  std::ofstream(t.path / "bad.json") << "{ \"transmitters\": \"many\" }";
  CHECK_THROWS_AS(load_run_config(t.path / "bad.json"), ValidationError);
  CHECK_THROWS_AS(load_run_config(t.path / "absent.json"), IoError);
}

TEST_CASE("deployment file round trip") {
  DeploymentFile d;
  d.deployment = {{{1.0, 2.5}, {24.125, 0.0}}, {200.0, 5.0, 5.0}};
  d.planner = "pso";
  d.radius = 3.389349067877329;
  d.n_covered = 123;
  d.q = 0.71;
  d.q1 = 0.5;
  d.q2 = 0.92;
  std::stringstream buf;
  write_deployment(d, buf, "hdr");
  const auto back = read_deployment(buf);
  CHECK(back.deployment == d.deployment);
  CHECK(back.planner == "pso");
  CHECK(back.radius == d.radius);
  CHECK(back.n_covered == 123);
  CHECK(back.q == d.q);

  std::stringstream broken("format_version = 1\nplanner = ga\n");
  CHECK_THROWS_AS(read_deployment(broken), ValidationError);
}
