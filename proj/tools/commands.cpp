#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <omp.h>

#include "rbc/error.hpp"
#include "rbc/textio.hpp"

namespace rbc::cli {

using nlohmann::json;

void RunConfig::finalize() {
  ga.weights = weights;
  pso.weights = weights;
}

void RunConfig::validate() const {
  scenario_params.validate();
  tx.validate();
  weights.validate();
  ga.validate();
  pso.validate();
  sim.validate();
  if (transmitters < 1) throw ValidationError("--transmitters must be at least 1");
  if (seeds_per_cell < 1) throw ValidationError("--seeds-per-cell must be at least 1");
}

namespace {

std::string_view scope_name(MutationScope s) {
  switch (s) {
    case MutationScope::axis: return "axis";
    case MutationScope::transmitter: return "transmitter";
    case MutationScope::individual: return "individual";
  }
  return "?";
}

MutationScope parse_scope(const std::string& s) {
  for (auto m : {MutationScope::axis, MutationScope::transmitter, MutationScope::individual})
    if (scope_name(m) == s) return m;
  throw ValidationError("unknown mutation_scope '" + s + "'");
}

template <typename T>
void maybe(const json& j, const char* key, T& dst) {
  if (j.contains(key) && !j.at(key).is_null()) dst = j.at(key).get<T>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::size_t> parse_counts(const std::string& list) {
  std::vector<std::size_t> out;
  for (const auto& tok : split(list, ',')) {
    const auto dots = tok.find("..");
    if (dots != std::string::npos) {
      const auto lo = parse_u64(tok.substr(0, dots), "--sweep-axis", 0);
      const auto hi = parse_u64(tok.substr(dots + 2), "--sweep-axis", 0);
      if (lo > hi) throw ValidationError("empty range '" + tok + "'");
      for (auto v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_u64(tok, "--sweep-axis", 0));
    }
  }
  if (out.empty()) throw ValidationError("empty sweep list");
  return out;
}

std::string header_line(const std::string& kind, const std::string& provenance_text) {
  return "# " + kind + " " + provenance_text + "\n";
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

double mean_of(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

json to_json(const RunConfig& c) {
  const auto& sp = c.scenario_params;
  json planners = json::array();
  for (auto p : c.sweep_planners) planners.push_back(std::string(planner_name(p)));
  return json{
      {"scenario",
       {{"length", sp.region.length},
        {"width", sp.region.width},
        {"receivers", sp.receivers},
        {"lambda", sp.thomas.lambda},
        {"sigma", sp.thomas.sigma},
        {"e_total", sp.battery.spec.e_total},
        {"fit_numerator", sp.battery.fit.numerator},
        {"fit_denominator", sp.battery.fit.denominator},
        {"discharge_powers", sp.battery.discharge.powers},
        {"discharge_probs", sp.battery.discharge.probs},
        {"rbc",
         {{"a", sp.rbc.a},
          {"lambda", sp.rbc.lambda},
          {"m", sp.rbc.m},
          {"eta_t", sp.rbc.eta_t},
          {"R", sp.rbc.R},
          {"C", sp.rbc.C},
          {"alpha", sp.rbc.alpha},
          {"beta", sp.rbc.beta},
          {"l", sp.rbc.l}}}}},
      {"planner", std::string(planner_name(c.planner))},
      {"transmitters", c.transmitters},
      {"transmitter", {{"p_in", c.tx.p_in}, {"h", c.tx.h}, {"p_min", c.tx.p_min}}},
      {"weights", {{"omega1", c.weights.omega1}, {"omega2", c.weights.omega2}}},
      {"ga",
       {{"population", c.ga.population_size},
        {"generations", c.ga.max_generations},
        {"crossover_prob", c.ga.crossover_prob},
        {"mutation_prob", c.ga.mutation_prob},
        {"mutation_scope", std::string(scope_name(c.ga.mutation_scope))}}},
      {"pso",
       {{"swarm", c.pso.swarm_size},
        {"iterations", c.pso.max_iterations},
        {"c1", c.pso.c1},
        {"c2", c.pso.c2},
        {"omega_start", c.pso.omega_start},
        {"omega_end", c.pso.omega_end},
        {"v_max", c.pso.v_max ? json(*c.pso.v_max) : json(nullptr)}}},
      {"simulation",
       {{"slot_minutes", c.sim.slot_hours * 60.0},
        {"hours", c.sim.total_hours},
        {"uncovered_discharge", c.sim.uncovered_discharge}}},
      {"sweep",
       {{"transmitters", c.sweep_transmitters},
        {"receivers", c.sweep_receivers},
        {"heights", c.sweep_heights},
        {"planners", planners},
        {"seeds_per_cell", c.seeds_per_cell}}},
      {"seed", c.seed},
  };
}

void apply_json(RunConfig& c, const json& j) {
  try {
    if (j.contains("scenario")) {
      const auto& s = j.at("scenario");
      auto& sp = c.scenario_params;
      maybe(s, "length", sp.region.length);
      maybe(s, "width", sp.region.width);
      maybe(s, "receivers", sp.receivers);
      maybe(s, "lambda", sp.thomas.lambda);
      maybe(s, "sigma", sp.thomas.sigma);
      maybe(s, "e_total", sp.battery.spec.e_total);
      maybe(s, "fit_numerator", sp.battery.fit.numerator);
      maybe(s, "fit_denominator", sp.battery.fit.denominator);
      maybe(s, "discharge_powers", sp.battery.discharge.powers);
      maybe(s, "discharge_probs", sp.battery.discharge.probs);
      if (s.contains("rbc")) {
        const auto& r = s.at("rbc");
        maybe(r, "a", sp.rbc.a);
        maybe(r, "lambda", sp.rbc.lambda);
        maybe(r, "m", sp.rbc.m);
        maybe(r, "eta_t", sp.rbc.eta_t);
        maybe(r, "R", sp.rbc.R);
        maybe(r, "C", sp.rbc.C);
        maybe(r, "alpha", sp.rbc.alpha);
        maybe(r, "beta", sp.rbc.beta);
        maybe(r, "l", sp.rbc.l);
      }
    }
    if (j.contains("planner")) c.planner = parse_planner(j.at("planner").get<std::string>());
    maybe(j, "transmitters", c.transmitters);
    if (j.contains("transmitter")) {
      const auto& t = j.at("transmitter");
      maybe(t, "p_in", c.tx.p_in);
      maybe(t, "h", c.tx.h);
      maybe(t, "p_min", c.tx.p_min);
    }
    if (j.contains("weights")) {
      maybe(j.at("weights"), "omega1", c.weights.omega1);
      maybe(j.at("weights"), "omega2", c.weights.omega2);
    }
    if (j.contains("ga")) {
      const auto& g = j.at("ga");
      maybe(g, "population", c.ga.population_size);
      maybe(g, "generations", c.ga.max_generations);
      maybe(g, "crossover_prob", c.ga.crossover_prob);
      maybe(g, "mutation_prob", c.ga.mutation_prob);
      if (g.contains("mutation_scope")) c.ga.mutation_scope = parse_scope(g.at("mutation_scope").get<std::string>());
    }
    if (j.contains("pso")) {
      const auto& p = j.at("pso");
      maybe(p, "swarm", c.pso.swarm_size);
      maybe(p, "iterations", c.pso.max_iterations);
      maybe(p, "c1", c.pso.c1);
      maybe(p, "c2", c.pso.c2);
      maybe(p, "omega_start", c.pso.omega_start);
      maybe(p, "omega_end", c.pso.omega_end);
      if (p.contains("v_max") && !p.at("v_max").is_null()) c.pso.v_max = p.at("v_max").get<double>();
    }
    if (j.contains("simulation")) {
      const auto& s = j.at("simulation");
      if (s.contains("slot_minutes")) c.sim.slot_hours = s.at("slot_minutes").get<double>() / 60.0;
      maybe(s, "hours", c.sim.total_hours);
      maybe(s, "uncovered_discharge", c.sim.uncovered_discharge);
    }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      maybe(s, "transmitters", c.sweep_transmitters);
      maybe(s, "receivers", c.sweep_receivers);
      maybe(s, "heights", c.sweep_heights);
      maybe(s, "seeds_per_cell", c.seeds_per_cell);
      maybe(s, "workers", c.workers);
      if (s.contains("planners")) {
        c.sweep_planners.clear();
        for (const auto& p : s.at("planners")) c.sweep_planners.push_back(parse_planner(p.get<std::string>()));
      }
    }
    maybe(j, "seed", c.seed);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("run config: ") + e.what());
  }
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("run config not found or unreadable: '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  RunConfig c;
  apply_json(c, j);
  return c;
}

void apply_sweep_axis(RunConfig& c, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ValidationError("--sweep-axis expects name=values, got '" + spec + "'");
  const auto name = spec.substr(0, eq);
  const auto values = spec.substr(eq + 1);
  if (name == "transmitters") {
    c.sweep_transmitters = parse_counts(values);
  } else if (name == "receivers") {
    c.sweep_receivers = parse_counts(values);
  } else if (name == "height" || name == "heights") {
    c.sweep_heights.clear();
    for (const auto& tok : split(values, ',')) c.sweep_heights.push_back(parse_double(tok, "--sweep-axis", 0));
  } else if (name == "planners") {
    c.sweep_planners.clear();
    for (const auto& tok : split(values, ',')) c.sweep_planners.push_back(parse_planner(tok));
  } else {
    throw ValidationError("unknown sweep axis '" + name + "' (transmitters, receivers, height, planners)");
  }
}

std::string provenance(const RunConfig& cfg, const std::string& command) {
  json j = to_json(cfg);
  j["command"] = command;
  if (command == "plan" || command == "simulate") j["scenario_path"] = cfg.scenario_path.string();
  if (command == "simulate") j["deployment_path"] = cfg.deployment_path.string();
  return "config_hash=" + hex64(fnv1a64(j.dump())) + " seed=" + std::to_string(cfg.seed);
}

void write_deployment(const DeploymentFile& d, std::ostream& out, const std::string& header_comment) {
  out << "# rbc-deployment";
  if (!header_comment.empty()) out << ' ' << header_comment;
  out << '\n';
  out << "format_version = " << kDeploymentFormatVersion << '\n';
  out << "planner = " << d.planner << '\n';
  out << "transmitter.p_in = " << format_double(d.deployment.cfg.p_in) << '\n';
  out << "transmitter.h = " << format_double(d.deployment.cfg.h) << '\n';
  out << "transmitter.p_min = " << format_double(d.deployment.cfg.p_min) << '\n';
  out << "covering_radius = " << format_double(d.radius) << '\n';
  out << "n_covered = " << d.n_covered << '\n';
  out << "q = " << format_double(d.q) << '\n';
  out << "q1 = " << format_double(d.q1) << '\n';
  out << "q2 = " << format_double(d.q2) << '\n';
  out << "transmitters.count = " << d.deployment.positions.size() << '\n';
  out << "[transmitters]\n";
  out << "# id x y\n";
  for (std::size_t k = 0; k < d.deployment.positions.size(); ++k) {
    const auto& p = d.deployment.positions[k];
    out << k << ' ' << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
}

DeploymentFile read_deployment(std::istream& in, const std::string& source) {
  const auto doc = TextDocument::parse(in, source);
  if (doc.integer("format_version") != kDeploymentFormatVersion)
    throw ParseError(source, doc.line_of("format_version"), "unsupported deployment format_version");
  DeploymentFile d;
  d.planner = doc.text("planner");
  d.deployment.cfg = {doc.number("transmitter.p_in"), doc.number("transmitter.h"), doc.number("transmitter.p_min")};
  d.radius = doc.number("covering_radius");
  d.n_covered = doc.integer("n_covered");
  d.q = doc.number("q");
  d.q1 = doc.number("q1");
  d.q2 = doc.number("q2");
  const auto count = doc.integer("transmitters.count");
  if (doc.table_name() != "transmitters") throw ParseError(source, doc.last_line(), "missing [transmitters] table");
  if (doc.rows().size() != count || count == 0)
    throw ParseError(source, doc.line_of("transmitters.count"), "transmitters.count does not match the table");
  for (std::size_t k = 0; k < doc.rows().size(); ++k) {
    const auto& row = doc.rows()[k];
    if (row.cells.size() != 3) throw ParseError(source, row.line, "transmitter row needs 3 columns (id x y)");
    if (parse_u64(row.cells[0], source, row.line) != k)
      throw ParseError(source, row.line, "transmitter ids must run 0..n-1 in order");
    d.deployment.positions.push_back(
        {parse_double(row.cells[1], source, row.line), parse_double(row.cells[2], source, row.line)});
  }
  d.deployment.cfg.validate();
  return d;
}

void save_deployment(const DeploymentFile& d, const std::filesystem::path& path, const std::string& header_comment) {
  auto out = open_out(path);
  write_deployment(d, out, header_comment);
}

DeploymentFile load_deployment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("deployment file not found or unreadable: '" + path.string() + "'");
  return read_deployment(in, path.string());
}

void write_history_csv(const std::vector<HistoryRow>& history, std::ostream& out, const std::string& header_comment) {
  out << header_line("rbc-history", header_comment);
  out << "generation,best_q,mean_q\n";
  for (const auto& h : history)
    out << h.iteration << ',' << format_double(h.best_q) << ',' << format_double(h.mean_q) << '\n';
}

void write_trace_csv(const SimulationTrace& trace, std::ostream& out, const std::string& header_comment) {
  out << header_line("rbc-trace", header_comment);
  out << "slot_index,time_hours,avg_soc_percent\n";
  for (std::size_t k = 0; k < trace.avg_soc.size(); ++k)
    out << k << ',' << format_double(static_cast<double>(k) * trace.slot_hours) << ','
        << format_double(trace.avg_soc[k]) << '\n';
}

void write_receivers_csv(const SimulationTrace& trace, std::ostream& out, const std::string& header_comment) {
  out << header_line("rbc-receivers", header_comment);
  out << "slot_index,time_hours";
  const std::size_t n = trace.energy_series.empty() ? 0 : trace.energy_series.front().size();
  for (std::size_t i = 0; i < n; ++i) out << ",e_r_" << i;
  out << '\n';
  for (std::size_t k = 0; k < trace.energy_series.size(); ++k) {
    out << k << ',' << format_double(static_cast<double>(k) * trace.slot_hours);
    for (double e : trace.energy_series[k]) out << ',' << format_double(e);
    out << '\n';
  }
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  struct Task {
    std::size_t cell;
    std::size_t seed_index;
  };
  std::vector<SweepRow> rows;
  for (double h : cfg.sweep_heights)
    for (std::size_t n_recv : cfg.sweep_receivers)
      for (std::size_t n_t : cfg.sweep_transmitters)
        for (Planner p : cfg.sweep_planners) {
          SweepRow r;
          r.height = h;
          r.receivers = n_recv;
          r.transmitters = n_t;
          r.planner = p;
          r.seeds = cfg.seeds_per_cell;
          rows.push_back(r);
        }

  const std::size_t seeds = cfg.seeds_per_cell;
  std::vector<double> q(rows.size() * seeds, std::nan(""));
  std::vector<double> soc(rows.size() * seeds, std::nan(""));
  std::vector<std::string> errors(rows.size() * seeds);

  const auto n_tasks = static_cast<std::ptrdiff_t>(rows.size() * seeds);
  const int threads = cfg.workers > 0 ? cfg.workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t t = 0; t < n_tasks; ++t) {
    const auto cell = static_cast<std::size_t>(t) / seeds;
    const auto s = static_cast<std::size_t>(t) % seeds;
    const auto& row = rows[cell];
    try {
      // Scenario and simulation streams depend only on (receivers, seed index),
      // so planners within a seed are compared on identical receivers.
      ScenarioParams sp = cfg.scenario_params;
      sp.receivers = row.receivers;
      const auto scenario_seed = derive_seed(derive_seed(cfg.seed, row.receivers), s);
      const Scenario scenario = generate_scenario(sp, scenario_seed);

      TransmitterConfig tx = cfg.tx;
      tx.h = row.height;
      GaConfig ga = cfg.ga;
      PsoConfig pso = cfg.pso;
      ga.parallel = pso.parallel = false;
      const auto plan = run_planner(row.planner, scenario, tx, row.transmitters, ga, pso,
                                    derive_seed(cfg.seed ^ 0x5eed5eedULL, static_cast<std::uint64_t>(t)));
      SimConfig sim = cfg.sim;
      sim.seed = derive_seed(scenario_seed, 1);
      q[static_cast<std::size_t>(t)] = plan.fitness;
      soc[static_cast<std::size_t>(t)] = charging_efficiency(run(plan.deployment, scenario, sim));
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(t)] = e.what();
    }
  }

  for (std::size_t c = 0; c < rows.size(); ++c) {
    std::vector<double> qs, socs;
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto idx = c * seeds + s;
      if (!errors[idx].empty()) {
        ++rows[c].failures;
        rows[c].error = errors[idx];
        continue;
      }
      qs.push_back(q[idx]);
      socs.push_back(soc[idx]);
    }
    rows[c].q_mean = mean_of(qs);
    rows[c].q_std = stddev_of(qs);
    rows[c].soc_mean = mean_of(socs);
    rows[c].soc_std = stddev_of(socs);
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out, const std::string& header_comment) {
  out << header_line("rbc-sweep", header_comment);
  out << "height_m,receivers,transmitters,planner,seeds,q_mean,q_std,soc_mean,soc_std,failures,error\n";
  for (const auto& r : rows) {
    std::string err = r.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n' || ch == '"') ch = ';';
    out << format_double(r.height) << ',' << r.receivers << ',' << r.transmitters << ',' << planner_name(r.planner)
        << ',' << r.seeds << ',' << format_double(r.q_mean) << ',' << format_double(r.q_std) << ','
        << format_double(r.soc_mean) << ',' << format_double(r.soc_std) << ',' << r.failures << ',' << err << '\n';
  }
}

int cmd_gen(const RunConfig& cfg, std::ostream& log) {
  cfg.scenario_params.validate();
  if (cfg.out.empty()) throw ValidationError("gen: --out <scenario file> is required");
  const Scenario s = generate_scenario(cfg.scenario_params, cfg.seed);
  save_scenario(s, cfg.out, provenance(cfg, "gen"));
  double e_sum = 0.0;
  for (const auto& r : s.receivers) e_sum += r.energy;
  const double mean_soc = 100.0 * e_sum / (s.battery.spec.e_total * static_cast<double>(s.receivers.size()));
  log << "receivers=" << s.receivers.size() << " cluster_heads=" << s.cluster_heads
      << " mean_initial_soc=" << format_double(mean_soc) << " out=" << cfg.out.string() << '\n';
  return 0;
}

int cmd_plan(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.scenario_path.empty()) throw ValidationError("plan: --scenario is required");
  if (cfg.out.empty()) throw ValidationError("plan: --out <directory> is required");
  const Scenario scenario = load_scenario(cfg.scenario_path);

  const auto plan = run_planner(cfg.planner, scenario, cfg.tx, cfg.transmitters, cfg.ga, cfg.pso, cfg.seed);
  const auto report = evaluate(plan.deployment, scenario, cfg.weights);
  const std::string prov = provenance(cfg, "plan");

  DeploymentFile file{plan.deployment, std::string(planner_name(cfg.planner)),
                      covering_radius(cfg.tx, scenario.rbc), report.n_covered, report.q, report.q1, report.q2};
  save_deployment(file, cfg.out / "deployment.txt", prov);
  if (!plan.history.empty()) {
    auto out = open_out(cfg.out / "history.csv");
    write_history_csv(plan.history, out, prov);
  }
  log << "planner=" << planner_name(cfg.planner) << " transmitters=" << cfg.transmitters
      << " radius_m=" << format_double(file.radius) << " n_covered=" << report.n_covered
      << " q=" << format_double(report.q) << " q1=" << format_double(report.q1) << " q2=" << format_double(report.q2)
      << (report.degenerate_q2 ? " (degenerate q2)" : "") << '\n';
  for (std::size_t k = 0; k < plan.deployment.positions.size(); ++k)
    log << "  t" << k << " = (" << format_double(plan.deployment.positions[k].x) << ", "
        << format_double(plan.deployment.positions[k].y) << ")\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  cfg.sim.validate();
  if (cfg.scenario_path.empty()) throw ValidationError("simulate: --scenario is required");
  if (cfg.deployment_path.empty()) throw ValidationError("simulate: --deployment is required");
  if (cfg.out.empty()) throw ValidationError("simulate: --out <directory> is required");
  const Scenario scenario = load_scenario(cfg.scenario_path);
  const auto dep = load_deployment(cfg.deployment_path).deployment;

  SimConfig sim = cfg.sim;
  sim.seed = cfg.seed;
  sim.record_receivers = cfg.per_receiver;
  const auto trace = run(dep, scenario, sim);
  const auto report = evaluate(dep, scenario, cfg.weights);
  const std::string prov = provenance(cfg, "simulate");
  {
    auto out = open_out(cfg.out / "trace.csv");
    write_trace_csv(trace, out, prov);
  }
  if (cfg.per_receiver) {
    auto out = open_out(cfg.out / "receivers.csv");
    write_receivers_csv(trace, out, prov);
  }
  log << "final_avg_soc=" << format_double(charging_efficiency(trace)) << " n_covered=" << report.n_covered
      << " q=" << format_double(report.q) << '\n';
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  if (cfg.out.empty()) throw ValidationError("sweep: --out <directory> is required");
  const auto rows = run_sweep(cfg);
  auto out = open_out(cfg.out / "sweep.csv");
  write_sweep_csv(rows, out, provenance(cfg, "sweep"));
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.failures;
  log << "cells=" << rows.size() << " runs=" << rows.size() * cfg.seeds_per_cell << " failed_runs=" << failed
      << " out=" << (cfg.out / "sweep.csv").string() << '\n';
  return 0;
}

}  // namespace rbc::cli
