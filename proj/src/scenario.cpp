#include "rbc/scenario.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "rbc/error.hpp"
#include "rbc/textio.hpp"

namespace rbc {

void Region::validate() const {
  if (!(length > 0.0) || !(width > 0.0) || !std::isfinite(length) || !std::isfinite(width))
    throw ValidationError("region length and width must be positive");
}

void ThomasParams::validate() const {
  if (!(lambda > 0.0)) throw ValidationError("thomas.lambda must be positive");
  if (!(sigma > 0.0)) throw ValidationError("thomas.sigma must be positive");
}

ThomasSample thomas_sample(const Region& region, const ThomasParams& params, std::size_t n_total, Rng& rng) {
  region.validate();
  params.validate();
  if (n_total < 1) throw ValidationError("thomas_sample: receiver count must be at least 1");

  const auto n_heads = std::max<std::size_t>(1, std::poisson_distribution<std::size_t>(params.lambda)(rng));
  ThomasSample out;
  out.heads.reserve(n_heads);
  for (std::size_t k = 0; k < n_heads; ++k) {
    const double x = uniform(rng, 0.0, region.length);
    const double y = uniform(rng, 0.0, region.width);
    out.heads.push_back({x, y});
  }

  std::uniform_int_distribution<std::size_t> pick_head(0, n_heads - 1);
  std::normal_distribution<double> scatter(0.0, params.sigma);
  out.points.reserve(n_total);
  out.head_of.reserve(n_total);
  for (std::size_t i = 0; i < n_total; ++i) {
    const std::size_t head = pick_head(rng);
    const Point c = out.heads[head];
    int tries = 0;
    for (;;) {
      const double dx = scatter(rng);
      const double dy = scatter(rng);
      const Point p{c.x + dx, c.y + dy};
      if (region.contains(p)) {
        out.points.push_back(p);
        out.head_of.push_back(head);
        break;
      }
      if (++tries >= kThomasRetryCap)
        throw GenerationError("thomas_sample: no in-region offset after " + std::to_string(kThomasRetryCap) +
                              " draws; sigma too large for the region?");
    }
  }
  return out;
}

std::vector<double> init_soc(std::size_t n_total, const BatterySpec& spec, Rng& rng) {
  spec.validate();
  if (n_total < 1) throw ValidationError("init_soc: receiver count must be at least 1");
  std::vector<double> out(n_total);
  for (auto& e : out) e = uniform(rng, 0.1, 0.9) * spec.e_total;
  return out;
}

void Scenario::validate() const {
  region.validate();
  battery.validate();
  rbc.validate();
  if (receivers.empty()) throw ValidationError("scenario has no receivers");
  for (std::size_t i = 0; i < receivers.size(); ++i) {
    const auto& r = receivers[i];
    if (!region.contains(r.pos))
      throw ValidationError("receiver " + std::to_string(i) + " at (" + format_double(r.pos.x) + ", " +
                            format_double(r.pos.y) + ") lies outside the region");
    if (!(r.energy >= 0.0 && r.energy <= battery.spec.e_total))
      throw ValidationError("receiver " + std::to_string(i) + " energy outside [0, e_total]");
  }
}

void ScenarioParams::validate() const {
  region.validate();
  thomas.validate();
  battery.validate();
  rbc.validate();
  if (receivers < 1) throw ValidationError("receiver count must be at least 1");
}

Scenario generate_scenario(const ScenarioParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  auto sample = thomas_sample(params.region, params.thomas, params.receivers, rng);
  auto energies = init_soc(params.receivers, params.battery.spec, rng);

  Scenario s;
  s.region = params.region;
  s.thomas = params.thomas;
  s.cluster_heads = sample.heads.size();
  s.seed = seed;
  s.battery = params.battery;
  s.rbc = params.rbc;
  s.receivers.reserve(params.receivers);
  for (std::size_t i = 0; i < params.receivers; ++i) s.receivers.push_back({sample.points[i], energies[i]});
  return s;
}

namespace {

template <typename Range>
std::string join_numbers(const Range& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ' ';
    out += format_double(v);
  }
  return out;
}

template <std::size_t N>
std::array<double, N> fixed_numbers(const TextDocument& doc, const std::string& key) {
  const auto v = doc.numbers(key);
  if (v.size() != N)
    throw ParseError(doc.source(), doc.line_of(key),
                     "field '" + key + "': expected " + std::to_string(N) + " numbers, got " + std::to_string(v.size()));
  std::array<double, N> out{};
  std::copy(v.begin(), v.end(), out.begin());
  return out;
}

}  // namespace

void write_scenario(const Scenario& s, std::ostream& out, const std::string& header_comment) {
  out << "# rbc-scenario";
  if (!header_comment.empty()) out << ' ' << header_comment;
  out << '\n';
  out << "format_version = " << kScenarioFormatVersion << '\n';
  out << "seed = " << s.seed << '\n';
  out << "region.length = " << format_double(s.region.length) << '\n';
  out << "region.width = " << format_double(s.region.width) << '\n';
  out << "thomas.lambda = " << format_double(s.thomas.lambda) << '\n';
  out << "thomas.sigma = " << format_double(s.thomas.sigma) << '\n';
  out << "thomas.cluster_heads = " << s.cluster_heads << '\n';
  out << "battery.e_total = " << format_double(s.battery.spec.e_total) << '\n';
  out << "battery.nominal = " << s.battery.spec.nominal << '\n';
  out << "battery.fit.numerator = " << join_numbers(s.battery.fit.numerator) << '\n';
  out << "battery.fit.denominator = " << join_numbers(s.battery.fit.denominator) << '\n';
  out << "discharge.powers = " << join_numbers(s.battery.discharge.powers) << '\n';
  out << "discharge.probs = " << join_numbers(s.battery.discharge.probs) << '\n';
  out << "rbc.a = " << format_double(s.rbc.a) << '\n';
  out << "rbc.lambda = " << format_double(s.rbc.lambda) << '\n';
  out << "rbc.m = " << format_double(s.rbc.m) << '\n';
  out << "rbc.eta_t = " << format_double(s.rbc.eta_t) << '\n';
  out << "rbc.R = " << format_double(s.rbc.R) << '\n';
  out << "rbc.C = " << format_double(s.rbc.C) << '\n';
  out << "rbc.alpha = " << format_double(s.rbc.alpha) << '\n';
  out << "rbc.beta = " << format_double(s.rbc.beta) << '\n';
  out << "rbc.l = " << format_double(s.rbc.l) << '\n';
  out << "receivers.count = " << s.receivers.size() << '\n';
  out << "[receivers]\n";
  out << "# id x y e_r\n";
  for (std::size_t i = 0; i < s.receivers.size(); ++i) {
    const auto& r = s.receivers[i];
    out << i << ' ' << format_double(r.pos.x) << ' ' << format_double(r.pos.y) << ' ' << format_double(r.energy)
        << '\n';
  }
}

Scenario read_scenario(std::istream& in, const std::string& source) {
  const auto doc = TextDocument::parse(in, source);
  const auto version = doc.integer("format_version");
  if (version != kScenarioFormatVersion)
    throw ParseError(source, doc.line_of("format_version"),
                     "unsupported scenario format_version " + std::to_string(version));

  Scenario s;
  s.seed = doc.integer("seed");
  s.region = {doc.number("region.length"), doc.number("region.width")};
  s.thomas = {doc.number("thomas.lambda"), doc.number("thomas.sigma")};
  s.cluster_heads = doc.integer("thomas.cluster_heads");
  s.battery.spec.e_total = doc.number("battery.e_total");
  s.battery.spec.nominal = doc.text("battery.nominal");
  s.battery.fit.numerator = fixed_numbers<5>(doc, "battery.fit.numerator");
  s.battery.fit.denominator = fixed_numbers<5>(doc, "battery.fit.denominator");
  s.battery.discharge.powers = doc.numbers("discharge.powers");
  s.battery.discharge.probs = doc.numbers("discharge.probs");
  s.rbc.a = doc.number("rbc.a");
  s.rbc.lambda = doc.number("rbc.lambda");
  s.rbc.m = doc.number("rbc.m");
  s.rbc.eta_t = doc.number("rbc.eta_t");
  s.rbc.R = doc.number("rbc.R");
  s.rbc.C = doc.number("rbc.C");
  s.rbc.alpha = doc.number("rbc.alpha");
  s.rbc.beta = doc.number("rbc.beta");
  s.rbc.l = doc.number("rbc.l");

  const auto count = doc.integer("receivers.count");
  if (doc.table_name() != "receivers")
    throw ParseError(source, doc.last_line(), "missing [receivers] table");
  if (doc.rows().size() != count)
    throw ParseError(source, doc.line_of("receivers.count"),
                     "receivers.count = " + std::to_string(count) + " but table has " +
                         std::to_string(doc.rows().size()) + " rows");
  s.receivers.reserve(count);
  for (std::size_t i = 0; i < doc.rows().size(); ++i) {
    const auto& row = doc.rows()[i];
    if (row.cells.size() != 4)
      throw ParseError(source, row.line, "receiver row needs 4 columns (id x y e_r)");
    if (parse_u64(row.cells[0], source, row.line) != i)
      throw ParseError(source, row.line, "receiver ids must run 0..n-1 in order");
    s.receivers.push_back({{parse_double(row.cells[1], source, row.line), parse_double(row.cells[2], source, row.line)},
                           parse_double(row.cells[3], source, row.line)});
  }
  s.validate();
  return s;
}

void save_scenario(const Scenario& s, const std::filesystem::path& path, const std::string& header_comment) {
  s.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_scenario(s, out, header_comment);
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("scenario file not found or unreadable: '" + path.string() + "'");
  return read_scenario(in, path.string());
}

}  // namespace rbc
