#include "rbc/objective.hpp"

#include <limits>
#include <string>

#include "rbc/error.hpp"

namespace rbc {

void Deployment::validate(const Region& region) const {
  cfg.validate();
  if (positions.empty()) throw ValidationError("deployment needs at least one transmitter");
  for (std::size_t k = 0; k < positions.size(); ++k)
    if (!region.contains(positions[k]))
      throw ValidationError("transmitter " + std::to_string(k) + " lies outside the region");
}

void Weights::validate() const {
  if (!(omega1 >= 0.0 && omega1 <= 1.0) || !(omega2 >= 0.0 && omega2 <= 1.0))
    throw ValidationError("objective weights must lie in [0, 1]");
}

CoverageReport covered_mask(const Deployment& dep, const Scenario& scenario) {
  const double r = covering_radius(dep.cfg, scenario.rbc);
  const double r2 = r * r;
  CoverageReport rep;
  rep.covered.assign(scenario.receivers.size(), false);
  for (std::size_t i = 0; i < scenario.receivers.size(); ++i) {
    for (const auto& t : dep.positions) {
      if (squared_distance(t, scenario.receivers[i].pos) <= r2) {
        rep.covered[i] = true;
        ++rep.n_covered;
        break;
      }
    }
  }
  return rep;
}

CoverageReport evaluate(const Deployment& dep, const Scenario& scenario, const Weights& w) {
  return FitnessKernel(scenario, dep.cfg, w).report(dep.positions);
}

double fitness(const Deployment& dep, const Scenario& scenario, const Weights& w) {
  return FitnessKernel(scenario, dep.cfg, w)(dep.positions);
}

std::vector<std::ptrdiff_t> assign_nearest(const Deployment& dep, const Scenario& scenario) {
  const double r = covering_radius(dep.cfg, scenario.rbc);
  const double r2 = r * r;
  std::vector<std::ptrdiff_t> out(scenario.receivers.size(), kUnassigned);
  for (std::size_t i = 0; i < scenario.receivers.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dep.positions.size(); ++k) {
      const double d2 = squared_distance(dep.positions[k], scenario.receivers[i].pos);
      if (d2 <= r2 && d2 < best) {
        best = d2;
        out[i] = static_cast<std::ptrdiff_t>(k);
      }
    }
  }
  return out;
}

FitnessKernel::FitnessKernel(const Scenario& scenario, const TransmitterConfig& cfg, const Weights& w)
    : w_(w) {
  w.validate();
  if (scenario.receivers.empty()) throw ValidationError("fitness: scenario has no receivers");
  radius_ = covering_radius(cfg, scenario.rbc);
  radius_sq_ = radius_ * radius_;
  const double e_total = scenario.battery.spec.e_total;
  const std::size_t n = scenario.receivers.size();
  xs_.reserve(n);
  ys_.reserve(n);
  need_.reserve(n);
  for (const auto& r : scenario.receivers) {
    xs_.push_back(r.pos.x);
    ys_.push_back(r.pos.y);
    need_.push_back(1.0 - r.energy / e_total);
    need_total_ += need_.back();
  }
}

double FitnessKernel::combine(std::size_t n_covered, double need_covered) const {
  const double q1 = static_cast<double>(n_covered) / static_cast<double>(xs_.size());
  const double q2 = need_total_ > 0.0 ? need_covered / need_total_ : (n_covered > 0 ? 1.0 : 0.0);
  return w_.omega1 * q1 + w_.omega2 * q2;
}

double FitnessKernel::operator()(std::span<const Point> transmitters) const {
  const std::size_t n = xs_.size();
  const double* xs = xs_.data();
  const double* ys = ys_.data();
  const double* need = need_.data();
  const double r2 = radius_sq_;
  // Transmitter-major sweep over a per-thread mask keeps the inner loop branch-free.
  thread_local std::vector<double> hit;
  hit.assign(n, 0.0);
  double* h = hit.data();
  for (const Point& t : transmitters) {
    const double tx = t.x;
    const double ty = t.y;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = tx - xs[i];
      const double dy = ty - ys[i];
      h[i] = (dx * dx + dy * dy <= r2) ? 1.0 : h[i];
    }
  }
  double n_covered = 0.0;
  double need_covered = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    n_covered += h[i];
    need_covered += h[i] * need[i];
  }
  return combine(static_cast<std::size_t>(n_covered), need_covered);
}

CoverageReport FitnessKernel::report(std::span<const Point> transmitters) const {
  CoverageReport rep;
  const std::size_t n = xs_.size();
  rep.covered.assign(n, false);
  double need_covered = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Point& t : transmitters) {
      const double dx = t.x - xs_[i];
      const double dy = t.y - ys_[i];
      if (dx * dx + dy * dy <= radius_sq_) {
        rep.covered[i] = true;
        ++rep.n_covered;
        need_covered += need_[i];
        break;
      }
    }
  }
  rep.q1 = static_cast<double>(rep.n_covered) / static_cast<double>(n);
  rep.q2 = need_total_ > 0.0 ? need_covered / need_total_ : (rep.n_covered > 0 ? 1.0 : 0.0);
  rep.degenerate_q2 = !(need_total_ > 0.0);
  rep.q = combine(rep.n_covered, need_covered);
  return rep;
}

void evaluate_population_serial(const FitnessKernel& kernel, std::span<const Candidate> population,
                                std::span<double> out) {
  if (out.size() != population.size()) throw ValidationError("population/output size mismatch");
  for (std::size_t i = 0; i < population.size(); ++i) out[i] = kernel(population[i]);
}

void evaluate_population(const FitnessKernel& kernel, std::span<const Candidate> population, std::span<double> out) {
  if (out.size() != population.size()) throw ValidationError("population/output size mismatch");
  const auto n = static_cast<std::ptrdiff_t>(population.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = kernel(population[i]);
}

}  // namespace rbc
