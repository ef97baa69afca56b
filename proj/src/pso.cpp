#include "rbc/optimizers.hpp"

#include <algorithm>
#include <numeric>

#include "rbc/error.hpp"

namespace rbc {

void PsoConfig::validate() const {
  if (swarm_size < 1) throw ValidationError("PSO swarm size must be at least 1");
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw ValidationError("PSO acceleration constants must be non-negative");
  if (!std::isfinite(omega_start) || !std::isfinite(omega_end)) throw ValidationError("PSO inertia must be finite");
  if (v_max && !(*v_max > 0.0)) throw ValidationError("PSO v_max must be positive");
  weights.validate();
}

double PsoConfig::velocity_cap(const Region& region) const { return v_max ? *v_max : 0.2 * region.diagonal(); }

namespace {

// Clamp one axis to [0, hi]; a clamped axis loses its velocity.
void clamp_axis(double& pos, double& vel, double hi) {
  if (pos < 0.0) {
    pos = 0.0;
    vel = 0.0;
  } else if (pos > hi) {
    pos = hi;
    vel = 0.0;
  }
}

}  // namespace

PlanResult pso_deploy(const Scenario& scenario, const TransmitterConfig& cfg, std::size_t n_t, const PsoConfig& pso) {
  pso.validate();
  scenario.validate();
  if (n_t < 1) throw ValidationError("transmitter count must be at least 1");

  const FitnessKernel kernel(scenario, cfg, pso.weights);
  const auto evaluate_all = [&](const std::vector<Candidate>& swarm, std::vector<double>& fit) {
    if (pso.parallel)
      evaluate_population(kernel, swarm, fit);
    else
      evaluate_population_serial(kernel, swarm, fit);
  };

  Rng rng(pso.seed);
  const Region& region = scenario.region;
  const std::size_t mp = pso.swarm_size;
  const double vmax = pso.velocity_cap(region);

  std::vector<Candidate> pos(mp, Candidate(n_t));
  std::vector<Candidate> vel(mp, Candidate(n_t));
  for (auto& particle : pos)
    for (auto& q : particle) {
      q.x = uniform(rng, 0.0, region.length);
      q.y = uniform(rng, 0.0, region.width);
    }
  if (pso.random_initial_velocity)
    for (auto& particle : vel)
      for (auto& v : particle) {
        v.x = uniform(rng, -vmax, vmax);
        v.y = uniform(rng, -vmax, vmax);
      }

  std::vector<double> fit(mp);
  evaluate_all(pos, fit);
  std::vector<Candidate> pbest = pos;
  std::vector<double> pbest_fit = fit;
  auto g = static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
  Candidate gbest = pos[g];
  double gbest_fit = fit[g];

  const auto mean_of = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };

  PlanResult result;
  result.history.reserve(pso.max_iterations + 1);
  result.history.push_back({0, gbest_fit, mean_of(fit)});

  for (std::size_t k = 0; k < pso.max_iterations; ++k) {
    const double t = pso.max_iterations > 1 ? static_cast<double>(k) / static_cast<double>(pso.max_iterations - 1) : 0.0;
    const double inertia = pso.omega_start + (pso.omega_end - pso.omega_start) * t;

    for (std::size_t i = 0; i < mp; ++i) {
      for (std::size_t j = 0; j < n_t; ++j) {
        const double r1 = unit_uniform(rng);
        const double r2 = unit_uniform(rng);
        Point& q = pos[i][j];
        Point& v = vel[i][j];
        v.x = inertia * v.x + pso.c1 * r1 * (pbest[i][j].x - q.x) + pso.c2 * r2 * (gbest[j].x - q.x);
        v.y = inertia * v.y + pso.c1 * r1 * (pbest[i][j].y - q.y) + pso.c2 * r2 * (gbest[j].y - q.y);
        v.x = std::clamp(v.x, -vmax, vmax);
        v.y = std::clamp(v.y, -vmax, vmax);
        q.x += v.x;
        q.y += v.y;
        clamp_axis(q.x, v.x, region.length);
        clamp_axis(q.y, v.y, region.width);
      }
    }

    evaluate_all(pos, fit);

    for (std::size_t i = 0; i < mp; ++i) {
      if (fit[i] > pbest_fit[i]) {
        pbest_fit[i] = fit[i];
        pbest[i] = pos[i];
      }
      if (pbest_fit[i] > gbest_fit) {
        gbest_fit = pbest_fit[i];
        gbest = pbest[i];
      }
    }
    result.history.push_back({k + 1, gbest_fit, mean_of(fit)});
  }

  result.deployment = Deployment{std::move(gbest), cfg};
  result.fitness = gbest_fit;
  return result;
}

}  // namespace rbc
