#include "rbc/optimizers.hpp"

#include <algorithm>
#include <numeric>

#include "rbc/error.hpp"

namespace rbc {

void GaConfig::validate() const {
  if (population_size < 2) throw ValidationError("GA population size must be at least 2");
  if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) throw ValidationError("GA crossover_prob must lie in [0, 1]");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) throw ValidationError("GA mutation_prob must lie in [0, 1]");
  weights.validate();
}

namespace {

Candidate random_candidate(const Region& region, std::size_t n_t, Rng& rng) {
  Candidate c(n_t);
  for (auto& p : c) {
    p.x = uniform(rng, 0.0, region.length);
    p.y = uniform(rng, 0.0, region.width);
  }
  return c;
}

// Fitness-proportional pick; uniform when every fitness is zero.
std::vector<std::size_t> roulette(const std::vector<double>& fitness, std::size_t picks, Rng& rng) {
  std::vector<double> cumulative(fitness.size());
  std::partial_sum(fitness.begin(), fitness.end(), cumulative.begin());
  const double total = cumulative.back();
  std::vector<std::size_t> out(picks);
  if (!(total > 0.0)) {
    std::uniform_int_distribution<std::size_t> any(0, fitness.size() - 1);
    for (auto& i : out) i = any(rng);
    return out;
  }
  for (auto& i : out) {
    const double target = unit_uniform(rng) * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    i = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), fitness.size() - 1);
  }
  return out;
}

void mutate(Candidate& ind, const Region& region, const GaConfig& ga, Rng& rng) {
  switch (ga.mutation_scope) {
    case MutationScope::axis:
      for (auto& p : ind) {
        if (unit_uniform(rng) < ga.mutation_prob) p.x = uniform(rng, 0.0, region.length);
        if (unit_uniform(rng) < ga.mutation_prob) p.y = uniform(rng, 0.0, region.width);
      }
      break;
    case MutationScope::transmitter:
      for (auto& p : ind) {
        if (unit_uniform(rng) < ga.mutation_prob) {
          p.x = uniform(rng, 0.0, region.length);
          p.y = uniform(rng, 0.0, region.width);
        }
      }
      break;
    case MutationScope::individual:
      if (unit_uniform(rng) < ga.mutation_prob) {
        auto& p = ind[std::uniform_int_distribution<std::size_t>(0, ind.size() - 1)(rng)];
        p.x = uniform(rng, 0.0, region.length);
        p.y = uniform(rng, 0.0, region.width);
      }
      break;
  }
}

}  // namespace

PlanResult ga_deploy(const Scenario& scenario, const TransmitterConfig& cfg, std::size_t n_t, const GaConfig& ga) {
  ga.validate();
  scenario.validate();
  if (n_t < 1) throw ValidationError("transmitter count must be at least 1");

  const FitnessKernel kernel(scenario, cfg, ga.weights);
  const auto evaluate_all = [&](const std::vector<Candidate>& pop, std::vector<double>& fit) {
    if (ga.parallel)
      evaluate_population(kernel, pop, fit);
    else
      evaluate_population_serial(kernel, pop, fit);
  };
  const auto mean_of = [](const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  };

  Rng rng(ga.seed);
  const Region& region = scenario.region;
  const std::size_t np = ga.population_size;

  std::vector<Candidate> pop;
  pop.reserve(np);
  for (std::size_t i = 0; i < np; ++i) pop.push_back(random_candidate(region, n_t, rng));
  std::vector<double> fit(np);
  evaluate_all(pop, fit);

  std::size_t best_idx = static_cast<std::size_t>(std::max_element(fit.begin(), fit.end()) - fit.begin());
  Candidate best = pop[best_idx];
  double best_fit = fit[best_idx];

  PlanResult result;
  result.history.reserve(ga.max_generations + 1);
  result.history.push_back({0, best_fit, mean_of(fit)});

  std::uniform_int_distribution<std::size_t> cut_point(1, n_t > 1 ? n_t - 1 : 1);
  std::vector<Candidate> next(np);

  for (std::size_t gen = 1; gen <= ga.max_generations; ++gen) {
    // S1 selection
    const auto parents = roulette(fit, np, rng);
    for (std::size_t i = 0; i < np; ++i) next[i] = pop[parents[i]];
    pop.swap(next);

    // S2 single-point crossover on adjacent pairs, prefix swap
    for (std::size_t i = 0; i + 1 < np; i += 2) {
      if (unit_uniform(rng) >= ga.crossover_prob || n_t < 2) continue;
      const std::size_t cut = cut_point(rng);
      std::swap_ranges(pop[i].begin(), pop[i].begin() + static_cast<std::ptrdiff_t>(cut), pop[i + 1].begin());
    }

    // S3 mutation: redraw anywhere in the region
    if (ga.mutation_prob > 0.0) {
      for (auto& ind : pop) mutate(ind, region, ga, rng);
    }

    // S4 evaluation
    evaluate_all(pop, fit);

    // S5 elitist repair: previous best replaces the current worst
    const auto [min_it, max_it] = std::minmax_element(fit.begin(), fit.end());
    if (*max_it < best_fit) {
      const auto worst = static_cast<std::size_t>(min_it - fit.begin());
      pop[worst] = best;
      fit[worst] = best_fit;
    } else if (*max_it > best_fit) {
      best_idx = static_cast<std::size_t>(max_it - fit.begin());
      best = pop[best_idx];
      best_fit = *max_it;
    }
    result.history.push_back({gen, best_fit, mean_of(fit)});
  }

  result.deployment = Deployment{std::move(best), cfg};
  result.fitness = best_fit;
  return result;
}

}  // namespace rbc
