// Serial reference vs OpenMP population evaluation, at the sizes the
// planners actually use (100 candidates, 300 receivers).

#include <benchmark/benchmark.h>

#include <vector>

#include "rbc/objective.hpp"
#include "rbc/optimizers.hpp"
#include "rbc/scenario.hpp"

namespace {

struct Fixture {
  rbc::Scenario scenario;
  std::vector<rbc::Candidate> population;

  Fixture(std::size_t receivers, std::size_t n_t, std::size_t pop_size) {
    rbc::ScenarioParams params;
    params.receivers = receivers;
    scenario = rbc::generate_scenario(params, 7);
    rbc::Rng rng(11);
    for (std::size_t i = 0; i < pop_size; ++i)
      population.push_back(rbc::random_deploy(scenario.region, n_t, rng).positions);
  }
};

void BM_EvaluateSerial(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 100);
  const rbc::FitnessKernel kernel(fx.scenario, rbc::TransmitterConfig{}, rbc::Weights{});
  std::vector<double> out(fx.population.size());
  for (auto _ : state) {
    rbc::evaluate_population_serial(kernel, fx.population, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(fx.population.size()));
}

void BM_EvaluateOpenMP(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)), 100);
  const rbc::FitnessKernel kernel(fx.scenario, rbc::TransmitterConfig{}, rbc::Weights{});
  std::vector<double> out(fx.population.size());
  for (auto _ : state) {
    rbc::evaluate_population(kernel, fx.population, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(fx.population.size()));
}

void BM_GaGenerations(benchmark::State& state) {
  Fixture fx(300, 5, 0);
  rbc::GaConfig ga;
  ga.max_generations = 50;
  ga.parallel = state.range(0) != 0;
  for (auto _ : state) {
    auto r = rbc::ga_deploy(fx.scenario, rbc::TransmitterConfig{}, 5, ga);
    benchmark::DoNotOptimize(r.fitness);
  }
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Args({300, 5})->Args({300, 9})->Args({1000, 9});
BENCHMARK(BM_EvaluateOpenMP)->Args({300, 5})->Args({300, 9})->Args({1000, 9});
BENCHMARK(BM_GaGenerations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
