#include "povsim/af_classifier.hpp"
#include "povsim/experiment.hpp"
#include "povsim/mrf.hpp"
#include "povsim/synthgen.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace povsim;

SimConfig with_n(std::int64_t n) {
  SimConfig cfg;
  cfg.n_individuals = static_cast<std::size_t>(n);
  return cfg;
}

std::pair<Dataset, Dataset> default_split(const SimConfig &cfg) {
  const Dataset pop = generate_population(cfg, 0);
  RngStream rng = derive_stream(cfg.base_seed, 0);
  rng.discard(pop.size() * draws_per_record(cfg.n_indicators));
  return split(pop, rng, cfg);
}

void BM_GeneratePopulation(benchmark::State &state) {
  const SimConfig cfg = with_n(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_population(cfg, 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GeneratePopulation)->Arg(5000)->Arg(50000);

void BM_Fit(benchmark::State &state) {
  const SimConfig cfg = with_n(state.range(0));
  const Dataset train = default_split(cfg).first;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(train, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(train.size()));
}
BENCHMARK(BM_Fit)->Arg(5000)->Arg(50000);

void BM_PosteriorFull(benchmark::State &state) {
  const SimConfig cfg = with_n(20000);
  const auto [train, test] = default_split(cfg);
  const MrfModel model = fit(train, cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto &x = test.records[i++ % test.size()].x;
    benchmark::DoNotOptimize(posterior_z(model, Evidence::full(x)));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PosteriorFull);

void BM_PosteriorPartial(benchmark::State &state) {
  SimConfig cfg = with_n(20000);
  cfg.n_indicators = static_cast<std::size_t>(state.range(0));
  const auto [train, test] = default_split(cfg);
  const MrfModel model = fit(train, cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto &x = test.records[i++ % test.size()].x;
    Evidence ev(x.size());
    for (std::size_t j = 0; j < x.size(); j += 2) ev.observe(j, x[j]);
    benchmark::DoNotOptimize(posterior_z(model, ev));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PosteriorPartial)->Arg(10)->Arg(40);

void BM_ClassifyAf(benchmark::State &state) {
  const SimConfig cfg = with_n(20000);
  const Dataset pop = generate_population(cfg, 0);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_af(pop.records[i++ % pop.size()].x, cfg));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClassifyAf);

void BM_RunExperiment(benchmark::State &state) {
  SimConfig cfg = with_n(5000);
  cfg.n_runs = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg));
  }
}
BENCHMARK(BM_RunExperiment)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
