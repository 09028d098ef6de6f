#include <benchmark/benchmark.h>

#include <vector>

#include "fpnn/dataset.hpp"
#include "fpnn/frechet.hpp"
#include "fpnn/ga_sa.hpp"
#include "fpnn/rbf_network.hpp"
#include "fpnn/rng.hpp"

using namespace fpnn;

namespace {

Sequence random_sequence(Rng& rng, std::size_t len) {
  std::vector<double> v(len);
  for (double& x : v) x = rng.uniform(0.0, 1.0);
  return Sequence(std::move(v));
}

void BM_DiscreteFrechet(benchmark::State& state) {
  Rng rng(1);
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  const Sequence a = random_sequence(rng, len);
  const Sequence b = random_sequence(rng, len);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_frechet(a, b));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DiscreteFrechet)->Arg(14)->Arg(64)->Arg(256)->Complexity();

void BM_BruteforceOracle(benchmark::State& state) {
  Rng rng(2);
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  const Sequence a = random_sequence(rng, len);
  const Sequence b = random_sequence(rng, len);
  for (auto _ : state) {
    benchmark::DoNotOptimize(discrete_frechet_bruteforce(a, b));
  }
}
BENCHMARK(BM_BruteforceOracle)->Arg(4)->Arg(6)->Arg(8);

void BM_Objective(benchmark::State& state) {
  Rng rng(3);
  const auto raw = data::synth_generate(30, 14, 0.05, rng);
  const auto norm = data::fit_normalization(raw);
  const auto samples = data::apply_normalization(norm, raw);
  const NetworkShape shape{1, static_cast<std::size_t>(state.range(0)), 14};
  data::BoundsConfig bcfg;
  const auto bounds = data::derive_gene_bounds(samples, shape, bcfg);
  Rng gene_rng(4);
  std::vector<double> genes(bounds.size());
  for (std::size_t g = 0; g < genes.size(); ++g) {
    genes[g] = gene_rng.uniform(bounds.lower(g), bounds.upper(g));
  }
  const NetworkParams params = decode(genes, shape);
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective(params, samples));
  }
}
BENCHMARK(BM_Objective)->Arg(2)->Arg(8);

void BM_TrainGeneration(benchmark::State& state) {
  Rng rng(5);
  const auto raw = data::synth_generate(15, 10, 0.05, rng);
  const auto norm = data::fit_normalization(raw);
  const auto samples = data::apply_normalization(norm, raw);
  const NetworkShape shape{1, 4, 10};
  data::BoundsConfig bcfg;
  const auto bounds = data::derive_gene_bounds(samples, shape, bcfg);
  ga::TrainerConfig cfg;
  cfg.population_size = 25;
  cfg.max_generations = 1;
  cfg.target_error = 0.0;
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(ga::train(shape, samples, bounds, cfg));
  }
}
BENCHMARK(BM_TrainGeneration);

}  // namespace

BENCHMARK_MAIN();
