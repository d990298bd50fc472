#include <benchmark/benchmark.h>

#include "rglab/freegroup.hpp"
#include "rglab/models.hpp"
#include "rglab/pipeline.hpp"
#include "rglab/spectral.hpp"
#include "rglab/subgroup.hpp"

namespace {

using namespace rglab;

void BM_CountCyclicallyReduced(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_cyclically_reduced(50, length));
  }
}
BENCHMARK(BM_CountCyclicallyReduced)->Arg(6)->Arg(60)->Arg(600);

void BM_SamplePositiveTriangular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_presentation(ModelParams{n, 3, 0.4, true, seed++}));
  }
}
BENCHMARK(BM_SamplePositiveTriangular)->Arg(10)->Arg(50)->Arg(200);

void BM_FoldPositiveBlocks(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int j = static_cast<int>(state.range(1));
  const auto gens = positive_block_generators(n, j);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stallings_fold(gens, n));
  }
}
BENCHMARK(BM_FoldPositiveBlocks)->Args({2, 4})->Args({3, 4})->Args({15, 2});

void BM_LinkGraphSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Presentation p = sample_presentation(ModelParams{n, 3, 0.4, true, 1});
  const LinkGraph g = link_graph(p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(normalized_laplacian_spectrum(g));
  }
}
BENCHMARK(BM_LinkGraphSpectrum)->Arg(50)->Arg(225)->Unit(benchmark::kMillisecond);

void BM_CertifyRegrouped(benchmark::State& state) {
  const Presentation g = sample_presentation(ModelParams{15, 6, 0.4, true, 3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(g, 2, 0.35));
  }
}
BENCHMARK(BM_CertifyRegrouped)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
