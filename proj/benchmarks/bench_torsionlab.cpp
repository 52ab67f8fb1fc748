#include <benchmark/benchmark.h>

#include <random>

#include "torsionlab/catalog.hpp"
#include "torsionlab/classifiers.hpp"
#include "torsionlab/existence.hpp"

using namespace tl;

namespace {

Mat random_mat(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-3, 3);
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

void BM_ObstructionSpaceSp(benchmark::State& state) {
  const auto h = sp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_space(h));
}
BENCHMARK(BM_ObstructionSpaceSp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ObstructionSpaceSo(benchmark::State& state) {
  const auto h = so(static_cast<std::size_t>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(obstruction_space(h));
}
BENCHMARK(BM_ObstructionSpaceSo)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_CrosscheckCatalog(benchmark::State& state) {
  const auto catalog = standard_catalog();
  for (auto _ : state)
    for (const auto& e : catalog) benchmark::DoNotOptimize(crosscheck(e.algebra));
}
BENCHMARK(BM_CrosscheckCatalog)->Unit(benchmark::kMillisecond);

void BM_CheckTorsionFree(benchmark::State& state) {
  const auto h = gl_C(3);
  const AlmostAbelian g(Mat{{1, -2, 0, 0, 3}, {2, 1, 0, 0, 4}, {0, 0, 5, -1, 0}, {0, 0, 1, 5, 1}, {0, 0, 0, 0, 7}});
  for (auto _ : state) benchmark::DoNotOptimize(check_torsion_free(h, g));
}
BENCHMARK(BM_CheckTorsionFree)->Unit(benchmark::kMillisecond);

void BM_DecideProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AlmostAbelian g(random_mat(n - 1, 42));
  for (auto _ : state) benchmark::DoNotOptimize(decide_product(g, n / 2));
}
BENCHMARK(BM_DecideProduct)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_DecideTangent(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const AlmostAbelian g(random_mat(n - 1, 43));
  for (auto _ : state) benchmark::DoNotOptimize(decide_tangent(g));
}
BENCHMARK(BM_DecideTangent)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_ClassifyHyperparacomplex(benchmark::State& state) {
  const AlmostAbelian g(random_mat(static_cast<std::size_t>(state.range(0)), 44));
  for (auto _ : state) benchmark::DoNotOptimize(classify_hyperparacomplex(g));
}
BENCHMARK(BM_ClassifyHyperparacomplex)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
