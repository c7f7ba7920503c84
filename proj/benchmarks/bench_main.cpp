#include "torilang/langlands.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace torilang;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> entry(-bound, bound);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
  return a;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<IntMatrix> inputs;
  for (int i = 0; i < 64; ++i) inputs.push_back(random_matrix(rng, n, 20));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(snf(inputs[k++ % inputs.size()]));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(6)->Arg(12);

void BM_H1Catalog(benchmark::State& state) {
  const FiniteGroup g = catalog::by_name(state.range(0) == 8 ? "D4" : "D6");
  const auto modules = module_catalog(g);
  for (auto _ : state)
    for (const auto& nm : modules) benchmark::DoNotOptimize(H1Result(nm.module, g.whole()).group());
  state.counters["modules"] = static_cast<double>(modules.size());
}
BENCHMARK(BM_H1Catalog)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Prop18Chain(benchmark::State& state) {
  const FiniteGroup g = catalog::dihedral(4);
  const Subgroup h_e = g.subgroup({0, 1, 2, 3});
  const Subgroup h_k = g.subgroup({0, 2});
  const auto modules = module_catalog(g);
  for (auto _ : state)
    for (const auto& nm : modules) benchmark::DoNotOptimize(verify_prop18(nm.module, h_e, h_k).failures.size());
}
BENCHMARK(BM_Prop18Chain)->Unit(benchmark::kMillisecond);

void BM_DepthZeroCatalog(benchmark::State& state) {
  const long q = state.range(0);
  const long p = q == 4 ? 2 : q;
  const auto tori = torus_catalog(p, q);
  for (auto _ : state)
    for (const auto& t : tori) benchmark::DoNotOptimize(verify_depth_zero_match(t.torus).ok());
}
BENCHMARK(BM_DepthZeroCatalog)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
