#include <benchmark/benchmark.h>

#include <random>

#include "gcalc/calculus.hpp"
#include "gcalc/consistency.hpp"
#include "gcalc/density.hpp"
#include "gcalc/multigraph.hpp"

using namespace gcalc;

namespace {

StepKernel random_graphon(int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(0, 12);
  std::vector<Rational> cells(static_cast<std::size_t>(p * p));
  for (int a = 0; a < p; ++a) {
    for (int b = a; b < p; ++b) {
      const Rational x = Rational(num(rng)) / 12;
      cells[a * p + b] = x;
      cells[b * p + a] = x;
    }
  }
  return StepKernel(p, std::move(cells));
}

void BM_CanonicalKey(benchmark::State& state) {
  const auto classes = enumerate_Hn(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& g : classes) benchmark::DoNotOptimize(canonical_key(g.relabelled([&] {
      std::vector<int> perm(g.vertex_count());
      for (int v = 0; v < g.vertex_count(); ++v) perm[v] = g.vertex_count() - 1 - v;
      return perm;
    }())));
  }
  state.counters["classes"] = static_cast<double>(classes.size());
}
BENCHMARK(BM_CanonicalKey)->DenseRange(2, 5);

void BM_DensityCycle(benchmark::State& state) {
  const Multigraph cycle = Multigraph::cycle(static_cast<int>(state.range(0)));
  const StepKernel f = random_graphon(static_cast<int>(state.range(1)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(density(cycle, f));
}
BENCHMARK(BM_DensityCycle)->Args({4, 4})->Args({4, 8})->Args({6, 6})->Args({8, 4});

void BM_PiFormula(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pi_formula(n, 3));
}
BENCHMARK(BM_PiFormula)->DenseRange(1, 4);

void BM_ExtractT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  QuantumGraph F;
  for (const auto& h : enumerate_Hn(n)) F.add(h, 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract_T(F, n, 2 * n));
}
BENCHMARK(BM_ExtractT)->DenseRange(1, 3);

}  // namespace
BENCHMARK_MAIN();
