#include <benchmark/benchmark.h>

#include <random>

#include "revrw/canon.hpp"
#include "revrw/normalize.hpp"
#include "revrw/sim.hpp"

namespace {

revrw::Circuit random_circuit(int n, int gates, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  revrw::Circuit c(n);
  for (int k = 0; k < gates; ++k) {
    const revrw::Line t = 1 + static_cast<revrw::Line>(rng() % n);
    revrw::LineSet P, N;
    for (revrw::Line l = 1; l <= n; ++l) {
      if (l == t) continue;
      const auto r = rng() % 3;
      if (r == 1) P = P.with(l);
      if (r == 2) N = N.with(l);
    }
    c.push_back(revrw::Gate(P, N, t));
  }
  return c;
}

void BM_Simulate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const revrw::Circuit c = random_circuit(n, 100, 7);
  for (auto _ : state) benchmark::DoNotOptimize(revrw::simulate(c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.size()) << n);
}
BENCHMARK(BM_Simulate)->DenseRange(4, 16, 4);

void BM_ConstructiveCanonicalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto path = revrw::gray_path(n);
  const revrw::Permutation p = revrw::simulate(random_circuit(n, 50, 11));
  for (auto _ : state) benchmark::DoNotOptimize(revrw::constructive_canonicalize(p, path));
}
BENCHMARK(BM_ConstructiveCanonicalize)->DenseRange(2, 12, 2);

void BM_Canonicalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto path = revrw::gray_path(n);
  const revrw::Circuit c = random_circuit(n, 15, 13);
  for (auto _ : state) benchmark::DoNotOptimize(revrw::canonicalize(c, path));
}
BENCHMARK(BM_Canonicalize)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
