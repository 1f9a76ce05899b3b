#include <benchmark/benchmark.h>

#include "tbt/kraft.hpp"
#include "tbt/newton.hpp"
#include "tbt/orbit.hpp"
#include "tbt/semilinear.hpp"

namespace {

using namespace tbt;

// args: p, n, m
void BM_RingMul(benchmark::State& state) {
  const RingPtr R = WittRing::make(state.range(0), state.range(1), state.range(2));
  Coeffs a = R->from_int(3);
  const Coeffs x = R->add(R->generator(), R->one());
  for (auto _ : state) {
    a = R->mul(a, x);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_RingMul)->Args({2, 1, 4})->Args({2, 4, 4})->Args({3, 3, 3})->Args({5, 6, 2});

void BM_RingInverse(benchmark::State& state) {
  const RingPtr R = WittRing::make(state.range(0), state.range(1), state.range(2));
  const Coeffs u = R->add(R->generator(), R->one());
  for (auto _ : state) benchmark::DoNotOptimize(R->inverse(u));
}
BENCHMARK(BM_RingInverse)->Args({2, 4, 4})->Args({3, 3, 3});

// args: p, m, c, d
void BM_AutCount(benchmark::State& state) {
  const RingPtr R = WittRing::make(state.range(0), 1, state.range(1));
  const auto D = to_truncation(minimal_datum(state.range(2), state.range(3)), R);
  for (auto _ : state) benchmark::DoNotOptimize(aut_count(D));
}
BENCHMARK(BM_AutCount)->Args({2, 2, 1, 1})->Args({3, 2, 1, 1})->Args({2, 2, 2, 1});

void BM_NewtonPolygon(benchmark::State& state) {
  const RingPtr R = WittRing::make(state.range(0), 1, state.range(1));
  const auto D = to_truncation(minimal_datum(state.range(2), state.range(3)), R);
  for (auto _ : state) benchmark::DoNotOptimize(np_from_matrix(D));
}
BENCHMARK(BM_NewtonPolygon)->Args({2, 4, 2, 1})->Args({3, 6, 3, 2});

void BM_OrbitBfs(benchmark::State& state) {
  const RingPtr R = WittRing::make(state.range(0), 1, state.range(1));
  const ActionContext ctx = state.range(4) ? minimal_context(state.range(2), state.range(3), R)
                                           : ordinary_context(state.range(2), state.range(3), R);
  const MatrixW g0 = MatrixW::identity(R, ctx.r());
  std::uint64_t size = 0;
  for (auto _ : state) size = orbit_bfs(ctx, g0).size;
  state.counters["orbit"] = static_cast<double>(size);
}
// args: p, m, c, d, minimal
BENCHMARK(BM_OrbitBfs)->Args({2, 2, 1, 1, 1})->Args({3, 2, 1, 1, 1})->Args({2, 1, 2, 1, 1})->Args({2, 2, 1, 1, 0});

}  // namespace

BENCHMARK_MAIN();
