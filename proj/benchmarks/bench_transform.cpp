#include <benchmark/benchmark.h>

#include "epilim/generators.hpp"
#include "epilim/legendre.hpp"
#include "epilim/random.hpp"

using namespace epilim;

namespace {

GridFunction make_instance(std::int64_t half) {
  Xorshift rng(0xBE7Cull + std::uint64_t(half));
  const Grid g = Grid::symmetric(double(half), 2 * half + 1);
  return gen::random_pwl(rng, g, 8, 64, true);
}

void TransformBruteforce(benchmark::State& state) {
  const GridFunction f = make_instance(state.range(0));
  const DualGrid dual = Grid::symmetric(32.0, 129);
  for (auto _ : state) {
    auto r = conjugate_bruteforce(f, dual);
    benchmark::DoNotOptimize(r.function.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(TransformBruteforce)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void TransformFast(benchmark::State& state) {
  const GridFunction f = make_instance(state.range(0));
  const DualGrid dual = Grid::symmetric(32.0, 129);
  for (auto _ : state) {
    auto r = conjugate_fast_1d(f, dual);
    benchmark::DoNotOptimize(r.function.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(TransformFast)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void Envelope(benchmark::State& state) {
  const GridFunction f = make_instance(state.range(0));
  for (auto _ : state) {
    auto env = biconjugate(f);
    benchmark::DoNotOptimize(env.values.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(Envelope)->RangeMultiplier(4)->Range(64, 2048)->Complexity();

}  // namespace

BENCHMARK_MAIN();
