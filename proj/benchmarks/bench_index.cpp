#include <benchmark/benchmark.h>

#include "epilim/builtins.hpp"
#include "epilim/delta_plus.hpp"

using namespace epilim;

namespace {

void IndexGreedyDyadic(benchmark::State& state) {
  const int depth = int(state.range(0));
  const MeasureSpace sp = MeasureSpace::dyadic(depth);
  const AtomSequence u = builtins::spike_sequence(sp, 1.0, std::int64_t(4) << depth);
  for (auto _ : state) {
    auto rep = delta_plus_greedy(u, sp);
    benchmark::DoNotOptimize(rep.value);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(IndexGreedyDyadic)->DenseRange(6, 12, 2);

void IndexKnapsack(benchmark::State& state) {
  const std::size_t atoms = std::size_t(state.range(0));
  std::vector<double> w(atoms), u(atoms);
  for (std::size_t i = 0; i < atoms; ++i) {
    w[i] = 0.5 + double(i % 7) * 0.25;
    u[i] = double((i * 13) % 11) - 3.0;
  }
  const MeasureSpace sp = MeasureSpace::finite(w);
  for (auto _ : state) {
    auto sol = best_mass_budget(u, sp, sp.total_mass() / 4.0);
    benchmark::DoNotOptimize(sol.value);
  }
}
BENCHMARK(IndexKnapsack)->DenseRange(5, 25, 5);

}  // namespace

BENCHMARK_MAIN();
