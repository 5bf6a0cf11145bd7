#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "epilim/measure.hpp"
#include "epilim/sequence.hpp"

namespace epilim {

/// Sequence n -> per-atom real vector with a declared tail.
struct AtomSequence {
  std::function<std::vector<double>(std::int64_t)> provider;
  std::size_t atom_count = 0;
  Tail tail;

  static AtomSequence materialized(std::vector<std::vector<double>> values, Tail tail);
};

struct MassBudgetSolution {
  double value = 0.0;
  std::vector<std::size_t> set;
};

/// max over atom sets S with mu(S) <= budget of sum_{i in S} mu_i u_i,
/// negative contributions never selected. Exact: greedy top-m on equal
/// weights, branch-and-bound knapsack otherwise (atom count <= 25).
MassBudgetSolution best_mass_budget(const std::vector<double>& u, const MeasureSpace& space,
                                    double budget);

/// Exhaustive variant over all subsets; the small-instance oracle.
MassBudgetSolution best_mass_budget_bruteforce(const std::vector<double>& u,
                                               const MeasureSpace& space, double budget);

struct DeltaPlusReport {
  double value = 0.0;  // +inf when diverging
  bool diverging = false;
  bool exact = false;  // false for truncated tails: evidence only
  std::vector<std::pair<double, double>> trace;  // (epsilon, T(epsilon)) down the ladder
  // Worst selection at the smallest rung, replayable.
  std::vector<std::size_t> witness_set;
  std::int64_t witness_n = 0;
  // Inclusion-decreasing chain of the per-rung selections (nested by
  // intersection), the set-sequence form of the witness.
  SetSequence witness_chain;
};

/// Default descending mass-budget ladder: total/2, total/4, ... down to
/// below the smallest selectable mass (fixed spaces degenerate to 0 there).
std::vector<double> delta_plus_ladder(const MeasureSpace& space, int rungs = 0);

/// Equi-integrability index surrogate: stabilized value of
/// T(eps) = limsup_n max_{mu(S)<=eps} int_S u_n dmu down the eps ladder.
/// T is nonincreasing down the ladder; the ladder trace is reported.
DeltaPlusReport delta_plus_greedy(const AtomSequence& u, const MeasureSpace& space,
                                  std::vector<double> eps_ladder = {});

/// Same outer logic with the exhaustive subset oracle inside. Refuses
/// instances beyond atom count 12, tail window 8, max_depth 4.
DeltaPlusReport delta_plus_bruteforce(const AtomSequence& u, const MeasureSpace& space,
                                      int max_depth);

}  // namespace epilim
