#include "epilim/delta_plus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace epilim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergeCeiling = 1e9;

void validate_tail(const AtomSequence& u) {
  const Tail& t = u.tail;
  const auto eq = [](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return false;
    return true;
  };
  if (t.kind == TailKind::eventually_constant) {
    const auto base = u.provider(t.n0);
    if (!eq(base, u.provider(t.n0 + 1)) || !eq(base, u.provider(t.n0 + 3)))
      throw std::invalid_argument("AtomSequence: declared eventually-constant tail fails sampling");
  } else if (t.kind == TailKind::eventually_periodic) {
    for (std::int64_t k = 0; k < t.period; ++k)
      if (!eq(u.provider(t.n0 + k), u.provider(t.n0 + k + t.period)))
        throw std::invalid_argument("AtomSequence: declared periodic tail fails sampling");
  }
}

// Branch and bound for max sum of gains with weight budget; items sorted by
// value density (= u) descending, fractional relaxation as the bound.
struct Knapsack {
  const std::vector<double>& w;
  const std::vector<double>& g;
  double budget;
  double best = 0.0;
  std::vector<char> cur, best_set;

  Knapsack(const std::vector<double>& wi, const std::vector<double>& gi, double b)
      : w(wi), g(gi), budget(b), cur(wi.size(), 0), best_set(wi.size(), 0) {}

  double relax(std::size_t from, double cap) const {
    double v = 0.0;
    for (std::size_t i = from; i < w.size() && cap > 0; ++i) {
      const double take = std::min(cap, w[i]);
      v += g[i] * (take / w[i]);
      cap -= take;
    }
    return v;
  }

  void dfs(std::size_t i, double cap, double acc) {
    if (acc > best) {
      best = acc;
      best_set = cur;
    }
    if (i >= w.size()) return;
    if (acc + relax(i, cap) <= best + 1e-15) return;
    if (w[i] <= cap + 1e-12) {
      cur[i] = 1;
      dfs(i + 1, cap - w[i], acc + g[i]);
      cur[i] = 0;
    }
    dfs(i + 1, cap, acc);
  }
};

}  // namespace

AtomSequence AtomSequence::materialized(std::vector<std::vector<double>> values, Tail tail) {
  if (values.empty()) throw std::invalid_argument("AtomSequence: empty materialization");
  AtomSequence s;
  s.atom_count = values[0].size();
  s.tail = tail;
  s.provider = [data = std::move(values), tail](std::int64_t n) {
    n = std::max<std::int64_t>(n, 0);
    const std::int64_t len = std::int64_t(data.size());
    if (n < len) return data[std::size_t(n)];
    // Extend past the materialized window according to the declared tail.
    if (tail.kind == TailKind::eventually_periodic) {
      const std::int64_t k = tail.n0 + (n - tail.n0) % tail.period;
      return data[std::size_t(std::min(k, len - 1))];
    }
    return data[std::size_t(len - 1)];
  };
  return s;
}

MassBudgetSolution best_mass_budget(const std::vector<double>& u, const MeasureSpace& space,
                                    double budget) {
  if (u.size() != space.size()) throw std::invalid_argument("best_mass_budget: size mismatch");
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] > 0.0) cand.push_back(i);

  MassBudgetSolution sol;
  if (cand.empty() || budget <= 0) return sol;

  if (space.equal_weights()) {
    const double w = space.atoms[0];
    const std::size_t m = std::min<std::size_t>(cand.size(), std::size_t(std::floor(budget / w + 1e-12)));
    std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
    for (std::size_t k = 0; k < m; ++k) {
      sol.set.push_back(cand[k]);
      sol.value += w * u[cand[k]];
    }
    std::sort(sol.set.begin(), sol.set.end());
    return sol;
  }

  if (cand.size() > 25)
    throw std::invalid_argument("best_mass_budget: exact knapsack limited to 25 unequal-weight atoms");
  std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) { return u[a] > u[b]; });
  std::vector<double> w, g;
  for (std::size_t i : cand) {
    w.push_back(space.atoms[i]);
    g.push_back(space.atoms[i] * u[i]);
  }
  Knapsack ks(w, g, budget);
  ks.dfs(0, budget, 0.0);
  sol.value = ks.best;
  for (std::size_t k = 0; k < cand.size(); ++k)
    if (ks.best_set[k]) sol.set.push_back(cand[k]);
  std::sort(sol.set.begin(), sol.set.end());
  return sol;
}

MassBudgetSolution best_mass_budget_bruteforce(const std::vector<double>& u,
                                               const MeasureSpace& space, double budget) {
  const std::size_t n = space.size();
  if (n > 16) throw std::invalid_argument("best_mass_budget_bruteforce: too many atoms");
  MassBudgetSolution sol;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double mass = 0.0, val = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        mass += space.atoms[i];
        val += space.atoms[i] * u[i];
      }
    if (mass <= budget + 1e-12 && val > sol.value) {
      sol.value = val;
      sol.set.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) sol.set.push_back(i);
    }
  }
  return sol;
}

std::vector<double> delta_plus_ladder(const MeasureSpace& space, int rungs) {
  const double total = space.total_mass();
  if (rungs <= 0) {
    const double stop = space.refining() ? space.min_weight() : space.min_weight() / 2.0;
    rungs = 1;
    while (total / std::ldexp(1.0, rungs) > stop && rungs < 48) ++rungs;
  }
  std::vector<double> ladder;
  for (int k = 1; k <= rungs; ++k) ladder.push_back(total / std::ldexp(1.0, k));
  return ladder;
}

namespace {

DeltaPlusReport delta_plus_outer(const AtomSequence& u, const MeasureSpace& space,
                                 std::vector<double> ladder, bool exhaustive,
                                 std::int64_t window) {
  if (u.atom_count != space.size()) throw std::invalid_argument("delta_plus: atom count mismatch");
  if (ladder.empty()) ladder = delta_plus_ladder(space);
  validate_tail(u);

  DeltaPlusReport rep;
  rep.exact = u.tail.kind != TailKind::truncated;

  const auto indices = tail_sample_indices(u.tail, window);
  std::vector<std::vector<double>> samples;
  samples.reserve(indices.size());
  for (std::int64_t n : indices) samples.push_back(u.provider(n));

  std::vector<double> last_vals;
  std::vector<char> chain_mask;
  for (double eps : ladder) {
    std::vector<double> vals;
    vals.reserve(indices.size());
    double worst = -kInf;
    std::size_t worst_at = 0;
    for (std::size_t k = 0; k < indices.size(); ++k) {
      const MassBudgetSolution s = exhaustive ? best_mass_budget_bruteforce(samples[k], space, eps)
                                              : best_mass_budget(samples[k], space, eps);
      vals.push_back(s.value);
      if (s.value > worst) {
        worst = s.value;
        worst_at = k;
      }
    }
    const LimitStats ls = limit_stats(u.tail, vals);
    rep.trace.emplace_back(eps, ls.limsup);
    rep.value = ls.limsup;
    rep.witness_n = indices[worst_at];
    const MassBudgetSolution s = exhaustive ? best_mass_budget_bruteforce(samples[worst_at], space, eps)
                                            : best_mass_budget(samples[worst_at], space, eps);
    rep.witness_set = s.set;
    last_vals = std::move(vals);

    // Nest the per-rung selections into a decreasing chain.
    std::vector<char> mask(space.size(), 0);
    for (std::size_t i : s.set) mask[i] = 1;
    if (!chain_mask.empty())
      for (std::size_t i = 0; i < mask.size(); ++i) mask[i] &= chain_mask[i];
    chain_mask = mask;
    std::vector<std::size_t> level;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) level.push_back(i);
    rep.witness_chain.sets.push_back(std::move(level));
  }
  rep.witness_chain.null_tail =
      rep.witness_chain.sets.empty() || rep.witness_chain.sets.back().size() <= 1;
  // Diverging marker: ceiling breached, or a truncated tail whose budgeted
  // maximum still doubles between the half horizon and the horizon.
  rep.diverging = rep.value > kDivergeCeiling;
  if (!rep.diverging && u.tail.kind == TailKind::truncated && !ladder.empty()) {
    const double eps = ladder.back();
    const auto at = [&](std::int64_t n) {
      const auto v = u.provider(n);
      return exhaustive ? best_mass_budget_bruteforce(v, space, eps).value
                        : best_mass_budget(v, space, eps).value;
    };
    const double half = at(u.tail.horizon / 2);
    const double full = at(u.tail.horizon);
    if (full > 0 && full >= 2.0 * half && half > 0) rep.diverging = true;
  }
  if (rep.diverging) rep.value = kInf;
  return rep;
}

}  // namespace

DeltaPlusReport delta_plus_greedy(const AtomSequence& u, const MeasureSpace& space,
                                  std::vector<double> eps_ladder) {
  return delta_plus_outer(u, space, std::move(eps_ladder), false, 32);
}

DeltaPlusReport delta_plus_bruteforce(const AtomSequence& u, const MeasureSpace& space,
                                      int max_depth) {
  if (space.size() > 12) throw std::invalid_argument("delta_plus_bruteforce: at most 12 atoms");
  if (max_depth < 1 || max_depth > 4)
    throw std::invalid_argument("delta_plus_bruteforce: max_depth in [1,4]");
  if (u.tail.kind == TailKind::truncated && u.tail.horizon > 8)
    throw std::invalid_argument("delta_plus_bruteforce: horizon at most 8");
  if (u.tail.kind == TailKind::eventually_periodic && u.tail.period > 8)
    throw std::invalid_argument("delta_plus_bruteforce: period at most 8");
  std::vector<double> ladder;
  const double total = space.total_mass();
  for (int k = 1; k <= max_depth; ++k) ladder.push_back(total / std::ldexp(1.0, k));
  return delta_plus_outer(u, space, std::move(ladder), true, 8);
}

}  // namespace epilim
