#include "epilim/sequence.hpp"

#include <algorithm>
#include <numeric>

namespace epilim {

Tail combine_tails(const Tail& a, const Tail& b) {
  if (a.kind == TailKind::truncated || b.kind == TailKind::truncated) {
    std::int64_t horizon = INT64_MAX;
    if (a.kind == TailKind::truncated) horizon = a.horizon;
    if (b.kind == TailKind::truncated) horizon = std::min(horizon, b.horizon);
    return Tail::truncated(horizon);
  }
  if (a.kind == TailKind::eventually_periodic || b.kind == TailKind::eventually_periodic) {
    const std::int64_t pa = a.kind == TailKind::eventually_periodic ? a.period : 1;
    const std::int64_t pb = b.kind == TailKind::eventually_periodic ? b.period : 1;
    return Tail::periodic(std::max(a.n0, b.n0), std::lcm(pa, pb));
  }
  return Tail::constant(std::max(a.n0, b.n0));
}

std::vector<std::int64_t> tail_sample_indices(const Tail& t, std::int64_t window) {
  std::vector<std::int64_t> idx;
  switch (t.kind) {
    case TailKind::eventually_constant:
      idx.push_back(t.n0);
      break;
    case TailKind::eventually_periodic:
      for (std::int64_t k = 0; k < t.period; ++k) idx.push_back(t.n0 + k);
      break;
    case TailKind::truncated: {
      std::int64_t lo = std::max<std::int64_t>(0, t.horizon - window + 1);
      for (std::int64_t k = lo; k <= t.horizon; ++k) idx.push_back(k);
      break;
    }
  }
  return idx;
}

LimitStats limit_stats(const Tail& t, const std::vector<double>& s) {
  if (s.empty()) throw std::invalid_argument("limit_stats: empty sample");
  if (t.kind == TailKind::eventually_constant) return {s[0], s[0], true};
  double lo = *std::min_element(s.begin(), s.end());
  double hi = *std::max_element(s.begin(), s.end());
  if (t.kind == TailKind::eventually_periodic) return {lo, hi, true};
  bool nondec = true, noninc = true;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < s[i - 1]) nondec = false;
    if (s[i] > s[i - 1]) noninc = false;
  }
  return {nondec ? s.back() : lo, noninc ? s.back() : hi, false};
}

}  // namespace epilim
