#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace epilim {

/// Tail declaration for an index sequence n -> value. Limits over n are
/// computed exactly only for declared tails; truncated tails yield evidence
/// brackets, never point values.
enum class TailKind { eventually_constant, eventually_periodic, truncated };

struct Tail {
  TailKind kind = TailKind::eventually_constant;
  std::int64_t n0 = 0;        // stabilization index (constant / periodic)
  std::int64_t period = 1;    // periodic only
  std::int64_t horizon = 64;  // truncated only: max index materialized

  static Tail constant(std::int64_t n0 = 0) { return {TailKind::eventually_constant, n0, 1, n0 + 8}; }
  static Tail periodic(std::int64_t n0, std::int64_t period) {
    if (period < 1) throw std::invalid_argument("Tail: period >= 1");
    return {TailKind::eventually_periodic, n0, period, n0 + 8 * period};
  }
  static Tail truncated(std::int64_t horizon) { return {TailKind::truncated, 0, 1, horizon}; }
};

/// Joint tail of two sequences consumed together (values depending on both).
Tail combine_tails(const Tail& a, const Tail& b);

/// Indices that determine a tail-exact liminf/limsup: the single tail index,
/// one full period, or an evidence window ending at the horizon.
std::vector<std::int64_t> tail_sample_indices(const Tail& t, std::int64_t window = 32);

/// Tail-exact (or evidence) limit statistics of a materialized sample
/// aligned with tail_sample_indices. For truncated tails the value is
/// monotone-aware: a nondecreasing window reports its last value as the
/// liminf evidence, otherwise the window min (symmetrically for limsup).
struct LimitStats {
  double liminf;
  double limsup;
  bool exact;
};
LimitStats limit_stats(const Tail& t, const std::vector<double>& samples);

}  // namespace epilim
