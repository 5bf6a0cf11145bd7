#pragma once

#include <cstdint>
#include <vector>

#include "epilim/grid.hpp"

namespace epilim {

/// Discrete Fenchel conjugate on a dual grid. The sup ranges only over the
/// primal window, so values where no maximizer is interior are window
/// truncations of the true conjugate; boundary_flag marks those dual points.
struct ConjugateResult {
  static constexpr std::int64_t npos = -1;

  GridFunction function;                 // values on the dual grid
  std::vector<std::int64_t> argmax;      // smallest-index primal maximizer, npos if dom f empty
  std::vector<std::uint8_t> boundary;    // 1 when no maximizer lies in the window interior
};

/// <s,x> for grid/dual points. Both conjugate implementations must evaluate
/// candidates through this exact expression so they agree bitwise.
inline double pairing(const Point& s, const Point& x, int dim) {
  return dim == 1 ? s[0] * x[0] : s[0] * x[0] + s[1] * x[1];
}

/// Exact discrete supremum over all grid points, one scan per dual point.
/// Ties broken by the smallest linear (lexicographic) index. f identically
/// +inf yields the constant -inf.
ConjugateResult conjugate_bruteforce(const GridFunction& f, const DualGrid& dual);

/// Linear-time discrete Legendre transform, d = 1 only. Output contract is
/// identical to conjugate_bruteforce (same values, argmax, flags, tie-break);
/// validated bit-exactly on grids whose data is exactly representable.
ConjugateResult conjugate_fast_1d(const GridFunction& f, const DualGrid& dual);

/// Dual window for biconjugation: symmetric half-width covering the largest
/// finite difference quotient between consecutive domain points, rounded up
/// to a multiple of the primal spacing; dual spacing equals primal spacing.
DualGrid auto_dual_grid(const GridFunction& f);

/// Fenchel biconjugate on the primal grid (convex envelope on the window).
/// Computed by a double transform whose slope set adaptively covers every
/// envelope edge slope; outside the convex hull of dom f the value is +inf
/// (the unbounded-dual limit). f** <= f holds pointwise exactly; f is
/// returned unchanged when already convex along the grid. f identically
/// +inf is returned as-is.
GridFunction biconjugate(const GridFunction& f);

/// Infimal convolution on a shared origin-containing grid:
/// (f [] g)(x) = min_y f(x-y) + g(y), out-of-window f(x-y) treated as +inf,
/// +inf absorbing in each candidate, ties by smallest y index.
GridFunction infconv(const GridFunction& f, const GridFunction& g);

/// Fenchel-Young gap f(x) + f*(s) - <s,x> under strict arithmetic with +inf
/// absorbing; never negative. Exposed for the invariant suites.
ExtReal fenchel_young_gap(const GridFunction& f, const ConjugateResult& conj, std::int64_t x_idx,
                          std::int64_t s_idx);

}  // namespace epilim
