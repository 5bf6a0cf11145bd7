#pragma once

#include "epilim/measure.hpp"
#include "epilim/random.hpp"

namespace epilim::gen {

/// Integer-valued piecewise-linear function on an integer grid with optional
/// +inf gaps and point masses; the workhorse of the exact-identity suites.
GridFunction random_pwl(Xorshift& rng, const Grid& g, int max_knots, int vmax,
                        bool allow_inf = false);

/// As above, but the domain stays inside [-half_dom, half_dom].
GridFunction random_pwl_supported(Xorshift& rng, const Grid& g, int max_knots, int vmax,
                                  std::int64_t half_dom);

/// Integer-valued convex samples (random nondecreasing integer slopes).
GridFunction random_convex(Xorshift& rng, const Grid& g, int vmax);

/// Per-atom convex piecewise-linear integrand with integer data.
Integrand random_convex_integrand(Xorshift& rng, const Grid& g, std::size_t atoms, int vmax);

/// Random positive non-uniform weights summing to about mass.
MeasureSpace random_space(Xorshift& rng, std::size_t atoms, double mass = 1.0);

/// Small integer weights (1..8); all downstream arithmetic stays exact.
MeasureSpace random_space_integer(Xorshift& rng, std::size_t atoms);

}  // namespace epilim::gen
