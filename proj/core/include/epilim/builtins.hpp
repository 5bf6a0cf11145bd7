#pragma once

#include <cstdint>
#include <functional>

#include "epilim/delta_plus.hpp"
#include "epilim/epilimit.hpp"
#include "epilim/measure.hpp"

namespace epilim::builtins {

/// 1-D sampler helper.
GridFunction sample(const Grid& g, const std::function<double(double)>& f);

// --- epi-limit families (shared coercive test set) ---------------------

/// f_n = f = |x| + x^2/2 (eventually constant).
FunctionSequence constant_family(const Grid& g);
/// f_n(x) = |x - (-1)^n| + x^2/2 (periodic, period 2).
FunctionSequence alternating_shift_family(const Grid& g);
/// f_n(x) = |x - 1/n| + x^2/2 (horizon-truncated).
FunctionSequence shifted_vee_family(const Grid& g, std::int64_t horizon);
/// f_n(x) = n x^2 (horizon-truncated; epi-limit is the origin indicator).
FunctionSequence steep_quadratic_family(const Grid& g, std::int64_t horizon);
/// Coercive minorant x^2/2 shared by the families above.
GridFunction family_lower_bound(const Grid& g);

FunctionSequence family_by_name(const std::string& name, const Grid& g, std::int64_t horizon);

// --- integrands (scalar fibers) -----------------------------------------

Integrand quadratic_integrand(const Grid& g);            // e^2
Integrand half_quadratic_integrand(const Grid& g);       // e^2/2
Integrand abs_integrand(const Grid& g);                  // |e|
Integrand neg_sqrt_integrand(const Grid& g);             // -sqrt(|e|)
Integrand scaled_integrand(const Integrand& f, double t);
/// t -> max(-|s| |t|, -cap): the separating two-variable instance sliced at s.
Integrand product_slice_integrand(const Grid& g, double s, double cap = 1.0);

// --- measure-side families ----------------------------------------------

/// Cell-averaged spike n^power 1_{(0,1/n]} on a dyadic space.
std::vector<double> spike_values(const MeasureSpace& space, std::int64_t n, double power);
AtomSequence spike_sequence(const MeasureSpace& space, double power, std::int64_t horizon);
/// Materialized simple functions x_n = spike, n = 1..count.
std::vector<SimpleFunction> spike_simple_family(const MeasureSpace& space, std::int64_t count);

}  // namespace epilim::builtins
