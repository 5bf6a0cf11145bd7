#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace epilim {

/// Extended real value: a finite double, +inf or -inf. NaN is rejected at
/// construction. Total order is the IEEE order: -inf < finite < +inf.
///
/// Two addition modes exist because the +inf + (-inf) convention is specific
/// to upper integrals; applying it inside conjugate arithmetic would corrupt
/// suprema. strict_sum reports the undefined case, upper_sum resolves it
/// to +inf.
struct ExtReal {
  double v = 0.0;

  constexpr ExtReal() = default;
  ExtReal(double x) : v(x) {
    if (std::isnan(x)) throw std::invalid_argument("ExtReal: NaN is not an extended real");
  }

  static constexpr ExtReal pos_inf() {
    ExtReal r;
    r.v = std::numeric_limits<double>::infinity();
    return r;
  }
  static constexpr ExtReal neg_inf() {
    ExtReal r;
    r.v = -std::numeric_limits<double>::infinity();
    return r;
  }

  bool finite() const { return std::isfinite(v); }
  bool is_pos_inf() const { return std::isinf(v) && v > 0; }
  bool is_neg_inf() const { return std::isinf(v) && v < 0; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v == b.v; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v != b.v; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v < b.v; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v <= b.v; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v > b.v; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v >= b.v; }
};

/// Sum with +inf + (-inf) reported as an error.
ExtReal strict_sum(ExtReal a, ExtReal b);

/// Sum with the upper-integral convention +inf + (-inf) = +inf.
ExtReal upper_sum(ExtReal a, ExtReal b);

/// Negation (exchanges the infinities).
inline ExtReal negate(ExtReal a) { ExtReal r; r.v = -a.v; return r; }

enum class ZeroTimesInf {
  reject,     // 0 * (+-inf) is an error
  zero,       // 0 * (+-inf) = 0 (upper-integral context)
};

/// Scale by a real t. t > 0 preserves infinities, t < 0 flips them,
/// t == 0 behaves per the mode flag.
ExtReal scale(double t, ExtReal a, ZeroTimesInf mode = ZeroTimesInf::reject);

/// Equality used by tests: exact for infinities, absolute 1e-12 for finite.
bool approx_equal(ExtReal a, ExtReal b, double tol = 1e-12);

std::string to_string(ExtReal a);

}  // namespace epilim
