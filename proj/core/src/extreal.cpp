#include "epilim/extreal.hpp"

#include <cstdio>

namespace epilim {

ExtReal strict_sum(ExtReal a, ExtReal b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    throw std::domain_error("strict_sum: +inf + -inf is undefined in strict mode");
  ExtReal r;
  r.v = a.v + b.v;
  return r;
}

ExtReal upper_sum(ExtReal a, ExtReal b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf()))
    return ExtReal::pos_inf();
  ExtReal r;
  r.v = a.v + b.v;
  return r;
}

ExtReal scale(double t, ExtReal a, ZeroTimesInf mode) {
  if (t == 0.0 && !a.finite()) {
    if (mode == ZeroTimesInf::zero) return ExtReal(0.0);
    throw std::domain_error("scale: 0 * inf outside upper-integral context");
  }
  ExtReal r;
  r.v = t * a.v;
  return r;
}

bool approx_equal(ExtReal a, ExtReal b, double tol) {
  if (!a.finite() || !b.finite()) return a.v == b.v;
  return std::abs(a.v - b.v) <= tol;
}

std::string to_string(ExtReal a) {
  if (a.is_pos_inf()) return "inf";
  if (a.is_neg_inf()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", a.v);
  return buf;
}

}  // namespace epilim
