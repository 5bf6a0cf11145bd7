#include "epilim/builtins.hpp"

#include <cmath>
#include <stdexcept>

namespace epilim::builtins {

GridFunction sample(const Grid& g, const std::function<double(double)>& f) {
  if (g.dim != 1) throw std::invalid_argument("sample: 1-D only");
  GridFunction out = GridFunction::constant(g, ExtReal(0.0));
  for (std::int64_t i = 0; i < g.size(); ++i) out[i] = ExtReal(f(g.coord(0, i)));
  return out;
}

FunctionSequence constant_family(const Grid& g) {
  FunctionSequence seq;
  seq.grid = g;
  seq.tail = Tail::constant(0);
  seq.provider = [g](std::int64_t) {
    return sample(g, [](double x) { return std::abs(x) + 0.5 * x * x; });
  };
  return seq;
}

FunctionSequence alternating_shift_family(const Grid& g) {
  FunctionSequence seq;
  seq.grid = g;
  seq.tail = Tail::periodic(0, 2);
  seq.provider = [g](std::int64_t n) {
    const double shift = n % 2 == 0 ? 1.0 : -1.0;
    return sample(g, [shift](double x) { return std::abs(x - shift) + 0.5 * x * x; });
  };
  return seq;
}

FunctionSequence shifted_vee_family(const Grid& g, std::int64_t horizon) {
  FunctionSequence seq;
  seq.grid = g;
  seq.tail = Tail::truncated(horizon);
  seq.provider = [g](std::int64_t n) {
    const double s = 1.0 / double(std::max<std::int64_t>(n, 1));
    return sample(g, [s](double x) { return std::abs(x - s) + 0.5 * x * x; });
  };
  return seq;
}

FunctionSequence steep_quadratic_family(const Grid& g, std::int64_t horizon) {
  FunctionSequence seq;
  seq.grid = g;
  seq.tail = Tail::truncated(horizon);
  seq.provider = [g](std::int64_t n) {
    const double c = double(std::max<std::int64_t>(n, 1));
    return sample(g, [c](double x) { return c * x * x; });
  };
  return seq;
}

GridFunction family_lower_bound(const Grid& g) {
  return sample(g, [](double x) { return 0.5 * x * x; });
}

FunctionSequence family_by_name(const std::string& name, const Grid& g, std::int64_t horizon) {
  if (name == "constant") return constant_family(g);
  if (name == "alternating-shift") return alternating_shift_family(g);
  if (name == "shifted-vee") return shifted_vee_family(g, horizon);
  if (name == "steep-quadratic") return steep_quadratic_family(g, horizon);
  throw std::invalid_argument("unknown builtin family '" + name + "'");
}

namespace {
Integrand scalar_integrand(const Grid& g, std::function<double(double)> f) {
  Integrand out;
  out.dim = 1;
  out.grid = g;
  out.eval = [f = std::move(f)](std::size_t, Point e) { return ExtReal(f(e[0])); };
  return out;
}
}  // namespace

Integrand quadratic_integrand(const Grid& g) {
  Integrand f = scalar_integrand(g, [](double e) { return e * e; });
  f.convex_in_e = true;
  f.nonnegative = true;
  return f;
}

Integrand half_quadratic_integrand(const Grid& g) {
  Integrand f = scalar_integrand(g, [](double e) { return 0.5 * e * e; });
  f.convex_in_e = true;
  f.nonnegative = true;
  return f;
}

Integrand abs_integrand(const Grid& g) {
  Integrand f = scalar_integrand(g, [](double e) { return std::abs(e); });
  f.convex_in_e = true;
  f.nonnegative = true;
  return f;
}

Integrand neg_sqrt_integrand(const Grid& g) {
  return scalar_integrand(g, [](double e) { return -std::sqrt(std::abs(e)); });
}

Integrand scaled_integrand(const Integrand& f, double t) {
  Integrand out = f;
  out.eval = [inner = f.eval, t](std::size_t a, Point e) {
    const ExtReal v = inner(a, e);
    ExtReal r;
    r.v = t * v.v;
    return r;
  };
  return out;
}

Integrand product_slice_integrand(const Grid& g, double s, double cap) {
  Integrand f = scalar_integrand(g, [s, cap](double t) { return std::max(-std::abs(s) * std::abs(t), -cap); });
  f.nonnegative = false;
  return f;
}

std::vector<double> spike_values(const MeasureSpace& space, std::int64_t n, double power) {
  if (!space.refining()) throw std::invalid_argument("spike_values: refinement space required");
  const std::size_t cells = space.size();
  const double c = space.atoms[0];
  const double height = std::pow(double(n), power);
  const double cut = 1.0 / double(n);
  std::vector<double> v(cells, 0.0);
  for (std::size_t j = 0; j < cells; ++j) {
    const double left = double(j) * c, right = double(j + 1) * c;
    const double overlap = std::max(0.0, std::min(right, cut) - left);
    if (overlap > 0) v[j] = height * overlap / c;
  }
  return v;
}

AtomSequence spike_sequence(const MeasureSpace& space, double power, std::int64_t horizon) {
  AtomSequence seq;
  seq.atom_count = space.size();
  seq.tail = Tail::truncated(horizon);
  seq.provider = [space, power](std::int64_t n) {
    return spike_values(space, std::max<std::int64_t>(n, 1), power);
  };
  return seq;
}

std::vector<SimpleFunction> spike_simple_family(const MeasureSpace& space, std::int64_t count) {
  std::vector<SimpleFunction> fam;
  for (std::int64_t n = 1; n <= count; ++n)
    fam.push_back(SimpleFunction::from_scalars(spike_values(space, n, 1.0)));
  return fam;
}

}  // namespace epilim::builtins
