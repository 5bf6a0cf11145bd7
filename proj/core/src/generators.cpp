#include "epilim/generators.hpp"

#include <algorithm>
#include <cmath>

namespace epilim::gen {

namespace {
GridFunction random_pwl_impl(Xorshift& rng, const Grid& g, int max_knots, int vmax,
                             std::int64_t half_dom, bool allow_inf);
}

GridFunction random_pwl(Xorshift& rng, const Grid& g, int max_knots, int vmax, bool allow_inf) {
  return random_pwl_impl(rng, g, max_knots, vmax, g.n[0] - 1, allow_inf);
}

GridFunction random_pwl_supported(Xorshift& rng, const Grid& g, int max_knots, int vmax,
                                  std::int64_t half_dom) {
  return random_pwl_impl(rng, g, max_knots, vmax, half_dom, false);
}

namespace {
GridFunction random_pwl_impl(Xorshift& rng, const Grid& g, int max_knots, int vmax,
                             std::int64_t half_dom, bool allow_inf) {
  const std::int64_t n = g.size();
  const std::int64_t mid = (n - 1) / 2;
  const std::int64_t lo = std::max<std::int64_t>(0, mid - half_dom);
  const std::int64_t hi = std::min<std::int64_t>(n - 1, mid + half_dom);

  // Knot indices and integer values, linear interpolation on integer grids
  // stays integer only at the knots; values are filled by walking slopes.
  const int knots = 2 + int(rng.next_below(std::uint64_t(std::max(1, max_knots - 1))));
  std::vector<std::int64_t> idx{lo, hi};
  for (int k = 0; k < knots; ++k) idx.push_back(lo + std::int64_t(rng.next_below(std::uint64_t(hi - lo + 1))));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

  GridFunction f = GridFunction::constant(g, ExtReal::pos_inf());
  double v = double(rng.next_int(-vmax, vmax));
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    const std::int64_t a = idx[k], b = idx[k + 1];
    const std::int64_t slope = rng.next_int(-4, 4);
    for (std::int64_t i = a; i <= b; ++i) f[i] = ExtReal(v + double(slope) * double(i - a));
    v += double(slope) * double(b - a);
    if (std::abs(v) > vmax) v = double(rng.next_int(-vmax, vmax));
  }

  if (allow_inf) {
    // Punch +inf gaps but keep at least one finite point.
    const int gaps = int(rng.next_below(3));
    for (int k = 0; k < gaps; ++k) {
      const std::int64_t a = lo + std::int64_t(rng.next_below(std::uint64_t(hi - lo + 1)));
      const std::int64_t len = 1 + std::int64_t(rng.next_below(4));
      for (std::int64_t i = a; i <= std::min(hi, a + len); ++i) f[i] = ExtReal::pos_inf();
    }
    bool any = false;
    for (std::int64_t i = 0; i < n && !any; ++i) any = f[i].finite();
    if (!any) f[mid] = ExtReal(0.0);
  }
  return f;
}
}  // namespace

GridFunction random_convex(Xorshift& rng, const Grid& g, int vmax) {
  const std::int64_t n = g.size();
  std::vector<double> slopes(std::size_t(n - 1));
  double s = double(rng.next_int(-3, 0));
  for (auto& sl : slopes) {
    sl = s;
    if (rng.next_below(3) == 0) s += double(rng.next_int(0, 2));
  }
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  double v = double(rng.next_int(0, vmax));
  f[0] = ExtReal(v);
  for (std::int64_t i = 1; i < n; ++i) {
    v += slopes[std::size_t(i - 1)];
    f[i] = ExtReal(v);
  }
  return f;
}

Integrand random_convex_integrand(Xorshift& rng, const Grid& g, std::size_t atoms, int vmax) {
  std::vector<std::vector<double>> tables(atoms);
  for (std::size_t a = 0; a < atoms; ++a) {
    const GridFunction f = random_convex(rng, g, vmax);
    tables[a].resize(std::size_t(g.size()));
    for (std::int64_t i = 0; i < g.size(); ++i) tables[a][std::size_t(i)] = f[i].v;
  }
  Integrand out;
  out.dim = 1;
  out.grid = g;
  out.convex_in_e = true;
  out.eval = [tables = std::move(tables), g](std::size_t atom, Point e) -> ExtReal {
    const std::int64_t i = g.index_of(Point{e[0], 0.0});
    return ExtReal(tables[atom][std::size_t(i)]);
  };
  return out;
}

MeasureSpace random_space(Xorshift& rng, std::size_t atoms, double mass) {
  std::vector<double> w(atoms);
  double total = 0.0;
  for (auto& wi : w) {
    wi = double(1 + rng.next_below(8));
    total += wi;
  }
  for (auto& wi : w) wi *= mass / total;
  return MeasureSpace::finite(std::move(w));
}

MeasureSpace random_space_integer(Xorshift& rng, std::size_t atoms) {
  std::vector<double> w(atoms);
  for (auto& wi : w) wi = double(1 + rng.next_below(8));
  return MeasureSpace::finite(std::move(w));
}

}  // namespace epilim::gen
