#include "epilim/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epilim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// > 0 iff q lies strictly above the chord p -> r (x ascending).
double cross_above(double px, double py, double qx, double qy, double rx, double ry) {
  return (rx - px) * (qy - py) - (ry - py) * (qx - px);
}

// Scale-aware turn tolerance. Genuine kinks on the supported instance
// families produce cross values orders of magnitude above this, while
// re-hulled envelope samples stay orders of magnitude below it, which is
// what makes biconjugation a fixed point.
double cross_tolerance(double xspan, double yspan) {
  return 1e-12 * (1.0 + xspan) * (1.0 + yspan);
}

double conjugate_value_1d(const Grid& g, const GridFunction& f, const std::vector<std::int64_t>& fin,
                          double s) {
  double best = -kInf;
  for (std::int64_t i : fin) {
    double c = s * g.coord(0, i) - f[i].v;
    if (c > best) best = c;
  }
  return best;
}

GridFunction biconj_1d(const GridFunction& f) {
  const Grid& g = f.grid;
  const std::int64_t n = g.size();

  std::vector<std::int64_t> fin;
  double ymax = 0.0;
  for (std::int64_t i = 0; i < n; ++i)
    if (f[i].finite()) {
      fin.push_back(i);
      ymax = std::max(ymax, std::abs(f[i].v));
    }
  const double xspan = g.max[0] - g.min[0];
  const double ctol = cross_tolerance(xspan, ymax);

  // Already convex along the grid with a gap-free domain: f** = f.
  const bool contiguous = fin.back() - fin.front() + 1 == std::int64_t(fin.size());
  if (contiguous) {
    bool convex = true;
    for (std::size_t k = 1; k + 1 < fin.size() && convex; ++k) {
      const std::int64_t a = fin[k - 1], b = fin[k], c = fin[k + 1];
      if (cross_above(g.coord(0, a), f[a].v, g.coord(0, b), f[b].v, g.coord(0, c), f[c].v) > ctol)
        convex = false;
    }
    if (convex) return f;
  }

  // Lower hull vertices of the finite epigraph points.
  std::vector<std::int64_t> hull;
  for (std::int64_t i : fin) {
    const double xi = g.coord(0, i), yi = f[i].v;
    while (hull.size() >= 2) {
      const std::int64_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      if (cross_above(g.coord(0, a), f[a].v, g.coord(0, b), f[b].v, xi, yi) > ctol)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  // Slope set covering every envelope edge; a single-point domain gets the
  // zero slope so the transform still touches it.
  std::vector<double> slopes;
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const std::int64_t a = hull[k], b = hull[k + 1];
    slopes.push_back((f[b].v - f[a].v) / (g.coord(0, b) - g.coord(0, a)));
  }
  if (slopes.empty()) slopes.push_back(0.0);

  std::vector<double> fstar(slopes.size());
  for (std::size_t k = 0; k < slopes.size(); ++k) fstar[k] = conjugate_value_1d(g, f, fin, slopes[k]);

  const double snap = 1e-10 * (1.0 + ymax);
  const double xlo = g.coord(0, hull.front()), xhi = g.coord(0, hull.back());
  GridFunction out = GridFunction::constant(g, ExtReal::pos_inf());
  for (std::int64_t i = 0; i < n; ++i) {
    const double x = g.coord(0, i);
    if (x < xlo || x > xhi) continue;  // +inf outside the hull of dom f
    double best = -kInf;
    for (std::size_t k = 0; k < slopes.size(); ++k) best = std::max(best, slopes[k] * x - fstar[k]);
    // f** <= f is an identity; values touching f are f exactly.
    out[i] = (best >= f[i].v - snap) ? f[i] : ExtReal(best);
  }
  return out;
}

GridFunction biconj_2d(const GridFunction& f) {
  const DualGrid dual = auto_dual_grid(f);
  const ConjugateResult c1 = conjugate_bruteforce(f, dual);
  const ConjugateResult c2 = conjugate_bruteforce(c1.function, f.grid);
  return pointwise_min(c2.function, f);
}

}  // namespace

ConjugateResult conjugate_bruteforce(const GridFunction& f, const DualGrid& dual) {
  const Grid& g = f.grid;
  if (dual.dim != g.dim) throw std::invalid_argument("conjugate: primal/dual dimension mismatch");

  const std::int64_t m = dual.size();
  ConjugateResult out;
  out.function = GridFunction::constant(dual, ExtReal::neg_inf());
  out.argmax.assign(std::size_t(m), ConjugateResult::npos);
  out.boundary.assign(std::size_t(m), 0);

  for (std::int64_t sidx = 0; sidx < m; ++sidx) {
    const Point s = dual.point_at(sidx);
    double best = -kInf;
    std::int64_t arg = ConjugateResult::npos;
    bool any_interior = false;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const double fv = f[i].v;
      if (fv == kInf) continue;  // +inf points never contribute to the sup
      const double c = pairing(s, g.point_at(i), g.dim) - fv;
      if (arg == ConjugateResult::npos || c > best) {
        best = c;
        arg = i;
        any_interior = !g.on_boundary(i);
      } else if (c == best && !any_interior) {
        any_interior = !g.on_boundary(i);
      }
    }
    if (arg != ConjugateResult::npos) {
      out.function[sidx] = ExtReal(best);
      out.argmax[std::size_t(sidx)] = arg;
      out.boundary[std::size_t(sidx)] = any_interior ? 0 : 1;
    }
  }
  return out;
}

ConjugateResult conjugate_fast_1d(const GridFunction& f, const DualGrid& dual) {
  const Grid& g = f.grid;
  if (g.dim != 1 || dual.dim != 1) throw std::invalid_argument("conjugate_fast_1d: unsupported for d != 1");

  const std::int64_t n = g.size(), m = dual.size();
  ConjugateResult out;
  out.function = GridFunction::constant(dual, ExtReal::neg_inf());
  out.argmax.assign(std::size_t(m), ConjugateResult::npos);
  out.boundary.assign(std::size_t(m), 0);

  // Any -inf value dominates every dual point; the smallest such index wins
  // the tie at +inf exactly as in the scan order of the brute force.
  std::int64_t first_neg = ConjugateResult::npos;
  bool neg_interior = false;
  for (std::int64_t i = 0; i < n; ++i)
    if (f[i].is_neg_inf()) {
      if (first_neg == ConjugateResult::npos) first_neg = i;
      if (!g.on_boundary(i)) neg_interior = true;
    }
  if (first_neg != ConjugateResult::npos) {
    for (std::int64_t sidx = 0; sidx < m; ++sidx) {
      out.function[sidx] = ExtReal::pos_inf();
      out.argmax[std::size_t(sidx)] = first_neg;
      out.boundary[std::size_t(sidx)] = neg_interior ? 0 : 1;
    }
    return out;
  }

  std::vector<std::int64_t> fin;
  for (std::int64_t i = 0; i < n; ++i)
    if (f[i].finite()) fin.push_back(i);
  if (fin.empty()) return out;  // identically +inf

  // Lower hull, collinear points kept: exact-representable data then admits
  // no off-hull maximizer, so the walk below sees every tie.
  std::vector<std::int64_t> hull;
  for (std::int64_t i : fin) {
    const double xi = g.coord(0, i), yi = f[i].v;
    while (hull.size() >= 2) {
      const std::int64_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      if (cross_above(g.coord(0, a), f[a].v, g.coord(0, b), f[b].v, xi, yi) > 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  const auto value_at = [&](std::int64_t i, const Point& s) {
    return pairing(s, {g.coord(0, i), 0.0}, 1) - f[i].v;
  };

  // The leftmost maximizer index is nondecreasing in s; dual points come in
  // ascending order, so one pointer suffices.
  std::size_t j = 0;
  for (std::int64_t sidx = 0; sidx < m; ++sidx) {
    const Point s = dual.point_at(sidx);
    while (j + 1 < hull.size() && value_at(hull[j + 1], s) > value_at(hull[j], s)) ++j;
    const double best = value_at(hull[j], s);
    bool any_interior = !g.on_boundary(hull[j]);
    for (std::size_t k = j + 1; k < hull.size() && !any_interior; ++k) {
      if (value_at(hull[k], s) != best) break;
      any_interior = !g.on_boundary(hull[k]);
    }
    out.function[sidx] = ExtReal(best);
    out.argmax[std::size_t(sidx)] = hull[j];
    out.boundary[std::size_t(sidx)] = any_interior ? 0 : 1;
  }
  return out;
}

DualGrid auto_dual_grid(const GridFunction& f) {
  const Grid& g = f.grid;
  if (g.dim == 1) {
    const double h = g.spacing(0);
    double smax = 0.0;
    std::int64_t prev = -1;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      if (!f[i].finite()) continue;
      if (prev >= 0)
        smax = std::max(smax, std::abs(f[i].v - f[prev].v) / (g.coord(0, i) - g.coord(0, prev)));
      prev = i;
    }
    double half = std::ceil(smax / h - 1e-9) * h;
    if (!(half > 0)) half = h;
    const std::int64_t steps = std::llround(half / h);
    return Grid(-half, half, 2 * steps + 1);
  }
  // d = 2: per-axis slope bounds along grid lines.
  std::array<double, 2> half{0, 0};
  std::array<std::int64_t, 2> steps{1, 1};
  for (int axis = 0; axis < 2; ++axis) {
    const double h = g.spacing(axis);
    double smax = 0.0;
    const int other = 1 - axis;
    for (std::int64_t io = 0; io < g.n[other]; ++io) {
      std::int64_t prev = -1;
      for (std::int64_t ia = 0; ia < g.n[axis]; ++ia) {
        const std::int64_t lin = axis == 0 ? g.linear_index(ia, io) : g.linear_index(io, ia);
        if (!f[lin].finite()) continue;
        if (prev >= 0)
          smax = std::max(smax, std::abs(f[lin].v - f[g.linear_index(axis == 0 ? prev : io,
                                                                     axis == 0 ? io : prev)].v) /
                                    (double(ia - prev) * h));
        prev = ia;
      }
    }
    half[axis] = std::ceil(smax / h - 1e-9) * h;
    if (!(half[axis] > 0)) half[axis] = h;
    steps[axis] = std::llround(half[axis] / h);
  }
  return Grid({-half[0], -half[1]}, {half[0], half[1]}, {2 * steps[0] + 1, 2 * steps[1] + 1});
}

GridFunction biconjugate(const GridFunction& f) {
  if (f.dom_empty()) return f;
  for (const auto& v : f.values)
    if (v.is_neg_inf()) return GridFunction::constant(f.grid, ExtReal::neg_inf());
  return f.grid.dim == 1 ? biconj_1d(f) : biconj_2d(f);
}

GridFunction infconv(const GridFunction& f, const GridFunction& g) {
  if (f.grid != g.grid) throw std::invalid_argument("infconv: incompatible grids");
  const Grid& gr = f.grid;
  if (!gr.contains_origin()) throw std::invalid_argument("infconv: grid must contain the origin");

  std::array<std::int64_t, 2> i0{0, 0};
  for (int a = 0; a < gr.dim; ++a) i0[a] = std::llround(-gr.min[a] / gr.spacing(a));

  GridFunction out = GridFunction::constant(gr, ExtReal::pos_inf());
  for (std::int64_t ix = 0; ix < gr.size(); ++ix) {
    const auto xi = gr.multi_index(ix);
    double best = kInf;
    for (std::int64_t jy = 0; jy < gr.size(); ++jy) {
      const double gv = g[jy].v;
      if (gv == kInf) continue;
      const auto yj = gr.multi_index(jy);
      const std::int64_t k0 = xi[0] - yj[0] + i0[0];
      if (k0 < 0 || k0 >= gr.n[0]) continue;
      std::int64_t lin = k0;
      if (gr.dim == 2) {
        const std::int64_t k1 = xi[1] - yj[1] + i0[1];
        if (k1 < 0 || k1 >= gr.n[1]) continue;
        lin = gr.linear_index(k0, k1);
      }
      const double fv = f[lin].v;
      if (fv == kInf) continue;  // out-of-domain translate
      const double c = fv + gv;  // -inf propagates
      if (c < best) best = c;
    }
    out[ix].v = best;
  }
  return out;
}

ExtReal fenchel_young_gap(const GridFunction& f, const ConjugateResult& conj, std::int64_t x_idx,
                          std::int64_t s_idx) {
  const ExtReal fx = f[x_idx];
  const ExtReal fs = conj.function[s_idx];
  if (fx.is_pos_inf() || fs.is_pos_inf()) return ExtReal::pos_inf();
  if (fx.is_neg_inf() || fs.is_neg_inf()) return ExtReal::neg_inf();
  const double sx = pairing(conj.function.grid.point_at(s_idx), f.grid.point_at(x_idx), f.grid.dim);
  // f*(s) >= sx - f(x) holds exactly because the sup scanned this candidate
  // through the identical expression.
  return ExtReal(fs.v - (sx - fx.v));
}

}  // namespace epilim
