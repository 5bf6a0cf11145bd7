#include "epilim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "epilim/delta_plus.hpp"
#include "epilim/legendre.hpp"

namespace epilim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundCeiling = 1e6;   // norm ceiling standing in for "bounded"
constexpr double kUiTolerance = 0.03125;  // shared equi / delta-plus zero threshold
}  // namespace

MeasureSpace MeasureSpace::finite(std::vector<double> weights, std::vector<int> covering,
                                  std::string label) {
  for (double w : weights)
    if (!(w > 0)) throw std::invalid_argument("MeasureSpace: weights must be positive");
  MeasureSpace sp;
  sp.atoms = std::move(weights);
  sp.covering = covering.empty() ? std::vector<int>(sp.atoms.size(), 0) : std::move(covering);
  if (sp.covering.size() != sp.atoms.size())
    throw std::invalid_argument("MeasureSpace: covering size mismatch");
  sp.label = std::move(label);
  return sp;
}

MeasureSpace MeasureSpace::dyadic(int depth, std::string label) {
  if (depth < 0 || depth > 24) throw std::invalid_argument("MeasureSpace: depth out of range");
  const std::size_t cells = std::size_t(1) << depth;
  MeasureSpace sp;
  sp.atoms.assign(cells, std::ldexp(1.0, -depth));
  sp.covering.assign(cells, 0);
  sp.refinement_depth = depth;
  sp.label = std::move(label);
  return sp;
}

double MeasureSpace::total_mass() const { return std::accumulate(atoms.begin(), atoms.end(), 0.0); }

double MeasureSpace::min_weight() const { return *std::min_element(atoms.begin(), atoms.end()); }

bool MeasureSpace::equal_weights() const {
  for (double w : atoms)
    if (w != atoms[0]) return false;
  return true;
}

double MeasureSpace::cell_left(std::size_t i) const {
  if (!refining()) throw std::logic_error("cell_left: not a refinement space");
  return double(i) * std::ldexp(1.0, -*refinement_depth);
}

int MeasureSpace::max_covering_tag() const {
  return *std::max_element(covering.begin(), covering.end());
}

SimpleFunction SimpleFunction::constant(std::size_t atoms, double v) {
  SimpleFunction f;
  f.dim = 1;
  f.values.assign(atoms, Point{v, 0.0});
  return f;
}

SimpleFunction SimpleFunction::constant2(std::size_t atoms, double a, double b) {
  SimpleFunction f;
  f.dim = 2;
  f.values.assign(atoms, Point{a, b});
  return f;
}

SimpleFunction SimpleFunction::from_scalars(const std::vector<double>& v) {
  SimpleFunction f;
  f.dim = 1;
  f.values.reserve(v.size());
  for (double x : v) f.values.push_back(Point{x, 0.0});
  return f;
}

double SimpleFunction::norm(std::size_t atom) const {
  const Point& p = values[atom];
  return dim == 1 ? std::abs(p[0]) : std::sqrt(p[0] * p[0] + p[1] * p[1]);
}

double PiecewiseLinearYoung::operator()(double t) const {
  if (t < 0) throw std::invalid_argument("PiecewiseLinearYoung: t >= 0 required");
  double v = 0.0;
  for (std::size_t m = 0; m < knots.size(); ++m) {
    const double seg_end = m + 1 < knots.size() ? knots[m + 1] : kInf;
    if (t <= knots[m]) break;
    v += slopes[m] * (std::min(t, seg_end) - knots[m]);
  }
  return v;
}

Integrand PiecewiseLinearYoung::as_integrand(const Grid& grid, std::vector<double> alpha) const {
  PiecewiseLinearYoung psi = *this;
  Integrand phi;
  phi.dim = grid.dim;
  phi.grid = grid;
  phi.young = true;
  phi.convex_in_e = true;
  phi.nonnegative = true;
  phi.eval = [psi, alpha, dim = grid.dim](std::size_t atom, Point e) -> ExtReal {
    const double r = dim == 1 ? std::abs(e[0]) : std::sqrt(e[0] * e[0] + e[1] * e[1]);
    const double a = alpha.empty() ? 1.0 : alpha[atom];
    return ExtReal(a * psi(r / a));
  };
  return phi;
}

ExtReal upper_integral(const std::vector<ExtReal>& v, const MeasureSpace& space) {
  if (v.size() != space.size()) throw std::invalid_argument("upper_integral: size mismatch");
  double plus = 0.0, minus = 0.0;
  bool plus_inf = false, minus_inf = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_pos_inf())
      plus_inf = true;
    else if (v[i].is_neg_inf())
      minus_inf = true;
    else if (v[i].v > 0)
      plus += space.atoms[i] * v[i].v;
    else
      minus += space.atoms[i] * (-v[i].v);
  }
  const ExtReal p = plus_inf ? ExtReal::pos_inf() : ExtReal(plus);
  const ExtReal m = minus_inf ? ExtReal::pos_inf() : ExtReal(minus);
  return upper_sum(p, negate(m));
}

ExtReal integral_functional(const Integrand& f, const SimpleFunction& x, const MeasureSpace& space) {
  if (x.size() != space.size()) throw std::invalid_argument("integral_functional: size mismatch");
  std::vector<ExtReal> v;
  v.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) v.push_back(f.eval(i, x.values[i]));
  return upper_integral(v, space);
}

double lp_norm(const SimpleFunction& x, const MeasureSpace& space, double p) {
  if (x.size() != space.size()) throw std::invalid_argument("lp_norm: size mismatch");
  if (!(p >= 1)) throw std::invalid_argument("lp_norm: p >= 1 required");
  if (std::isinf(p)) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, x.norm(i));
    return m;
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += space.atoms[i] * std::pow(x.norm(i), p);
  return std::pow(s, 1.0 / p);
}

void validate_young(const Integrand& phi, const MeasureSpace& space) {
  if (!phi.young) throw std::invalid_argument("orlicz: integrand lacks the young flag");
  const Grid& g = phi.grid;
  if (g.dim != phi.dim) throw std::invalid_argument("orlicz: grid/integrand dimension mismatch");
  const std::size_t probe = std::min<std::size_t>(space.size(), 3);
  for (std::size_t a = 0; a < probe; ++a) {
    if (!approx_equal(phi.eval(a, Point{0.0, 0.0}), ExtReal(0.0), 1e-9))
      throw std::invalid_argument("orlicz: young integrand must vanish at 0");
    // even + convex + boundary coercivity along the first axis
    ExtReal lo = phi.eval(a, g.point_at(0));
    ExtReal hi = phi.eval(a, g.point_at(g.size() - 1));
    if (lo < ExtReal(0.0) || hi < ExtReal(0.0) || (lo == ExtReal(0.0) && hi == ExtReal(0.0)))
      throw std::invalid_argument("orlicz: young integrand must be coercive on the window");
  }
}

ExtReal orlicz_gauge(const Integrand& phi, const SimpleFunction& x, const MeasureSpace& space) {
  validate_young(phi, space);
  bool zero = true;
  for (std::size_t i = 0; i < x.size() && zero; ++i) zero = x.norm(i) == 0.0;
  if (zero) return ExtReal(0.0);

  const auto level = [&](double t) {
    std::vector<ExtReal> v;
    v.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      Point e = x.values[i];
      e[0] /= t;
      e[1] /= t;
      v.push_back(phi.eval(i, e));
    }
    return upper_integral(v, space);
  };

  double hi = 1.0;
  int guard = 0;
  while (level(hi) > ExtReal(1.0)) {
    hi *= 2.0;
    if (++guard > 500) throw std::runtime_error("orlicz_gauge: no finite gauge found");
  }
  double lo = 0.0;
  while (hi - lo > 1e-10 * hi) {
    const double mid = lo + (hi - lo) / 2.0;
    if (level(mid) <= ExtReal(1.0))
      hi = mid;
    else
      lo = mid;
  }
  return ExtReal(hi);
}

UiReport uniform_integrability_test(const std::vector<SimpleFunction>& family,
                                    const MeasureSpace& space, double p) {
  UiReport r;
  if (family.empty()) {
    r.bounded = r.equi_small_sets = r.equi_escape = r.equi = r.ui = true;
    return r;
  }
  for (const auto& x : family) r.norm_bound = std::max(r.norm_bound, lp_norm(x, space, p));
  r.bounded = r.norm_bound <= kBoundCeiling;

  // Part (1): small-set criterion. The modulus is evaluated at the smallest
  // selectable mass and at eight times it: equi-integrability shows either as
  // a small floor value or as genuine decay across the octave, which keeps
  // the verdict resolution-independent. Fixed atom spaces degenerate below
  // the smallest weight, mirroring the index degeneracy.
  const double floor_eta = space.refining() ? space.min_weight() : space.min_weight() / 2.0;
  double worst = 0.0, worst_coarse = 0.0;
  for (std::size_t m = 0; m < family.size(); ++m) {
    std::vector<double> u(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) u[i] = std::pow(family[m].norm(i), p);
    const MassBudgetSolution sol = best_mass_budget(u, space, floor_eta);
    const double val = std::pow(sol.value, 1.0 / p);
    worst_coarse = std::max(worst_coarse,
                            std::pow(best_mass_budget(u, space, 8.0 * floor_eta).value, 1.0 / p));
    if (val > worst) {
      worst = val;
      r.witness_member = m;
      r.witness_set = sol.set;
      r.witness_value = val;
    }
  }
  r.small_set_modulus = worst;
  r.equi_small_sets = worst <= kUiTolerance || worst <= 0.55 * worst_coarse;

  // Part (2): escape through the covering; the top shell plays the role of
  // the unexhausted remainder when tags are present.
  const int kmax = space.max_covering_tag();
  if (kmax == 0) {
    r.escape_modulus = 0.0;
  } else {
    double esc = 0.0;
    for (const auto& x : family) {
      double s = 0.0;
      for (std::size_t i = 0; i < space.size(); ++i)
        if (space.covering[i] >= kmax) s += space.atoms[i] * std::pow(x.norm(i), p);
      esc = std::max(esc, std::pow(s, 1.0 / p));
    }
    r.escape_modulus = esc;
  }
  r.equi_escape = r.escape_modulus <= kUiTolerance;

  r.equi = r.equi_small_sets && r.equi_escape;
  r.ui = r.bounded && r.equi;
  return r;
}

YoungCertificate young_from_ui(const std::vector<SimpleFunction>& family,
                               const MeasureSpace& space) {
  YoungCertificate cert;
  cert.ui = uniform_integrability_test(family, space, 1.0);
  if (!cert.ui.ui) {
    cert.ok = false;
    cert.message = "family is not uniformly integrable; witness attached";
    return cert;
  }

  // a(k) = sup_x integral of |x| over {|x| >= k}; pick hinge knots k_j with
  // a(k_j) <= 2^-(j+2), then the hinge sum psi(t) = sum_j (t - k_j)+ has
  // sup_x I_psi <= 1/2 and strictly increasing slopes.
  const auto tail_mass = [&](double k) {
    double worst = 0.0;
    for (const auto& x : family) {
      double s = 0.0;
      for (std::size_t i = 0; i < space.size(); ++i) {
        const double v = x.norm(i);
        if (v >= k) s += space.atoms[i] * v;
      }
      worst = std::max(worst, s);
    }
    return worst;
  };

  std::vector<double> levels;
  for (const auto& x : family)
    for (std::size_t i = 0; i < space.size(); ++i) levels.push_back(x.norm(i));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<double> hinges;
  double prev = 0.0;
  for (int j = 0; j < 40; ++j) {
    const double target = std::ldexp(1.0, -(j + 2));
    double k = prev;
    std::size_t li = std::size_t(std::lower_bound(levels.begin(), levels.end(), k) - levels.begin());
    while (li < levels.size() && tail_mass(levels[li] + 1e-12) > target) ++li;
    k = li < levels.size() ? levels[li] + 1e-12 : (levels.empty() ? 0.0 : levels.back()) + 1e-12;
    k = std::max(k, prev + 1e-9);
    hinges.push_back(k);
    prev = k;
    if (tail_mass(k) == 0.0) break;
  }
  // declared growth beyond the data range
  for (int extra = 1; extra <= 3; ++extra) hinges.push_back(prev + extra);

  PiecewiseLinearYoung psi;
  psi.knots.push_back(0.0);
  psi.slopes.push_back(0.0);
  for (std::size_t j = 0; j < hinges.size(); ++j) {
    psi.knots.push_back(hinges[j]);
    psi.slopes.push_back(double(j + 1));
  }
  cert.psi = psi;

  double sup = 0.0;
  for (const auto& x : family) {
    double s = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) s += space.atoms[i] * psi(x.norm(i));
    sup = std::max(sup, s);
  }
  cert.sup_integral = sup;
  cert.ok = sup <= 1.0;
  if (!cert.ok) cert.message = "post-hoc certificate check failed";
  return cert;
}

BitingReport biting_extract(const std::vector<SimpleFunction>& seq, const MeasureSpace& space,
                            int levels) {
  BitingReport rep;
  if (seq.empty()) {
    rep.ok = false;
    rep.message = "empty sequence";
    return rep;
  }
  double norm_bound = 0.0;
  for (const auto& x : seq) norm_bound = std::max(norm_bound, lp_norm(x, space, 1.0));
  if (norm_bound > kBoundCeiling) {
    rep.ok = false;
    rep.message = "sequence is not L1-bounded";
    return rep;
  }
  rep.ok = true;

  const std::size_t n = seq.size();
  const std::size_t atoms = space.size();
  const double lambda = 1.5 * norm_bound / space.total_mass();

  // A_k = { atoms where the tail from the k-th member on still reaches
  // level lambda }.
  for (int k = 1; k <= levels; ++k) {
    const std::size_t start = std::min<std::size_t>(std::size_t(k - 1), n - 1);
    std::vector<std::size_t> ak;
    double mass = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
      double sup_tail = 0.0;
      for (std::size_t m = start; m < n; ++m) sup_tail = std::max(sup_tail, seq[m].norm(i));
      if (sup_tail >= lambda) {
        ak.push_back(i);
        mass += space.atoms[i];
      }
    }
    rep.exceptional.push_back(std::move(ak));
    rep.exceptional_mass.push_back(mass);
  }

  // Per-k equi certificate: small-set modulus of the remainder family.
  const double floor_eta = space.refining() ? space.min_weight() : space.min_weight() / 2.0;
  for (const auto& ak : rep.exceptional) {
    std::vector<char> in_ak(atoms, 0);
    for (std::size_t i : ak) in_ak[i] = 1;
    double worst = 0.0;
    for (const auto& x : seq) {
      std::vector<double> u(atoms, 0.0);
      for (std::size_t i = 0; i < atoms; ++i)
        if (!in_ak[i]) u[i] = x.norm(i);
      worst = std::max(worst, best_mass_budget(u, space, floor_eta).value);
    }
    rep.remainder_modulus.push_back(worst);
  }

  // Limit candidate: cellwise average over the tail half-window.
  const std::size_t w0 = n / 2;
  rep.limit_candidate.dim = seq[0].dim;
  rep.limit_candidate.values.assign(atoms, Point{0.0, 0.0});
  for (std::size_t i = 0; i < atoms; ++i) {
    Point acc{0.0, 0.0};
    for (std::size_t m = w0; m < n; ++m) {
      acc[0] += seq[m].values[i][0];
      acc[1] += seq[m].values[i][1];
    }
    const double cnt = double(n - w0);
    rep.limit_candidate.values[i] = Point{acc[0] / cnt, acc[1] / cnt};
  }

  // Oscillation off the last exceptional set marks the weak-limit emulation
  // as heuristic.
  std::vector<char> in_last(atoms, 0);
  for (std::size_t i : rep.exceptional.back()) in_last[i] = 1;
  double osc = 0.0;
  for (std::size_t i = 0; i < atoms; ++i) {
    if (in_last[i]) continue;
    double lo = kInf, hi = -kInf;
    for (std::size_t m = w0; m < n; ++m) {
      const double v = seq[m].norm(i) * (seq[m].values[i][0] < 0 ? -1.0 : 1.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    osc = std::max(osc, hi - lo);
  }
  rep.heuristic = osc > 1e-6;
  return rep;
}

InterchangeReport conjugate_interchange_check(const Integrand& f, const SimpleFunction& x_star,
                                              const MeasureSpace& space, double tolerance) {
  InterchangeReport rep;
  rep.tolerance = tolerance;
  if (f.dim != 1 || x_star.dim != 1) {
    rep.message = "interchange check supports scalar atoms only";
    return rep;
  }
  const Grid& g = f.grid;

  // Properness per atom and finiteness of I_f somewhere.
  for (std::size_t a = 0; a < space.size(); ++a) {
    bool has_finite = false;
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const ExtReal v = f.eval(a, g.point_at(i));
      if (v.is_neg_inf()) {
        rep.message = "improper atom (-inf value)";
        return rep;
      }
      if (v.finite()) has_finite = true;
    }
    if (!has_finite) {
      rep.message = "improper atom (empty domain)";
      return rep;
    }
  }
  rep.ok = true;

  // Left side: separable sup of <x*,x> - I_f(x), maximized atom by atom.
  double lhs = 0.0;
  for (std::size_t a = 0; a < space.size(); ++a) {
    double best = -kInf;
    const double s = x_star.values[a][0];
    for (std::int64_t i = 0; i < g.size(); ++i) {
      const ExtReal v = f.eval(a, g.point_at(i));
      if (v.is_pos_inf()) continue;
      best = std::max(best, s * g.coord(0, i) - v.v);
    }
    lhs += space.atoms[a] * best;
  }
  rep.lhs = lhs;

  // Right side: atomwise conjugates through the transform machinery.
  double rhs = 0.0;
  for (std::size_t a = 0; a < space.size(); ++a) {
    std::vector<ExtReal> vals;
    vals.reserve(std::size_t(g.size()));
    for (std::int64_t i = 0; i < g.size(); ++i) vals.push_back(f.eval(a, g.point_at(i)));
    const GridFunction slice(g, std::move(vals));
    const double s = x_star.values[a][0];
    const double halfw = std::max(1.0, std::ceil(std::abs(s)));
    const DualGrid dual(s - halfw, s + halfw, 3);
    const ConjugateResult conj = conjugate_fast_1d(slice, dual);
    rhs += space.atoms[a] * conj.function[1].v;
  }
  rep.rhs = rhs;

  rep.gap = std::abs(lhs - rhs);
  rep.pass = rep.gap <= tolerance;
  return rep;
}

}  // namespace epilim
