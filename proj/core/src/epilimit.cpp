#include "epilim/epilimit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace epilim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_values(const GridFunction& a, const GridFunction& b) {
  for (std::int64_t i = 0; i < a.grid.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

// Closed max-norm ball around linear index c with radius steps per axis.
template <typename Fn>
void for_ball(const Grid& g, std::int64_t c, std::int64_t steps, Fn&& fn) {
  const auto mi = g.multi_index(c);
  const std::int64_t lo0 = std::max<std::int64_t>(0, mi[0] - steps);
  const std::int64_t hi0 = std::min<std::int64_t>(g.n[0] - 1, mi[0] + steps);
  if (g.dim == 1) {
    for (std::int64_t i = lo0; i <= hi0; ++i) fn(i);
    return;
  }
  const std::int64_t lo1 = std::max<std::int64_t>(0, mi[1] - steps);
  const std::int64_t hi1 = std::min<std::int64_t>(g.n[1] - 1, mi[1] + steps);
  for (std::int64_t i = lo0; i <= hi0; ++i)
    for (std::int64_t j = lo1; j <= hi1; ++j) fn(g.linear_index(i, j));
}

EpiLimitReport epilimit_impl(const FunctionSequence& seq, const std::vector<double>& radii,
                             bool lower, double ceiling, const char* label) {
  if (radii.empty()) throw std::invalid_argument("epilimit: radii list must be nonempty");
  seq.validate();
  const Grid& g = seq.grid;
  const double h = g.spacing(0);

  std::vector<std::int64_t> step_ladder;
  for (double r : radii) {
    const double t = r / h;
    const std::int64_t s = std::llround(t);
    if (s < 1 || std::abs(t - double(s)) > 1e-6)
      throw std::invalid_argument("epilimit: radii must be grid-commensurate and >= h");
    step_ladder.push_back(s);
  }

  const auto indices = tail_sample_indices(seq.tail, 32);
  std::vector<GridFunction> frames;
  frames.reserve(indices.size());
  for (std::int64_t n : indices) frames.push_back(seq.provider(n));

  EpiLimitReport rep;
  rep.label = label;
  rep.exact = seq.tail.kind != TailKind::truncated;
  rep.function = GridFunction::constant(g, ExtReal::neg_inf());
  rep.bracket.assign(std::size_t(g.size()), {ExtReal::neg_inf(), ExtReal::pos_inf()});
  rep.diverging.assign(std::size_t(g.size()), 0);

  for (std::int64_t x = 0; x < g.size(); ++x) {
    double best_lo = -kInf, best_hi = -kInf;
    for (std::int64_t steps : step_ladder) {
      std::vector<double> inner(frames.size(), kInf);
      for (std::size_t k = 0; k < frames.size(); ++k) {
        double m = kInf;
        for_ball(g, x, steps, [&](std::int64_t i) { m = std::min(m, frames[k][i].v); });
        inner[k] = m;
      }
      const LimitStats ls = limit_stats(seq.tail, inner);
      // sup over the radii ladder
      best_lo = std::max(best_lo, ls.liminf);
      best_hi = std::max(best_hi, ls.limsup);
    }
    rep.bracket[std::size_t(x)] = {ExtReal(best_lo), ExtReal(best_hi)};
    const double chosen = lower ? best_lo : best_hi;
    rep.function[x] = ExtReal(chosen);
    if (chosen > ceiling) rep.diverging[std::size_t(x)] = 1;
  }
  return rep;
}

}  // namespace

void FunctionSequence::validate() const {
  if (!provider) throw std::invalid_argument("FunctionSequence: missing provider");
  const Tail& t = tail;
  if (t.kind == TailKind::eventually_constant) {
    const GridFunction base = provider(t.n0);
    if (base.grid != grid) throw std::invalid_argument("FunctionSequence: provider grid mismatch");
    if (!same_values(base, provider(t.n0 + 1)) || !same_values(base, provider(t.n0 + 5)))
      throw std::invalid_argument("FunctionSequence: eventually-constant tail fails sampling");
  } else if (t.kind == TailKind::eventually_periodic) {
    for (std::int64_t k = 0; k < t.period; ++k) {
      const GridFunction a = provider(t.n0 + k);
      if (a.grid != grid) throw std::invalid_argument("FunctionSequence: provider grid mismatch");
      if (!same_values(a, provider(t.n0 + k + t.period)))
        throw std::invalid_argument("FunctionSequence: periodic tail fails sampling");
    }
  } else {
    if (provider(0).grid != grid || provider(t.horizon).grid != grid)
      throw std::invalid_argument("FunctionSequence: provider grid mismatch");
  }
}

std::vector<double> default_radii(const Grid& g) {
  const double h = g.spacing(0);
  return {8 * h, 4 * h, 2 * h, h};
}

EpiLimitReport lower_epilimit(const FunctionSequence& seq, const std::vector<double>& radii,
                              double ceiling) {
  return epilimit_impl(seq, radii, true, ceiling, "lower");
}

EpiLimitReport upper_epilimit(const FunctionSequence& seq, const std::vector<double>& radii,
                              double ceiling) {
  return epilimit_impl(seq, radii, false, ceiling, "upper");
}

EpiLimitReport seq_lower_epilimit(const FunctionSequence& seq, const std::vector<double>& radii,
                                  double ceiling) {
  EpiLimitReport rep = epilimit_impl(seq, radii, true, ceiling, "seq-lower");
  return rep;
}

ConjugateIdentityReport verify_conjugate_identity(const FunctionSequence& seq,
                                                  const GridFunction& lower_bound,
                                                  const DualGrid& dual, double tolerance,
                                                  double coercivity_margin) {
  ConjugateIdentityReport rep;
  rep.tolerance = tolerance;
  const Grid& g = seq.grid;
  if (lower_bound.grid != g) {
    rep.message = "lower bound lives on a different grid";
    return rep;
  }

  // Each sampled f_n must dominate the bound.
  const auto indices = tail_sample_indices(seq.tail, 16);
  for (std::int64_t n : indices) {
    const GridFunction fn = seq.provider(n);
    for (std::int64_t i = 0; i < g.size(); ++i)
      if (fn[i] < lower_bound[i]) {
        rep.message = "lower-bound violation at sampled index";
        return rep;
      }
  }

  // Coercivity on the window: boundary minimum above interior minimum.
  double bmin = kInf, imin = kInf;
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double v = lower_bound[i].v;
    if (g.on_boundary(i))
      bmin = std::min(bmin, v);
    else
      imin = std::min(imin, v);
  }
  if (!(bmin >= imin + coercivity_margin)) {
    rep.message = "lower bound is not coercive on the window";
    return rep;
  }
  rep.precondition_ok = true;

  const auto conj = [&](const GridFunction& f) {
    return (g.dim == 1 ? conjugate_fast_1d(f, dual) : conjugate_bruteforce(f, dual)).function;
  };

  const EpiLimitReport li = lower_epilimit(seq, default_radii(g));
  const GridFunction lhs = conj(li.function);

  // limsup_n f_n* pointwise on the dual grid, tail-exact.
  std::vector<GridFunction> stars;
  for (std::int64_t n : indices) stars.push_back(conj(seq.provider(n)));
  GridFunction rhs = GridFunction::constant(dual, ExtReal::neg_inf());
  for (std::int64_t s = 0; s < dual.size(); ++s) {
    std::vector<double> vals;
    vals.reserve(stars.size());
    for (const auto& st : stars) vals.push_back(st[s].v);
    rhs[s] = ExtReal(limit_stats(seq.tail, vals).limsup);
  }

  double dev = 0.0;
  for (std::int64_t s = 0; s < dual.size(); ++s) {
    const double a = lhs[s].v, b = rhs[s].v;
    if (std::isinf(a) || std::isinf(b))
      dev = a == b ? dev : kInf;
    else
      dev = std::max(dev, std::abs(a - b));
  }
  rep.max_deviation = dev;
  rep.evidence_only = seq.tail.kind == TailKind::truncated;
  rep.pass = dev <= tolerance;
  return rep;
}

}  // namespace epilim
