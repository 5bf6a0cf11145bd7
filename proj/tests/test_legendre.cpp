#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "epilim/builtins.hpp"
#include "epilim/generators.hpp"
#include "epilim/legendre.hpp"
#include "epilim/random.hpp"

using namespace epilim;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Test-side envelope oracle: geometric lower convex hull (strict monotone
// chain, collinear dropped) with convex-combination interpolation. Fully
// independent of the double-transform implementation path.
std::vector<double> hull_oracle(const GridFunction& f) {
  const Grid& g = f.grid;
  std::vector<std::int64_t> fin;
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (f[i].finite()) fin.push_back(i);
  std::vector<double> env(std::size_t(g.size()), kInf);
  if (fin.empty()) return env;

  std::vector<std::int64_t> hull;
  for (std::int64_t i : fin) {
    const long double xi = g.coord(0, i), yi = f[i].v;
    while (hull.size() >= 2) {
      const std::int64_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      const long double ax = g.coord(0, a), ay = f[a].v;
      const long double bx = g.coord(0, b), by = f[b].v;
      // pop while b is on or above the chord a -> new
      if ((xi - ax) * (by - ay) - (yi - ay) * (bx - ax) >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }

  std::size_t seg = 0;
  for (std::int64_t i = fin.front(); i <= fin.back(); ++i) {
    const double x = g.coord(0, i);
    while (seg + 1 < hull.size() && g.coord(0, hull[seg + 1]) < x) ++seg;
    if (seg + 1 >= hull.size()) {
      env[std::size_t(i)] = f[hull.back()].v;
      continue;
    }
    const double xa = g.coord(0, hull[seg]), xb = g.coord(0, hull[seg + 1]);
    const double fa = f[hull[seg]].v, fb = f[hull[seg + 1]].v;
    env[std::size_t(i)] = ((xb - x) * fa + (x - xa) * fb) / (xb - xa);
  }
  return env;
}

bool same_result(const ConjugateResult& a, const ConjugateResult& b) {
  const std::int64_t m = a.function.grid.size();
  if (b.function.grid != a.function.grid) return false;
  for (std::int64_t s = 0; s < m; ++s) {
    if (a.function[s] != b.function[s]) return false;
    if (a.argmax[std::size_t(s)] != b.argmax[std::size_t(s)]) return false;
    if (a.boundary[std::size_t(s)] != b.boundary[std::size_t(s)]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("conjugate of a point indicator is linear in nothing") {
  const Grid g = Grid::symmetric(2.0, 9);
  const GridFunction f = indicator({Point{0.0, 0.0}}, g);
  const DualGrid dual = Grid::symmetric(3.0, 13);
  const ConjugateResult r = conjugate_bruteforce(f, dual);
  for (std::int64_t s = 0; s < dual.size(); ++s) {
    CHECK(r.function[s] == ExtReal(0.0));
    CHECK(r.boundary[std::size_t(s)] == 0);
  }
}

TEST_CASE("conjugate of a linear function: zero at the matching slope") {
  const Grid g = Grid::symmetric(2.0, 9);
  const double a = 1.0;
  const GridFunction f = builtins::sample(g, [a](double x) { return a * x; });
  const DualGrid dual = Grid::symmetric(2.0, 9);
  const ConjugateResult r = conjugate_bruteforce(f, dual);
  for (std::int64_t s = 0; s < dual.size(); ++s) {
    const double sv = dual.coord(0, s);
    if (sv == a) {
      CHECK(r.function[s] == ExtReal(0.0));
      CHECK(r.boundary[std::size_t(s)] == 0);  // interior maximizers tie
    } else {
      CHECK(r.boundary[std::size_t(s)] == 1);  // window truncation bites
    }
  }
}

TEST_CASE("conjugate of x^2/2 approximates s^2/2") {
  const Grid g(-4.0, 4.0, 4001);
  const GridFunction f = builtins::sample(g, [](double x) { return 0.5 * x * x; });
  const DualGrid dual(-2.0, 2.0, 401);
  const ConjugateResult r = conjugate_fast_1d(f, dual);
  double worst = 0.0;
  for (std::int64_t s = 0; s < dual.size(); ++s) {
    const double sv = dual.coord(0, s);
    worst = std::max(worst, std::abs(r.function[s].v - 0.5 * sv * sv));
    CHECK(r.boundary[std::size_t(s)] == 0);
  }
  CHECK(worst <= 5e-3);
}

TEST_CASE("fast transform equals brute force, including infinities") {
  Xorshift rng(11);
  for (int t = 0; t < 500; ++t) {
    const std::int64_t half = 4 + std::int64_t(rng.next_below(13));
    const Grid g = Grid::symmetric(double(half), 2 * half + 1);
    const GridFunction f = gen::random_pwl(rng, g, 6, 64, true);
    const std::int64_t dhalf = 3 + std::int64_t(rng.next_below(9));
    const DualGrid dual = Grid::symmetric(double(dhalf), 2 * dhalf + 1);
    CHECK(same_result(conjugate_bruteforce(f, dual), conjugate_fast_1d(f, dual)));
  }
}

TEST_CASE("fast transform equals brute force on indicator gaps") {
  const Grid g = Grid::symmetric(2.0, 5);
  const GridFunction f = indicator({Point{-1.0, 0.0}, Point{1.0, 0.0}}, g);
  const DualGrid dual = Grid::symmetric(3.0, 7);
  CHECK(same_result(conjugate_bruteforce(f, dual), conjugate_fast_1d(f, dual)));
}

TEST_CASE("fast transform equals brute force with a -inf value") {
  const Grid g = Grid::symmetric(2.0, 5);
  GridFunction f = GridFunction::constant(g, ExtReal(1.0));
  f[3] = ExtReal::neg_inf();
  const DualGrid dual = Grid::symmetric(2.0, 5);
  const auto a = conjugate_bruteforce(f, dual), b = conjugate_fast_1d(f, dual);
  CHECK(same_result(a, b));
  CHECK(a.function[0].is_pos_inf());
  CHECK(a.argmax[0] == 3);
}

TEST_CASE("biconjugate of the capped product slices") {
  // t -> max(-|t|, -1): envelope is the constant -1 once the window covers
  // the cap; t -> 0 stays 0.
  const Grid g(-10.0, 10.0, 81);
  const GridFunction g1 = builtins::sample(g, [](double t) { return std::max(-std::abs(t), -1.0); });
  const GridFunction e1 = biconjugate(g1);
  for (std::int64_t i = 0; i < g.size(); ++i) CHECK(e1[i] == ExtReal(-1.0));

  const GridFunction g0 = builtins::sample(g, [](double) { return 0.0; });
  const GridFunction e0 = biconjugate(g0);
  for (std::int64_t i = 0; i < g.size(); ++i) CHECK(e0[i] == ExtReal(0.0));
}

TEST_CASE("biconjugate of a two-point indicator is the segment hull") {
  const Grid g = Grid::symmetric(2.0, 9);
  const GridFunction f = indicator({Point{-1.0, 0.0}, Point{1.0, 0.0}}, g);
  const GridFunction env = biconjugate(f);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(0, i);
    if (std::abs(x) <= 1.0)
      CHECK(env[i] == ExtReal(0.0));
    else
      CHECK(env[i].is_pos_inf());
  }
}

TEST_CASE("biconjugate matches the hull oracle on random instances") {
  Xorshift rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t half = 5 + std::int64_t(rng.next_below(16));
    const Grid g = Grid::symmetric(double(half), 2 * half + 1);
    const GridFunction f = gen::random_pwl(rng, g, 6, 48, true);
    const GridFunction env = biconjugate(f);
    const std::vector<double> oracle = hull_oracle(f);
    for (std::int64_t i = 0; i < g.size(); ++i) {
      if (std::isinf(oracle[std::size_t(i)]))
        CHECK(env[i].is_pos_inf());
      else
        CHECK(std::abs(env[i].v - oracle[std::size_t(i)]) <= 1e-9);
    }
    // exact identities on the same instances
    CHECK(pointwise_le(env, f));
    const GridFunction env2 = biconjugate(env);
    for (std::int64_t i = 0; i < g.size(); ++i) CHECK(env2[i] == env[i]);
    const DualGrid dual = auto_dual_grid(f);
    const GridFunction cf = conjugate_fast_1d(f, dual).function;
    const GridFunction ce = conjugate_fast_1d(env, dual).function;
    for (std::int64_t s = 0; s < dual.size(); ++s) CHECK(cf[s] == ce[s]);
  }
}

TEST_CASE("biconjugate fixes convex functions") {
  Xorshift rng(31);
  for (int t = 0; t < 100; ++t) {
    const Grid g = Grid::symmetric(8.0, 17);
    const GridFunction f = gen::random_convex(rng, g, 16);
    const GridFunction env = biconjugate(f);
    for (std::int64_t i = 0; i < g.size(); ++i) CHECK(env[i] == f[i]);
  }
}

TEST_CASE("infimal convolution: the point indicator is the identity") {
  Xorshift rng(37);
  const Grid g = Grid::symmetric(6.0, 13);
  const GridFunction id = indicator({Point{0.0, 0.0}}, g);
  for (int t = 0; t < 50; ++t) {
    const GridFunction f = gen::random_pwl(rng, g, 5, 32, true);
    const GridFunction conv = infconv(f, id);
    for (std::int64_t i = 0; i < g.size(); ++i) CHECK(conv[i] == f[i]);
  }
}

TEST_CASE("infimal convolution reproduces the quadratic smoothing") {
  // |x| box x^2/2 = x^2/2 inside the unit slope band, |x| - 1/2 beyond.
  const Grid g(-4.0, 4.0, 1025);
  const double h = g.spacing(0);
  const GridFunction f = builtins::sample(g, [](double x) { return std::abs(x); });
  const GridFunction q = builtins::sample(g, [](double x) { return 0.5 * x * x; });
  const GridFunction conv = infconv(f, q);

  // independent 1-D minimization oracle on a refined ladder
  const auto oracle = [&](double x) {
    double best = kInf;
    for (double y = -4.0; y <= 4.0; y += h / 16.0) best = std::min(best, std::abs(x - y) + 0.5 * y * y);
    return best;
  };
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(0, i);
    if (std::abs(x) > 2.0) continue;  // window truncation affects the rim
    CHECK(std::abs(conv[i].v - oracle(x)) <= 2 * h);
    const double closed = std::abs(x) <= 1.0 ? 0.5 * x * x : std::abs(x) - 0.5;
    CHECK(std::abs(conv[i].v - closed) <= 2 * h);
  }
}

TEST_CASE("conjugate of an infimal convolution splits") {
  Xorshift rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t half = 8 + std::int64_t(rng.next_below(9));
    const Grid g = Grid::symmetric(double(half), 2 * half + 1);
    // domains inside the half window keep the sup unconstrained
    const GridFunction f = gen::random_pwl_supported(rng, g, 4, 32, half / 2);
    const GridFunction k = gen::random_pwl_supported(rng, g, 4, 32, half / 2);
    const GridFunction conv = infconv(f, k);
    const DualGrid dual = Grid::symmetric(6.0, 13);
    const GridFunction cc = conjugate_fast_1d(conv, dual).function;
    const GridFunction cf = conjugate_fast_1d(f, dual).function;
    const GridFunction ck = conjugate_fast_1d(k, dual).function;
    for (std::int64_t s = 0; s < dual.size(); ++s) {
      const ExtReal sum = strict_sum(cf[s], ck[s]);
      CHECK(cc[s] == sum);
    }
  }
}

TEST_CASE("fenchel-young holds over the window") {
  Xorshift rng(43);
  const Grid g = Grid::symmetric(10.0, 21);
  const DualGrid dual = Grid::symmetric(8.0, 17);
  for (int t = 0; t < 100; ++t) {
    const GridFunction f = gen::random_pwl(rng, g, 6, 32, true);
    const ConjugateResult conj = conjugate_fast_1d(f, dual);
    for (int k = 0; k < 1000; ++k) {
      const std::int64_t xi = std::int64_t(rng.next_below(std::uint64_t(g.size())));
      const std::int64_t si = std::int64_t(rng.next_below(std::uint64_t(dual.size())));
      CHECK(fenchel_young_gap(f, conj, xi, si) >= ExtReal(0.0));
    }
  }
}

TEST_CASE("order reversal") {
  Xorshift rng(47);
  const Grid g = Grid::symmetric(10.0, 21);
  const DualGrid dual = Grid::symmetric(6.0, 13);
  for (int t = 0; t < 200; ++t) {
    const GridFunction f = gen::random_pwl(rng, g, 6, 32, false);
    GridFunction h = f;
    for (std::int64_t i = 0; i < g.size(); ++i)
      h[i] = ExtReal(f[i].v + double(rng.next_below(5)));  // h >= f
    const GridFunction cf = conjugate_fast_1d(f, dual).function;
    const GridFunction ch = conjugate_fast_1d(h, dual).function;
    for (std::int64_t s = 0; s < dual.size(); ++s) CHECK(cf[s] >= ch[s]);
  }
}

TEST_CASE("sum conjugate is dominated by the convolution of conjugates") {
  Xorshift rng(53);
  const Grid g = Grid::symmetric(8.0, 17);
  const DualGrid dual = Grid::symmetric(6.0, 13);
  for (int t = 0; t < 200; ++t) {
    const GridFunction f = gen::random_pwl(rng, g, 5, 16, false);
    const GridFunction k = gen::random_pwl(rng, g, 5, 16, false);
    GridFunction sum = f;
    for (std::int64_t i = 0; i < g.size(); ++i) sum[i] = strict_sum(f[i], k[i]);
    const GridFunction csum = conjugate_fast_1d(sum, dual).function;
    const GridFunction cf = conjugate_fast_1d(f, dual).function;
    const GridFunction ck = conjugate_fast_1d(k, dual).function;
    const GridFunction conv = infconv(cf, ck);
    for (std::int64_t s = 0; s < dual.size(); ++s) CHECK(csum[s] <= conv[s]);
  }
}

TEST_CASE("unsupported dimension is reported") {
  const Grid g2 = Grid::symmetric2(1.0, 1.0, 3, 3);
  const GridFunction f = GridFunction::constant(g2, ExtReal(0.0));
  CHECK_THROWS_AS(conjugate_fast_1d(f, g2), std::invalid_argument);
}

TEST_CASE("two-dimensional conjugate of a separable quadratic") {
  const Grid g = Grid::symmetric2(4.0, 4.0, 33, 33);
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Point p = g.point_at(i);
    f[i] = ExtReal(0.5 * (p[0] * p[0] + p[1] * p[1]));
  }
  const DualGrid dual = Grid::symmetric2(2.0, 2.0, 9, 9);
  const ConjugateResult r = conjugate_bruteforce(f, dual);
  const double h = g.spacing(0);
  for (std::int64_t s = 0; s < dual.size(); ++s) {
    const Point sv = dual.point_at(s);
    const double expect = 0.5 * (sv[0] * sv[0] + sv[1] * sv[1]);
    CHECK(std::abs(r.function[s].v - expect) <= h);
    CHECK(r.boundary[std::size_t(s)] == 0);
  }
}

TEST_CASE("two-dimensional biconjugate stays below and fixes convex data") {
  const Grid g = Grid::symmetric2(3.0, 3.0, 13, 13);
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Point p = g.point_at(i);
    // double well along the first axis
    f[i] = ExtReal((p[0] * p[0] - 1.0) * (p[0] * p[0] - 1.0) + p[1] * p[1]);
  }
  const GridFunction env = biconjugate(f);
  CHECK(pointwise_le(env, f));
  // the well floor flattens between the two minima on the axis line
  const std::int64_t mid = g.index_of(Point{0.0, 0.0});
  CHECK(env[mid].v <= 0.5);
  CHECK(f[mid].v == 1.0);
}

TEST_CASE("two-dimensional infimal convolution identity element") {
  const Grid g = Grid::symmetric2(2.0, 2.0, 5, 5);
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    const Point p = g.point_at(i);
    f[i] = ExtReal(std::abs(p[0]) + 2.0 * std::abs(p[1]));
  }
  const GridFunction id = indicator({Point{0.0, 0.0}}, g);
  const GridFunction conv = infconv(f, id);
  for (std::int64_t i = 0; i < g.size(); ++i) CHECK(conv[i] == f[i]);
}
