#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epilim/builtins.hpp"
#include "epilim/generators.hpp"
#include "epilim/random.hpp"
#include "epilim/subdiff.hpp"

using namespace epilim;

namespace {

const Grid kGrid = Grid::symmetric(8.0, 129);  // h = 1/8

MeasureSpace unit_space(std::size_t atoms) {
  return MeasureSpace::finite(std::vector<double>(atoms, 1.0 / double(atoms)));
}

IntegrandSequence constant_integrands(const Integrand& f) {
  IntegrandSequence seq;
  seq.tail = Tail::constant(0);
  seq.provider = [f](std::int64_t) { return f; };
  return seq;
}

SimpleFunctionSequence constant_points(const SimpleFunction& x) {
  SimpleFunctionSequence seq;
  seq.atom_count = x.size();
  seq.tail = Tail::constant(0);
  seq.provider = [x](std::int64_t) { return x; };
  return seq;
}

}  // namespace

TEST_CASE("differential quotient closed forms") {
  const MeasureSpace sp = unit_space(3);
  const SimpleFunction x0 = SimpleFunction::constant(3, 0.0);
  const SimpleFunction x = SimpleFunction::from_scalars({1.0, -2.0, 0.5});

  const Integrand sq = builtins::quadratic_integrand(kGrid);
  for (double r : {0.5, 0.125, 1.0 / 1024}) {
    const auto q = diff_quotient(sq, x0, x, r, sp);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(q[i].v == doctest::Approx(r * x.values[i][0] * x.values[i][0]));
  }

  const Integrand ab = builtins::abs_integrand(kGrid);
  for (double r : {0.5, 0.125}) {
    const auto q = diff_quotient(ab, x0, x, r, sp);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(q[i].v == doctest::Approx(std::abs(x.values[i][0])));
  }

  const Integrand ns = builtins::neg_sqrt_integrand(kGrid);
  const auto q = diff_quotient(ns, x0, SimpleFunction::constant(3, 1.0), 1e-4, sp);
  for (std::size_t i = 0; i < 3; ++i) CHECK(q[i].v == doctest::Approx(-100.0));

  CHECK_THROWS_AS(diff_quotient(sq, x0, x, 0.0, sp), std::invalid_argument);
}

TEST_CASE("quotient linearity transfer is exact") {
  const MeasureSpace sp = unit_space(2);
  const Integrand f = builtins::quadratic_integrand(kGrid);
  const double xs = 1.5;
  Integrand shifted = f;
  shifted.eval = [inner = f.eval, xs](std::size_t a, Point e) {
    const ExtReal v = inner(a, e);
    ExtReal r;
    r.v = v.v - xs * e[0];
    return r;
  };
  const SimpleFunction x0 = SimpleFunction::constant(2, 0.0);
  for (double r : {0.5, 0.25, 0.0625}) {
    for (double e : {-2.0, -0.5, 1.0, 3.0}) {
      const SimpleFunction x = SimpleFunction::constant(2, e);
      const auto a = diff_quotient(shifted, x0, x, r, sp);
      const auto b = diff_quotient(f, x0, x, r, sp);
      for (std::size_t i = 0; i < 2; ++i) CHECK(a[i].v == b[i].v - xs * e);
    }
  }
}

TEST_CASE("quotient scaling invariance") {
  const MeasureSpace sp = unit_space(2);
  const Integrand f = builtins::half_quadratic_integrand(kGrid);
  const Integrand f2 = builtins::scaled_integrand(f, 2.0);
  const SimpleFunction x0 = SimpleFunction::constant(2, 0.0);
  const SimpleFunction x = SimpleFunction::from_scalars({1.0, -1.5});
  for (double r : {0.5, 0.0625}) {
    const auto a = diff_quotient(f, x0, x, r, sp);
    const auto b = diff_quotient(f2, x0, x, r, sp);
    for (std::size_t i = 0; i < 2; ++i) CHECK(b[i].v == 2.0 * a[i].v);
  }
}

TEST_CASE("lcp: nonnegative integrands certify trivially") {
  const MeasureSpace sp = MeasureSpace::dyadic(8);
  const Integrand f = builtins::quadratic_integrand(kGrid);
  const Certificate c = lcp_check(constant_integrands(f),
                                  constant_points(SimpleFunction::constant(sp.size(), 1.0)), sp);
  CHECK(c.certified());
}

TEST_CASE("lcp: concentrating negative spikes refute with a replayable witness") {
  const MeasureSpace sp = MeasureSpace::dyadic(10);
  IntegrandSequence fs;
  fs.tail = Tail::truncated(2048);
  fs.provider = [&sp](std::int64_t n) {
    Integrand f;
    f.dim = 1;
    f.grid = kGrid;
    const auto spike = builtins::spike_values(sp, std::max<std::int64_t>(n, 1), 1.0);
    f.eval = [spike](std::size_t atom, Point e) {
      return ExtReal(-spike[atom] * std::abs(e[0]));
    };
    return f;
  };
  SimpleFunctionSequence xs;
  xs.atom_count = sp.size();
  xs.tail = Tail::truncated(2048);
  xs.provider = [&sp](std::int64_t) { return SimpleFunction::constant(sp.size(), 1.0); };

  const Certificate c = lcp_check(fs, xs, sp);
  REQUIRE(c.refuted());
  REQUIRE(c.witness.has_value());
  // replay: integrating the negative parts over the witness set at the
  // witness index reproduces a positive mass
  const Integrand fw = fs.provider(c.witness->n);
  const SimpleFunction xw = xs.provider(c.witness->n);
  double replay = 0.0;
  for (std::size_t i : c.witness->set) {
    const ExtReal v = fw.eval(i, xw.values[i]);
    if (v.v < 0) replay += sp.atoms[i] * (-v.v);
  }
  CHECK(replay == doctest::Approx(c.witness->value).epsilon(1e-9));
  CHECK(replay > 0.5);
}

TEST_CASE("lcp: growth-dominated families certify") {
  const MeasureSpace sp = MeasureSpace::dyadic(8);
  Xorshift rng(77);
  // f_n >= -eps|e| - u_n with uniformly integrable u_n
  IntegrandSequence fs;
  fs.tail = Tail::periodic(0, 2);
  fs.provider = [&sp](std::int64_t n) {
    Integrand f;
    f.dim = 1;
    f.grid = kGrid;
    const double eps = 0.01;
    const double level = n % 2 == 0 ? 0.5 : 0.25;
    f.eval = [eps, level](std::size_t, Point e) {
      return ExtReal(-eps * std::abs(e[0]) - level);
    };
    return f;
  };
  std::vector<double> bounded(sp.size());
  for (auto& v : bounded) v = rng.next_real(-2, 2);
  const Certificate c =
      lcp_check(fs, constant_points(SimpleFunction::from_scalars(bounded)), sp);
  CHECK(c.certified());
}

TEST_CASE("ioffe criterion by sampling") {
  const MeasureSpace sp = MeasureSpace::dyadic(8);
  const SimpleFunction x = SimpleFunction::constant(sp.size(), 0.0);

  // nonnegative integrand: certified
  const Certificate a = ioffe_criterion(
      constant_integrands(builtins::quadratic_integrand(kGrid)), x,
      [&](int trial) {
        SimpleFunctionSequence seq;
        seq.atom_count = sp.size();
        seq.tail = Tail::truncated(64);
        seq.provider = [&sp, trial](std::int64_t n) {
          return SimpleFunction::constant(sp.size(), std::ldexp(1.0 + trial, -int(std::min<std::int64_t>(n, 40))));
        };
        return seq;
      },
      8, sp);
  CHECK(a.certified());

  // separating-instance slice: products of strongly-vanishing s against
  // bounded y stay uniformly integrable
  IntegrandSequence slice;
  slice.tail = Tail::truncated(512);
  slice.provider = [](std::int64_t n) {
    const double s = 1.0 / double(std::max<std::int64_t>(n, 1));
    return builtins::product_slice_integrand(kGrid, s);
  };
  const Certificate b = ioffe_criterion(
      slice, x,
      [&](int trial) {
        SimpleFunctionSequence seq;
        seq.atom_count = sp.size();
        seq.tail = Tail::constant(0);
        seq.provider = [&sp, trial](std::int64_t) {
          return SimpleFunction::constant(sp.size(), 0.5 + 0.5 * trial);
        };
        return seq;
      },
      4, sp);
  CHECK(b.certified());

  // quotient blow-up family: refuted
  IntegrandSequence blow;
  blow.tail = Tail::truncated(64);
  blow.provider = [](std::int64_t n) {
    const double r = std::ldexp(1.0, -int(std::min<std::int64_t>(std::max<std::int64_t>(n, 1), 40)));
    Integrand f;
    f.dim = 1;
    f.grid = kGrid;
    f.eval = [r](std::size_t, Point e) {
      return ExtReal(-std::sqrt(std::abs(r * e[0])) / r);
    };
    return f;
  };
  const Certificate c = ioffe_criterion(
      blow, x,
      [&](int) {
        SimpleFunctionSequence seq;
        seq.atom_count = sp.size();
        seq.tail = Tail::constant(0);
        seq.provider = [&sp](std::int64_t) { return SimpleFunction::constant(sp.size(), 1.0); };
        return seq;
      },
      4, sp);
  CHECK(c.refuted());
}

TEST_CASE("ball criterion: certified and refuted closed forms") {
  const MeasureSpace sp = unit_space(4);
  const SimpleFunction x0 = SimpleFunction::constant(4, 0.0);
  const SimpleFunction zero = SimpleFunction::constant(4, 0.0);

  // |e| with the zero slope: the quotient is nonnegative
  const Certificate a = frechet_certificate(builtins::abs_integrand(kGrid), x0, zero, 1.0, {1.0},
                                            default_r_ladder(), sp);
  CHECK(a.certified());

  // |e| against a slope outside the subdifferential: stalls at 0.5 rho
  const Certificate b = frechet_certificate(builtins::abs_integrand(kGrid), x0,
                                            SimpleFunction::constant(4, 1.5), 1.0, {1.0},
                                            default_r_ladder(), sp);
  REQUIRE(b.refuted());
  REQUIRE(b.witness.has_value());
  CHECK(b.trace.back().second == doctest::Approx(0.5).epsilon(1e-6));

  // e^2 at the origin with p = 2
  const Certificate c = frechet_certificate(builtins::quadratic_integrand(kGrid), x0, zero, 2.0,
                                            {1.0}, default_r_ladder(), sp);
  CHECK(c.certified());
}

TEST_CASE("ball criterion witness replays the violation") {
  const MeasureSpace sp = unit_space(3);
  const SimpleFunction x0 = SimpleFunction::constant(3, 0.0);
  const Certificate b = frechet_certificate(builtins::abs_integrand(kGrid), x0,
                                            SimpleFunction::constant(3, 1.5), 1.0, {1.0},
                                            default_r_ladder(), sp);
  REQUIRE(b.refuted());
  REQUIRE(b.witness.has_value());
  const double r = b.witness->r;
  double replay = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i) {
    const double e = b.witness->x.values[i][0];
    const double q = (std::abs(r * e) - 0.0) / r - 1.5 * e;
    replay += sp.atoms[i] * (q < 0 ? -q : 0.0);
  }
  CHECK(replay == doctest::Approx(b.witness->value).epsilon(1e-9));
}

TEST_CASE("growth certificate closed forms") {
  const MeasureSpace sp = unit_space(4);
  const SimpleFunction x0 = SimpleFunction::constant(4, 0.0);
  GrowthCondition lp1;
  lp1.kind = GrowthCondition::Kind::lp;
  lp1.p = 1.0;

  const Certificate a = growth_certificate(builtins::quadratic_integrand(kGrid), x0,
                                           SimpleFunction::constant(4, 0.0), lp1,
                                           default_r_ladder(), sp);
  CHECK(a.certified());

  // interior subgradient of |e|: the shifted quotient stays nonnegative
  const Certificate b = growth_certificate(builtins::abs_integrand(kGrid), x0,
                                           SimpleFunction::constant(4, 0.5), lp1,
                                           default_r_ladder(), sp);
  CHECK(b.certified());

  // -sqrt blow-up: the minimal u_r family explodes
  const Certificate c = growth_certificate(builtins::neg_sqrt_integrand(kGrid), x0,
                                           SimpleFunction::constant(4, 0.0), lp1,
                                           default_r_ladder(), sp);
  REQUIRE(c.refuted());
  CHECK(c.witness.has_value());
}

TEST_CASE("growth implies the ball criterion on the instance library") {
  const MeasureSpace sp = unit_space(3);
  Xorshift rng(83);
  const std::vector<Integrand> library{
      builtins::quadratic_integrand(kGrid), builtins::half_quadratic_integrand(kGrid),
      builtins::abs_integrand(kGrid), builtins::neg_sqrt_integrand(kGrid),
      builtins::product_slice_integrand(kGrid, 0.5)};
  for (const auto& f : library) {
    for (int k = 0; k < 5; ++k) {
      const double x0v = 0.25 * double(rng.next_int(-8, 8));
      const SimpleFunction x0 = SimpleFunction::constant(3, x0v);
      const SimpleFunction xs = SimpleFunction::constant(3, 0.25 * double(rng.next_int(-4, 4)));
      GrowthCondition cond;
      cond.kind = GrowthCondition::Kind::lp;
      cond.p = 1.0;
      Certificate g, fr;
      try {
        g = growth_certificate(f, x0, xs, cond, default_r_ladder(), sp);
        fr = frechet_certificate(f, x0, xs, 1.0, {1.0}, default_r_ladder(), sp);
      } catch (const std::invalid_argument&) {
        continue;  // x0 outside the fiber domain
      }
      if (g.certified()) CHECK_FALSE(fr.refuted());
    }
  }
}

TEST_CASE("growth certificate through a generated superlinear gauge") {
  // The weak-Hadamard route: the penalty is a Young integrand produced by
  // the de la Vallee Poussin construction from a uniformly integrable
  // family, fed into the orlicz kind of the growth condition.
  const MeasureSpace sp = unit_space(3);
  std::vector<SimpleFunction> fam{SimpleFunction::from_scalars({1.0, -2.0, 0.5}),
                                  SimpleFunction::from_scalars({-0.5, 1.5, 1.0})};
  const YoungCertificate dlvp = young_from_ui(fam, sp);
  REQUIRE(dlvp.ok);

  GrowthCondition cond;
  cond.kind = GrowthCondition::Kind::orlicz;
  cond.lambda = 1.0;
  cond.phi = dlvp.psi.as_integrand(kGrid);

  const SimpleFunction x0 = SimpleFunction::constant(3, 0.0);
  const Certificate ok = growth_certificate(builtins::abs_integrand(kGrid), x0,
                                            SimpleFunction::constant(3, 0.5), cond,
                                            default_r_ladder(), sp);
  CHECK(ok.certified());

  const Certificate bad = growth_certificate(builtins::neg_sqrt_integrand(kGrid), x0,
                                             SimpleFunction::constant(3, 0.0), cond,
                                             default_r_ladder(), sp);
  CHECK_FALSE(bad.certified());
}

TEST_CASE("moreau-rockafellar implies the ball criterion at p = 1") {
  const MeasureSpace sp = unit_space(3);
  const SimpleFunction x0 = SimpleFunction::constant(3, 0.0);
  const std::vector<double> slopes{-1.0, -0.5, 0.0, 0.5, 1.0};
  for (double s : slopes) {
    const SimpleFunction xs = SimpleFunction::constant(3, s);
    const Certificate mr = global_lower_bound_checks(builtins::abs_integrand(kGrid), x0, xs,
                                                     GlobalBoundVariant::moreau_rockafellar, {}, sp);
    const Certificate fr = frechet_certificate(builtins::abs_integrand(kGrid), x0, xs, 1.0, {1.0},
                                               default_r_ladder(), sp);
    REQUIRE(mr.certified());  // |e| >= s e for |s| <= 1
    CHECK_FALSE(fr.refuted());
  }
  // and a slope that must fail both
  const Certificate mr_bad = global_lower_bound_checks(builtins::abs_integrand(kGrid), x0,
                                                       SimpleFunction::constant(3, 1.5),
                                                       GlobalBoundVariant::moreau_rockafellar, {}, sp);
  CHECK(mr_bad.refuted());
}

TEST_CASE("global bounds: weak hadamard and growth variants") {
  const MeasureSpace sp = unit_space(2);
  const SimpleFunction x0 = SimpleFunction::constant(2, 0.0);
  const SimpleFunction zero = SimpleFunction::constant(2, 0.0);

  const Certificate mr = global_lower_bound_checks(builtins::abs_integrand(kGrid), x0, zero,
                                                   GlobalBoundVariant::moreau_rockafellar, {}, sp);
  CHECK(mr.certified());

  const Certificate wh = global_lower_bound_checks(builtins::neg_sqrt_integrand(kGrid), x0, zero,
                                                   GlobalBoundVariant::weak_hadamard, {}, sp);
  REQUIRE(wh.refuted());
  REQUIRE(wh.witness.has_value());
  CHECK(std::abs(wh.witness->direction) == doctest::Approx(kGrid.spacing(0)));

  const Certificate wh_ok = global_lower_bound_checks(builtins::abs_integrand(kGrid), x0, zero,
                                                      GlobalBoundVariant::weak_hadamard, {}, sp);
  CHECK(wh_ok.certified());

  GlobalBoundParams sp2;
  sp2.p = 2.0;
  sp2.c = 1.0;
  sp2.a = kGrid.spacing(0);
  const Certificate spc = global_lower_bound_checks(builtins::half_quadratic_integrand(kGrid), x0,
                                                    zero, GlobalBoundVariant::s_p, sp2, sp);
  CHECK(spc.certified());
  CHECK(spc.approximate);

  GlobalBoundParams si;
  si.eta = 1.0;
  si.cap = 10.0;
  const Certificate sic = global_lower_bound_checks(builtins::abs_integrand(kGrid), x0, zero,
                                                    GlobalBoundVariant::s_infty, si, sp);
  CHECK(sic.certified());
  const Certificate sic_bad = global_lower_bound_checks(builtins::neg_sqrt_integrand(kGrid), x0,
                                                        zero, GlobalBoundVariant::s_infty, si, sp);
  CHECK(sic_bad.refuted());
}

TEST_CASE("certificates agree under joint scaling") {
  const MeasureSpace sp = unit_space(2);
  const SimpleFunction x0 = SimpleFunction::constant(2, 0.0);
  const SimpleFunction xs = SimpleFunction::constant(2, 0.5);
  const SimpleFunction xs2 = SimpleFunction::constant(2, 1.0);
  const Integrand f = builtins::abs_integrand(kGrid);
  const Integrand f2 = builtins::scaled_integrand(f, 2.0);
  const Certificate a =
      global_lower_bound_checks(f, x0, xs, GlobalBoundVariant::moreau_rockafellar, {}, sp);
  const Certificate b =
      global_lower_bound_checks(f2, x0, xs2, GlobalBoundVariant::moreau_rockafellar, {}, sp);
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("convex integrands with subgradient slopes certify everywhere") {
  const MeasureSpace sp = unit_space(3);
  Xorshift rng(89);
  for (int t = 0; t < 20; ++t) {
    const Integrand f = gen::random_convex_integrand(rng, Grid::symmetric(8.0, 17), 3, 8);
    const SimpleFunction x0 = SimpleFunction::constant(3, 0.0);
    // atomwise two-sided difference quotient picks a subgradient selection
    SimpleFunction xs = SimpleFunction::constant(3, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      const double fp = f.eval(i, Point{1.0, 0.0}).v;
      const double fm = f.eval(i, Point{-1.0, 0.0}).v;
      const double f0 = f.eval(i, Point{0.0, 0.0}).v;
      // any slope between the one-sided quotients
      xs.values[i][0] = std::max(f0 - fm, std::min(fp - f0, 0.0));
    }
    const Certificate mr =
        global_lower_bound_checks(f, x0, xs, GlobalBoundVariant::moreau_rockafellar, {}, sp);
    CHECK(mr.certified());
  }
}

TEST_CASE("quotient spec validation") {
  const MeasureSpace sp = unit_space(2);
  DiffQuotientSpec spec;
  spec.f = builtins::quadratic_integrand(kGrid);
  spec.x0 = SimpleFunction::constant(2, 0.5);
  spec.validate(sp);
  const auto q = diff_quotient(spec, SimpleFunction::constant(2, 1.0), 0.25, sp);
  CHECK(q[0].v == doctest::Approx((std::pow(0.75, 2) - 0.25) / 0.25));

  DiffQuotientSpec bad = spec;
  bad.f.eval = [](std::size_t, Point) { return ExtReal::pos_inf(); };
  CHECK_THROWS_AS(bad.validate(sp), std::invalid_argument);
}

TEST_CASE("declared residual families are verified before use") {
  const MeasureSpace sp = unit_space(3);
  const SimpleFunction x0 = SimpleFunction::constant(3, 0.0);
  const SimpleFunction zero = SimpleFunction::constant(3, 0.0);

  GrowthCondition good;
  good.kind = GrowthCondition::Kind::lp;
  good.p = 1.0;
  const auto ladder = default_r_ladder();
  for (double r : ladder) good.u_family.push_back(SimpleFunction::constant(3, r * r));
  good.u_mode = GrowthCondition::UMode::l1_null;
  CHECK(growth_certificate(builtins::quadratic_integrand(kGrid), x0, zero, good, ladder, sp)
            .certified());

  GrowthCondition negative = good;
  negative.u_family[0] = SimpleFunction::constant(3, -1.0);
  CHECK_THROWS_AS(
      growth_certificate(builtins::quadratic_integrand(kGrid), x0, zero, negative, ladder, sp),
      std::invalid_argument);

  GrowthCondition stuck = good;
  for (auto& u : stuck.u_family) u = SimpleFunction::constant(3, 1.0);  // not L1-null
  CHECK_THROWS_AS(
      growth_certificate(builtins::quadratic_integrand(kGrid), x0, zero, stuck, ladder, sp),
      std::invalid_argument);
}

TEST_CASE("hadamard directional brackets") {
  const MeasureSpace sp = unit_space(4);
  const SimpleFunction x0 = SimpleFunction::constant(4, 0.0);

  // e^2: bracket collapses to 0
  const auto a = hadamard_directional_subderivate(builtins::quadratic_integrand(kGrid), x0,
                                                  SimpleFunction::from_scalars({1.0, -1.0, 2.0, 0.5}),
                                                  {SimpleFunction::constant(4, 0.0)}, sp);
  CHECK(a.upper.v <= 1e-5);
  CHECK(a.lower.v >= -1e-5);
  CHECK_FALSE(a.diverging);

  // |e| along the all-ones direction: both ends at the total mass
  const SimpleFunction ones = SimpleFunction::constant(4, 1.0);
  const auto b = hadamard_directional_subderivate(builtins::abs_integrand(kGrid), x0, ones,
                                                  {SimpleFunction::constant(4, 1.0)}, sp);
  CHECK(b.upper.v == doctest::Approx(sp.total_mass()));
  CHECK(b.lower.v == doctest::Approx(sp.total_mass()));

  // -sqrt blow-up: diverging with an upper bound escaping to -inf
  const auto c = hadamard_directional_subderivate(builtins::neg_sqrt_integrand(kGrid), x0, ones,
                                                  {}, sp);
  CHECK(c.diverging);
  CHECK(c.upper.v < -100.0);
  CHECK(c.lower.is_neg_inf());
}
