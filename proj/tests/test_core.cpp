#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epilim/extreal.hpp"
#include "epilim/grid.hpp"
#include "epilim/json_io.hpp"
#include "epilim/random.hpp"

using namespace epilim;

TEST_CASE("upper sum convention") {
  CHECK(upper_sum(ExtReal::pos_inf(), ExtReal::neg_inf()) == ExtReal::pos_inf());
  CHECK(upper_sum(ExtReal::neg_inf(), ExtReal::pos_inf()) == ExtReal::pos_inf());
  CHECK(upper_sum(ExtReal(3.0), ExtReal::neg_inf()) == ExtReal::neg_inf());
  CHECK(upper_sum(ExtReal(2.0), ExtReal(5.0)) == ExtReal(7.0));
}

TEST_CASE("strict sum reports the undefined case") {
  CHECK(strict_sum(ExtReal(1.0), ExtReal::pos_inf()) == ExtReal::pos_inf());
  CHECK_THROWS_AS(strict_sum(ExtReal::pos_inf(), ExtReal::neg_inf()), std::domain_error);
}

TEST_CASE("upper sum is commutative and monotone") {
  Xorshift rng(7);
  const auto draw = [&]() -> ExtReal {
    const auto k = rng.next_below(8);
    if (k == 0) return ExtReal::pos_inf();
    if (k == 1) return ExtReal::neg_inf();
    return ExtReal(double(rng.next_int(-20, 20)));
  };
  for (int t = 0; t < 2000; ++t) {
    const ExtReal a = draw(), b = draw(), c = draw();
    CHECK(upper_sum(a, b) == upper_sum(b, a));
    if (b <= c) CHECK(upper_sum(a, b) <= upper_sum(a, c));
  }
}

TEST_CASE("scaling of infinities") {
  CHECK(scale(2.0, ExtReal::pos_inf()) == ExtReal::pos_inf());
  CHECK(scale(-1.0, ExtReal::pos_inf()) == ExtReal::neg_inf());
  CHECK(scale(0.0, ExtReal::pos_inf(), ZeroTimesInf::zero) == ExtReal(0.0));
  CHECK_THROWS_AS(scale(0.0, ExtReal::neg_inf()), std::domain_error);
}

TEST_CASE("total order") {
  CHECK(ExtReal::neg_inf() < ExtReal(-1e300));
  CHECK(ExtReal(1e300) < ExtReal::pos_inf());
  CHECK_THROWS_AS(ExtReal(std::nan("")), std::invalid_argument);
}

TEST_CASE("indicator examples") {
  const Grid g(-1.0, 1.0, 3);
  const GridFunction f = indicator({Point{0.0, 0.0}}, g);
  CHECK(f[0].is_pos_inf());
  CHECK(f[1] == ExtReal(0.0));
  CHECK(f[2].is_pos_inf());
  CHECK(f.proper());

  const GridFunction empty = indicator({}, g);
  CHECK_FALSE(empty.proper());
  CHECK(empty.dom_empty());

  const GridFunction two = indicator({Point{-1.0, 0.0}, Point{1.0, 0.0}}, g);
  CHECK(two.at(Point{0.0, 0.0}).is_pos_inf());

  CHECK_THROWS_AS(indicator({Point{0.3, 0.0}}, g), std::invalid_argument);
}

TEST_CASE("sublevel sets") {
  const Grid g(-2.0, 2.0, 5);
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  for (std::int64_t i = 0; i < g.size(); ++i) f[i] = ExtReal(std::abs(g.coord(0, i)));

  const auto s1 = sublevel(f, 1.0);
  CHECK(s1.size() == 3);  // {-1, 0, 1}
  CHECK(sublevel(f, -5.0).empty());

  const GridFunction ind = indicator({Point{0.0, 0.0}}, g);
  const auto s0 = sublevel(ind, 0.0);
  REQUIRE(s0.size() == 1);
  CHECK(g.point_at(s0[0])[0] == 0.0);

  // monotone in the threshold
  Xorshift rng(3);
  for (int t = 0; t < 200; ++t) {
    const double r1 = rng.next_real(-2, 2), r2 = r1 + rng.next_real(0, 2);
    const auto a = sublevel(f, r1), b = sublevel(f, r2);
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("properness by scan") {
  const Grid g(-1.0, 1.0, 3);
  GridFunction f = GridFunction::constant(g, ExtReal(1.0));
  CHECK(f.proper());
  f[1] = ExtReal::neg_inf();
  CHECK_FALSE(f.proper());
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(1.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(Grid(-1.0, 1.0, 1), std::invalid_argument);
  const Grid g = Grid::symmetric(2.0, 9);
  CHECK(g.contains_origin());
  CHECK(g.spacing(0) == doctest::Approx(0.5));
  CHECK(g.on_boundary(0));
  CHECK_FALSE(g.on_boundary(4));

  const Grid g2 = Grid::symmetric2(1.0, 2.0, 3, 5);
  CHECK(g2.size() == 15);
  // row-major
  CHECK(g2.linear_index(1, 2) == 7);
  const auto mi = g2.multi_index(7);
  CHECK(mi[0] == 1);
  CHECK(mi[1] == 2);
}

TEST_CASE("grid function json round trip") {
  const Grid g = Grid::symmetric(2.0, 5);
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  f[0] = ExtReal::pos_inf();
  f[1] = ExtReal(-1.5);
  f[4] = ExtReal::neg_inf();
  const auto j = to_json(f);
  CHECK(j["values"][0] == "inf");
  CHECK(j["values"][4] == "-inf");
  const GridFunction back = grid_function_from_json(j);
  CHECK(back.grid == f.grid);
  for (std::int64_t i = 0; i < g.size(); ++i) CHECK(back[i] == f[i]);
}

TEST_CASE("two-dimensional grid functions serialize row-major") {
  const Grid g = Grid::symmetric2(1.0, 1.0, 3, 3);
  GridFunction f = GridFunction::constant(g, ExtReal(0.0));
  for (std::int64_t i = 0; i < g.size(); ++i) f[i] = ExtReal(double(i));
  const auto j = to_json(f);
  // row-major: linear index (i0, i1) = i0 * n1 + i1
  CHECK(j["values"][5] == 5.0);
  CHECK(j["grid"]["n"].size() == 2);
  const GridFunction back = grid_function_from_json(j);
  CHECK(back.grid == g);
  CHECK(back[g.linear_index(1, 2)] == ExtReal(5.0));
}

TEST_CASE("measure space json round trip") {
  MeasureSpace sp = MeasureSpace::finite({1.0, 2.5}, {0, 1});
  const MeasureSpace back = measure_space_from_json(to_json(sp));
  CHECK(back.atoms == sp.atoms);
  CHECK(back.covering == sp.covering);
  CHECK_FALSE(back.refining());

  const MeasureSpace dy = MeasureSpace::dyadic(4);
  const MeasureSpace dy2 = measure_space_from_json(to_json(dy));
  CHECK(dy2.refining());
  CHECK(dy2.size() == 16);
}
