#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "epilim/extreal.hpp"

namespace epilim {

using Point = std::array<double, 2>;  // second component unused when dim == 1

/// Uniform rectilinear grid over a window of R^d, d in {1,2}.
/// Per-axis spacing h = (max-min)/(n-1). Windows are usually symmetric
/// [-L, L] with the origin on the grid; conjugacy and differential-quotient
/// formulas are anchored at 0.
struct Grid {
  int dim = 1;
  std::array<double, 2> min{0, 0};
  std::array<double, 2> max{0, 0};
  std::array<std::int64_t, 2> n{2, 1};

  Grid() = default;
  Grid(double lo, double hi, std::int64_t count);                      // 1-D
  Grid(Point lo, Point hi, std::array<std::int64_t, 2> count);         // 2-D

  /// Symmetric window [-half, half] per axis with the origin a grid point
  /// (n odd is enforced).
  static Grid symmetric(double half, std::int64_t count);
  static Grid symmetric2(double half0, double half1, std::int64_t n0, std::int64_t n1);

  double spacing(int axis = 0) const { return (max[axis] - min[axis]) / double(n[axis] - 1); }
  std::int64_t size() const { return dim == 1 ? n[0] : n[0] * n[1]; }

  double coord(int axis, std::int64_t i) const { return min[axis] + double(i) * spacing(axis); }
  Point point_at(std::int64_t linear) const;

  // Row-major for d=2: linear = i0 * n[1] + i1.
  std::int64_t linear_index(std::int64_t i0, std::int64_t i1 = 0) const { return dim == 1 ? i0 : i0 * n[1] + i1; }
  std::array<std::int64_t, 2> multi_index(std::int64_t linear) const;

  /// Index of the nearest grid point; error if the point is farther than
  /// snap_tol * h from it per axis.
  std::int64_t index_of(Point p, double snap_tol = 1e-9) const;
  bool contains_origin() const;
  bool on_boundary(std::int64_t linear) const;

  friend bool operator==(const Grid& a, const Grid& b);
  friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }
};

/// Slope/covector space; same shape as Grid.
using DualGrid = Grid;

/// Extended-real-valued function sampled on a grid.
struct GridFunction {
  Grid grid;
  std::vector<ExtReal> values;

  GridFunction() = default;
  GridFunction(Grid g, std::vector<ExtReal> v);
  static GridFunction constant(const Grid& g, ExtReal c);

  ExtReal operator[](std::int64_t i) const { return values[std::size_t(i)]; }
  ExtReal& operator[](std::int64_t i) { return values[std::size_t(i)]; }
  ExtReal at(Point p) const { return values[std::size_t(grid.index_of(p))]; }

  /// proper <=> domain nonempty and no -inf value.
  bool proper() const;
  bool dom_empty() const;  // true when f is identically +inf
};

/// 0 on the given points, +inf elsewhere. Points must lie on the grid.
GridFunction indicator(const std::vector<Point>& points, const Grid& grid);

/// Grid points x with f(x) <= r, as linear indices in increasing order.
std::vector<std::int64_t> sublevel(const GridFunction& f, double r);

/// Pointwise min/max/sum helpers used across the modules (strict arithmetic).
GridFunction pointwise_min(const GridFunction& a, const GridFunction& b);
bool pointwise_le(const GridFunction& a, const GridFunction& b);

}  // namespace epilim
