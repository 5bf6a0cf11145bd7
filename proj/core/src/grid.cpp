#include "epilim/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace epilim {

Grid::Grid(double lo, double hi, std::int64_t count) : dim(1), min{lo, 0}, max{hi, 0}, n{count, 1} {
  if (count < 2) throw std::invalid_argument("Grid: n >= 2 required");
  if (!(lo < hi)) throw std::invalid_argument("Grid: min < max required");
}

Grid::Grid(Point lo, Point hi, std::array<std::int64_t, 2> count) : dim(2), min(lo), max(hi), n(count) {
  for (int a = 0; a < 2; ++a) {
    if (count[a] < 2) throw std::invalid_argument("Grid: n >= 2 required per axis");
    if (!(lo[a] < hi[a])) throw std::invalid_argument("Grid: min < max required per axis");
  }
}

Grid Grid::symmetric(double half, std::int64_t count) {
  if (count % 2 == 0) ++count;  // origin must be a grid point
  return Grid(-half, half, count);
}

Grid Grid::symmetric2(double half0, double half1, std::int64_t n0, std::int64_t n1) {
  if (n0 % 2 == 0) ++n0;
  if (n1 % 2 == 0) ++n1;
  return Grid({-half0, -half1}, {half0, half1}, {n0, n1});
}

Point Grid::point_at(std::int64_t linear) const {
  auto mi = multi_index(linear);
  Point p{coord(0, mi[0]), 0};
  if (dim == 2) p[1] = coord(1, mi[1]);
  return p;
}

std::array<std::int64_t, 2> Grid::multi_index(std::int64_t linear) const {
  if (dim == 1) return {linear, 0};
  return {linear / n[1], linear % n[1]};
}

std::int64_t Grid::index_of(Point p, double snap_tol) const {
  std::array<std::int64_t, 2> idx{0, 0};
  for (int a = 0; a < dim; ++a) {
    double h = spacing(a);
    double t = (p[a] - min[a]) / h;
    std::int64_t i = std::llround(t);
    if (i < 0 || i >= n[a] || std::abs(t - double(i)) > snap_tol)
      throw std::invalid_argument("Grid::index_of: point off-grid");
    idx[a] = i;
  }
  return linear_index(idx[0], idx[1]);
}

bool Grid::contains_origin() const {
  for (int a = 0; a < dim; ++a) {
    if (min[a] > 0 || max[a] < 0) return false;
    double t = -min[a] / spacing(a);
    if (std::abs(t - std::llround(t)) > 1e-9) return false;
  }
  return true;
}

bool Grid::on_boundary(std::int64_t linear) const {
  auto mi = multi_index(linear);
  for (int a = 0; a < dim; ++a)
    if (mi[a] == 0 || mi[a] == n[a] - 1) return true;
  return false;
}

bool operator==(const Grid& a, const Grid& b) {
  if (a.dim != b.dim) return false;
  for (int ax = 0; ax < a.dim; ++ax)
    if (a.min[ax] != b.min[ax] || a.max[ax] != b.max[ax] || a.n[ax] != b.n[ax]) return false;
  return true;
}

GridFunction::GridFunction(Grid g, std::vector<ExtReal> v) : grid(g), values(std::move(v)) {
  if (std::int64_t(values.size()) != grid.size())
    throw std::invalid_argument("GridFunction: values length must equal grid point count");
}

GridFunction GridFunction::constant(const Grid& g, ExtReal c) {
  return GridFunction(g, std::vector<ExtReal>(std::size_t(g.size()), c));
}

bool GridFunction::proper() const {
  bool has_finite_dom = false;
  for (const auto& v : values) {
    if (v.is_neg_inf()) return false;
    if (!v.is_pos_inf()) has_finite_dom = true;
  }
  return has_finite_dom;
}

bool GridFunction::dom_empty() const {
  for (const auto& v : values)
    if (!v.is_pos_inf()) return false;
  return true;
}

GridFunction indicator(const std::vector<Point>& points, const Grid& grid) {
  GridFunction f = GridFunction::constant(grid, ExtReal::pos_inf());
  for (const auto& p : points) f[grid.index_of(p)] = ExtReal(0.0);
  return f;
}

std::vector<std::int64_t> sublevel(const GridFunction& f, double r) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < f.grid.size(); ++i)
    if (f[i].v <= r) out.push_back(i);
  return out;
}

GridFunction pointwise_min(const GridFunction& a, const GridFunction& b) {
  if (a.grid != b.grid) throw std::invalid_argument("pointwise_min: grids differ");
  GridFunction r = a;
  for (std::int64_t i = 0; i < a.grid.size(); ++i)
    if (b[i].v < r[i].v) r[i] = b[i];
  return r;
}

bool pointwise_le(const GridFunction& a, const GridFunction& b) {
  if (a.grid != b.grid) throw std::invalid_argument("pointwise_le: grids differ");
  for (std::int64_t i = 0; i < a.grid.size(); ++i)
    if (!(a[i].v <= b[i].v)) return false;
  return true;
}

}  // namespace epilim
