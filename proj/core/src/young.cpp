#include "treefactor/young.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace treefactor {

void SampledFunction::validate() const {
  if (times.size() < 2) throw std::invalid_argument("function needs at least 2 samples");
  if (times.size() != values.size())
    throw std::invalid_argument("times/values length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("function times must be strictly increasing");
}

void GridScalar::validate() const {
  if (ncols < 2 || nrows < 2) throw std::invalid_argument("grid needs >= 2 points per side");
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (values.size() != static_cast<std::size_t>(ncols) * nrows)
    throw std::invalid_argument("grid value count mismatch");
}

YoungResult young_integral(const SampledFunction& f, const SampledFunction& g,
                           double rtol) {
  f.validate();
  g.validate();
  if (f.times.size() != g.times.size())
    throw std::invalid_argument("young_integral: mismatched grids");
  for (std::size_t i = 0; i < f.times.size(); ++i)
    if (f.times[i] != g.times[i])
      throw std::invalid_argument("young_integral: mismatched grids");

  const std::size_t n = f.times.size() - 1;  // segments
  auto left_sum = [&](std::size_t stride) {
    double acc = 0.0;
    std::size_t i = 0;
    while (i < n) {
      const std::size_t j = std::min(i + stride, n);
      acc += f.values[i] * (g.values[j] - g.values[i]);
      i = j;
    }
    return acc;
  };

  std::size_t stride = 1;
  while (stride < n) stride *= 2;  // coarsest: one interval

  // closed or symmetric data can produce spuriously identical values on the
  // first refinements, so stopping needs both a minimum depth and two small
  // successive differences in a row
  YoungResult res;
  res.value = left_sum(stride);
  res.levels = 1;
  res.tail_bound = 0.0;
  double prev_diff = std::numeric_limits<double>::infinity();
  while (stride > 1) {
    stride /= 2;
    const double next = left_sum(stride);
    res.tail_bound = std::abs(next - res.value);
    res.value = next;
    ++res.levels;
    const double tol = rtol * (std::abs(res.value) + 1.0);
    if (n / stride >= 8 && res.tail_bound < tol && prev_diff < tol) break;
    prev_diff = res.tail_bound;
  }
  return res;
}

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

double circulation_recursive(const GridScalar& g1, const GridScalar& g2,
                             int row0, int col0, int side) {
  if (side <= 2) {
    return detail::square_edge_circulation(
        [&](int r, int c) { return g1.at(r, c); },
        [&](int r, int c) { return g2.at(r, c); }, row0, col0, side);
  }
  const int h = side / 2;
  const double ll = circulation_recursive(g1, g2, row0, col0, h);
  const double lr = circulation_recursive(g1, g2, row0, col0 + h, h);
  const double ul = circulation_recursive(g1, g2, row0 + h, col0, h);
  const double ur = circulation_recursive(g1, g2, row0 + h, col0 + h, h);
  return ((ll + lr) + ul) + ur;
}

}  // namespace

double boundary_circulation_cells(const GridScalar& g1, const GridScalar& g2,
                                  int row0, int col0, int side) {
  g1.validate();
  if (!g1.same_geometry(g2))
    throw std::invalid_argument("boundary integral: fields on different grids");
  if (!is_power_of_two(side))
    throw std::invalid_argument("boundary integral: square side must be a power of two");
  if (row0 < 0 || col0 < 0 || row0 + side > g1.nrows - 1 || col0 + side > g1.ncols - 1)
    throw std::invalid_argument("boundary integral: square leaves the grid");
  return circulation_recursive(g1, g2, row0, col0, side);
}

double boundary_integral(const GridScalar& g1, const GridScalar& g2, const Square& R) {
  g1.validate();
  const double tol = 1e-9 * g1.step;
  const double c = (R.corner.x - g1.s0) / g1.step;
  const double r = (R.corner.y - g1.t0) / g1.step;
  const double m = R.side / g1.step;
  const int ci = static_cast<int>(std::lround(c));
  const int ri = static_cast<int>(std::lround(r));
  const int mi = static_cast<int>(std::lround(m));
  if (std::abs(c - ci) * g1.step > tol || std::abs(r - ri) * g1.step > tol ||
      std::abs(m - mi) * g1.step > tol || mi < 1)
    throw std::invalid_argument("boundary integral: square not aligned to grid");
  return boundary_circulation_cells(g1, g2, ri, ci, mi);
}

DyadicCirculations::DyadicCirculations(const GridScalar& g1, const GridScalar& g2) {
  g1.validate();
  if (!g1.same_geometry(g2))
    throw std::invalid_argument("fields on different grids");
  const int cells = g1.ncols - 1;
  if (g1.nrows != g1.ncols || !is_power_of_two(cells) || cells < 2)
    throw std::invalid_argument("dyadic circulations need a square (2^depth + 1)-grid, depth >= 1");
  int depth = 0;
  while ((1 << depth) < cells) ++depth;

  // base level: squares of two cells per side, quadratic edge rule
  levels_.resize(depth);
  const int base = depth - 1;
  const int k = 1 << base;
  levels_[base].resize(static_cast<std::size_t>(k) * k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      levels_[base][static_cast<std::size_t>(r) * k + c] =
          detail::square_edge_circulation(
              [&](int rr, int cc) { return g1.at(rr, cc); },
              [&](int rr, int cc) { return g2.at(rr, cc); }, 2 * r, 2 * c, 2);

  for (int n = base - 1; n >= 0; --n) {
    const int kn = 1 << n;
    levels_[n].resize(static_cast<std::size_t>(kn) * kn);
    const auto& child = levels_[n + 1];
    for (int r = 0; r < kn; ++r)
      for (int c = 0; c < kn; ++c) {
        const std::size_t i = static_cast<std::size_t>(2 * r) * (2 * kn) + 2 * c;
        const double ll = child[i];
        const double lr = child[i + 1];
        const double ul = child[i + 2 * kn];
        const double ur = child[i + 2 * kn + 1];
        levels_[n][static_cast<std::size_t>(r) * kn + c] = ((ll + lr) + ul) + ur;
      }
  }
}

}  // namespace treefactor
