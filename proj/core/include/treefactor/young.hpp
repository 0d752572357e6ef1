#pragma once

#include <cstddef>
#include <vector>

#include "treefactor/geometry.hpp"

namespace treefactor {

/// Scalar function sampled on a strictly increasing time grid.
struct SampledFunction {
  std::vector<double> times;
  std::vector<double> values;

  std::size_t size() const { return times.size(); }
  void validate() const;
};

struct YoungResult {
  double value = 0.0;      // Riemann-Stieltjes value on the finest grid reached
  int levels = 0;          // dyadic refinement depth used
  double tail_bound = 0.0; // magnitude of the last successive difference
};

/// Left-endpoint Riemann-Stieltjes sum sum_i f(t_i) (g(t_{i+1}) - g(t_i)),
/// evaluated on dyadically refined subsets of the shared sample grid until
/// successive values differ by less than rtol * (|value| + 1) or the full
/// grid is exhausted. f and g must share the time grid exactly.
YoungResult young_integral(const SampledFunction& f, const SampledFunction& g,
                           double rtol = 1e-9);

/// Scalar field on a regular grid over an axis rectangle. values are stored
/// row-major with row = t index, col = s index.
struct GridScalar {
  double s0 = 0.0;
  double t0 = 0.0;
  double step = 1.0;
  int ncols = 0;
  int nrows = 0;
  std::vector<double> values;

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * ncols + col];
  }
  double& at(int row, int col) {
    return values[static_cast<std::size_t>(row) * ncols + col];
  }
  double s_of(int col) const { return s0 + step * col; }
  double t_of(int row) const { return t0 + step * row; }
  bool same_geometry(const GridScalar& o) const {
    return s0 == o.s0 && t0 == o.t0 && step == o.step && ncols == o.ncols &&
           nrows == o.nrows;
  }
  void validate() const;
};

namespace detail {

/// Riemann-Stieltjes quadrature of one grid edge run in its canonical
/// direction (increasing index). Runs with an even number of segments use a
/// locally quadratic two-segment rule summed by recursive halving, so a run
/// value equals the sum of its two half-run values bit for bit; a single
/// segment falls back to the trapezoid rule. Reversed traversals negate the
/// canonical value, which keeps shared edges of adjacent squares cancelling
/// exactly.
template <typename FAt, typename GAt>
double edge_run_sum(FAt f, GAt g, int lo, int segments) {
  if (segments == 1) {
    return 0.5 * (f(lo) + f(lo + 1)) * (g(lo + 1) - g(lo));
  }
  if (segments == 2) {
    const double f0 = f(lo), f1 = f(lo + 1), f2 = f(lo + 2);
    const double g0 = g(lo), g1 = g(lo + 1), g2 = g(lo + 2);
    return f1 * (g2 - g0) + (f2 - f0) * (g2 - 2.0 * g1 + g0) * (1.0 / 3.0) +
           (f0 - 2.0 * f1 + f2) * (g2 - g0) * (1.0 / 6.0);
  }
  if (segments % 2 == 1) {  // odd runs only arise outside the dyadic paths
    return 0.5 * (f(lo) + f(lo + 1)) * (g(lo + 1) - g(lo)) +
           edge_run_sum(f, g, lo + 1, segments - 1);
  }
  const int half = segments / 2;
  return edge_run_sum(f, g, lo, half) + edge_run_sum(f, g, lo + half, half);
}

/// Counterclockwise circulation of g1 against g2 around the index square
/// [col0, col0+side] x [row0, row0+side], edges evaluated canonically and
/// negated on the reversed (top/left) traversals. FAt/GAt map (row, col) to
/// sample values.
template <typename FAt, typename GAt>
double square_edge_circulation(FAt f, GAt g, int row0, int col0, int side) {
  const int r1 = row0 + side, c1 = col0 + side;
  const double bottom = edge_run_sum([&](int c) { return f(row0, c); },
                                     [&](int c) { return g(row0, c); }, col0, side);
  const double right = edge_run_sum([&](int r) { return f(r, c1); },
                                    [&](int r) { return g(r, c1); }, row0, side);
  const double top = edge_run_sum([&](int c) { return f(r1, c); },
                                  [&](int c) { return g(r1, c); }, col0, side);
  const double left = edge_run_sum([&](int r) { return f(r, col0); },
                                   [&](int r) { return g(r, col0); }, row0, side);
  return ((bottom + right) - top) - left;
}

}  // namespace detail

/// Counterclockwise boundary integral over the index square of given side
/// (in cells). Sides must be powers of two; squares of side >= 4 are
/// assembled from their four half-size quadrants in the fixed order
/// ((lower-left + lower-right) + upper-left) + upper-right, so the four
/// children of any square sum bitwise to the parent value.
double boundary_circulation_cells(const GridScalar& g1, const GridScalar& g2,
                                  int row0, int col0, int side);

/// Same integral for an axis square in coordinates; the square must sit on
/// grid nodes with a power-of-two side. Throws std::invalid_argument when
/// the square is not aligned to the grid.
double boundary_integral(const GridScalar& g1, const GridScalar& g2, const Square& R);

/// All dyadic-square circulations of a (2^depth + 1)-per-side grid:
/// level(n)[row * 2^n + col] holds the boundary circulation of square
/// (row, col) of partition level n, for n = 0 .. depth-1. Built bottom-up
/// with the same combination order as boundary_circulation_cells, so the
/// stored values agree with it bit for bit.
class DyadicCirculations {
 public:
  DyadicCirculations(const GridScalar& g1, const GridScalar& g2);

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  double value(int level, int row, int col) const {
    return levels_[level][static_cast<std::size_t>(row) * (std::size_t(1) << level) + col];
  }
  const std::vector<double>& level(int n) const { return levels_[n]; }

 private:
  std::vector<std::vector<double>> levels_;
};

}  // namespace treefactor
