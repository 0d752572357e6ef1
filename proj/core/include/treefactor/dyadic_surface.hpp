#pragma once

#include <functional>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/geometry.hpp"
#include "treefactor/young.hpp"

namespace treefactor {

/// Map phi = (phi1, phi2) sampled on a (2^depth + 1)-per-side regular grid
/// over an axis square Q. Dyadic summation levels run 0 .. depth-1; boundary
/// integrals are always taken on the finest grid.
struct SquareField {
  GridScalar phi1;
  GridScalar phi2;
  Square domain;
  int depth = 0;

  int max_level() const { return depth - 1; }
  int cells() const { return 1 << depth; }

  static SquareField from_samples(const Square& domain, int depth,
                                  std::vector<double> phi1_values,
                                  std::vector<double> phi2_values);
  static SquareField sample(const Square& domain, int depth,
                            const std::function<Vec2(double, double)>& phi);
};

/// Per-dyadic-square boundary data: base point p_R (lower-left corner),
/// X = phi(p_R), first-order circulation X1 and the second-order vectors
/// X2 = (1/2)(int (phi1 - phi1(p_R))^2 dphi2, int phi1 d(phi2 - phi2(p_R))^2)
/// and X2_tilde = (1/2)(int phi1^2 dphi2, int phi1 dphi2^2), each around the
/// square boundary.
struct RoughSquareData {
  Square square;
  int level = 0;
  int row = 0;
  int col = 0;
  Vec2 base_point;
  Vec2 X;
  double X1 = 0.0;
  Vec2 X2;
  Vec2 X2_tilde;

  /// |X2 + X * X1 - X2_tilde| / max(1, magnitudes): both routes are computed
  /// independently and agree up to rounding.
  double rough_identity_residual() const;
};

struct ConvergenceReport {
  std::vector<double> values;  // I_n for n = 0 .. max_level
  std::vector<double> diffs;   // |I_{n+1} - I_n|
  double fitted_rate = 0.0;    // log2 slope of diffs, fit on the second half
  bool converged = false;      // last diff < rtol * (|last value| + 1)
};

/// One record per square of partition level n (row-major), with boundary
/// integrals on the finest grid. Level-(n+1) X1 values of the four children
/// of any square sum bitwise to the parent X1.
std::vector<RoughSquareData> compute_square_data(const SquareField& field, int level);

/// I_n = sum over squares of f(X_R) X1_R for n = 0 .. max_level, summed in
/// row-major square order.
ConvergenceReport surface_integral_first_order(const SquareField& field,
                                               const std::function<double(Vec2)>& f,
                                               double rtol = 1e-9);

/// I_n = sum of f(X_R) X1_R + Df(X_R) . X2_R; valid down to alpha > 1/2.
ConvergenceReport surface_integral_second_order(const SquareField& field,
                                                const std::function<double(Vec2)>& f,
                                                const std::function<Vec2(Vec2)>& df,
                                                double rtol = 1e-9);

struct DegreePairingCheck {
  double surface_value = 0.0;   // dyadic surface functional, last level
  double winding_value = 0.0;   // cellwise f-quadrature against the boundary winding field
  double residual = 0.0;
  double masked_area = 0.0;
};

/// Compares the surface functional with the winding-number route through the
/// boundary restriction of phi, evaluated on a winding field of pitch cell.
DegreePairingCheck degree_pairing_check(const SquareField& field,
                                        const std::function<double(Vec2)>& f,
                                        double cell);

/// Boundary restriction of the field as a closed planar curve,
/// counterclockwise from the lower-left corner, parameterized by node index.
SampledCurve boundary_curve(const SquareField& field);

}  // namespace treefactor
