#pragma once

#include <functional>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/geometry.hpp"
#include "treefactor/young.hpp"

namespace treefactor {

struct HeisenbergPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Koranyi metric on R^3:
/// [ (dx^2 + dy^2)^2 + 16 (dz - (p_x q_y - p_y q_x) / 2)^2 ]^(1/4).
double koranyi_distance(HeisenbergPoint p, HeisenbergPoint q);

/// Lifts a planar curve by dz = (x dy - y dx) / 2 with left-endpoint sums;
/// over a closed loop the z gain equals the shoelace area of the polygon.
SampledCurve horizontal_lift(const SampledCurve& planar, double z0 = 0.0);

struct LiftingResiduals {
  double r1 = 0.0;  // int x dz - (3/4) int x^2 dy
  double r2 = 0.0;  // int y dz - (3/4) int x dy^2
  double lhs1 = 0.0, rhs1 = 0.0;
  double lhs2 = 0.0, rhs2 = 0.0;
};

/// Residuals of the closed-loop lifting identities; both vanish for lifts of
/// planar loops (horizontal curves).
LiftingResiduals lifting_identity_residuals(const SampledCurve& spatial,
                                            double rtol = 1e-9);

struct HeisenbergSquareReport {
  // per-level pairings: <f dx^dy>, <f dx^dz> - (3/2) <x f dx^dy>,
  // <f dy^dz> - (3/2) <y f dx^dy>
  std::vector<double> xy_levels;
  std::vector<double> xz_levels;
  std::vector<double> yz_levels;
  double r_xy = 0.0;
  double r_xz = 0.0;
  double r_yz = 0.0;
};

/// Dyadic-surface pairings of a sampled map Q -> R^3 against the three
/// coordinate 2-forms; all residuals vanish in the limit for horizontal
/// fields. x, y, z share one (2^depth + 1)-per-side grid.
HeisenbergSquareReport heisenberg_square_check(
    const GridScalar& x, const GridScalar& y, const GridScalar& z,
    const std::function<double(Vec3)>& f);

}  // namespace treefactor
