#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/geometry.hpp"

namespace treefactor {

/// Integer winding numbers of a closed planar curve on a regular grid of
/// cell centers, with an undefined mask near the curve image.
struct WindingField {
  Vec2 origin;        // lower-left corner of the grid
  double cell = 0.0;  // pitch
  int ncols = 0;
  int nrows = 0;
  std::vector<int> values;          // row-major over cells
  std::vector<std::uint8_t> defined;

  Vec2 center(int row, int col) const {
    return {origin.x + (col + 0.5) * cell, origin.y + (row + 0.5) * cell};
  }
  int value(int row, int col) const { return values[std::size_t(row) * ncols + col]; }
  bool is_defined(int row, int col) const {
    return defined[std::size_t(row) * ncols + col] != 0;
  }
  int max_abs() const;
  double masked_area() const;
};

struct WindingMoments {
  double m00 = 0.0;  // integral of w
  double m10 = 0.0;  // integral of q_x w
  double m01 = 0.0;  // integral of q_y w
  double pos_mass = 0.0;
  double neg_mass = 0.0;
  double masked_area = 0.0;
  std::optional<Vec2> pos_center;
  std::optional<Vec2> neg_center;
};

/// Winding number of the polygonal interpolant around q by signed angle
/// summation. Undefined (nullopt) when q lies within guard of the curve
/// image, exactly on it, or when the angle sum is farther than 0.1 * 2pi
/// from an integer multiple of 2pi.
std::optional<int> winding_number(const SampledCurve& curve, Vec2 q, double guard = 0.0);

/// Evaluates winding_number at cell centers over the curve's bounding box
/// inflated by one cell. guard < 0 selects the default cell/2. Cell centers
/// are offset from the bounding box by an irrational fraction of the pitch
/// so axis-aligned fixtures do not resonate with the grid.
WindingField winding_field(const SampledCurve& curve, double cell, double guard = -1.0);

/// Midpoint quadrature over defined cells; masked cells contribute 0 and
/// their total area is reported, bounding the quadrature error by
/// max|w| * masked_area.
WindingMoments winding_moments(const WindingField& field);

/// Young integral of g1 along the curve against g2 along the curve; equals
/// the integral of w * det Dg for Lipschitz g by the current identity.
double current_pairing(const SampledCurve& curve,
                       const std::function<double(Vec2)>& g1,
                       const std::function<double(Vec2)>& g2, double rtol = 1e-9);

}  // namespace treefactor
