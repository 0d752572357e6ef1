#include "treefactor/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "treefactor/parallel.hpp"
#include "treefactor/young.hpp"

namespace treefactor {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// irrational grid-phase offset; rational curve/pitch ratios otherwise place
// cell centers exactly on circles of round radius
constexpr double kGridPhase = 0.61803398874989484820;

void require_closed_planar(const SampledCurve& curve) {
  curve.validate();
  if (curve.dim() != 2) throw std::invalid_argument("winding needs a planar curve");
  if (!curve.closed) throw std::invalid_argument("winding needs a closed curve");
}

struct WindingAt {
  double angle_turns = 0.0;  // angle sum / 2pi
  double distance = 0.0;     // to the polygonal image
};

WindingAt evaluate(const std::vector<Point>& pts, Vec2 q) {
  WindingAt out;
  out.distance = std::numeric_limits<double>::infinity();
  double angle = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const Vec2 a{pts[k][0], pts[k][1]};
    const Vec2 b{pts[k + 1][0], pts[k + 1][1]};
    out.distance = std::min(out.distance, dist_point_segment(q, a, b));
    const double a1 = std::atan2(a.y - q.y, a.x - q.x);
    const double a2 = std::atan2(b.y - q.y, b.x - q.x);
    angle += std::remainder(a2 - a1, kTwoPi);
  }
  out.angle_turns = angle / kTwoPi;
  return out;
}

std::optional<int> classify(const WindingAt& w, double guard) {
  if (w.distance <= guard || w.distance == 0.0) return std::nullopt;
  const double rounded = std::round(w.angle_turns);
  if (std::abs(w.angle_turns - rounded) > 0.1) return std::nullopt;
  return static_cast<int>(rounded);
}

}  // namespace

int WindingField::max_abs() const {
  int m = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (defined[i]) m = std::max(m, std::abs(values[i]));
  return m;
}

double WindingField::masked_area() const {
  std::size_t masked = 0;
  for (auto d : defined) masked += (d == 0);
  return cell * cell * static_cast<double>(masked);
}

std::optional<int> winding_number(const SampledCurve& curve, Vec2 q, double guard) {
  require_closed_planar(curve);
  if (guard < 0.0) throw std::invalid_argument("guard must be >= 0");
  return classify(evaluate(curve.points, q), guard);
}

WindingField winding_field(const SampledCurve& curve, double cell, double guard) {
  require_closed_planar(curve);
  if (!(cell > 0.0)) throw std::invalid_argument("cell must be positive");
  if (guard < 0.0) guard = cell / 2.0;

  double minx = curve.points[0][0], maxx = minx;
  double miny = curve.points[0][1], maxy = miny;
  for (const auto& p : curve.points) {
    minx = std::min(minx, p[0]);
    maxx = std::max(maxx, p[0]);
    miny = std::min(miny, p[1]);
    maxy = std::max(maxy, p[1]);
  }

  WindingField field;
  field.cell = cell;
  field.origin = {minx - cell - kGridPhase * cell, miny - cell - kGridPhase * cell};
  field.ncols = static_cast<int>(std::ceil((maxx + cell - field.origin.x) / cell));
  field.nrows = static_cast<int>(std::ceil((maxy + cell - field.origin.y) / cell));
  field.values.assign(std::size_t(field.ncols) * field.nrows, 0);
  field.defined.assign(std::size_t(field.ncols) * field.nrows, 0);

  parallel_for(static_cast<std::size_t>(field.nrows), [&](std::size_t row) {
    for (int col = 0; col < field.ncols; ++col) {
      const auto w = classify(evaluate(curve.points, field.center(int(row), col)), guard);
      const std::size_t i = row * field.ncols + col;
      field.values[i] = w.value_or(0);
      field.defined[i] = w.has_value() ? 1 : 0;
    }
  });
  return field;
}

WindingMoments winding_moments(const WindingField& field) {
  WindingMoments m;
  const double area = field.cell * field.cell;
  Vec2 pos_sum{0.0, 0.0}, neg_sum{0.0, 0.0};
  std::size_t masked = 0;
  for (int row = 0; row < field.nrows; ++row) {
    for (int col = 0; col < field.ncols; ++col) {
      if (!field.is_defined(row, col)) {
        ++masked;
        continue;
      }
      const int w = field.value(row, col);
      if (w == 0) continue;
      const Vec2 q = field.center(row, col);
      m.m00 += area * w;
      m.m10 += area * q.x * w;
      m.m01 += area * q.y * w;
      if (w > 0) {
        m.pos_mass += area * w;
        pos_sum = pos_sum + q * (area * w);
      } else {
        m.neg_mass += area * (-w);
        neg_sum = neg_sum + q * (area * (-w));
      }
    }
  }
  m.masked_area = area * static_cast<double>(masked);
  if (m.pos_mass > 0.0) m.pos_center = pos_sum * (1.0 / m.pos_mass);
  if (m.neg_mass > 0.0) m.neg_center = neg_sum * (1.0 / m.neg_mass);
  return m;
}

double current_pairing(const SampledCurve& curve,
                       const std::function<double(Vec2)>& g1,
                       const std::function<double(Vec2)>& g2, double rtol) {
  require_closed_planar(curve);
  SampledFunction f, g;
  f.times = curve.times;
  g.times = curve.times;
  f.values.reserve(curve.size());
  g.values.reserve(curve.size());
  for (const auto& p : curve.points) {
    const Vec2 q{p[0], p[1]};
    f.values.push_back(g1(q));
    g.values.push_back(g2(q));
  }
  return young_integral(f, g, rtol).value;
}

}  // namespace treefactor
