#include "treefactor/heisenberg.hpp"

#include <cmath>
#include <stdexcept>

namespace treefactor {

double koranyi_distance(HeisenbergPoint p, HeisenbergPoint q) {
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  const double planar = dx * dx + dy * dy;
  const double twist = q.z - p.z - 0.5 * (p.x * q.y - p.y * q.x);
  return std::pow(planar * planar + 16.0 * twist * twist, 0.25);
}

SampledCurve horizontal_lift(const SampledCurve& planar, double z0) {
  planar.validate();
  if (planar.dim() != 2) throw std::invalid_argument("lift needs a planar curve");
  SampledCurve out;
  out.times = planar.times;
  out.points.reserve(planar.size());
  double z = z0;
  out.points.push_back({planar.points[0][0], planar.points[0][1], z});
  for (std::size_t i = 0; i + 1 < planar.size(); ++i) {
    const double x = planar.points[i][0], y = planar.points[i][1];
    const double dx = planar.points[i + 1][0] - x;
    const double dy = planar.points[i + 1][1] - y;
    z += 0.5 * (x * dy - y * dx);
    out.points.push_back({planar.points[i + 1][0], planar.points[i + 1][1], z});
  }
  // the planar projection may close while the lift gains area in z
  out.closed = planar.closed && out.points.front() == out.points.back();
  return out;
}

LiftingResiduals lifting_identity_residuals(const SampledCurve& spatial, double rtol) {
  spatial.validate();
  if (spatial.dim() != 3) throw std::invalid_argument("residuals need a spatial curve");
  bool closed_xyz = spatial.closed;
  if (!closed_xyz) {
    // accept curves whose planar projection closes (typical for lifts)
    closed_xyz = spatial.points.front()[0] == spatial.points.back()[0] &&
                 spatial.points.front()[1] == spatial.points.back()[1];
  }
  if (!closed_xyz) throw std::invalid_argument("residuals need a closed curve");

  const std::size_t n = spatial.size();
  SampledFunction x, y, z, x2, y2;
  x.times = y.times = z.times = x2.times = y2.times = spatial.times;
  x.values.reserve(n);
  for (const auto& p : spatial.points) {
    x.values.push_back(p[0]);
    y.values.push_back(p[1]);
    z.values.push_back(p[2]);
    x2.values.push_back(p[0] * p[0]);
    y2.values.push_back(p[1] * p[1]);
  }
  LiftingResiduals res;
  res.lhs1 = young_integral(x, z, rtol).value;
  res.rhs1 = 0.75 * young_integral(x2, y, rtol).value;
  res.lhs2 = young_integral(y, z, rtol).value;
  res.rhs2 = 0.75 * young_integral(x, y2, rtol).value;
  res.r1 = res.lhs1 - res.rhs1;
  res.r2 = res.lhs2 - res.rhs2;
  return res;
}

HeisenbergSquareReport heisenberg_square_check(
    const GridScalar& x, const GridScalar& y, const GridScalar& z,
    const std::function<double(Vec3)>& f) {
  x.validate();
  if (!x.same_geometry(y) || !x.same_geometry(z))
    throw std::invalid_argument("components must share one grid");

  const DyadicCirculations t_xy(x, y);
  const DyadicCirculations t_xz(x, z);
  const DyadicCirculations t_yz(y, z);

  HeisenbergSquareReport rep;
  const int depth = t_xy.max_level() + 1;
  for (int n = 0; n < depth; ++n) {
    const int k = 1 << n;
    const int m = (x.ncols - 1) / k;
    double p_xy = 0.0, p_xz = 0.0, p_yz = 0.0, p_xf = 0.0, p_yf = 0.0;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        const Vec3 base{x.at(r * m, c * m), y.at(r * m, c * m), z.at(r * m, c * m)};
        const double fv = f(base);
        p_xy += fv * t_xy.value(n, r, c);
        p_xz += fv * t_xz.value(n, r, c);
        p_yz += fv * t_yz.value(n, r, c);
        p_xf += base.x * fv * t_xy.value(n, r, c);
        p_yf += base.y * fv * t_xy.value(n, r, c);
      }
    }
    rep.xy_levels.push_back(p_xy);
    rep.xz_levels.push_back(p_xz - 1.5 * p_xf);
    rep.yz_levels.push_back(p_yz - 1.5 * p_yf);
  }
  rep.r_xy = rep.xy_levels.back();
  rep.r_xz = rep.xz_levels.back();
  rep.r_yz = rep.yz_levels.back();
  return rep;
}

}  // namespace treefactor
