#include "treefactor/dyadic_surface.hpp"

#include <cmath>
#include <stdexcept>

#include "treefactor/curves.hpp"
#include "treefactor/winding.hpp"

namespace treefactor {

namespace {

GridScalar make_grid(const Square& domain, int depth) {
  GridScalar g;
  const int n = (1 << depth) + 1;
  g.s0 = domain.corner.x;
  g.t0 = domain.corner.y;
  g.step = domain.side / (1 << depth);
  g.ncols = n;
  g.nrows = n;
  g.values.assign(std::size_t(n) * n, 0.0);
  return g;
}

GridScalar squared(const GridScalar& g) {
  GridScalar out = g;
  for (auto& v : out.values) v = v * v;
  return out;
}

double fit_tail_slope(const std::vector<double>& diffs) {
  // least-squares log2 slope over the second half of the diffs; early levels
  // carry prefactor noise
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = diffs.size() / 2; i < diffs.size(); ++i)
    if (diffs[i] > 0.0) pts.emplace_back(double(i), std::log2(diffs[i]));
  if (pts.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = double(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void finalize_report(ConvergenceReport& rep, double rtol) {
  for (std::size_t i = 0; i + 1 < rep.values.size(); ++i)
    rep.diffs.push_back(std::abs(rep.values[i + 1] - rep.values[i]));
  rep.fitted_rate = fit_tail_slope(rep.diffs);
  rep.converged = !rep.diffs.empty() &&
                  rep.diffs.back() < rtol * (std::abs(rep.values.back()) + 1.0);
}

}  // namespace

SquareField SquareField::from_samples(const Square& domain, int depth,
                                      std::vector<double> phi1_values,
                                      std::vector<double> phi2_values) {
  if (depth < 1 || depth > 14)
    throw std::invalid_argument("field depth must lie in [1, 14]");
  if (!(domain.side > 0.0)) throw std::invalid_argument("domain side must be positive");
  SquareField f;
  f.domain = domain;
  f.depth = depth;
  f.phi1 = make_grid(domain, depth);
  f.phi2 = make_grid(domain, depth);
  const std::size_t expected = f.phi1.values.size();
  if (phi1_values.size() != expected || phi2_values.size() != expected)
    throw std::invalid_argument("field sample count does not match (2^depth + 1)^2");
  f.phi1.values = std::move(phi1_values);
  f.phi2.values = std::move(phi2_values);
  return f;
}

SquareField SquareField::sample(const Square& domain, int depth,
                                const std::function<Vec2(double, double)>& phi) {
  SquareField f = from_samples(domain, depth,
                               std::vector<double>(((std::size_t(1) << depth) + 1) *
                                                   ((std::size_t(1) << depth) + 1)),
                               std::vector<double>(((std::size_t(1) << depth) + 1) *
                                                   ((std::size_t(1) << depth) + 1)));
  const int n = (1 << depth) + 1;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const Vec2 v = phi(f.phi1.s_of(c), f.phi1.t_of(r));
      f.phi1.at(r, c) = v.x;
      f.phi2.at(r, c) = v.y;
    }
  return f;
}

double RoughSquareData::rough_identity_residual() const {
  const Vec2 xx1{X.x * X1, X.y * X1};
  const double rx = X2.x + xx1.x - X2_tilde.x;
  const double ry = X2.y + xx1.y - X2_tilde.y;
  double scale = 1.0;
  scale = std::max({scale, std::abs(X2.x), std::abs(X2.y), std::abs(xx1.x),
                    std::abs(xx1.y), std::abs(X2_tilde.x), std::abs(X2_tilde.y)});
  return std::max(std::abs(rx), std::abs(ry)) / scale;
}

std::vector<RoughSquareData> compute_square_data(const SquareField& field, int level) {
  if (level < 0 || level > field.max_level())
    throw std::invalid_argument("level exceeds grid depth");
  const DyadicCirculations c1(field.phi1, field.phi2);
  const DyadicCirculations ca(squared(field.phi1), field.phi2);
  const DyadicCirculations cb(field.phi1, squared(field.phi2));

  const int k = 1 << level;
  const int m = 1 << (field.depth - level);  // cells per square side
  std::vector<RoughSquareData> out;
  out.reserve(std::size_t(k) * k);
  const auto& p1 = field.phi1;
  const auto& p2 = field.phi2;
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      RoughSquareData d;
      d.level = level;
      d.row = r;
      d.col = c;
      d.square = Square{{p1.s_of(c * m), p1.t_of(r * m)}, p1.step * m};
      d.base_point = d.square.corner;
      const double b1 = p1.at(r * m, c * m);
      const double b2 = p2.at(r * m, c * m);
      d.X = {b1, b2};
      d.X1 = c1.value(level, r, c);
      d.X2_tilde = {0.5 * ca.value(level, r, c), 0.5 * cb.value(level, r, c)};
      // direct second-order terms: shifted integrands on the boundary alone
      const double sq1 = detail::square_edge_circulation(
          [&](int rr, int cc) {
            const double v = p1.at(rr, cc) - b1;
            return v * v;
          },
          [&](int rr, int cc) { return p2.at(rr, cc); }, r * m, c * m, m);
      const double sq2 = detail::square_edge_circulation(
          [&](int rr, int cc) { return p1.at(rr, cc); },
          [&](int rr, int cc) {
            const double v = p2.at(rr, cc) - b2;
            return v * v;
          },
          r * m, c * m, m);
      d.X2 = {0.5 * sq1, 0.5 * sq2};
      out.push_back(d);
    }
  }
  return out;
}

ConvergenceReport surface_integral_first_order(const SquareField& field,
                                               const std::function<double(Vec2)>& f,
                                               double rtol) {
  const DyadicCirculations c1(field.phi1, field.phi2);
  ConvergenceReport rep;
  for (int n = 0; n <= field.max_level(); ++n) {
    const int k = 1 << n;
    const int m = 1 << (field.depth - n);
    double acc = 0.0;
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c)
        acc += f({field.phi1.at(r * m, c * m), field.phi2.at(r * m, c * m)}) *
               c1.value(n, r, c);
    rep.values.push_back(acc);
  }
  finalize_report(rep, rtol);
  return rep;
}

ConvergenceReport surface_integral_second_order(const SquareField& field,
                                                const std::function<double(Vec2)>& f,
                                                const std::function<Vec2(Vec2)>& df,
                                                double rtol) {
  const DyadicCirculations c1(field.phi1, field.phi2);
  const DyadicCirculations ca(squared(field.phi1), field.phi2);
  const DyadicCirculations cb(field.phi1, squared(field.phi2));
  const auto& p1 = field.phi1;
  const auto& p2 = field.phi2;

  ConvergenceReport rep;
  for (int n = 0; n <= field.max_level(); ++n) {
    const int k = 1 << n;
    const int m = 1 << (field.depth - n);
    double acc = 0.0;
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) {
        const Vec2 X{p1.at(r * m, c * m), p2.at(r * m, c * m)};
        const double x1 = c1.value(n, r, c);
        // X2 through the per-square identity X2 = X2_tilde - X * X1; equal to
        // the shifted-integrand route up to rounding (see RoughSquareData)
        const Vec2 x2{0.5 * ca.value(n, r, c) - X.x * x1,
                      0.5 * cb.value(n, r, c) - X.y * x1};
        const Vec2 grad = df(X);
        acc += f(X) * x1 + grad.x * x2.x + grad.y * x2.y;
      }
    }
    rep.values.push_back(acc);
  }
  finalize_report(rep, rtol);
  return rep;
}

SampledCurve boundary_curve(const SquareField& field) {
  const int m = field.cells();
  SampledCurve curve;
  curve.closed = true;
  auto push = [&](int r, int c) {
    curve.times.push_back(double(curve.times.size()));
    curve.points.push_back({field.phi1.at(r, c), field.phi2.at(r, c)});
  };
  for (int c = 0; c < m; ++c) push(0, c);
  for (int r = 0; r < m; ++r) push(r, m);
  for (int c = m; c > 0; --c) push(m, c);
  for (int r = m; r > 0; --r) push(r, 0);
  push(0, 0);
  return curve;
}

DegreePairingCheck degree_pairing_check(const SquareField& field,
                                        const std::function<double(Vec2)>& f,
                                        double cell) {
  DegreePairingCheck out;
  out.surface_value = surface_integral_first_order(field, f).values.back();

  const SampledCurve curve = boundary_curve(field);
  bool degenerate = true;
  for (const auto& p : curve.points)
    if (p != curve.points.front()) {
      degenerate = false;
      break;
    }
  if (!degenerate) {
    const WindingField wf = winding_field(curve, cell);
    double acc = 0.0;
    const double area = cell * cell;
    for (int r = 0; r < wf.nrows; ++r)
      for (int c = 0; c < wf.ncols; ++c)
        if (wf.is_defined(r, c) && wf.value(r, c) != 0)
          acc += area * f(wf.center(r, c)) * wf.value(r, c);
    out.winding_value = acc;
    out.masked_area = wf.masked_area();
  }
  out.residual = std::abs(out.surface_value - out.winding_value);
  return out;
}

}  // namespace treefactor
