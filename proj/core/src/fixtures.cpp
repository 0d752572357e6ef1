#include "treefactor/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "treefactor/heisenberg.hpp"

namespace treefactor::fixtures {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SampledCurve circle(int samples, Vec2 center, double radius, int loops) {
  if (samples < 3 || loops < 1 || !(radius > 0.0))
    throw std::invalid_argument("circle needs samples >= 3, loops >= 1, radius > 0");
  SampledCurve c;
  c.closed = true;
  const long total = static_cast<long>(samples) * loops;
  for (long k = 0; k <= total; ++k) {
    const double theta = kTwoPi * double(k) / double(samples);
    c.times.push_back(theta);
    c.points.push_back({center.x + radius * std::cos(theta),
                        center.y + radius * std::sin(theta)});
  }
  c.points.back() = c.points.front();
  return c;
}

SampledCurve figure_eight(int samples, double radius, bool co_oriented) {
  if (samples < 6 || !(radius > 0.0))
    throw std::invalid_argument("figure eight needs samples >= 6, radius > 0");
  const int m = samples / 2;
  SampledCurve c;
  c.closed = true;
  // left lobe, counterclockwise about (-r, 0), from and back to the origin
  for (int k = 0; k < m; ++k) {
    const double th = kTwoPi * double(k) / double(m);
    c.times.push_back(double(k));
    c.points.push_back({-radius + radius * std::cos(th), radius * std::sin(th)});
  }
  // right lobe about (r, 0): clockwise by default, counterclockwise mirrored
  const double sign = co_oriented ? -1.0 : 1.0;
  for (int k = 0; k <= m; ++k) {
    const double th = kTwoPi * double(k) / double(m);
    c.times.push_back(double(m + k));
    c.points.push_back({radius - radius * std::cos(th), sign * radius * std::sin(th)});
  }
  c.points.front() = {0.0, 0.0};
  c.points[m] = {0.0, 0.0};
  c.points.back() = c.points.front();
  return c;
}

SquareField weierstrass(double alpha, int depth, std::uint32_t seed) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
  if (depth < 3 || depth > 14)
    throw std::invalid_argument("weierstrass depth must lie in [3, 14]");
  const int terms = depth - 1;  // k = 0 .. depth-2
  std::mt19937 rng(seed);
  std::vector<double> phase(terms);
  for (auto& p : phase) p = kTwoPi * (double(rng()) / 4294967296.0);

  const Square domain{{0.0, 0.0}, std::numbers::pi};
  const int n = (1 << depth) + 1;
  std::vector<double> u(n, 0.0), v(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = domain.side * double(i) / double(n - 1);
    for (int k = 0; k < terms; ++k) {
      const double amp = std::pow(2.0, -alpha * k);
      const double freq = double(std::int64_t(1) << k);
      u[i] += amp * std::sin(freq * x + phase[k]);
      v[i] += amp * std::cos(freq * x + phase[k]);
    }
  }
  std::vector<double> p1(std::size_t(n) * n), p2(std::size_t(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      p1[std::size_t(r) * n + c] = u[c];
      p2[std::size_t(r) * n + c] = v[r];
    }
  return SquareField::from_samples(domain, depth, std::move(p1), std::move(p2));
}

MetricGraphMap star(int leaves) {
  if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
  MetricGraphMap g;
  g.vertex_count = leaves + 1;
  g.phi.push_back({0.0, 0.0});
  for (int i = 1; i <= leaves; ++i) {
    const double th = kTwoPi * double(i - 1) / double(leaves);
    g.edges.push_back({0, i});
    g.edge_lengths.push_back(1.0);
    g.phi.push_back({std::cos(th), std::sin(th)});
  }
  return g;
}

MetricGraphMap cycle_graph(int n, double radius) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  MetricGraphMap g;
  g.vertex_count = n;
  for (int i = 0; i < n; ++i) {
    const double th = kTwoPi * double(i) / double(n);
    g.phi.push_back({radius * std::cos(th), radius * std::sin(th)});
    g.edges.push_back({i, (i + 1) % n});
    g.edge_lengths.push_back(2.0 * radius * std::sin(std::numbers::pi / n));
  }
  return g;
}

SampledCurve lifted_circle(int samples, Vec2 center, double radius, double z0) {
  return horizontal_lift(circle(samples, center, radius), z0);
}

GridScalar boustrophedon_lift(const GridScalar& phi1, const GridScalar& phi2,
                              double z0) {
  phi1.validate();
  if (!phi1.same_geometry(phi2))
    throw std::invalid_argument("components must share one grid");
  GridScalar z = phi1;
  for (auto& v : z.values) v = 0.0;
  double acc = z0;
  double px = phi1.at(0, 0), py = phi2.at(0, 0);
  for (int r = 0; r < phi1.nrows; ++r) {
    const bool reverse = (r % 2) == 1;
    for (int i = 0; i < phi1.ncols; ++i) {
      const int c = reverse ? phi1.ncols - 1 - i : i;
      const double qx = phi1.at(r, c), qy = phi2.at(r, c);
      acc += 0.5 * (px * (qy - py) - py * (qx - px));
      z.at(r, c) = acc;
      px = qx;
      py = qy;
    }
  }
  return z;
}

}  // namespace treefactor::fixtures
