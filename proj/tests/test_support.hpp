#pragma once

// Shared helpers for the test suites: a deterministic RNG, brute-force
// oracles kept independent of the library paths they check, and random
// instance generators.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/geometry.hpp"
#include "treefactor/tree_factor.hpp"

namespace testsupport {

using treefactor::MetricGraphMap;
using treefactor::Point;
using treefactor::SampledCurve;
using treefactor::Vec2;

class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (double(gen_()) / 4294967296.0);
  }
  int index(int n) { return static_cast<int>(gen_() % std::uint32_t(n)); }
  std::uint32_t raw() { return gen_(); }

 private:
  std::mt19937 gen_;
};

// signed crossing-number winding oracle (ray toward +x), independent of the
// angle-summation implementation
inline int raycast_winding(const std::vector<Point>& pts, Vec2 q) {
  int w = 0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double ax = pts[k][0], ay = pts[k][1];
    const double bx = pts[k + 1][0], by = pts[k + 1][1];
    if (ay <= q.y && by > q.y) {
      const double t = (q.y - ay) / (by - ay);
      if (ax + t * (bx - ax) > q.x) ++w;
    } else if (by <= q.y && ay > q.y) {
      const double t = (q.y - ay) / (by - ay);
      if (ax + t * (bx - ax) > q.x) --w;
    }
  }
  return w;
}

inline double shoelace_area(const std::vector<Point>& pts) {
  double a = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    a += pts[k][0] * pts[k + 1][1] - pts[k + 1][0] * pts[k][1];
  return 0.5 * a;
}

// tensor Gauss-Legendre quadrature over an axis rectangle
template <typename F>
double gauss_legendre_2d(F f, double ax, double bx, double ay, double by,
                         int order = 8) {
  static const double x8[] = {-0.9602898564975363, -0.7966664774136267,
                              -0.5255324099163290, -0.1834346424956498,
                              0.1834346424956498,  0.5255324099163290,
                              0.7966664774136267,  0.9602898564975363};
  static const double w8[] = {0.1012285362903763, 0.2223810344533745,
                              0.3137066458778873, 0.3626837833783620,
                              0.3626837833783620, 0.3137066458778873,
                              0.2223810344533745, 0.1012285362903763};
  (void)order;
  double total = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const double x = 0.5 * (bx - ax) * x8[i] + 0.5 * (ax + bx);
      const double y = 0.5 * (by - ay) * x8[j] + 0.5 * (ay + by);
      total += w8[i] * w8[j] * f(x, y);
    }
  return 0.25 * (bx - ax) * (by - ay) * total;
}

inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// random connected graph: a random spanning tree plus a few extra edges
inline MetricGraphMap random_connected_graph(Rng& rng, int vertices, int extra_edges,
                                             int target_dim = 2) {
  MetricGraphMap g;
  g.vertex_count = vertices;
  for (int v = 0; v < vertices; ++v) {
    Point p(target_dim);
    for (auto& c : p) c = rng.uniform(-1.0, 1.0);
    g.phi.push_back(std::move(p));
  }
  for (int v = 1; v < vertices; ++v) {
    g.edges.push_back({rng.index(v), v});
    g.edge_lengths.push_back(rng.uniform(0.2, 2.0));
  }
  int added = 0, attempts = 0;
  while (added < extra_edges && attempts < 50 * extra_edges + 50) {
    ++attempts;
    const int a = rng.index(vertices), b = rng.index(vertices);
    if (a == b) continue;
    bool dup = false;
    for (const auto& e : g.edges)
      if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) dup = true;
    if (dup) continue;
    g.edges.push_back({a, b});
    g.edge_lengths.push_back(rng.uniform(0.2, 2.0));
    ++added;
  }
  return g;
}

// star-convex polygon about the origin with distinct vertices, closed
inline SampledCurve random_star_polygon(Rng& rng, int n, double rmin, double rmax) {
  SampledCurve c;
  c.closed = true;
  std::vector<double> angles(n);
  for (int i = 0; i < n; ++i)
    angles[i] = 2.0 * std::numbers::pi * (double(i) + 0.2 * rng.uniform(-1.0, 1.0)) / n;
  for (int i = 0; i < n; ++i) {
    const double r = rng.uniform(rmin, rmax);
    c.times.push_back(double(i));
    c.points.push_back({r * std::cos(angles[i]), r * std::sin(angles[i])});
  }
  c.times.push_back(double(n));
  c.points.push_back(c.points.front());
  return c;
}

// graph whose map factors through a random tree: random plane tree with a
// random-walk embedding, edges subdivided with interpolated values, plus
// constant plateaus (with an occasional intra-plateau chord) that collapse
// into multi-vertex classes
struct TreeFactorableFixture {
  MetricGraphMap graph;
  int backbone_nodes = 0;
};

inline TreeFactorableFixture tree_factorable_fixture(Rng& rng, int backbone,
                                                     int max_subdiv = 3) {
  TreeFactorableFixture fx;
  MetricGraphMap& g = fx.graph;
  fx.backbone_nodes = backbone;

  std::vector<Point> node_pos;
  node_pos.push_back({rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)});
  std::vector<std::pair<int, int>> tree_edges;
  for (int v = 1; v < backbone; ++v) {
    const int parent = rng.index(v);
    Point p = node_pos[parent];
    p[0] += rng.uniform(-1.0, 1.0);
    p[1] += rng.uniform(-1.0, 1.0);
    node_pos.push_back(p);
    tree_edges.push_back({parent, v});
  }

  // backbone vertices first
  g.vertex_count = backbone;
  g.phi = node_pos;
  auto add_vertex = [&](Point p) {
    g.phi.push_back(std::move(p));
    return g.vertex_count++;
  };
  auto add_edge = [&](int a, int b) {
    g.edges.push_back({a, b});
    g.edge_lengths.push_back(rng.uniform(0.3, 1.2));
  };

  for (const auto& [a, b] : tree_edges) {
    const int pieces = 1 + rng.index(max_subdiv);
    int prev = a;
    for (int s = 1; s < pieces; ++s) {
      const double w = double(s) / pieces;
      Point p{node_pos[a][0] + w * (node_pos[b][0] - node_pos[a][0]),
              node_pos[a][1] + w * (node_pos[b][1] - node_pos[a][1])};
      const int mid = add_vertex(std::move(p));
      add_edge(prev, mid);
      prev = mid;
    }
    add_edge(prev, b);
  }

  // a few constant plateaus hanging off random vertices; equal phi values
  // merge into one class, so an intra-plateau chord stays collapsed
  const int plateaus = 1 + rng.index(3);
  for (int k = 0; k < plateaus; ++k) {
    const int anchor = rng.index(g.vertex_count);
    const int len = 2 + rng.index(3);
    std::vector<int> plateau;
    int prev = anchor;
    for (int s = 0; s < len; ++s) {
      const int v = add_vertex(g.phi[anchor]);
      add_edge(prev, v);
      plateau.push_back(v);
      prev = v;
    }
    if (plateau.size() >= 3 && rng.index(2) == 0)
      add_edge(plateau.front(), plateau.back());
  }
  return fx;
}

}  // namespace testsupport
