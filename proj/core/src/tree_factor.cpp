#include "treefactor/tree_factor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "treefactor/errors.hpp"

namespace treefactor {

void MetricGraphMap::validate() const {
  if (vertex_count < 1) throw std::invalid_argument("graph needs at least one vertex");
  if (edges.size() != edge_lengths.size())
    throw std::invalid_argument("edge/length count mismatch");
  if (static_cast<int>(phi.size()) != vertex_count)
    throw std::invalid_argument("phi must assign a point to every vertex");
  const std::size_t d = phi.empty() ? 0 : phi.front().size();
  for (const auto& p : phi)
    if (p.size() != d) throw std::invalid_argument("phi points have mixed dimensions");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (!(edge_lengths[e] > 0.0))
      throw std::invalid_argument("edge lengths must be positive");
  }
  if (quasi_convexity_C < 1.0)
    throw std::invalid_argument("quasi-convexity constant must be >= 1");
  // connectivity
  std::vector<char> seen(vertex_count, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  const auto adj = adjacency();
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw std::invalid_argument("graph must be connected");
}

std::vector<std::vector<int>> MetricGraphMap::adjacency() const {
  std::vector<std::vector<int>> adj(vertex_count);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

double MetricGraphMap::edge_length(int u, int v) const {
  for (std::size_t e = 0; e < edges.size(); ++e)
    if ((edges[e][0] == u && edges[e][1] == v) || (edges[e][0] == v && edges[e][1] == u))
      return edge_lengths[e];
  throw std::invalid_argument("not an edge of the graph");
}

namespace {

// exhaustive enumeration of connected vertex subsets containing x, each
// generated once (extend by eligible neighbors in ascending order, forbidding
// earlier siblings), pruned when the running image diameter already matches
// or exceeds the best known value
struct ExactSearch {
  const MetricGraphMap& map;
  const std::vector<std::vector<int>>& adj;
  int target;
  double best;
  std::vector<int> members;

  double grown_diam(double diam, int v) const {
    for (int u : members) diam = std::max(diam, dist(map.phi[u], map.phi[v]));
    return diam;
  }

  void grow(std::uint32_t set, std::uint32_t forbidden, double diam) {
    if (set & (1u << target)) {
      best = std::min(best, diam);
      return;  // supersets only grow the diameter
    }
    std::uint32_t frontier = 0;
    for (int u : members)
      for (int w : adj[u]) frontier |= (1u << w);
    frontier &= ~set;
    frontier &= ~forbidden;
    std::uint32_t chosen = 0;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const double d2 = grown_diam(diam, v);
      if (d2 < best) {  // supersets can only grow the diameter
        members.push_back(v);
        grow(set | (1u << v), forbidden | chosen, d2);
        members.pop_back();
      }
      chosen |= (1u << v);
    }
  }
};

}  // namespace

double pseudo_metric_D_exact(const MetricGraphMap& map, int x, int y) {
  map.validate();
  if (x < 0 || y < 0 || x >= map.vertex_count || y >= map.vertex_count)
    throw std::invalid_argument("vertex id out of range");
  if (map.vertex_count > 22)
    throw SizeLimitError("exact D is limited to 22 vertices");
  if (x == y) return 0.0;

  const auto adj = map.adjacency();
  ExactSearch search{map, adj, y, std::numeric_limits<double>::infinity(), {x}};
  search.grow(1u << x, 0u, 0.0);
  return search.best;
}

namespace {

// component of x in the subgraph induced by {v : d(phi(v), phi(x)) <= t}
std::vector<int> ball_component(const MetricGraphMap& map,
                                const std::vector<std::vector<int>>& adj, int x,
                                double t) {
  std::vector<char> in(map.vertex_count, 0), seen(map.vertex_count, 0);
  for (int v = 0; v < map.vertex_count; ++v)
    in[v] = dist(map.phi[v], map.phi[x]) <= t ? 1 : 0;
  std::vector<int> comp;
  std::deque<int> queue{x};
  seen[x] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    comp.push_back(u);
    for (int w : adj[u])
      if (in[w] && !seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return comp;
}

double directional_surrogate(const MetricGraphMap& map,
                             const std::vector<std::vector<int>>& adj, int x, int y) {
  std::vector<double> candidates(map.vertex_count);
  for (int v = 0; v < map.vertex_count; ++v)
    candidates[v] = dist(map.phi[v], map.phi[x]);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto connects = [&](double t) {
    const auto comp = ball_component(map, adj, x, t);
    return std::find(comp.begin(), comp.end(), y) != comp.end();
  };
  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!connects(candidates[hi]))
    throw std::invalid_argument("graph must be connected");  // cannot happen
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (connects(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  const auto comp = ball_component(map, adj, x, candidates[lo]);
  double diam = 0.0;
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = i + 1; j < comp.size(); ++j)
      diam = std::max(diam, dist(map.phi[comp[i]], map.phi[comp[j]]));
  return diam;
}

}  // namespace

double pseudo_metric_D_surrogate(const MetricGraphMap& map, int x, int y) {
  map.validate();
  if (x < 0 || y < 0 || x >= map.vertex_count || y >= map.vertex_count)
    throw std::invalid_argument("vertex id out of range");
  if (x == y) return 0.0;
  const auto adj = map.adjacency();
  return std::min(directional_surrogate(map, adj, x, y),
                  directional_surrogate(map, adj, y, x));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // deterministic id-order tie-breaking
    parent[b] = a;
    return true;
  }
};

// shortest vertex path inside one class (its induced subgraph is connected)
std::vector<int> path_within_class(const MetricGraphMap& map,
                                   const std::vector<std::vector<int>>& adj,
                                   const std::vector<int>& psi, int cls, int from,
                                   int to) {
  if (from == to) return {from};
  std::vector<int> parent(map.vertex_count, -1);
  std::deque<int> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (int w : adj[u])
      if (psi[w] == cls && parent[w] < 0) {
        parent[w] = u;
        queue.push_back(w);
      }
  }
  std::vector<int> path;
  for (int v = to; v != from; v = parent[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

QuotientTree build_quotient_tree(const MetricGraphMap& map, double epsilon) {
  map.validate();
  if (epsilon < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  const auto adj = map.adjacency();

  QuotientTree tree;
  tree.graph_ = map;
  tree.cache_ = std::make_unique<QuotientTree::SurrogateCache>();
  tree.psi.assign(map.vertex_count, -1);
  for (int seed = 0; seed < map.vertex_count; ++seed) {
    if (tree.psi[seed] >= 0) continue;
    const int cls = static_cast<int>(tree.classes.size());
    std::vector<int> members;
    std::deque<int> queue{seed};
    tree.psi[seed] = cls;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      members.push_back(u);
      for (int w : adj[u])
        if (tree.psi[w] < 0 && dist(map.phi[w], map.phi[seed]) <= epsilon) {
          tree.psi[w] = cls;
          queue.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    tree.classes.push_back(std::move(members));
    tree.phi_bar.push_back(map.phi[seed]);
  }

  // contract; a chord between already-connected classes certifies a cycle
  const int k = static_cast<int>(tree.classes.size());
  UnionFind uf(k);
  std::vector<std::vector<std::pair<int, int>>> forest(k);  // class -> (class, edge idx)
  for (std::size_t e = 0; e < map.edges.size(); ++e) {
    const int cu = tree.psi[map.edges[e][0]];
    const int cv = tree.psi[map.edges[e][1]];
    if (cu == cv) continue;  // collapsed inside a class
    if (!uf.unite(cu, cv)) {
      // recover the class cycle through the current forest, then expand it to
      // a closed vertex path through intra-class connectors
      std::vector<int> parent(k, -1), via(k, -1);
      std::deque<int> queue{cu};
      parent[cu] = cu;
      while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        if (c == cv) break;
        for (auto [nc, ne] : forest[c])
          if (parent[nc] < 0) {
            parent[nc] = c;
            via[nc] = ne;
            queue.push_back(nc);
          }
      }
      std::vector<std::size_t> arc_edges;  // cu -> ... -> cv in the forest
      for (int c = cv; c != cu; c = parent[c]) arc_edges.push_back(via[c]);
      std::reverse(arc_edges.begin(), arc_edges.end());
      arc_edges.push_back(e);  // closing chord cv -> cu

      std::vector<int> cycle;
      int at = map.edges[arc_edges.front()][0];
      if (tree.psi[at] != cu) at = map.edges[arc_edges.front()][1];
      cycle.push_back(at);
      int current = at;
      for (std::size_t t = 0; t < arc_edges.size(); ++t) {
        const auto [a, b] = map.edges[arc_edges[t]];
        const int enter = (tree.psi[a] == tree.psi[current]) ? a : b;
        const int exit = (enter == a) ? b : a;
        const auto inside = path_within_class(map, adj, tree.psi,
                                              tree.psi[current], current, enter);
        cycle.insert(cycle.end(), inside.begin() + 1, inside.end());
        cycle.push_back(exit);
        current = exit;
      }
      const auto back = path_within_class(map, adj, tree.psi, tree.psi[current],
                                          current, cycle.front());
      cycle.insert(cycle.end(), back.begin() + 1, back.end());
      throw NotATreeError(std::move(cycle));
    }
    forest[cu].push_back({cv, static_cast<int>(e)});
    forest[cv].push_back({cu, static_cast<int>(e)});
    tree.arcs.push_back({std::min(cu, cv), std::max(cu, cv)});
  }

  tree.class_adj_.assign(k, {});
  for (const auto& [a, b] : tree.arcs) {
    tree.class_adj_[a].push_back(b);
    tree.class_adj_[b].push_back(a);
  }
  return tree;
}

std::vector<int> QuotientTree::arc_path(int p, int q) const {
  if (p < 0 || q < 0 || p >= static_cast<int>(classes.size()) ||
      q >= static_cast<int>(classes.size()))
    throw std::invalid_argument("class id out of range");
  if (p == q) return {p};
  std::vector<int> parent(classes.size(), -1);
  std::deque<int> queue{p};
  parent[p] = p;
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    if (c == q) break;
    for (int n : class_adj_[c])
      if (parent[n] < 0) {
        parent[n] = c;
        queue.push_back(n);
      }
  }
  std::vector<int> path;
  for (int c = q; c != p; c = parent[c]) path.push_back(c);
  path.push_back(p);
  std::reverse(path.begin(), path.end());
  return path;
}

double QuotientTree::class_D(int p, int q) const {
  if (p == q) return 0.0;
  if (!cache_) cache_ = std::make_unique<SurrogateCache>();
  const auto key = std::minmax(p, q);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    const auto it = cache_->values.find(key);
    if (it != cache_->values.end()) return it->second;
  }
  const double value =
      pseudo_metric_D_surrogate(graph_, classes[p].front(), classes[q].front());
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->values.emplace(key, value);
  return value;
}

double QuotientTree::d_T(int p, int q) const {
  const auto path = arc_path(p, q);
  double best = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 1; j < path.size(); ++j)
      best = std::max(best, class_D(path[i], path[j]));
  return best;
}

std::vector<std::vector<double>> QuotientTree::d_T_table() const {
  const int k = static_cast<int>(classes.size());
  std::vector<std::vector<double>> table(k, std::vector<double>(k, 0.0));
  for (int root = 0; root < k; ++root) {
    // DFS from root; d_T(root, c) extends the parent value by the pairs that
    // involve the newly appended class
    std::vector<int> path{root};
    std::vector<std::pair<int, std::size_t>> stack;  // (class, adj cursor)
    std::vector<char> seen(k, 0);
    seen[root] = 1;
    stack.push_back({root, 0});
    while (!stack.empty()) {
      auto& [c, cursor] = stack.back();
      if (cursor >= class_adj_[c].size()) {
        stack.pop_back();
        path.pop_back();
        continue;
      }
      const int nxt = class_adj_[c][cursor++];
      if (seen[nxt]) continue;
      seen[nxt] = 1;
      double best = table[root][c];
      for (int x : path) best = std::max(best, class_D(x, nxt));
      table[root][nxt] = best;
      path.push_back(nxt);
      stack.push_back({nxt, 0});
    }
  }
  return table;
}

double QuotientTree::variation_along(int p, int q, const Modulus& sigma) const {
  const auto path = arc_path(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    acc += sigma.inverse(class_D(path[i], path[i + 1]));
  return acc;
}

int contraction(const QuotientTree& tree, int p, int q, double t, const Modulus& sigma) {
  if (t < 0.0) throw std::invalid_argument("contraction time must be >= 0");
  const auto path = tree.arc_path(p, q);
  double acc = 0.0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) acc += sigma.inverse(tree.class_D(path[i - 1], path[i]));
    if (acc >= t) return path[i];
  }
  return q;
}

int cone_extension(const QuotientTree& tree, const std::vector<int>& boundary_classes,
                   double L, const Modulus& sigma, Vec2 x) {
  if (boundary_classes.empty())
    throw std::invalid_argument("boundary assignment must be nonempty");
  if (L < 0.0) throw std::invalid_argument("L must be >= 0");
  const double t = norm(x);
  if (t > 1.0 + 1e-12) throw std::invalid_argument("x must lie in the unit disk");
  const int p = boundary_classes.front();
  const double radial = std::numbers::pi * L * std::max(0.0, 2.0 * t - 1.0);
  if (t == 0.0 || radial == 0.0) return p;
  const double angle = std::atan2(x.y, x.x);
  const double turns = angle / (2.0 * std::numbers::pi);
  const std::size_t k = boundary_classes.size();
  const long idx = std::lround(turns * double(k));
  const std::size_t s = static_cast<std::size_t>(((idx % long(k)) + long(k)) % long(k));
  return contraction(tree, p, boundary_classes[s], radial, sigma);
}

bool cone_boundary_ok(const QuotientTree& tree, const std::vector<int>& boundary_classes,
                      double L, const Modulus& sigma) {
  const std::size_t k = boundary_classes.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double ai = 2.0 * std::numbers::pi * double(i) / double(k);
      const double aj = 2.0 * std::numbers::pi * double(j) / double(k);
      const double chord = std::hypot(std::cos(ai) - std::cos(aj),
                                      std::sin(ai) - std::sin(aj));
      if (tree.d_T(boundary_classes[i], boundary_classes[j]) >
          sigma(L * chord) * (1.0 + 1e-9))
        return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> fundamental_cycles(const MetricGraphMap& map) {
  map.validate();
  const auto adj_edges = [&] {
    std::vector<std::vector<std::pair<int, std::size_t>>> a(map.vertex_count);
    for (std::size_t e = 0; e < map.edges.size(); ++e) {
      a[map.edges[e][0]].push_back({map.edges[e][1], e});
      a[map.edges[e][1]].push_back({map.edges[e][0], e});
    }
    return a;
  }();

  std::vector<int> parent(map.vertex_count, -1);
  std::vector<char> tree_edge(map.edges.size(), 0);
  std::deque<int> queue{0};
  parent[0] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (auto [w, e] : adj_edges[u])
      if (parent[w] < 0) {
        parent[w] = u;
        tree_edge[e] = 1;
        queue.push_back(w);
      }
  }

  auto root_path = [&](int v) {
    std::vector<int> path{v};
    while (path.back() != 0) path.push_back(parent[path.back()]);
    return path;  // v .. 0
  };

  std::vector<std::vector<int>> cycles;
  for (std::size_t e = 0; e < map.edges.size(); ++e) {
    if (tree_edge[e]) continue;
    const auto [u, v] = map.edges[e];
    auto pu = root_path(u);
    auto pv = root_path(v);
    // drop the common tail above the lowest common ancestor
    while (pu.size() > 1 && pv.size() > 1 && pu[pu.size() - 2] == pv[pv.size() - 2]) {
      pu.pop_back();
      pv.pop_back();
    }
    std::vector<int> cycle(pu.begin(), pu.end());  // u .. lca
    for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it) cycle.push_back(*it);
    cycle.push_back(u);  // close with the chord v -> u
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

PropertyTCertificate property_t_check(const MetricGraphMap& map,
                                      std::vector<std::vector<int>> cycles,
                                      double cell, double rtol, int moment_order) {
  map.validate();
  if (!(cell > 0.0)) throw std::invalid_argument("cell must be positive");
  if (moment_order != 1 && moment_order != 2)
    throw std::invalid_argument("moment order must be 1 or 2");
  if (map.phi.front().size() != 2)
    throw std::invalid_argument("property check needs a planar target");
  if (cycles.empty()) cycles = fundamental_cycles(map);

  PropertyTCertificate cert;
  for (const auto& cycle : cycles) {
    if (cycle.size() < 2 || cycle.front() != cycle.back())
      throw std::invalid_argument("cycles must be closed vertex paths");
    SampledCurve curve;
    curve.closed = true;
    double t = 0.0;
    curve.times.push_back(t);
    curve.points.push_back(map.phi[cycle[0]]);
    for (std::size_t i = 1; i < cycle.size(); ++i) {
      t += map.edge_length(cycle[i - 1], cycle[i]);
      curve.times.push_back(t);
      curve.points.push_back(map.phi[cycle[i]]);
    }

    bool degenerate = true;
    for (const auto& p : curve.points)
      if (p != curve.points.front()) {
        degenerate = false;
        break;
      }
    if (degenerate) continue;  // point image, vacuously fine

    const WindingField field = winding_field(curve, cell);
    const WindingMoments m = winding_moments(field);
    const double wmax = field.max_abs();
    double qx_max = 0.0, qy_max = 0.0;
    qx_max = std::max(std::abs(field.origin.x),
                      std::abs(field.origin.x + field.ncols * field.cell));
    qy_max = std::max(std::abs(field.origin.y),
                      std::abs(field.origin.y + field.nrows * field.cell));
    const double budget00 = wmax * m.masked_area + rtol * (1.0 + std::abs(m.m00));
    const double budget10 = wmax * m.masked_area * qx_max + rtol * (1.0 + std::abs(m.m10));
    const double budget01 = wmax * m.masked_area * qy_max + rtol * (1.0 + std::abs(m.m01));
    const bool first_moments_exceed =
        moment_order >= 2 &&
        (std::abs(m.m10) > budget10 || std::abs(m.m01) > budget01);
    if (std::abs(m.m00) > budget00 || first_moments_exceed) {
      cert.verdict = PropertyTVerdict::violated;
      cert.witness = cycle;
      cert.moments = m;
      return cert;
    }
  }
  return cert;
}

}  // namespace treefactor
