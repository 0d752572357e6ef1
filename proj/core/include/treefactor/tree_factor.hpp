#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "treefactor/curves.hpp"
#include "treefactor/geometry.hpp"
#include "treefactor/winding.hpp"

namespace treefactor {

/// Finite weighted graph with a target point per vertex; the discrete
/// surrogate for a quasi-convex space carrying a map.
struct MetricGraphMap {
  int vertex_count = 0;                   // ids 0 .. vertex_count-1
  std::vector<std::array<int, 2>> edges;  // no self-loops
  std::vector<double> edge_lengths;       // positive, same length as edges
  std::vector<Point> phi;                 // per-vertex target point
  double quasi_convexity_C = 1.0;

  void validate() const;  // connected, positive lengths, no self-loops
  std::vector<std::vector<int>> adjacency() const;
  double edge_length(int u, int v) const;  // throws when (u, v) is not an edge
};

/// Exact pseudo-metric D(x, y): minimum over connected vertex sets C
/// containing x and y of diam(phi(C)), by exhaustive enumeration of connected
/// subsets grown from x with pruning by the current best. Guarded to at most
/// 22 vertices (SizeLimitError beyond).
double pseudo_metric_D_exact(const MetricGraphMap& map, int x, int y);

/// Ball surrogate: finds the smallest threshold t (binary search over the
/// candidate distances d(phi(v), phi(x))) whose induced subgraph
/// {v : d(phi(v), phi(x)) <= t} connects x to y, and returns the image
/// diameter of that component; symmetrized by taking the smaller of the two
/// directional values. Always lies in [D_exact, 2 * D_exact].
double pseudo_metric_D_surrogate(const MetricGraphMap& map, int x, int y);

/// Quotient tree: classes are greedy level-set components at resolution
/// epsilon, arcs come from contracting the domain graph. d_T is the monotone
/// metric sup { D(q, q') : q, q' on the arc } with D_surrogate on class
/// representatives.
class QuotientTree {
 public:
  std::vector<std::vector<int>> classes;  // sorted vertex ids per class
  std::vector<int> psi;                   // vertex -> class
  std::vector<Point> phi_bar;             // class -> phi of its lowest-id vertex
  std::vector<std::array<int, 2>> arcs;   // tree edges between classes

  std::size_t class_count() const { return classes.size(); }
  const MetricGraphMap& graph() const { return graph_; }

  /// Class sequence along the unique arc from p to q (inclusive).
  std::vector<int> arc_path(int p, int q) const;
  /// Monotone metric: max of class-pair surrogates along the arc.
  double d_T(int p, int q) const;
  /// Surrogate D between two classes (on their representative vertices).
  double class_D(int p, int q) const;
  /// Accumulated sigma^{-1}(D) increments along [p, q]; the arc-length
  /// parameter V(q) used by the contraction.
  double variation_along(int p, int q, const Modulus& sigma) const;
  /// Full d_T matrix, computed with per-root incremental arc maxima.
  std::vector<std::vector<double>> d_T_table() const;

 private:
  friend QuotientTree build_quotient_tree(const MetricGraphMap& map, double epsilon);
  struct SurrogateCache {
    std::map<std::pair<int, int>, double> values;
    std::mutex mutex;
  };
  MetricGraphMap graph_;
  std::vector<std::vector<int>> class_adj_;
  mutable std::unique_ptr<SurrogateCache> cache_;
};

/// Throws NotATreeError (with a closed witness path of domain vertices) when
/// the contracted graph has a cycle, which certifies that no tree
/// factorization exists at resolution epsilon.
QuotientTree build_quotient_tree(const MetricGraphMap& map, double epsilon);

/// pi_p(q, t): walks the arc [p, q] accumulating sigma^{-1}(D) increments and
/// stops at the first class where the accumulated value reaches t; p at
/// t = 0, q once t >= V(q).
int contraction(const QuotientTree& tree, int p, int q, double t, const Modulus& sigma);

/// Cone extension F(s t) = pi_p(f(s), R max{0, 2t - 1}) with R = L pi and
/// p = f(first sample); f assigns classes to uniformly spaced boundary
/// angles. x lies in the closed unit disk.
int cone_extension(const QuotientTree& tree, const std::vector<int>& boundary_classes,
                   double L, const Modulus& sigma, Vec2 x);

/// Checks d_T(f(s), f(s')) <= sigma(L |s - s'|) on all boundary sample pairs
/// (chordal distance on the circle).
bool cone_boundary_ok(const QuotientTree& tree, const std::vector<int>& boundary_classes,
                      double L, const Modulus& sigma);

enum class PropertyTVerdict { holds_up_to_tolerance, violated };

struct PropertyTCertificate {
  PropertyTVerdict verdict = PropertyTVerdict::holds_up_to_tolerance;
  std::vector<int> witness;  // closed vertex path, present iff violated
  WindingMoments moments;    // of the witness curve (zeroed otherwise)
};

/// Spanning-tree chord cycles, each a closed vertex path.
std::vector<std::vector<int>> fundamental_cycles(const MetricGraphMap& map);

/// Winding-moment certificate: violated when some cycle's moments exceed
/// their masked-area budgets plus rtol slack. moment_order selects the
/// regime: 1 checks the winding mass m00 alone (the alpha > 2/3 vanishing
/// condition), 2 additionally checks the first moments m10, m01 (the
/// alpha > 1/2 condition). With an empty cycle list the fundamental cycle
/// basis is used.
PropertyTCertificate property_t_check(const MetricGraphMap& map,
                                      std::vector<std::vector<int>> cycles,
                                      double cell, double rtol = 1e-9,
                                      int moment_order = 2);

}  // namespace treefactor
