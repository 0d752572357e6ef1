#pragma once

#include <cstddef>
#include <vector>

#include "treefactor/geometry.hpp"

namespace treefactor {

/// Finitely sampled path t_i -> point in R^d. The carrier for 1-D integrals,
/// Hölder estimation, winding and lifting.
struct SampledCurve {
  std::vector<double> times;   // strictly increasing, >= 2 samples
  std::vector<Point> points;   // same length, common dimension
  bool closed = false;         // if set, points.front() == points.back() bitwise

  std::size_t size() const { return times.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }

  /// Throws std::invalid_argument when an invariant fails.
  void validate() const;
};

/// Modulus of continuity sigma: [0,inf) -> [0,inf), strictly increasing with
/// sigma(0) = 0. Either H * t^alpha or a piecewise-linear knot table.
class Modulus {
 public:
  static Modulus power(double holder_constant, double alpha);
  /// Knots strictly increasing in both coordinates, first knot (0,0).
  static Modulus table(std::vector<double> ts, std::vector<double> values);

  double operator()(double t) const;
  /// Inverse by exact piecewise-linear inversion (table) or closed form
  /// (power). Throws ModulusRangeError when d lies outside the covered range.
  double inverse(double d) const;

  bool is_power() const { return kind_ == Kind::Power; }
  double holder_constant() const { return h_; }
  double alpha() const { return alpha_; }
  const std::vector<double>& knot_times() const { return ts_; }
  const std::vector<double>& knot_values() const { return vs_; }

 private:
  enum class Kind { Power, Table };
  Kind kind_ = Kind::Power;
  double h_ = 1.0;
  double alpha_ = 1.0;
  std::vector<double> ts_, vs_;
};

struct HolderEstimate {
  double alpha = 1.0;
  double constant = 0.0;     // estimated H^alpha
  std::size_t pair_count = 0;  // pairs inspected; < n(n-1)/2 flags the dyadic-lag path
};

/// sup over inspected sample pairs of d(p_i, p_j) / (t_j - t_i)^alpha.
/// All pairs for n <= 2000 samples, dyadic lag offsets (1, 2, 4, ...) beyond;
/// the restricted scan is a lower bound of the all-pairs value.
HolderEstimate estimate_holder_constant(const SampledCurve& curve, double alpha);

/// sigma(t) = t + (1/t) * integral_t^{2t} omega, sampled on the knots of
/// omega whose doubled argument stays in range; trapezoid quadrature of the
/// piecewise-linear interpolant. omega is a raw knot table (increasing, not
/// necessarily strictly; omega(0) = 0) since plateaus are allowed there.
/// Output dominates omega on common knots.
Modulus smooth_modulus(const std::vector<double>& omega_ts,
                       const std::vector<double>& omega_values);

/// sup over sub-partitions (on sample points) of sum sigma^{-1}(d(...)),
/// by dynamic programming over the sample grid.
double sigma_variation(const SampledCurve& curve, const Modulus& sigma);

/// Reparameterizes so that time equals accumulated sigma-variation; duplicate
/// times (zero increments) collapse to one sample. Output satisfies
/// d(p(t), p(s)) <= sigma(t - s) on all sample pairs up to rounding.
SampledCurve reparameterize_by_variation(const SampledCurve& curve, const Modulus& sigma);

/// Erases returning excursions: greedily selects a maximal disjoint family of
/// maximal intervals [a, b] with d(p_a, p_b) <= tol, scanning left to right,
/// and holds the curve constant on each. For closed curves the trivial whole-
/// curve interval is not a candidate. Endpoints are preserved and the image
/// is a subset of the input image.
SampledCurve loop_erase(const SampledCurve& curve, double tol = 0.0);

}  // namespace treefactor
