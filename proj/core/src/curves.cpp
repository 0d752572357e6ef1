#include "treefactor/curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treefactor/errors.hpp"

namespace treefactor {

double dist_point_segment(Vec2 q, Vec2 a, Vec2 b) {
  const Vec2 v = b - a;
  const double len2 = dot(v, v);
  if (len2 == 0.0) return dist(q, a);
  double t = dot(q - a, v) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(q, Vec2{a.x + t * v.x, a.y + t * v.y});
}

void SampledCurve::validate() const {
  if (times.size() < 2) throw std::invalid_argument("curve needs at least 2 samples");
  if (times.size() != points.size())
    throw std::invalid_argument("times/points length mismatch");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("curve times must be strictly increasing");
  const std::size_t d = points.front().size();
  if (d == 0) throw std::invalid_argument("curve points must have dimension >= 1");
  for (const auto& p : points)
    if (p.size() != d) throw std::invalid_argument("curve points have mixed dimensions");
  if (closed && points.front() != points.back())
    throw std::invalid_argument("closed curve must end at its start point");
}

Modulus Modulus::power(double holder_constant, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("power modulus needs alpha in (0, 1]");
  if (holder_constant < 0.0)
    throw std::invalid_argument("power modulus needs H >= 0");
  Modulus m;
  m.kind_ = Kind::Power;
  m.h_ = holder_constant;
  m.alpha_ = alpha;
  return m;
}

Modulus Modulus::table(std::vector<double> ts, std::vector<double> values) {
  if (ts.size() != values.size() || ts.size() < 2)
    throw std::invalid_argument("table modulus needs >= 2 knots");
  if (ts.front() != 0.0 || values.front() != 0.0)
    throw std::invalid_argument("table modulus must start at (0, 0)");
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (!(ts[i] > ts[i - 1]) || !(values[i] > values[i - 1]))
      throw std::invalid_argument("table modulus knots must be strictly increasing");
  Modulus m;
  m.kind_ = Kind::Table;
  m.ts_ = std::move(ts);
  m.vs_ = std::move(values);
  return m;
}

double Modulus::operator()(double t) const {
  if (t < 0.0) throw std::invalid_argument("modulus argument must be >= 0");
  if (kind_ == Kind::Power) return h_ * std::pow(t, alpha_);
  if (t >= ts_.back()) {
    // linear extension with the final slope keeps strict monotonicity
    const std::size_t n = ts_.size();
    const double slope = (vs_[n - 1] - vs_[n - 2]) / (ts_[n - 1] - ts_[n - 2]);
    return vs_.back() + slope * (t - ts_.back());
  }
  const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - ts_.begin());
  const double w = (t - ts_[i - 1]) / (ts_[i] - ts_[i - 1]);
  return vs_[i - 1] + w * (vs_[i] - vs_[i - 1]);
}

double Modulus::inverse(double d) const {
  if (d < 0.0) throw ModulusRangeError("modulus inverse of a negative value");
  if (d == 0.0) return 0.0;
  if (kind_ == Kind::Power) {
    if (h_ == 0.0) throw ModulusRangeError("degenerate power modulus (H = 0)");
    return std::pow(d / h_, 1.0 / alpha_);
  }
  if (d > vs_.back()) throw ModulusRangeError("value outside modulus range");
  const auto it = std::upper_bound(vs_.begin(), vs_.end(), d);
  std::size_t i = static_cast<std::size_t>(it - vs_.begin());
  if (i >= vs_.size()) i = vs_.size() - 1;
  const double w = (d - vs_[i - 1]) / (vs_[i] - vs_[i - 1]);
  return ts_[i - 1] + w * (ts_[i] - ts_[i - 1]);
}

HolderEstimate estimate_holder_constant(const SampledCurve& curve, double alpha) {
  curve.validate();
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must lie in (0, 1]");
  const std::size_t n = curve.size();
  HolderEstimate est;
  est.alpha = alpha;
  auto consider = [&](std::size_t i, std::size_t j) {
    const double dt = curve.times[j] - curve.times[i];
    const double dp = dist(curve.points[i], curve.points[j]);
    const double ratio = dp / std::pow(dt, alpha);
    if (ratio > est.constant) est.constant = ratio;
    ++est.pair_count;
  };
  if (n <= 2000) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) consider(i, j);
  } else {
    for (std::size_t lag = 1; lag < n; lag *= 2)
      for (std::size_t i = 0; i + lag < n; ++i) consider(i, i + lag);
  }
  return est;
}

Modulus smooth_modulus(const std::vector<double>& omega_ts,
                       const std::vector<double>& omega_values) {
  const auto& ts = omega_ts;
  const auto& vs = omega_values;
  if (ts.size() != vs.size() || ts.size() < 2)
    throw std::invalid_argument("omega table needs >= 2 knots");
  if (ts.front() != 0.0 || vs.front() != 0.0)
    throw std::invalid_argument("omega must start at (0, 0)");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (!(ts[i] > ts[i - 1]))
      throw std::invalid_argument("omega knot times must be strictly increasing");
    if (vs[i] < vs[i - 1]) throw std::invalid_argument("omega must be increasing");
  }

  auto omega_at = [&](double t) {
    const auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.end()) return vs.back();
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (i == 0) return vs.front();
    const double w = (t - ts[i - 1]) / (ts[i] - ts[i - 1]);
    return vs[i - 1] + w * (vs[i] - vs[i - 1]);
  };
  // exact integral of the piecewise-linear interpolant of omega over [a, b]
  auto integral = [&](double a, double b) {
    double total = 0.0;
    double left = a;
    std::size_t i = 0;
    while (i < ts.size() && ts[i] <= left) ++i;
    while (left < b) {
      const double right = (i < ts.size()) ? std::min(ts[i], b) : b;
      total += 0.5 * (omega_at(left) + omega_at(right)) * (right - left);
      left = right;
      ++i;
    }
    return total;
  };

  std::vector<double> out_ts{0.0}, out_vs{0.0};
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double t = ts[i];
    if (2.0 * t > ts.back()) break;  // stay inside the tabulated range
    out_ts.push_back(t);
    out_vs.push_back(t + integral(t, 2.0 * t) / t);
  }
  if (out_ts.size() < 2)
    throw std::invalid_argument("omega table too short to smooth (needs 2t in range)");
  return Modulus::table(std::move(out_ts), std::move(out_vs));
}

namespace {

// prefix sigma-variations tau[j] = V_sigma(curve|[0, t_j]) by DP over sample
// indices; tau[j] >= tau[i] + sigma^{-1}(d(p_i, p_j)) for all i < j
std::vector<double> prefix_variation(const SampledCurve& curve, const Modulus& sigma) {
  const std::size_t n = curve.size();
  std::vector<double> tau(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double best = 0.0;
    for (std::size_t i = 0; i < j; ++i) {
      const double v = tau[i] + sigma.inverse(dist(curve.points[i], curve.points[j]));
      if (v > best) best = v;
    }
    tau[j] = best;
  }
  return tau;
}

}  // namespace

double sigma_variation(const SampledCurve& curve, const Modulus& sigma) {
  curve.validate();
  return prefix_variation(curve, sigma).back();
}

SampledCurve reparameterize_by_variation(const SampledCurve& curve, const Modulus& sigma) {
  curve.validate();
  const std::vector<double> tau = prefix_variation(curve, sigma);
  SampledCurve out;
  out.closed = curve.closed;
  out.times.push_back(tau[0]);
  out.points.push_back(curve.points[0]);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    if (tau[i] > out.times.back()) {
      out.times.push_back(tau[i]);
      out.points.push_back(curve.points[i]);
    } else if (i + 1 == curve.size()) {
      // keep the endpoint; a fully constant tail collapses onto the last kept
      // sample, which already carries the same point value
      out.points.back() = curve.points[i];
    }
  }
  if (out.times.size() < 2) {
    // constant curve: keep two samples to satisfy the carrier invariant
    out.times = {0.0, 1.0};
    out.points = {curve.points.front(), curve.points.back()};
  }
  if (out.closed && out.points.front() != out.points.back()) out.closed = false;
  return out;
}

SampledCurve loop_erase(const SampledCurve& curve, double tol) {
  curve.validate();
  if (tol < 0.0) throw std::invalid_argument("tol must be >= 0");
  const std::size_t n = curve.size() - 1;  // last index
  SampledCurve out = curve;
  std::size_t a = 0;
  while (a < n) {
    // extend the match maximally; for closed curves [0, n] is not a candidate
    std::size_t b = a;
    const std::size_t bmax = (curve.closed && a == 0) ? n - 1 : n;
    for (std::size_t j = bmax; j > a; --j) {
      if (dist(curve.points[a], curve.points[j]) <= tol) {
        b = j;
        break;
      }
    }
    if (b > a) {
      for (std::size_t j = a; j <= b; ++j) out.points[j] = curve.points[a];
      a = b + 1;
    } else {
      ++a;
    }
  }
  return out;
}

}  // namespace treefactor
