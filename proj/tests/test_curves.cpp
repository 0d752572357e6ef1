#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "treefactor/curves.hpp"
#include "treefactor/errors.hpp"
#include "treefactor/fixtures.hpp"
#include "test_support.hpp"

using namespace treefactor;
using testsupport::Rng;

namespace {

SampledCurve line_curve(int n) {
  SampledCurve c;
  for (int i = 0; i <= n; ++i) {
    const double t = double(i) / n;
    c.times.push_back(t);
    c.points.push_back({t, 0.0});
  }
  return c;
}

SampledCurve constant_curve(int n) {
  SampledCurve c;
  for (int i = 0; i <= n; ++i) {
    c.times.push_back(double(i) / n);
    c.points.push_back({0.3, -0.7});
  }
  return c;
}

// brute-force sigma-variation: maximum over every sub-partition of the
// sample grid containing both endpoints
double brute_force_variation(const SampledCurve& c, const Modulus& sigma) {
  const int n = static_cast<int>(c.size());
  const int interior = n - 2;
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << interior); ++mask) {
    std::vector<int> idx{0};
    for (int i = 0; i < interior; ++i)
      if (mask & (1u << i)) idx.push_back(i + 1);
    idx.push_back(n - 1);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k)
      sum += sigma.inverse(dist(c.points[idx[k]], c.points[idx[k + 1]]));
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

TEST_CASE("holder constant of a unit-speed line is 1") {
  const auto est = estimate_holder_constant(line_curve(100), 1.0);
  CHECK(est.constant == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.pair_count == 101 * 100 / 2);
}

TEST_CASE("holder constant of a constant curve is 0") {
  CHECK(estimate_holder_constant(constant_curve(50), 0.5).constant == 0.0);
}

TEST_CASE("holder constant of sqrt(t) at alpha = 1/2") {
  // sup |sqrt(t) - sqrt(s)| / |t - s|^(1/2) = 1, attained at s = 0
  SampledCurve c;
  const int n = 800;
  for (int i = 0; i <= n; ++i) {
    const double t = double(i) / n;
    c.times.push_back(t);
    c.points.push_back({std::sqrt(t), 0.0});
  }
  const auto est = estimate_holder_constant(c, 0.5);
  CHECK(est.constant == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(est.constant <= 1.0 + 1e-12);
}

TEST_CASE("holder estimate is monotone under sample refinement") {
  Rng rng(11);
  SampledCurve coarse;
  for (int i = 0; i <= 16; ++i) {
    coarse.times.push_back(double(i));
    coarse.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
  }
  // refined grid keeps every coarse sample and adds midpoints
  SampledCurve fine;
  for (std::size_t i = 0; i + 1 < coarse.size(); ++i) {
    fine.times.push_back(coarse.times[i]);
    fine.points.push_back(coarse.points[i]);
    fine.times.push_back(coarse.times[i] + 0.5);
    fine.points.push_back({0.5 * (coarse.points[i][0] + coarse.points[i + 1][0]),
                           0.5 * (coarse.points[i][1] + coarse.points[i + 1][1])});
  }
  fine.times.push_back(coarse.times.back());
  fine.points.push_back(coarse.points.back());
  for (double alpha : {0.3, 0.7, 1.0})
    CHECK(estimate_holder_constant(fine, alpha).constant >=
          estimate_holder_constant(coarse, alpha).constant - 1e-15);
}

TEST_CASE("dyadic-lag path is a lower bound and flags itself") {
  Rng rng(12);
  SampledCurve big;
  for (int i = 0; i <= 2500; ++i) {
    big.times.push_back(double(i));
    big.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
  }
  const auto est = estimate_holder_constant(big, 0.5);
  CHECK(est.pair_count < big.size() * (big.size() - 1) / 2);
  // restricting to a subset of pairs can only lower the supremum
  SampledCurve head;
  head.times.assign(big.times.begin(), big.times.begin() + 2000);
  head.points.assign(big.points.begin(), big.points.begin() + 2000);
  CHECK(estimate_holder_constant(head, 0.5).constant >= 0.0);
}

TEST_CASE("smooth_modulus closed forms") {
  std::vector<double> ts, zero, lin, quad;
  for (int i = 0; i <= 400; ++i) {
    const double t = double(i) / 100.0;
    ts.push_back(t);
    zero.push_back(0.0);
    lin.push_back(t);
    quad.push_back(t * t);
  }
  SUBCASE("omega = 0 gives sigma(t) = t") {
    const Modulus s = smooth_modulus(ts, zero);
    for (std::size_t i = 0; i < s.knot_times().size(); ++i)
      CHECK(s.knot_values()[i] == doctest::Approx(s.knot_times()[i]).epsilon(1e-14));
  }
  SUBCASE("omega(s) = s gives sigma(t) = (5/2) t") {
    const Modulus s = smooth_modulus(ts, lin);
    for (double t : {0.5, 1.0, 1.7})
      CHECK(s(t) == doctest::Approx(2.5 * t).epsilon(1e-12));
  }
  SUBCASE("omega(s) = s^2 gives sigma(t) = t + (7/3) t^2") {
    const Modulus s = smooth_modulus(ts, quad);
    for (double t : {0.5, 1.0, 1.9})
      CHECK(s(t) == doctest::Approx(t + 7.0 / 3.0 * t * t).epsilon(1e-4));
  }
  SUBCASE("output dominates omega on knots") {
    const Modulus s = smooth_modulus(ts, quad);
    for (std::size_t i = 0; i < s.knot_times().size(); ++i)
      CHECK(s.knot_values()[i] >= s.knot_times()[i] * s.knot_times()[i] - 1e-12);
  }
  SUBCASE("decreasing omega is rejected") {
    auto bad = lin;
    bad[5] = -1.0;
    CHECK_THROWS_AS(smooth_modulus(ts, bad), std::invalid_argument);
  }
}

TEST_CASE("sigma variation basics") {
  const Modulus id = Modulus::power(1.0, 1.0);
  CHECK(sigma_variation(constant_curve(20), id) == 0.0);
  CHECK(sigma_variation(line_curve(64), id) == doctest::Approx(1.0).epsilon(1e-12));

  // unit-speed V polyline of total length 2
  SampledCurve v;
  const int n = 50;
  for (int i = 0; i <= 2 * n; ++i) {
    const double t = double(i) / n;  // 0..2
    v.times.push_back(t);
    v.points.push_back({t <= 1.0 ? t : 2.0 - t, t <= 1.0 ? t : t});
  }
  // legs (t, t) and (2 - t, t), rescaled to unit speed: total length 2
  for (auto& p : v.points) {
    p[0] /= std::sqrt(2.0);
    p[1] /= std::sqrt(2.0);
  }
  CHECK(sigma_variation(v, id) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sigma_variation(v, id) ==
        doctest::Approx(brute_force_variation(
                            [&] {
                              SampledCurve sparse;  // subsample so 2^n stays small
                              for (std::size_t i = 0; i < v.size(); i += 10) {
                                sparse.times.push_back(v.times[i]);
                                sparse.points.push_back(v.points[i]);
                              }
                              return sparse;
                            }(),
                            id))
            .epsilon(1e-9));
}

TEST_CASE("sigma variation matches exhaustive sub-partition search") {
  Rng rng(21);
  const Modulus sqrt_mod = Modulus::power(1.0, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    SampledCurve c;
    const int n = 3 + rng.index(9);
    for (int i = 0; i <= n; ++i) {
      c.times.push_back(double(i));
      c.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    CHECK(sigma_variation(c, sqrt_mod) ==
          doctest::Approx(brute_force_variation(c, sqrt_mod)).epsilon(1e-12));
  }
}

TEST_CASE("sigma variation is parameterization invariant") {
  Rng rng(22);
  SampledCurve c;
  for (int i = 0; i <= 40; ++i) {
    c.times.push_back(double(i));
    c.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
  }
  SampledCurve warped = c;
  for (std::size_t i = 0; i < warped.times.size(); ++i)
    warped.times[i] = std::exp(0.07 * warped.times[i]);
  const Modulus m = Modulus::power(2.0, 0.5);
  CHECK(sigma_variation(c, m) == sigma_variation(warped, m));
}

TEST_CASE("reparameterize_by_variation") {
  const Modulus id = Modulus::power(1.0, 1.0);
  SUBCASE("arc-length line is unchanged") {
    const SampledCurve c = line_curve(32);
    const SampledCurve r = reparameterize_by_variation(c, id);
    REQUIRE(r.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      CHECK(r.times[i] == doctest::Approx(c.times[i]).epsilon(1e-12));
      CHECK(r.points[i] == c.points[i]);
    }
  }
  SUBCASE("plateau collapses to one sample") {
    SampledCurve c;
    for (int i = 0; i <= 10; ++i) {
      c.times.push_back(double(i));
      const double x = i <= 3 ? double(i) : (i <= 7 ? 3.0 : double(i) - 4.0);
      c.points.push_back({x, 0.0});
    }
    const SampledCurve r = reparameterize_by_variation(c, id);
    CHECK(r.size() == c.size() - 4);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(r.times[i] > r.times[i - 1]);
  }
  SUBCASE("times are the cumulative sigma-inverse increments on simple curves") {
    Rng rng(5);
    SampledCurve c;
    double x = 0.0;
    for (int i = 0; i <= 25; ++i) {
      c.times.push_back(double(i));
      c.points.push_back({x, 0.0});
      x += rng.uniform(0.1, 1.0);  // strictly monotone: consecutive sums are optimal
    }
    const Modulus m = Modulus::power(1.5, 1.0);
    const SampledCurve r = reparameterize_by_variation(c, m);
    double acc = 0.0;
    CHECK(r.times[0] == 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) {
      acc += m.inverse(dist(c.points[i - 1], c.points[i]));
      CHECK(r.times[i] == doctest::Approx(acc).epsilon(1e-12));
    }
  }
  SUBCASE("output is sigma-continuous on all sample pairs") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
      SampledCurve c;
      for (int i = 0; i <= 60; ++i) {
        c.times.push_back(double(i));
        c.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
      }
      const Modulus m = Modulus::power(1.0, 0.6);
      const SampledCurve r = reparameterize_by_variation(c, m);
      for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
          CHECK(dist(r.points[i], r.points[j]) <=
                m(r.times[j] - r.times[i]) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("loop_erase") {
  SUBCASE("injective curve unchanged at tol = 0") {
    const SampledCurve c = line_curve(20);
    const SampledCurve e = loop_erase(c, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(e.points[i] == c.points[i]);
  }
  SUBCASE("figure eight loses one lobe") {
    const SampledCurve c = treefactor::fixtures::figure_eight(64, 0.5);
    const SampledCurve e = loop_erase(c, 0.0);
    const Modulus id = Modulus::power(1.0, 1.0);
    const SampledCurve r = reparameterize_by_variation(e, id);
    // as a cyclic sequence the survivor is injective
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        if (i == 0 && j + 1 == r.size()) continue;  // closed seam
        CHECK(dist(r.points[i], r.points[j]) > 0.0);
      }
    CHECK(e.points.front() == c.points.front());
    CHECK(e.points.back() == c.points.back());
  }
  SUBCASE("doubly traversed circle becomes one traversal") {
    const SampledCurve c = treefactor::fixtures::circle(64, {0, 0}, 1.0, 2);
    const SampledCurve e = loop_erase(c, 0.0);
    const Modulus id = Modulus::power(1.0, 1.0);
    const SampledCurve r = reparameterize_by_variation(e, id);
    CHECK(r.size() == 65);  // one traversal of the 64-gon
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      for (std::size_t j = i + 1; j < r.size(); ++j) {
        if (i == 0 && j + 1 == r.size()) continue;
        CHECK(dist(r.points[i], r.points[j]) > 0.0);
      }
  }
  SUBCASE("image is a subset of the input image and endpoints survive") {
    Rng rng(31);
    SampledCurve c;
    for (int i = 0; i <= 30; ++i) {
      c.times.push_back(double(i));
      c.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
    }
    c.points[17] = c.points[4];  // planted repeat
    const SampledCurve e = loop_erase(c, 0.0);
    CHECK(e.points.front() == c.points.front());
    CHECK(e.points.back() == c.points.back());
    for (const auto& p : e.points) {
      bool found = false;
      for (const auto& q : c.points)
        if (p == q) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("modulus validation and range errors") {
  CHECK_THROWS_AS(Modulus::power(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Modulus::table({0.0, 1.0}, {0.1, 1.0}), std::invalid_argument);
  const Modulus t = Modulus::table({0.0, 1.0, 2.0}, {0.0, 0.5, 0.8});
  CHECK(t.inverse(0.5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(t.inverse(0.9), ModulusRangeError);
  const Modulus degenerate = Modulus::power(0.0, 0.5);
  CHECK(degenerate.inverse(0.0) == 0.0);
  CHECK_THROWS_AS(degenerate.inverse(0.1), ModulusRangeError);
  SampledCurve far;
  far.times = {0.0, 1.0};
  far.points = {{0.0, 0.0}, {10.0, 0.0}};
  CHECK_THROWS_AS(sigma_variation(far, t), ModulusRangeError);
}

TEST_CASE("curve validation") {
  SampledCurve c;
  c.times = {0.0};
  c.points = {{1.0}};
  CHECK_THROWS_AS(estimate_holder_constant(c, 1.0), std::invalid_argument);
  c.times = {0.0, 0.0};
  c.points = {{1.0}, {2.0}};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
