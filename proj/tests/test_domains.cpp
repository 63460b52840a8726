#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gps/domains.hpp"

using namespace gps;

namespace {
const MirroredBallDomain kDom{{0.0, 0.0}, 2.0, 1.0};
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("gauss legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(6, -1.0, 1.0, x, w);
  double s0 = 0.0, s2 = 0.0, s10 = 0.0;
  for (int i = 0; i < 6; ++i) {
    s0 += w[i];
    s2 += w[i] * x[i] * x[i];
    s10 += w[i] * std::pow(x[i], 10);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  // degree 10 > 2n-1 = 11? n=6 integrates degree 11 exactly
  CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("boundary rule area and normals") {
  for (int level : {2, 4}) {
    const SliceQuadrature rule = build_boundary_rule(kDom, level);
    double area = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) area += rule.weights[i];
    CHECK(area == doctest::Approx(4.0 * kPi * kDom.rho * kDom.rho).epsilon(1e-3));
    for (std::size_t i = 0; i < rule.size(); i += 7) {
      const auto n = rule.normal(i);
      CHECK(n[0] * n[0] + n[1] * n[1] + n[2] * n[2] == doctest::Approx(1.0).epsilon(1e-12));
      // outward: normal aligned with the offset from the ball center
      const auto pItr = rule.point(i);
      const double dot = n[0] * (pItr[0] - 0.0) + n[1] * (pItr[1] - 0.0) +
                         n[2] * (pItr[2] - kDom.r0);
      CHECK(dot > 0.0);
    }
  }
}

TEST_CASE("boundary rule integrates sphere moments") {
  const SliceQuadrature rule = build_boundary_rule(kDom, 3);
  // odd moment vanishes, second moment is area/3 on the unit sphere
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto n = rule.normal(i);
    m1 += rule.weights[i] * n[2];
    m2 += rule.weights[i] * n[2] * n[2];
  }
  CHECK(std::abs(m1) < 1e-12);
  CHECK(m2 == doctest::Approx(4.0 * kPi * kDom.rho * kDom.rho / 3.0).epsilon(1e-10));
}

TEST_CASE("volume rule") {
  const SliceQuadrature rule = build_volume_rule(kDom, 5);
  double vol = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    vol += rule.weights[i];
    odd += rule.weights[i] * (rule.point(i)[0] - kDom.center_p[0]);
  }
  CHECK(vol == doctest::Approx(4.0 / 3.0 * kPi * std::pow(kDom.rho, 3)).epsilon(1e-6));
  CHECK(std::abs(odd) < 1e-10);
}

TEST_CASE("sphere rule q=2") {
  const SphereQuadrature rule = build_sphere_rule(2, 3);
  double total = 0.0, wmax = 0.0, comp = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    total += rule.weights[i];
    wmax = std::max(wmax, rule.weights[i]);
    comp += rule.weights[i] * rule.omega(i)[0];
    // strict hemisphere: the antipode of every node is absent
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double d0 = rule.omega(i)[0] + rule.omega(j)[0];
      const double d1 = rule.omega(i)[1] + rule.omega(j)[1];
      CHECK(d0 * d0 + d1 * d1 > 1e-12);
    }
  }
  CHECK(total == doctest::Approx(kPi).epsilon(1e-10));
  // first-moment symmetry of the half circle
  CHECK(std::abs(comp) < 1e-12);

  const SphereQuadrature finer = build_sphere_rule(2, 4);
  double wmax2 = 0.0;
  for (double w : finer.weights) wmax2 = std::max(wmax2, w);
  CHECK(wmax2 == doctest::Approx(0.5 * wmax).epsilon(1e-14));

  CHECK_THROWS_AS(build_sphere_rule(1, 2), std::invalid_argument);
}

TEST_CASE("sphere rule q=3") {
  const SphereQuadrature rule = build_sphere_rule(3, 4);
  double total = 0.0;
  for (double w : rule.weights) total += w;
  CHECK(total == doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("containment") {
  const AlgebraSignature sig{1, 2};
  // center of the r>0 ball, arbitrary direction
  CHECK(kDom.contains(SplitPoint::from_polar({0.0, 0.0}, 2.0, {0.6, 0.8})));
  // |x_q| = r0 keeps the full circle inside
  CHECK(kDom.contains(SplitPoint::from_polar({0.0, 0.0}, 2.0, {-1.0, 0.0})));
  CHECK_FALSE(kDom.contains(SplitPoint::from_polar({0.0, 0.0}, 0.5, {1.0, 0.0})));
  CHECK(kDom.slice_contains(std::vector<double>{0.2, 0.1}, 2.3));
  CHECK_FALSE(kDom.slice_contains(std::vector<double>{0.0, 0.0}, 3.5));
}

TEST_CASE("pv excision") {
  const SliceQuadrature rule = build_volume_rule(kDom, 3);
  const std::vector<double> xw{0.1, -0.2, 2.1};
  const std::vector<double> xmw{0.1, -0.2, -2.1};

  const SliceQuadrature same = pv_excise(rule, xw, xmw, 0.0);
  CHECK(same.size() == rule.size());

  // singular points outside the ball leave the rule unchanged
  const std::vector<double> fp{9.0, 9.0, 9.0}, fm{9.0, 9.0, -9.0};
  const SliceQuadrature far = pv_excise(rule, fp, fm, 0.3);
  CHECK(far.size() == rule.size());

  std::size_t prev = rule.size();
  for (double eps : {0.1, 0.2, 0.4, 0.8}) {
    const SliceQuadrature cut = pv_excise(rule, xw, xmw, eps);
    CHECK(cut.size() <= prev);
    prev = cut.size();
    for (std::size_t i = 0; i < cut.size(); ++i) {
      double d2 = 0.0;
      for (int j = 0; j < 3; ++j) {
        const double d = cut.point(i)[j] - xw[j];
        d2 += d * d;
      }
      CHECK(d2 >= eps * eps);
    }
  }
  CHECK_THROWS_AS(pv_excise(rule, xw, xmw, 100.0), std::domain_error);
}

TEST_CASE("full space volume by revolution") {
  // revolving the slice ball sweeps volume 2 pi r0 * (4/3) pi rho^3
  const SliceQuadrature vol = build_volume_rule(kDom, 4);
  const SphereQuadrature sph = build_sphere_rule(2, 4);
  double total = 0.0;
  for (std::size_t s = 0; s < sph.size(); ++s)
    for (std::size_t i = 0; i < vol.size(); ++i)
      total += 2.0 * sph.weights[s] * vol.weights[i] * vol.point(i)[2];
  const double want = 2.0 * kPi * kDom.r0 * 4.0 / 3.0 * kPi * std::pow(kDom.rho, 3);
  CHECK(total == doctest::Approx(want).epsilon(1e-2));
}

TEST_CASE("domain validation") {
  MirroredBallDomain bad{{0.0, 0.0}, 1.0, 1.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(build_boundary_rule(MirroredBallDomain{{0.0, 0.0, 0.0}, 2.0, 1.0}, 2),
                  std::invalid_argument);
}
