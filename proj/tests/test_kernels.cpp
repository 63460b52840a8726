#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gps/kernels.hpp"
#include "gps/stem_slice.hpp"
#include "gps/suites.hpp"

using namespace gps;

namespace {
const AlgebraSignature kSig{1, 2};
constexpr double kPi = std::numbers::pi;

std::vector<double> unit2(double th) { return {std::cos(th), std::sin(th)}; }
}  // namespace

TEST_CASE("surface areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_area(2) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(sphere_area(3) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
}

TEST_CASE("representation coefficients") {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto eta = unit2(rng.uniform(0.0, 6.28));
    const auto omg = unit2(rng.uniform(0.0, 6.28));
    const auto [alpha, beta] = representation_coefficients(kSig, eta, omg);
    Multivector s = alpha;
    s += beta;
    s -= Multivector::scalar(kSig, 1.0);
    CHECK(s.norm() == 0.0);
    CHECK(alpha.grade(1).norm() == 0.0);
    CHECK(alpha.grade(3).norm() == 0.0);
  }
  const auto same = representation_coefficients(kSig, unit2(0.4), unit2(0.4));
  Multivector da = same.alpha;
  da -= Multivector::scalar(kSig, 1.0);
  CHECK(da.norm() < 1e-15);
  CHECK(same.beta.norm() < 1e-15);
}

TEST_CASE("plain kernel values") {
  const auto om = unit2(0.0);
  Multivector e0 = cauchy_kernel_E(kSig, std::vector<double>{1.0, 0.0, 0.0}, om);
  CHECK(e0.scalar_part() == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-14));
  CHECK(e0.grade(1).norm() < 1e-16);

  Multivector eo = cauchy_kernel_E(kSig, std::vector<double>{0.0, 0.0, 1.0}, om);
  // conjugation negates the omega component
  CHECK(eo[0b010] == doctest::Approx(-1.0 / (4.0 * kPi)).epsilon(1e-14));

  CHECK_THROWS_AS(cauchy_kernel_E(kSig, std::vector<double>{0.0, 0.0, 0.0}, om),
                  std::domain_error);

  // ambient wrapper keeps slice membership honest
  const SplitPoint y = SplitPoint::from_polar({1.0, 0.5}, 1.5, om);
  const SplitPoint x = SplitPoint::from_polar({0.0, 0.5}, 0.5, om);
  const Multivector ew = cauchy_kernel_E(kSig, y, x, om);
  std::vector<double> d{1.0, 0.0, 1.0};
  Multivector direct = cauchy_kernel_E(kSig, d, om);
  direct -= ew;
  CHECK(direct.norm() < 1e-14);

  const SplitPoint off = SplitPoint::from_polar({0.0, 0.0}, 1.0, unit2(1.0));
  CHECK_THROWS_AS(cauchy_kernel_E(kSig, off, x, om), std::invalid_argument);
}

TEST_CASE("slice kernel collapses on the common slice") {
  Rng rng(5);
  for (int k = 0; k < 25; ++k) {
    const auto om = unit2(rng.uniform(0.0, 6.28));
    const SplitPoint y = SplitPoint::from_polar(
        {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(1.0, 3.0), om);
    const SplitPoint x = SplitPoint::from_polar(
        {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(0.2, 0.9), om);
    Multivector diff = gps_cauchy_kernel(kSig, y, x);
    diff -= cauchy_kernel_E(kSig, y, x, om);
    CHECK(diff.norm() < 1e-13);
  }
}

TEST_CASE("slice kernel equals the catalogue section") {
  Rng rng(7);
  const SplitPoint y_star = SplitPoint::from_polar({0.4, -0.3}, 3.9, unit2(0.93));
  const SliceFunction section = make_kernel_section(kSig, y_star);
  for (int k = 0; k < 30; ++k) {
    const SplitPoint x = SplitPoint::from_polar(
        {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(0.5, 2.5),
        unit2(rng.uniform(0.0, 6.28)));
    Multivector diff = section(x);
    diff -= gps_cauchy_kernel(kSig, y_star, x);
    CHECK(diff.norm() < 1e-13 * std::max(1.0, section(x).norm()));
  }
}

TEST_CASE("weighted kernel") {
  const SplitPoint x = SplitPoint::from_polar({0.1, 0.2}, 1.4, unit2(0.3));
  for (double rq : {1.0, 2.0}) {
    const SplitPoint y = SplitPoint::from_polar({0.8, -0.4}, rq, unit2(2.0));
    Multivector k = weighted_kernel_K(kSig, y, x);
    k *= 2.0 * kPi * rq;  // sigma_1 |y_q|^{q-1}
    k -= gps_cauchy_kernel(kSig, y, x);
    CHECK(k.norm() < 1e-14);
  }
  CHECK_THROWS_AS(
      weighted_kernel_K(kSig, SplitPoint::from_polar({0.0, 0.0}, 0.0, {}), x),
      std::domain_error);
}

TEST_CASE("kernel is annihilated by the global operator") {
  Rng rng(11);
  const SplitPoint y = SplitPoint::from_polar({0.3, -0.2}, 3.4, unit2(1.24));
  const SliceFunction plain = SliceFunction::raw(kSig, [&](const SplitPoint& z) {
    return gps_cauchy_kernel(kSig, y, z);
  });
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const SplitPoint x = SplitPoint::from_polar(
        {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, rng.uniform(0.7, 2.4),
        unit2(rng.uniform(0.0, 6.28)));
    const Multivector res = apply_vartheta(plain, x, 1e-4);
    worst = std::max(worst, res.norm() / std::max(plain(x).norm(), 1e-30));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("singularity order along the slice") {
  const SplitPoint y = SplitPoint::from_polar({0.4, -0.3}, 3.9, unit2(0.93));
  std::vector<double> logs;
  for (int k = 1; k <= 7; ++k) {
    const SplitPoint x = SplitPoint::from_polar(y.xp, y.r + std::pow(2.0, -k), y.omega);
    logs.push_back(std::log2(gps_cauchy_kernel(kSig, y, x).norm()));
  }
  const double slope = (logs.back() - logs.front()) / (logs.size() - 1);
  CHECK(slope == doctest::Approx(2.0).epsilon(0.03));  // p + 1
}

TEST_CASE("singular configurations are rejected") {
  const SplitPoint y = SplitPoint::from_polar({0.0, 0.0}, 1.0, unit2(0.2));
  CHECK_THROWS_AS(gps_cauchy_kernel(kSig, y, SplitPoint::from_polar({0.5, 0.5}, 0.0, {})),
                  std::domain_error);
  // y on the reflection circle of x
  const SplitPoint x = SplitPoint::from_polar({0.0, 0.0}, 1.0, unit2(1.9));
  CHECK_THROWS_AS(gps_cauchy_kernel(kSig, y, x), std::domain_error);
}
