#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gps/stem_slice.hpp"
#include "gps/suites.hpp"

using namespace gps;

namespace {
const AlgebraSignature kSig{1, 2};

Multivector generic_c() {
  Multivector c(kSig);
  c[0] = 1.0;
  c[0b001] = 0.5;
  c[0b011] = -0.25;
  c[0b111] = 0.125;
  return c;
}

SplitPoint sample_point(Rng& rng, double rmin = 0.5, double rmax = 2.5) {
  std::vector<double> xp{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const double th = rng.uniform(0.0, 2.0 * 3.14159265358979);
  return SplitPoint::from_polar(std::move(xp), rng.uniform(rmin, rmax),
                                {std::cos(th), std::sin(th)});
}
}  // namespace

TEST_CASE("induce") {
  const Multivector c = generic_c();
  const SliceFunction cf = make_constant(kSig, c);
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    Multivector d = cf(sample_point(rng));
    d -= c;
    CHECK(d.norm() == 0.0);
  }

  // (x_0 + x_q) c by direct substitution
  const SliceFunction lin = make_linear_paravector(kSig, c);
  const SplitPoint x = SplitPoint::from_polar({0.7, -0.3}, 1.2, {0.6, 0.8});
  Multivector want = embed_point(SplitPoint::from_polar({0.7, 0.0}, 1.2, {0.6, 0.8}), kSig);
  want[0b001] = 0.0;  // paravector x_0 + x_q only
  want = want * c;
  Multivector got = lin(x);
  got -= want;
  CHECK(got.norm() < 1e-14);

  // scalar stem
  const SliceFunction sq = make_x0_squared(kSig);
  CHECK(sq(x).scalar_part() == doctest::Approx(0.49));

  // r = 0 requires a vanishing odd part
  StemFunction bad;
  bad.f1 = [](std::span<const double>, double) { return Multivector::scalar(kSig, 1.0); };
  bad.f2 = [](std::span<const double>, double) { return Multivector::scalar(kSig, 1.0); };
  CHECK_THROWS_AS(induce(bad, SplitPoint::from_polar({0.0, 0.0}, 0.0, {}), kSig),
                  std::domain_error);
}

TEST_CASE("even-odd symmetry of catalogue stems") {
  Rng rng(5);
  for (const CatalogueEntry& entry : full_catalogue(kSig)) {
    const StemFunction& st = entry.f.stem();
    for (int k = 0; k < 25; ++k) {
      std::vector<double> xp{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const double r = rng.uniform(0.2, 2.5);
      Multivector d1 = st.f1(xp, -r);
      d1 -= st.f1(xp, r);
      CHECK(d1.norm() < 1e-10);
      Multivector d2 = st.f2(xp, -r);
      d2 += st.f2(xp, r);
      CHECK(d2.norm() < 1e-10);
    }
  }
}

TEST_CASE("representation formula on induced functions") {
  Rng rng(7);
  const SliceFunction lin = make_linear_paravector(kSig, generic_c());
  for (int k = 0; k < 50; ++k) {
    const SplitPoint x = sample_point(rng);
    const double th = rng.uniform(0.0, 6.28);
    const std::vector<double> eta{std::cos(th), std::sin(th)};
    CHECK(representation_residual(lin, x, eta) < 1e-12);
  }

  // reconstruction from the point's own direction is the identity
  const SplitPoint x = sample_point(rng);
  std::vector<double> w2{-x.omega[0], -x.omega[1]};
  Multivector v = representation_eval(lin, x, x.omega, w2);
  v -= lin(x);
  CHECK(v.norm() < 1e-13);

  // constants reconstruct for arbitrary direction pairs
  const SliceFunction cf = make_constant(kSig, generic_c());
  const std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0};
  Multivector cv = representation_eval(cf, x, e1, e2);
  cv -= generic_c();
  CHECK(cv.norm() < 1e-13);

  CHECK_THROWS_AS(representation_eval(lin, x, e1, e1), std::invalid_argument);
}

TEST_CASE("vartheta annihilates induced monogenic members") {
  Rng rng(9);
  for (const CatalogueEntry& entry : gps_catalogue(kSig)) {
    for (int k = 0; k < 10; ++k) {
      SplitPoint x = sample_point(rng, 0.8, 2.5);
      if (entry.name == "kernel_section" && std::abs(x.r - 3.9) < 1.0 &&
          std::abs(x.xp[0] - 0.4) < 1.0)
        continue;
      // bypass the attached analytic derivative: finite differences
      SliceFunction plain = SliceFunction::stem_induced(kSig, entry.f.stem());
      const Multivector res = apply_vartheta(plain, x, 1e-5);
      CHECK(res.norm() < 1e-8 * std::max(1.0, entry.f(x).norm()));
    }
  }
}

TEST_CASE("vartheta of x0^2 and r^2") {
  Rng rng(11);
  const SliceFunction sq = make_x0_squared(kSig);
  const SliceFunction rsq = make_r_squared(kSig);
  for (int k = 0; k < 10; ++k) {
    const SplitPoint x = sample_point(rng);
    Multivector v = apply_vartheta(sq, x, 1e-5);
    v -= Multivector::scalar(kSig, 2.0 * x.xp[0]);
    CHECK(v.norm() < 1e-9);
    Multivector w = apply_vartheta(rsq, x, 1e-5);
    w -= embed_point(SplitPoint::from_polar({0.0, 0.0}, 2.0 * x.r, x.omega), kSig);
    CHECK(w.norm() < 1e-9);
  }
  CHECK_THROWS_AS(
      apply_vartheta(sq, SplitPoint::from_polar({0.0, 0.0}, 1e-6, {1.0, 0.0}), 1e-5),
      std::domain_error);
}

TEST_CASE("slice dirac form agrees with the global operator") {
  Rng rng(13);
  const auto entries = full_catalogue(kSig);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CatalogueEntry& entry = entries[k % entries.size()];
    SplitPoint x = sample_point(rng, 0.8, 2.5);
    if (entry.name == "kernel_section" &&
        std::hypot(x.xp[0] - 0.4, x.xp[1] + 0.3, x.r - 3.9) < 1.0)
      continue;
    SliceFunction plain = entry.f.kind() == SliceFunction::Kind::kStemInduced
                              ? SliceFunction::stem_induced(kSig, entry.f.stem())
                              : entry.f;
    Multivector a = apply_vartheta(plain, x, 1e-4);
    a -= apply_slice_dirac(plain, x, 1e-4);
    worst = std::max(worst, a.norm());
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("cauchy riemann residual pairs") {
  const std::vector<double> xp{0.4, -0.2};
  const double r = 1.3;

  // constants
  const StemFunction cst = make_constant(kSig, generic_c()).stem();
  auto [c1, c2] = cr_residual(cst, kSig, xp, r, 1e-5);
  CHECK(c1.norm() < 1e-12);
  CHECK(c2.norm() < 1e-12);

  // (x_0 c, r c)
  const StemFunction lin = make_linear_paravector(kSig, generic_c()).stem();
  auto [l1, l2] = cr_residual(lin, kSig, xp, r, 1e-5);
  CHECK(l1.norm() < 1e-9);
  CHECK(l2.norm() < 1e-9);

  // (x_0^2, 0): first component 2 x_0, second zero
  const StemFunction sq = make_x0_squared(kSig).stem();
  auto [s1, s2] = cr_residual(sq, kSig, xp, r, 1e-5);
  Multivector d = s1;
  d -= Multivector::scalar(kSig, 2.0 * xp[0]);
  CHECK(d.norm() < 1e-9);
  CHECK(s2.norm() < 1e-9);

  // kernel section: both components vanish away from the pole set
  const StemFunction ks = gps_catalogue(kSig)[2].f.stem();
  auto [k1, k2] = cr_residual(ks, kSig, xp, r, 1e-5);
  CHECK(k1.norm() < 1e-8);
  CHECK(k2.norm() < 1e-8);
}

TEST_CASE("cr residual matches vartheta for induced functions") {
  Rng rng(17);
  for (const CatalogueEntry& entry : full_catalogue(kSig)) {
    for (int k = 0; k < 5; ++k) {
      SplitPoint x = sample_point(rng, 0.8, 2.2);
      if (entry.name == "kernel_section" &&
          std::hypot(x.xp[0] - 0.4, x.xp[1] + 0.3, x.r - 3.9) < 1.0)
        continue;
      SliceFunction plain = SliceFunction::stem_induced(kSig, entry.f.stem());
      auto [r1, r2] = cr_residual(entry.f.stem(), kSig, x.xp, x.r, 1e-5);
      // vartheta = [first] + omega [second]
      Multivector recon = r1;
      mul_acc(recon, embed_direction(x.omega, kSig), r2, 1.0);
      Multivector direct = apply_vartheta(plain, x, 1e-5);
      direct -= recon;
      CHECK(direct.norm() < 1e-7 * std::max(1.0, r1.norm() + r2.norm()));
    }
  }
}

TEST_CASE("radial weight") {
  const SliceFunction cf = make_constant(kSig, generic_c());
  const SliceFunction same = radial_weight(cf, 0.0);
  const SplitPoint x = SplitPoint::from_polar({0.3, 0.1}, 2.0, {1.0, 0.0});
  Multivector d = same(x);
  d -= cf(x);
  CHECK(d.norm() == 0.0);

  // q = 2 weight |r|^{q-1} at r = 2 doubles a constant
  const SliceFunction w1 = radial_weight(cf, 1.0);
  Multivector v = w1(x);
  v.add_scaled(generic_c(), -2.0);
  CHECK(v.norm() < 1e-14);

  // composition adds exponents
  const SliceFunction w2a = radial_weight(radial_weight(cf, 0.7), 0.5);
  const SliceFunction w2b = radial_weight(cf, 1.2);
  Multivector dd = w2a(x);
  dd -= w2b(x);
  CHECK(dd.norm() < 1e-12);

  // weighted stems keep the even-odd symmetry
  const SliceFunction wl = radial_weight(make_linear_paravector(kSig, generic_c()), 1.0);
  const StemFunction& st = wl.stem();
  Rng rng(19);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> xp{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const double r = rng.uniform(0.2, 2.0);
    Multivector e1 = st.f1(xp, -r);
    e1 -= st.f1(xp, r);
    Multivector e2 = st.f2(xp, -r);
    e2 += st.f2(xp, r);
    CHECK(e1.norm() < 1e-12);
    CHECK(e2.norm() < 1e-12);
  }
}

TEST_CASE("bump cutoff vanishes at the boundary and keeps a derivative") {
  const MirroredBallDomain dom{{0.0, 0.0}, 2.0, 1.0};
  const SliceFunction g =
      make_bump_cutoff(make_linear_paravector(kSig, generic_c()), dom);
  // on the boundary sphere the cutoff kills the value
  const SplitPoint xb = SplitPoint::from_polar({0.0, 1.0}, 2.0, {0.0, 1.0});
  CHECK(g(xb).norm() < 1e-14);
  // well inside it is close to the original (profile 1 at the center)
  const SplitPoint xc = SplitPoint::from_polar({0.0, 0.0}, 2.0, {0.6, 0.8});
  CHECK(g(xc).norm() > 0.5);

  // analytic global derivative agrees with finite differences
  REQUIRE(g.analytic_vartheta() != nullptr);
  Rng rng(23);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> xp{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
    const double th = rng.uniform(0.0, 6.28);
    const SplitPoint x = SplitPoint::from_polar(std::move(xp), rng.uniform(1.5, 2.5),
                                                {std::cos(th), std::sin(th)});
    const SliceFunction plain = SliceFunction::stem_induced(kSig, g.stem());
    Multivector fd = apply_vartheta(plain, x, 1e-5);
    fd -= (*g.analytic_vartheta())(x);
    CHECK(fd.norm() < 1e-7);
  }
}
