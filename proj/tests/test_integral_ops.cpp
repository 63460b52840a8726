#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gps/integral_ops.hpp"
#include "gps/suites.hpp"

using namespace gps;

namespace {
const AlgebraSignature kSig{1, 2};
const MirroredBallDomain kDom{{0.0, 0.0}, 2.0, 1.0};

Multivector generic_c() {
  Multivector c(kSig);
  c[0] = 1.0;
  c[0b001] = 0.5;
  c[0b011] = -0.25;
  c[0b111] = 0.125;
  return c;
}

std::vector<double> unit2(double th) { return {std::cos(th), std::sin(th)}; }

const SplitPoint kX = SplitPoint::from_polar({0.1, 0.2}, 1.75, unit2(0.55));
}  // namespace

TEST_CASE("boundary operator reproduces monogenic data") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  const SliceFunction cf = make_constant(kSig, generic_c());
  const SliceFunction lin = make_linear_paravector(kSig, generic_c());

  Multivector vc = cauchy_boundary_F(cf, ctx, kX);
  vc -= generic_c();
  CHECK(vc.norm() < 1e-6);

  Multivector vl = cauchy_boundary_F(lin, ctx, kX);
  const Multivector want = lin(kX);
  vl -= want;
  CHECK(vl.norm() < 1e-5 * want.norm());

  // exterior evaluation of interior-monogenic data vanishes
  const SplitPoint xe = SplitPoint::from_polar({0.2, 0.4}, 3.6, unit2(1.2));
  CHECK(cauchy_boundary_F(lin, ctx, xe).norm() < 1e-5);

  // boundary points are rejected
  const SplitPoint xb = SplitPoint::from_polar({0.0, 1.0}, 2.0, unit2(0.9));
  CHECK_THROWS_AS(cauchy_boundary_F(lin, ctx, xb), std::invalid_argument);
}

TEST_CASE("slice transform basics") {
  const OperatorContext ctx = make_context(kSig, kDom, 2);
  const auto om = unit2(1.1);

  const SliceFunction zero = make_constant(kSig, Multivector(kSig));
  CHECK(teodorescu_slice(zero, ctx, om, kX).norm() == 0.0);

  // linearity over real combinations
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  const SliceFunction g = make_constant(kSig, generic_c());
  StemFunction comb;
  const StemFunction fs = f.stem(), gs = g.stem();
  comb.f1 = [fs, gs](std::span<const double> xp, double r) {
    Multivector out = fs.f1(xp, r);
    out *= 2.0;
    out.add_scaled(gs.f1(xp, r), -3.0);
    return out;
  };
  comb.f2 = [fs, gs](std::span<const double> xp, double r) {
    Multivector out = fs.f2(xp, r);
    out *= 2.0;
    out.add_scaled(gs.f2(xp, r), -3.0);
    return out;
  };
  Multivector lhs = teodorescu_slice(SliceFunction::stem_induced(kSig, comb), ctx, om, kX);
  lhs.add_scaled(teodorescu_slice(f, ctx, om, kX), -2.0);
  lhs.add_scaled(teodorescu_slice(g, ctx, om, kX), 3.0);
  CHECK(lhs.norm() < 1e-12);

  // interior precondition
  CHECK_THROWS_AS(
      teodorescu_slice(f, ctx, om, SplitPoint::from_polar({0.0, 0.0}, 3.8, unit2(0.3))),
      std::domain_error);
}

TEST_CASE("aggregation paths agree on identical nodes") {
  OperatorContext ctx = make_context(kSig, kDom, 2);
  ctx.pv_mode = PvMode::kNodeDrop;
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  Multivector a = teodorescu_full(f, ctx, kX);
  const Multivector b = teodorescu_full_direct(f, ctx, kX);
  a -= b;
  CHECK(a.norm() < 1e-10);
}

TEST_CASE("pv realizations approach each other with refinement") {
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  double prev = 1e300;
  for (int level : {1, 2, 3}) {
    OperatorContext ctx = make_context(kSig, kDom, level);
    Multivector a = teodorescu_full(f, ctx, kX);
    ctx.pv_mode = PvMode::kNodeDrop;
    a -= teodorescu_full(f, ctx, kX);
    CHECK(a.norm() < prev * 1.2);
    prev = a.norm();
  }
  CHECK(prev < 5e-2);
}

TEST_CASE("left inverse identities") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  const auto om = unit2(1.1);
  const Multivector fx = f(kX);

  Multivector vs = teodorescu_vartheta_slice(f, ctx, om, kX);
  vs.add_scaled(fx, -2.0);
  CHECK(vs.norm() < 4e-2 * fx.norm());

  Multivector vf = teodorescu_vartheta_full(f, ctx, kX);
  vf -= fx;
  CHECK(vf.norm() < 4e-2 * fx.norm());
}

TEST_CASE("derivative closed forms match finite differences") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  const auto om = unit2(1.1);
  const double h = 1e-4;

  for (int i : {0, 1}) {
    const Multivector closed = teodorescu_derivative_p(f, ctx, om, kX, i);
    SplitPoint a = kX, b = kX;
    a.xp[i] += h;
    b.xp[i] -= h;
    Multivector fd = teodorescu_slice(f, ctx, om, a);
    fd -= teodorescu_slice(f, ctx, om, b);
    fd *= 0.5 / h;
    fd -= closed;
    CHECK(fd.norm() < 5e-2);
  }
  for (int i : {2, 3}) {
    const Multivector closed = teodorescu_derivative_q(f, ctx, om, kX, i);
    std::vector<double> amb = kX.ambient(), amb2 = kX.ambient();
    amb[i] += h;
    amb2[i] -= h;
    Multivector fd = teodorescu_slice(f, ctx, om, SplitPoint::from_ambient(amb, kSig));
    fd -= teodorescu_slice(f, ctx, om, SplitPoint::from_ambient(amb2, kSig));
    fd *= 0.5 / h;
    fd -= closed;
    CHECK(fd.norm() < 5e-2);
  }
  CHECK_THROWS_AS(teodorescu_derivative_p(f, ctx, om, kX, 2), std::invalid_argument);
  CHECK_THROWS_AS(teodorescu_derivative_q(f, ctx, om, kX, 0), std::invalid_argument);
}

TEST_CASE("cauchy pompeiu residual") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  CHECK(cauchy_pompeiu_residual(make_x0_squared(kSig), ctx, kX) < 2e-2);
  CHECK(cauchy_pompeiu_residual(make_constant(kSig, generic_c()), ctx, kX) < 1e-4);
}

TEST_CASE("plemelj operator") {
  const OperatorContext ctx = make_context(kSig, kDom, 2);
  const SplitPoint xb = SplitPoint::from_polar(
      {std::sin(0.9), 0.0}, 2.0 + std::cos(0.9), unit2(0.3));

  const SliceFunction one = make_constant(kSig, Multivector::scalar(kSig, 1.0));
  Multivector s1 = plemelj_S(one, ctx, xb);
  s1 -= Multivector::scalar(kSig, 1.0);
  CHECK(s1.norm() < 1e-12);

  CHECK(plemelj_S(make_constant(kSig, Multivector(kSig)), ctx, xb).norm() < 1e-15);

  const SliceFunction lin = make_linear_paravector(kSig, generic_c());
  const Multivector ux = lin(xb);
  Multivector su = plemelj_S(lin, ctx, xb);
  su -= ux;
  CHECK(su.norm() < 5e-2 * ux.norm());

  // P + Q = I exactly, P fixes interior-monogenic traces
  Multivector pq = plemelj_P(lin, ctx, xb);
  pq += plemelj_Q(lin, ctx, xb);
  pq -= ux;
  CHECK(pq.norm() == 0.0);
  Multivector pu = plemelj_P(lin, ctx, xb);
  pu -= ux;
  CHECK(pu.norm() < 5e-2 * ux.norm());

  // interior points are rejected
  CHECK_THROWS_AS(plemelj_S(lin, ctx, kX), std::invalid_argument);
}

TEST_CASE("plemelj jump relations") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  const SliceFunction lin = make_linear_paravector(kSig, generic_c());
  const SplitPoint xb = SplitPoint::from_polar(
      {std::sin(0.9), 0.0}, 2.0 + std::cos(0.9), unit2(0.3));
  const double scale = lin(xb).norm();

  auto [ilim, ival] = plemelj_jump(lin, ctx, xb, 5, JumpSide::kInterior);
  ilim -= ival;
  CHECK(ilim.norm() < 5e-2 * scale);

  auto [elim, eval] = plemelj_jump(lin, ctx, xb, 5, JumpSide::kExterior);
  elim -= eval;
  CHECK(elim.norm() < 5e-2 * scale);

  // zero data
  auto [zl, zv] = plemelj_jump(make_constant(kSig, Multivector(kSig)), ctx, xb, 4,
                               JumpSide::kInterior);
  CHECK(zl.norm() < 1e-15);
  CHECK(zv.norm() < 1e-15);
}

TEST_CASE("inner product and norms") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  const SliceFunction g = make_x0_squared(kSig);

  const Multivector ff = inner_product(f, f, ctx);
  CHECK(ff.scalar_part() > 0.0);
  const double l2 = lt_norm(f, ctx, 2.0);
  CHECK(std::sqrt(ff.scalar_part()) == doctest::Approx(l2).epsilon(1e-10));

  // conjugate symmetry
  Multivector fg = inner_product(f, g, ctx);
  fg -= inner_product(g, f, ctx).conjugate();
  CHECK(fg.norm() < 1e-10);

  CHECK(inner_product(make_constant(kSig, Multivector(kSig)), f, ctx).norm() == 0.0);

  // constants recover the swept volume
  const double vol = 2.0 * std::numbers::pi * kDom.r0 * 4.0 / 3.0 * std::numbers::pi;
  const SliceFunction one = make_constant(kSig, Multivector::scalar(kSig, 1.0));
  for (double t : {2.0, 3.0}) {
    CHECK(lt_norm(one, ctx, t) == doctest::Approx(std::pow(vol, 1.0 / t)).epsilon(1e-6));
  }
  // homogeneity
  const SliceFunction f3 = make_linear_paravector(kSig, generic_c() * 3.0);
  CHECK(lt_norm(f3, ctx, 2.5) == doctest::Approx(3.0 * lt_norm(f, ctx, 2.5)).epsilon(1e-12));
  CHECK_THROWS_AS(lt_norm(f, ctx, 1.0), std::invalid_argument);
}

TEST_CASE("hodge orthogonality") {
  const OperatorContext ctx = make_context(kSig, kDom, 3);
  const SliceFunction g =
      make_bump_cutoff(make_linear_paravector(kSig, generic_c()), kDom);
  const SplitPoint xe = SplitPoint::from_polar({0.5, 0.5}, 3.2, unit2(0.8));
  const double ext = hodge_orthogonality_residual(xe, g, ctx);
  CHECK(ext < 1e-4);

  const SplitPoint xi = SplitPoint::from_polar({0.0, 0.0}, 2.0, unit2(0.8));
  const double inner = hodge_orthogonality_residual(xi, g, ctx);
  CHECK(inner > 10.0 * ext);

  const SliceFunction const_g = make_constant(kSig, generic_c());
  CHECK_THROWS_AS(hodge_orthogonality_residual(xe, const_g, ctx), std::domain_error);
}

TEST_CASE("hemisphere choice does not matter") {
  // rotate the half circle by pi/4: same transform values
  OperatorContext ctx = make_context(kSig, kDom, 3);
  OperatorContext rot = ctx;
  for (std::size_t i = 0; i < rot.sphere.size(); ++i) {
    const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
    const double o0 = rot.sphere.omegas[2 * i], o1 = rot.sphere.omegas[2 * i + 1];
    rot.sphere.omegas[2 * i] = c * o0 - s * o1;
    rot.sphere.omegas[2 * i + 1] = s * o0 + c * o1;
  }
  const SliceFunction f = make_linear_paravector(kSig, generic_c());
  Multivector a = teodorescu_full(f, ctx, kX);
  a -= teodorescu_full(f, rot, kX);
  CHECK(a.norm() < 1e-8);
}

TEST_CASE("vartheta of computed fields helper") {
  // the helper reproduces the analytic derivative of a catalogue member
  const SliceFunction f = make_x0_squared(kSig);
  const Multivector v = vartheta_fd_field([&](const SplitPoint& y) { return f(y); }, kSig,
                                          kX, 1e-5);
  CHECK(v.scalar_part() == doctest::Approx(2.0 * kX.xp[0]).epsilon(1e-7));
}
