#include "gps/stem_slice.hpp"

#include <cmath>
#include <stdexcept>

#include "gps/kernels.hpp"

namespace gps {

SliceFunction SliceFunction::stem_induced(AlgebraSignature sig, StemFunction stem) {
  SliceFunction f;
  f.kind_ = Kind::kStemInduced;
  f.sig_ = sig;
  f.stem_ = std::move(stem);
  return f;
}

SliceFunction SliceFunction::raw(AlgebraSignature sig,
                                 std::function<Multivector(const SplitPoint&)> fn) {
  SliceFunction f;
  f.kind_ = Kind::kRaw;
  f.sig_ = sig;
  f.raw_ = std::move(fn);
  return f;
}

const StemFunction& SliceFunction::stem() const {
  if (kind_ != Kind::kStemInduced)
    throw std::logic_error("SliceFunction: raw function has no stem");
  return stem_;
}

Multivector SliceFunction::operator()(const SplitPoint& x) const {
  if (kind_ == Kind::kStemInduced) return induce(stem_, x, sig_);
  return raw_(x);
}

Multivector SliceFunction::eval_slice(std::span<const double> xp, double s,
                                      std::span<const double> omega) const {
  if (kind_ == Kind::kStemInduced) {
    // F1(xp, s) + omega F2(xp, s); the even-odd symmetry makes the signed-s
    // form agree with evaluation at direction -omega, radius |s|.
    Multivector out = stem_.f1(xp, s);
    mul_acc(out, embed_direction(omega, sig_), stem_.f2(xp, s), 1.0);
    return out;
  }
  std::vector<double> om(omega.begin(), omega.end());
  double r = s;
  if (r < 0.0) {
    r = -r;
    for (double& v : om) v = -v;
  }
  return raw_(SplitPoint::from_polar(std::vector<double>(xp.begin(), xp.end()), r, std::move(om)));
}

void SliceFunction::set_vartheta(SliceFunction v) {
  vartheta_ = std::make_shared<const SliceFunction>(std::move(v));
}

Multivector induce(const StemFunction& stem, const SplitPoint& x, const AlgebraSignature& sig) {
  if (!stem.in_domain(x.xp, x.r)) throw std::domain_error("induce: point outside stem domain");
  if (x.r == 0.0) {
    const Multivector f2 = stem.f2(x.xp, 0.0);
    if (f2.norm() > 1e-12)
      throw std::domain_error("induce: F2(x_p, 0) != 0, value ill-defined at r = 0");
    return stem.f1(x.xp, 0.0);
  }
  Multivector out = stem.f1(x.xp, x.r);
  mul_acc(out, embed_direction(x.omega, sig), stem.f2(x.xp, x.r), 1.0);
  return out;
}

Multivector representation_eval(const SliceFunction& f, const SplitPoint& x,
                                std::span<const double> omega1,
                                std::span<const double> omega2) {
  const AlgebraSignature sig = f.signature();
  if (x.r <= 0.0) throw std::domain_error("representation_eval: x has r = 0");
  Multivector d = embed_direction(omega1, sig);
  d -= embed_direction(omega2, sig);
  if (d.norm() < 1e-14) throw std::invalid_argument("representation_eval: omega1 == omega2");
  const Multivector dinv = paravector_inverse(d);
  const Multivector om = embed_direction(x.omega, sig);

  Multivector c1 = om - embed_direction(omega2, sig);
  c1 = c1 * dinv;
  Multivector c2 = om - embed_direction(omega1, sig);
  c2 = c2 * dinv;

  Multivector out(sig);
  mul_acc(out, c1, f.eval_slice(x.xp, x.r, omega1), 1.0);
  mul_acc(out, c2, f.eval_slice(x.xp, x.r, omega2), -1.0);
  return out;
}

double representation_residual(const SliceFunction& f, const SplitPoint& x,
                               std::span<const double> eta) {
  const AlgebraSignature sig = f.signature();
  const Multivector om_eta = embed_direction(x.omega, sig) * embed_direction(eta, sig);
  Multivector alpha = Multivector::scalar(sig, 0.5);
  alpha.add_scaled(om_eta, -0.5);
  Multivector beta = Multivector::scalar(sig, 0.5);
  beta.add_scaled(om_eta, 0.5);

  Multivector res = f(x);
  mul_acc(res, alpha, f.eval_slice(x.xp, x.r, eta), -1.0);
  mul_acc(res, beta, f.eval_slice(x.xp, -x.r, eta), -1.0);
  return res.norm();
}

namespace {

Multivector stem_partial(const StemComponent& analytic, const StemComponent& base,
                         std::span<const double> xp, double r, int coord, double h) {
  // coord in [0, p] differentiates x_p, coord == -1 differentiates r
  if (analytic) return analytic(xp, r);
  std::vector<double> xpl(xp.begin(), xp.end()), xph(xp.begin(), xp.end());
  if (coord >= 0) {
    xph[coord] += h;
    xpl[coord] -= h;
    Multivector out = base(xph, r);
    out -= base(xpl, r);
    return out *= 0.5 / h;
  }
  Multivector out = base(xp, r + h);
  out -= base(xp, r - h);
  return out *= 0.5 / h;
}

// D_{x_p} applied to a stem component: sum_i e_i d_i (e_0 = 1).
Multivector stem_dirac_p(const StemFunction& stem, bool second, const AlgebraSignature& sig,
                         std::span<const double> xp, double r, double h, bool conjugated) {
  const StemComponent& base = second ? stem.f2 : stem.f1;
  const auto& dxp = second ? stem.df2_dxp : stem.df1_dxp;
  Multivector out(sig);
  for (int i = 0; i <= sig.p; ++i) {
    const StemComponent analytic = (static_cast<int>(dxp.size()) > i) ? dxp[i] : StemComponent{};
    Multivector di = stem_partial(analytic, base, xp, r, i, h);
    if (i == 0) {
      out += di;
    } else {
      const double s = conjugated ? -1.0 : 1.0;
      mul_acc(out, Multivector::basis_vector(sig, i), di, s);
    }
  }
  return out;
}

}  // namespace

Multivector apply_vartheta(const SliceFunction& f, const SplitPoint& x, double h) {
  if (x.r <= 2.0 * h)
    throw std::domain_error("apply_vartheta: point too close to the singular set r = 0");
  const AlgebraSignature sig = f.signature();

  if (const SliceFunction* v = f.analytic_vartheta()) return (*v)(x);

  if (f.kind() == SliceFunction::Kind::kStemInduced && f.stem().has_analytic_derivatives()) {
    // [D_p F1 - d_r F2] + eta [conj(D_p) F2 + d_r F1]
    const StemFunction& st = f.stem();
    Multivector out = stem_dirac_p(st, false, sig, x.xp, x.r, h, false);
    out -= stem_partial(st.df2_dr, st.f2, x.xp, x.r, -1, h);
    Multivector second = stem_dirac_p(st, true, sig, x.xp, x.r, h, true);
    second += stem_partial(st.df1_dr, st.f1, x.xp, x.r, -1, h);
    mul_acc(out, embed_direction(x.omega, sig), second, 1.0);
    return out;
  }

  // ambient central differences
  auto eval_ambient = [&](std::vector<double> amb) {
    return f(SplitPoint::from_ambient(amb, sig));
  };
  const std::vector<double> amb = x.ambient();
  Multivector out(sig);
  for (int i = 0; i <= sig.p; ++i) {
    std::vector<double> hi = amb, lo = amb;
    hi[i] += h;
    lo[i] -= h;
    Multivector di = eval_ambient(hi);
    di -= eval_ambient(lo);
    di *= 0.5 / h;
    if (i == 0)
      out += di;
    else
      mul_acc(out, Multivector::basis_vector(sig, i), di, 1.0);
  }
  Multivector euler(sig);
  for (int j = 0; j < sig.q; ++j) {
    std::vector<double> hi = amb, lo = amb;
    hi[sig.p + 1 + j] += h;
    lo[sig.p + 1 + j] -= h;
    Multivector dj = eval_ambient(hi);
    dj -= eval_ambient(lo);
    euler.add_scaled(dj, x.xq[j] * 0.5 / h);
  }
  Multivector xq_mv(sig);
  for (int j = 0; j < sig.q; ++j) xq_mv[1u << (sig.p + j)] = x.xq[j] / (x.r * x.r);
  mul_acc(out, xq_mv, euler, 1.0);
  return out;
}

Multivector apply_slice_dirac(const SliceFunction& f, const SplitPoint& x, double h) {
  if (x.r <= 2.0 * h)
    throw std::domain_error("apply_slice_dirac: point too close to the singular set r = 0");
  const AlgebraSignature sig = f.signature();
  Multivector out(sig);
  for (int i = 0; i <= sig.p; ++i) {
    std::vector<double> hi(x.xp), lo(x.xp);
    hi[i] += h;
    lo[i] -= h;
    Multivector di = f.eval_slice(hi, x.r, x.omega);
    di -= f.eval_slice(lo, x.r, x.omega);
    di *= 0.5 / h;
    if (i == 0)
      out += di;
    else
      mul_acc(out, Multivector::basis_vector(sig, i), di, 1.0);
  }
  Multivector dr = f.eval_slice(x.xp, x.r + h, x.omega);
  dr -= f.eval_slice(x.xp, x.r - h, x.omega);
  dr *= 0.5 / h;
  mul_acc(out, embed_direction(x.omega, sig), dr, 1.0);
  return out;
}

std::pair<Multivector, Multivector> cr_residual(const StemFunction& stem,
                                                const AlgebraSignature& sig,
                                                std::span<const double> xp, double r,
                                                double h) {
  Multivector first = stem_dirac_p(stem, false, sig, xp, r, h, false);
  first -= stem_partial(stem.df2_dr, stem.f2, xp, r, -1, h);
  Multivector second = stem_dirac_p(stem, true, sig, xp, r, h, true);
  second += stem_partial(stem.df1_dr, stem.f1, xp, r, -1, h);
  return {std::move(first), std::move(second)};
}

SliceFunction radial_weight(const SliceFunction& f, double s) {
  if (f.kind() != SliceFunction::Kind::kStemInduced)
    throw std::invalid_argument("radial_weight: requires a stem-induced function");
  const StemFunction& st = f.stem();
  auto weight = [s](const StemComponent& g) -> StemComponent {
    return [s, g](std::span<const double> xp, double r) {
      Multivector out = g(xp, r);
      return out *= std::pow(std::abs(r), s);
    };
  };
  StemFunction out;
  out.f1 = weight(st.f1);
  out.f2 = weight(st.f2);
  out.domain_hint = st.domain_hint;
  return SliceFunction::stem_induced(f.signature(), std::move(out));
}

// --- catalogue ---------------------------------------------------------------

namespace {

StemComponent const_component(Multivector v) {
  return [v](std::span<const double>, double) { return v; };
}

SliceFunction zero_function(AlgebraSignature sig) {
  StemFunction st;
  st.f1 = const_component(Multivector(sig));
  st.f2 = const_component(Multivector(sig));
  st.df1_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df2_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dr = const_component(Multivector(sig));
  st.df2_dr = const_component(Multivector(sig));
  return SliceFunction::stem_induced(sig, std::move(st));
}

}  // namespace

SliceFunction make_constant(AlgebraSignature sig, Multivector c) {
  StemFunction st;
  st.f1 = const_component(std::move(c));
  st.f2 = const_component(Multivector(sig));
  st.df1_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df2_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dr = const_component(Multivector(sig));
  st.df2_dr = const_component(Multivector(sig));
  SliceFunction f = SliceFunction::stem_induced(sig, std::move(st));
  f.set_vartheta(zero_function(sig));
  return f;
}

SliceFunction make_linear_paravector(AlgebraSignature sig, Multivector c) {
  StemFunction st;
  st.f1 = [c](std::span<const double> xp, double) {
    Multivector out = c;
    return out *= xp[0];
  };
  st.f2 = [c](std::span<const double>, double r) {
    Multivector out = c;
    return out *= r;
  };
  st.df1_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dxp[0] = const_component(c);
  st.df2_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dr = const_component(Multivector(sig));
  st.df2_dr = const_component(c);
  SliceFunction f = SliceFunction::stem_induced(sig, std::move(st));
  f.set_vartheta(zero_function(sig));
  return f;
}

SliceFunction make_x0_squared(AlgebraSignature sig) {
  StemFunction st;
  st.f1 = [sig](std::span<const double> xp, double) {
    return Multivector::scalar(sig, xp[0] * xp[0]);
  };
  st.f2 = const_component(Multivector(sig));
  st.df1_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dxp[0] = [sig](std::span<const double> xp, double) {
    return Multivector::scalar(sig, 2.0 * xp[0]);
  };
  st.df2_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dr = const_component(Multivector(sig));
  st.df2_dr = const_component(Multivector(sig));
  SliceFunction f = SliceFunction::stem_induced(sig, std::move(st));

  StemFunction vt;  // global derivative is 2 x_0
  vt.f1 = [sig](std::span<const double> xp, double) {
    return Multivector::scalar(sig, 2.0 * xp[0]);
  };
  vt.f2 = const_component(Multivector(sig));
  f.set_vartheta(SliceFunction::stem_induced(sig, std::move(vt)));
  return f;
}

SliceFunction make_r_squared(AlgebraSignature sig) {
  StemFunction st;
  st.f1 = [sig](std::span<const double>, double r) { return Multivector::scalar(sig, r * r); };
  st.f2 = const_component(Multivector(sig));
  st.df1_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df2_dxp.assign(sig.p + 1, const_component(Multivector(sig)));
  st.df1_dr = [sig](std::span<const double>, double r) {
    return Multivector::scalar(sig, 2.0 * r);
  };
  st.df2_dr = const_component(Multivector(sig));
  SliceFunction f = SliceFunction::stem_induced(sig, std::move(st));

  StemFunction vt;  // global derivative is 2 x_q = omega * 2r
  vt.f1 = const_component(Multivector(sig));
  vt.f2 = [sig](std::span<const double>, double r) { return Multivector::scalar(sig, 2.0 * r); };
  f.set_vartheta(SliceFunction::stem_induced(sig, std::move(vt)));
  return f;
}

SliceFunction make_kernel_section(AlgebraSignature sig, SplitPoint y_star) {
  if (y_star.r <= 0.0)
    throw std::invalid_argument("make_kernel_section: y_star must have r > 0");
  // slice restriction g(x_p, s) = E(y_star - (x_p + s omega*)) extended by
  // the two-point reconstruction across +-omega*
  auto g = [sig, y_star](std::span<const double> xp, double s) {
    std::vector<double> d(sig.p + 2);
    for (int i = 0; i <= sig.p; ++i) d[i] = y_star.xp[i] - xp[i];
    d[sig.p + 1] = y_star.r - s;
    return cauchy_kernel_E(sig, d, y_star.omega);
  };
  const Multivector om_star = embed_direction(y_star.omega, sig);
  StemFunction st;
  st.f1 = [g](std::span<const double> xp, double r) {
    Multivector out = g(xp, r);
    out += g(xp, -r);
    return out *= 0.5;
  };
  st.f2 = [g, om_star](std::span<const double> xp, double r) {
    Multivector diff = g(xp, r);
    diff -= g(xp, -r);
    Multivector out(diff.signature());
    mul_acc(out, om_star, diff, -0.5);
    return out;
  };
  SliceFunction f = SliceFunction::stem_induced(sig, std::move(st));
  f.set_vartheta(zero_function(sig));
  return f;
}

namespace {

double bump_profile(double t) { return t < 1.0 ? std::exp(-t / (1.0 - t)) : 0.0; }
double bump_profile_deriv(double t) {
  if (t >= 1.0) return 0.0;
  const double d = 1.0 - t;
  return -bump_profile(t) / (d * d);
}

}  // namespace

SliceFunction make_bump_cutoff(const SliceFunction& f, const MirroredBallDomain& domain) {
  if (f.kind() != SliceFunction::Kind::kStemInduced)
    throw std::invalid_argument("make_bump_cutoff: requires a stem-induced function");
  const AlgebraSignature sig = f.signature();
  const std::vector<double> cp = domain.center_p;
  const double r0 = domain.r0, rho = domain.rho;

  auto d2pair = [cp, r0, rho](std::span<const double> xp, double r) {
    double base = 0.0;
    for (std::size_t i = 0; i < cp.size(); ++i) {
      const double d = xp[i] - cp[i];
      base += d * d;
    }
    const double dp = (base + (r - r0) * (r - r0)) / (rho * rho);
    const double dm = (base + (r + r0) * (r + r0)) / (rho * rho);
    return std::pair{dp, dm};
  };
  auto chi = [d2pair](std::span<const double> xp, double r) {
    const auto [dp, dm] = d2pair(xp, r);
    return bump_profile(dp) + bump_profile(dm);
  };
  // partials of chi: d(chi)/du = psi'(dp) d(dp)/du + psi'(dm) d(dm)/du
  auto chi_dxp = [d2pair, cp, rho](std::span<const double> xp, double r, int i) {
    const auto [dp, dm] = d2pair(xp, r);
    const double base = 2.0 * (xp[i] - cp[i]) / (rho * rho);
    return (bump_profile_deriv(dp) + bump_profile_deriv(dm)) * base;
  };
  auto chi_dr = [d2pair, r0, rho](std::span<const double> xp, double r) {
    const auto [dp, dm] = d2pair(xp, r);
    return bump_profile_deriv(dp) * 2.0 * (r - r0) / (rho * rho) +
           bump_profile_deriv(dm) * 2.0 * (r + r0) / (rho * rho);
  };

  const StemFunction inner = f.stem();
  StemFunction st;
  st.f1 = [chi, inner](std::span<const double> xp, double r) {
    Multivector out = inner.f1(xp, r);
    return out *= chi(xp, r);
  };
  st.f2 = [chi, inner](std::span<const double> xp, double r) {
    Multivector out = inner.f2(xp, r);
    return out *= chi(xp, r);
  };
  SliceFunction g = SliceFunction::stem_induced(sig, std::move(st));

  // global derivative: (D_p chi + eta d_r chi) f + chi * (global derivative of f)
  const SliceFunction inner_f = f;
  auto vt = [sig, chi, chi_dxp, chi_dr, inner_f](const SplitPoint& x) {
    Multivector grad(sig);
    grad[0] = chi_dxp(x.xp, x.r, 0);
    for (int i = 1; i <= sig.p; ++i) grad[1u << (i - 1)] = chi_dxp(x.xp, x.r, i);
    const double dr = chi_dr(x.xp, x.r);
    for (int j = 0; j < sig.q; ++j) grad[1u << (sig.p + j)] = dr * x.omega[j];
    Multivector out(sig);
    mul_acc(out, grad, inner_f(x), 1.0);
    if (const SliceFunction* v = inner_f.analytic_vartheta()) {
      out.add_scaled((*v)(x), chi(x.xp, x.r));
    } else {
      out.add_scaled(apply_vartheta(inner_f, x, 1e-5), chi(x.xp, x.r));
    }
    return out;
  };
  g.set_vartheta(SliceFunction::raw(sig, vt));
  return g;
}

std::vector<CatalogueEntry> gps_catalogue(AlgebraSignature sig) {
  Multivector c(sig);
  c[0] = 1.0;
  c[1u << 0] = 0.5;                          // e_1
  c[(1u << 0) | (1u << sig.p)] = -0.25;      // e_1 e_{p+1}
  c[(1u << sig.p) | (1u << (sig.p + 1))] = 0.125;  // e_{p+1} e_{p+2}

  // pole data placed outside the featured mirrored-ball domain
  std::vector<double> xp(sig.p + 1, 0.0);
  xp[0] = 0.4;
  if (sig.p >= 1) xp[1] = -0.3;
  std::vector<double> om(sig.q, 0.0);
  om[0] = 0.6;
  om[1] = 0.8;
  double nm = 0.0;
  for (double v : om) nm += v * v;
  nm = std::sqrt(nm);
  for (double& v : om) v /= nm;
  SplitPoint y_star = SplitPoint::from_polar(xp, 3.9, om);

  std::vector<CatalogueEntry> out;
  out.push_back({"constant", make_constant(sig, c), true});
  out.push_back({"linear_paravector", make_linear_paravector(sig, c), true});
  out.push_back({"kernel_section", make_kernel_section(sig, y_star), true});
  return out;
}

std::vector<CatalogueEntry> full_catalogue(AlgebraSignature sig) {
  std::vector<CatalogueEntry> out = gps_catalogue(sig);
  out.push_back({"x0_squared", make_x0_squared(sig), false});
  out.push_back({"r_squared", make_r_squared(sig), false});
  return out;
}

}  // namespace gps
