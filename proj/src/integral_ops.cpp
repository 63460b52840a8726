#include "gps/integral_ops.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace gps {
namespace {

int thread_budget(int max_threads) {
  int n = max_threads;
  if (n <= 0) {
    if (const char* env = std::getenv("GPS_THREADS")) n = std::atoi(env);
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
  }
  return n;
}

/// Runs fn(i) for i in [0, n); results must be written to per-index slots so
/// the later reduction order is fixed.
template <typename Fn>
void parallel_for(std::size_t n, int max_threads, const Fn& fn) {
  const int nt = std::min<std::size_t>(thread_budget(max_threads), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += nt) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

double pow_int(double base, int e) {
  double out = 1.0;
  for (int k = 0; k < e; ++k) out *= base;
  return out;
}

/// conj(d) / (sigma_{p+1} |d|^{p+2}) written into out (slice coords d, size
/// m = p+2, last component along omega).
void write_E(Multivector& out, const AlgebraSignature& sig, const double* d, int m,
             const double* omega, double inv_sigma) {
  double n2 = 0.0;
  for (int i = 0; i < m; ++i) n2 += d[i] * d[i];
  const double scale = inv_sigma / pow_int(std::sqrt(n2), m);
  out.set_zero();
  out[0] = scale * d[0];
  for (int i = 1; i < m - 1; ++i) out[1u << (i - 1)] = -scale * d[i];
  const double s = -scale * d[m - 1];
  for (int j = 0; j < sig.q; ++j) out[1u << (sig.p + j)] = s * omega[j];
}

/// d/d(d_j) of the kernel above: [conj(e_j)|d|^2 - m d_j conj(d)] /
/// (sigma |d|^{m+2}).
void write_dE(Multivector& out, const AlgebraSignature& sig, const double* d, int m, int j,
              const double* omega, double inv_sigma) {
  double n2 = 0.0;
  for (int i = 0; i < m; ++i) n2 += d[i] * d[i];
  const double scale = inv_sigma / pow_int(std::sqrt(n2), m + 2);
  out.set_zero();
  const double mdj = -m * d[j] * scale;
  out[0] = mdj * d[0];
  for (int i = 1; i < m - 1; ++i) out[1u << (i - 1)] = -mdj * d[i];
  const double s = -mdj * d[m - 1];
  for (int jj = 0; jj < sig.q; ++jj) out[1u << (sig.p + jj)] = s * omega[jj];
  // conj(e_j) |d|^2 part
  const double c = scale * n2;
  if (j == 0) {
    out[0] += c;
  } else if (j < m - 1) {
    out[1u << (j - 1)] -= c;
  } else {
    for (int jj = 0; jj < sig.q; ++jj) out[1u << (sig.p + jj)] -= c * omega[jj];
  }
}

double ball_volume(int m, double rho) {
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0) * pow_int(rho, m);
}

/// Transform of the constant 1 over one slice ball, closed form:
/// conj(a - c)/m inside, -vol * E(c - a) outside (mean value property).
void write_Tone(Multivector& out, const AlgebraSignature& sig, const double* a,
                const double* c, int m, double rho, const double* omega, double inv_sigma) {
  double n2 = 0.0;
  std::array<double, 16> d{};
  for (int i = 0; i < m; ++i) {
    d[i] = a[i] - c[i];
    n2 += d[i] * d[i];
  }
  if (n2 < rho * rho) {
    out.set_zero();
    const double s = 1.0 / m;
    out[0] = s * d[0];
    for (int i = 1; i < m - 1; ++i) out[1u << (i - 1)] = -s * d[i];
    const double sq = -s * d[m - 1];
    for (int j = 0; j < sig.q; ++j) out[1u << (sig.p + j)] = sq * omega[j];
  } else {
    for (int i = 0; i < m; ++i) d[i] = -d[i];  // c - a
    write_E(out, sig, d.data(), m, omega, inv_sigma);
    out *= -ball_volume(m, rho);
  }
}

/// Derivative of the above in a_j.
void write_dTone(Multivector& out, const AlgebraSignature& sig, const double* a,
                 const double* c, int m, double rho, int j, const double* omega,
                 double inv_sigma) {
  double n2 = 0.0;
  std::array<double, 16> d{};
  for (int i = 0; i < m; ++i) {
    d[i] = a[i] - c[i];
    n2 += d[i] * d[i];
  }
  out.set_zero();
  if (n2 < rho * rho) {
    const double s = 1.0 / m;
    if (j == 0) {
      out[0] = s;
    } else if (j < m - 1) {
      out[1u << (j - 1)] = -s;
    } else {
      for (int jj = 0; jj < sig.q; ++jj) out[1u << (sig.p + jj)] = -s * omega[jj];
    }
  } else {
    for (int i = 0; i < m; ++i) d[i] = -d[i];
    write_dE(out, sig, d.data(), m, j, omega, inv_sigma);
    out *= ball_volume(m, rho);  // d/da[-vol E(c-a)] = +vol (dE_j)(c-a)
  }
}

struct SliceTargets {
  // per target: reflections onto the current slice and f there
  std::vector<std::array<double, 16>> ap, am;
  std::vector<Multivector> alpha, beta, fap, fam;
};

void require_inside(const OperatorContext& ctx, const SplitPoint& x, const char* op) {
  if (x.r <= 0.0) throw std::domain_error(std::string(op) + ": x has r = 0");
  if (ctx.domain.slice_boundary_distance(x.xp, x.r) >= 0.0)
    throw std::domain_error(std::string(op) + ": x outside the open domain");
}

SliceTargets make_slice_targets(const SliceFunction& f, const OperatorContext& ctx,
                                std::span<const double> omega,
                                std::span<const SplitPoint> targets) {
  const AlgebraSignature sig = ctx.sig;
  const int m = sig.p + 2;
  SliceTargets st;
  st.ap.resize(targets.size());
  st.am.resize(targets.size());
  st.alpha.reserve(targets.size());
  st.beta.reserve(targets.size());
  st.fap.reserve(targets.size());
  st.fam.reserve(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const SplitPoint& x = targets[t];
    for (int i = 0; i <= sig.p; ++i) st.ap[t][i] = st.am[t][i] = x.xp[i];
    st.ap[t][m - 1] = x.r;
    st.am[t][m - 1] = -x.r;
    auto [alpha, beta] = representation_coefficients(sig, x.omega, omega);
    st.alpha.push_back(std::move(alpha));
    st.beta.push_back(std::move(beta));
    st.fap.push_back(f.eval_slice(x.xp, x.r, omega));
    st.fam.push_back(f.eval_slice(x.xp, -x.r, omega));
  }
  return st;
}

/// Volume sweep computing, per target, the pair of one-sided slice
/// transforms g(a+) and g(a-) (classical transform over both mirrored
/// balls, counted once). mode selects subtraction or node dropping.
void slice_volume_pair(const SliceFunction& f, const OperatorContext& ctx,
                       std::span<const double> omega, const SliceTargets& st,
                       std::vector<Multivector>& gp, std::vector<Multivector>& gm) {
  const AlgebraSignature sig = ctx.sig;
  const int m = sig.p + 2;
  const std::size_t nt = st.ap.size();
  const double inv_sigma = 1.0 / sphere_area(sig.p + 1);
  const SliceQuadrature& vol = ctx.volume;
  const double eps2 = ctx.pv_epsilon * ctx.pv_epsilon;
  const double guard2 = 1e-26 * ctx.domain.rho * ctx.domain.rho;

  Multivector E(sig), diff(sig), fy(sig);
  std::array<double, 16> u{}, d{};
  for (std::size_t t = 0; t < nt; ++t) {
    gp[t].set_zero();
    gm[t].set_zero();
  }

  for (std::size_t n = 0; n < vol.size(); ++n) {
    const auto pt = vol.point(n);
    const double w = vol.weights[n];
    for (double sgn : {1.0, -1.0}) {
      for (int i = 0; i < m - 1; ++i) u[i] = pt[i];
      u[m - 1] = sgn * pt[m - 1];
      fy = f.eval_slice({u.data(), static_cast<std::size_t>(m - 1)}, u[m - 1], omega);
      for (std::size_t t = 0; t < nt; ++t) {
        // g(a+)
        double dist2 = 0.0;
        for (int i = 0; i < m; ++i) {
          d[i] = u[i] - st.ap[t][i];
          dist2 += d[i] * d[i];
        }
        if (ctx.pv_mode == PvMode::kSubtract) {
          if (dist2 > guard2) {
            write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
            diff = fy;
            diff -= st.fap[t];
            mul_acc(gp[t], E, diff, -w);
          }
        } else if (dist2 >= eps2) {
          write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
          mul_acc(gp[t], E, fy, -w);
        }
        // g(a-)
        dist2 = 0.0;
        for (int i = 0; i < m; ++i) {
          d[i] = u[i] - st.am[t][i];
          dist2 += d[i] * d[i];
        }
        if (ctx.pv_mode == PvMode::kSubtract) {
          if (dist2 > guard2) {
            write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
            diff = fy;
            diff -= st.fam[t];
            mul_acc(gm[t], E, diff, -w);
          }
        } else if (dist2 >= eps2) {
          write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
          mul_acc(gm[t], E, fy, -w);
        }
      }
    }
  }

  if (ctx.pv_mode == PvMode::kSubtract) {
    // add the closed-form kernel mass against the subtracted values
    Multivector T1(sig), tmp(sig);
    std::array<double, 16> cplus{}, cminus{};
    for (int i = 0; i < m - 1; ++i) cplus[i] = cminus[i] = ctx.domain.center_p[i];
    cplus[m - 1] = ctx.domain.r0;
    cminus[m - 1] = -ctx.domain.r0;
    for (std::size_t t = 0; t < nt; ++t) {
      write_Tone(T1, sig, st.ap[t].data(), cplus.data(), m, ctx.domain.rho, omega.data(),
                 inv_sigma);
      write_Tone(tmp, sig, st.ap[t].data(), cminus.data(), m, ctx.domain.rho, omega.data(),
                 inv_sigma);
      T1 += tmp;
      mul_acc(gp[t], T1, st.fap[t], 1.0);
      write_Tone(T1, sig, st.am[t].data(), cplus.data(), m, ctx.domain.rho, omega.data(),
                 inv_sigma);
      write_Tone(tmp, sig, st.am[t].data(), cminus.data(), m, ctx.domain.rho, omega.data(),
                 inv_sigma);
      T1 += tmp;
      mul_acc(gm[t], T1, st.fam[t], 1.0);
    }
  }
}

}  // namespace

OperatorContext make_context(const AlgebraSignature& sig, const MirroredBallDomain& domain,
                             int level, double pv_factor, double fd_step) {
  sig.validate();
  domain.validate();
  OperatorContext ctx;
  ctx.sig = sig;
  ctx.domain = domain;
  ctx.boundary = build_boundary_rule(domain, level);
  ctx.volume = build_volume_rule(domain, level);
  ctx.sphere = build_sphere_rule(sig.q, level);
  ctx.pv_epsilon = pv_factor * ctx.volume.mesh;
  ctx.fd_step = fd_step;
  return ctx;
}

std::vector<Multivector> teodorescu_slice_batch(const SliceFunction& f,
                                                const OperatorContext& ctx,
                                                std::span<const double> omega,
                                                std::span<const SplitPoint> targets) {
  for (const SplitPoint& x : targets) require_inside(ctx, x, "teodorescu_slice");
  const SliceTargets st = make_slice_targets(f, ctx, omega, targets);
  std::vector<Multivector> gp(targets.size(), Multivector(ctx.sig));
  std::vector<Multivector> gm(targets.size(), Multivector(ctx.sig));
  slice_volume_pair(f, ctx, omega, st, gp, gm);
  std::vector<Multivector> out(targets.size(), Multivector(ctx.sig));
  for (std::size_t t = 0; t < targets.size(); ++t) {
    mul_acc(out[t], st.alpha[t], gp[t], 2.0);
    mul_acc(out[t], st.beta[t], gm[t], 2.0);
  }
  return out;
}

Multivector teodorescu_slice(const SliceFunction& f, const OperatorContext& ctx,
                             std::span<const double> omega, const SplitPoint& x) {
  return teodorescu_slice_batch(f, ctx, omega, {&x, 1})[0];
}

std::vector<Multivector> teodorescu_full_batch(const SliceFunction& f,
                                               const OperatorContext& ctx,
                                               std::span<const SplitPoint> targets) {
  for (const SplitPoint& x : targets) require_inside(ctx, x, "teodorescu_full");
  const std::size_t ns = ctx.sphere.size();
  std::vector<std::vector<Multivector>> per_slice(ns);
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    per_slice[s] = teodorescu_slice_batch(f, ctx, ctx.sphere.omega(s), targets);
  });
  const double c = 1.0 / sphere_area(ctx.sig.q - 1);
  std::vector<Multivector> out(targets.size(), Multivector(ctx.sig));
  for (std::size_t s = 0; s < ns; ++s)
    for (std::size_t t = 0; t < targets.size(); ++t)
      out[t].add_scaled(per_slice[s][t], c * ctx.sphere.weights[s]);
  return out;
}

Multivector teodorescu_full(const SliceFunction& f, const OperatorContext& ctx,
                            const SplitPoint& x) {
  return teodorescu_full_batch(f, ctx, {&x, 1})[0];
}

Multivector teodorescu_full_direct(const SliceFunction& f, const OperatorContext& ctx,
                                   const SplitPoint& x) {
  require_inside(ctx, x, "teodorescu_full_direct");
  const AlgebraSignature sig = ctx.sig;
  const int m = sig.p + 2;
  const double inv_sigma = 1.0 / sphere_area(sig.p + 1);
  const double sq = sphere_area(sig.q - 1);
  const double eps2 = ctx.pv_epsilon * ctx.pv_epsilon;
  const std::size_t ns = ctx.sphere.size();

  std::vector<Multivector> per_slice(ns, Multivector(sig));
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    const auto omega = ctx.sphere.omega(s);
    SplitPoint xcopy = x;
    const SliceTargets st = make_slice_targets(f, ctx, omega, {&xcopy, 1});
    Multivector E(sig), kf(sig), fy(sig), acc(sig);
    std::array<double, 16> u{}, d{};
    for (std::size_t n = 0; n < ctx.volume.size(); ++n) {
      const auto pt = ctx.volume.point(n);
      const double w = ctx.volume.weights[n];
      for (double sgn : {1.0, -1.0}) {
        for (int i = 0; i < m - 1; ++i) u[i] = pt[i];
        u[m - 1] = sgn * pt[m - 1];
        const double rq = std::abs(u[m - 1]);
        fy = f.eval_slice({u.data(), static_cast<std::size_t>(m - 1)}, u[m - 1], omega);
        // K n f r^{q-1}: the radial kernel weight cancels the volume factor
        const double wk = w * pow_int(rq, sig.q - 1) / (sq * pow_int(rq, sig.q - 1));
        kf.set_zero();
        double dist2 = 0.0;
        for (int i = 0; i < m; ++i) {
          d[i] = u[i] - st.ap[0][i];
          dist2 += d[i] * d[i];
        }
        if (dist2 >= eps2) {
          write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
          mul_acc(kf, st.alpha[0], E, 1.0);
        }
        dist2 = 0.0;
        for (int i = 0; i < m; ++i) {
          d[i] = u[i] - st.am[0][i];
          dist2 += d[i] * d[i];
        }
        if (dist2 >= eps2) {
          write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
          mul_acc(kf, st.beta[0], E, 1.0);
        }
        mul_acc(acc, kf, fy, -2.0 * wk);
      }
    }
    acc *= ctx.sphere.weights[s];
    per_slice[s] = std::move(acc);
  });
  Multivector out(sig);
  for (std::size_t s = 0; s < ns; ++s) out += per_slice[s];
  return out;
}

namespace {

/// Closed-form derivative of the one-sided slice transform g at a, in slice
/// coordinate j: quadrature of (dE_j)(u - a)(f(u) - f(a)) plus the
/// closed-form derivative of the kernel mass.
void slice_volume_pair_derivative(const SliceFunction& f, const OperatorContext& ctx,
                                  std::span<const double> omega, const SliceTargets& st,
                                  int j, std::vector<Multivector>& dgp,
                                  std::vector<Multivector>& dgm) {
  const AlgebraSignature sig = ctx.sig;
  const int m = sig.p + 2;
  const std::size_t nt = st.ap.size();
  const double inv_sigma = 1.0 / sphere_area(sig.p + 1);
  const SliceQuadrature& vol = ctx.volume;
  const double guard2 = 1e-26 * ctx.domain.rho * ctx.domain.rho;

  Multivector dE(sig), diff(sig), fy(sig);
  std::array<double, 16> u{}, d{};
  for (std::size_t t = 0; t < nt; ++t) {
    dgp[t].set_zero();
    dgm[t].set_zero();
  }
  for (std::size_t n = 0; n < vol.size(); ++n) {
    const auto pt = vol.point(n);
    const double w = vol.weights[n];
    for (double sgn : {1.0, -1.0}) {
      for (int i = 0; i < m - 1; ++i) u[i] = pt[i];
      u[m - 1] = sgn * pt[m - 1];
      fy = f.eval_slice({u.data(), static_cast<std::size_t>(m - 1)}, u[m - 1], omega);
      for (std::size_t t = 0; t < nt; ++t) {
        double dist2 = 0.0;
        for (int i = 0; i < m; ++i) {
          d[i] = u[i] - st.ap[t][i];
          dist2 += d[i] * d[i];
        }
        if (dist2 > guard2) {
          // d/da_j E(u-a) = -(dE_j)(u-a); the minus of the transform cancels it
          write_dE(dE, sig, d.data(), m, j, omega.data(), inv_sigma);
          diff = fy;
          diff -= st.fap[t];
          mul_acc(dgp[t], dE, diff, w);
        }
        dist2 = 0.0;
        for (int i = 0; i < m; ++i) {
          d[i] = u[i] - st.am[t][i];
          dist2 += d[i] * d[i];
        }
        if (dist2 > guard2) {
          write_dE(dE, sig, d.data(), m, j, omega.data(), inv_sigma);
          diff = fy;
          diff -= st.fam[t];
          mul_acc(dgm[t], dE, diff, w);
        }
      }
    }
  }

  Multivector dT1(sig), tmp(sig);
  std::array<double, 16> cplus{}, cminus{};
  for (int i = 0; i < m - 1; ++i) cplus[i] = cminus[i] = ctx.domain.center_p[i];
  cplus[m - 1] = ctx.domain.r0;
  cminus[m - 1] = -ctx.domain.r0;
  for (std::size_t t = 0; t < nt; ++t) {
    write_dTone(dT1, sig, st.ap[t].data(), cplus.data(), m, ctx.domain.rho, j, omega.data(),
                inv_sigma);
    write_dTone(tmp, sig, st.ap[t].data(), cminus.data(), m, ctx.domain.rho, j, omega.data(),
                inv_sigma);
    dT1 += tmp;
    mul_acc(dgp[t], dT1, st.fap[t], 1.0);
    write_dTone(dT1, sig, st.am[t].data(), cplus.data(), m, ctx.domain.rho, j, omega.data(),
                inv_sigma);
    write_dTone(tmp, sig, st.am[t].data(), cminus.data(), m, ctx.domain.rho, j, omega.data(),
                inv_sigma);
    dT1 += tmp;
    mul_acc(dgm[t], dT1, st.fam[t], 1.0);
  }
}

}  // namespace

Multivector teodorescu_derivative_p(const SliceFunction& f, const OperatorContext& ctx,
                                    std::span<const double> omega, const SplitPoint& x,
                                    int i) {
  if (i < 0 || i > ctx.sig.p)
    throw std::invalid_argument("teodorescu_derivative_p: index must be in [0, p]");
  require_inside(ctx, x, "teodorescu_derivative_p");
  SplitPoint xc = x;
  const SliceTargets st = make_slice_targets(f, ctx, omega, {&xc, 1});
  std::vector<Multivector> dgp(1, Multivector(ctx.sig)), dgm(1, Multivector(ctx.sig));
  slice_volume_pair_derivative(f, ctx, omega, st, i, dgp, dgm);
  Multivector out(ctx.sig);
  mul_acc(out, st.alpha[0], dgp[0], 2.0);
  mul_acc(out, st.beta[0], dgm[0], 2.0);
  return out;
}

Multivector teodorescu_derivative_q(const SliceFunction& f, const OperatorContext& ctx,
                                    std::span<const double> omega, const SplitPoint& x,
                                    int i) {
  const AlgebraSignature sig = ctx.sig;
  if (i <= sig.p || i > sig.n())
    throw std::invalid_argument("teodorescu_derivative_q: index must be in [p+1, p+q]");
  require_inside(ctx, x, "teodorescu_derivative_q");
  const int jq = i - sig.p - 1;  // component within x_q
  const int m = sig.p + 2;
  SplitPoint xc = x;
  const SliceTargets st = make_slice_targets(f, ctx, omega, {&xc, 1});

  // radial part: a+ moves with +dr, a- with -dr
  std::vector<Multivector> dgp(1, Multivector(sig)), dgm(1, Multivector(sig));
  slice_volume_pair_derivative(f, ctx, omega, st, m - 1, dgp, dgm);
  Multivector radial(sig);
  mul_acc(radial, st.alpha[0], dgp[0], 2.0);
  mul_acc(radial, st.beta[0], dgm[0], -2.0);

  // angular part: the coefficients alpha/beta vary through eta = x_q/r;
  // d(eta)/d(x_qi) = (e_i - (x_qi/r) eta)/r and d(alpha) = -d(eta) omega / 2
  std::vector<Multivector> gp(1, Multivector(sig)), gm(1, Multivector(sig));
  slice_volume_pair(f, ctx, omega, st, gp, gm);
  Multivector deta(sig);
  deta[1u << (sig.p + jq)] = 1.0 / x.r;
  for (int j = 0; j < sig.q; ++j)
    deta[1u << (sig.p + j)] -= x.xq[jq] / (x.r * x.r) * x.omega[j];
  Multivector dalpha(sig);
  mul_acc(dalpha, deta, embed_direction(omega, sig), -0.5);

  Multivector out = radial;
  out *= x.xq[jq] / x.r;
  Multivector gdiff = gp[0];
  gdiff -= gm[0];
  mul_acc(out, dalpha, gdiff, 2.0);
  return out;
}

Multivector teodorescu_full_derivative_p(const SliceFunction& f, const OperatorContext& ctx,
                                         const SplitPoint& x, int i) {
  const std::size_t ns = ctx.sphere.size();
  std::vector<Multivector> per_slice(ns, Multivector(ctx.sig));
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    per_slice[s] = teodorescu_derivative_p(f, ctx, ctx.sphere.omega(s), x, i);
  });
  Multivector out(ctx.sig);
  const double c = 1.0 / sphere_area(ctx.sig.q - 1);
  for (std::size_t s = 0; s < ns; ++s) out.add_scaled(per_slice[s], c * ctx.sphere.weights[s]);
  return out;
}

Multivector teodorescu_full_derivative_q(const SliceFunction& f, const OperatorContext& ctx,
                                         const SplitPoint& x, int i) {
  const std::size_t ns = ctx.sphere.size();
  std::vector<Multivector> per_slice(ns, Multivector(ctx.sig));
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    per_slice[s] = teodorescu_derivative_q(f, ctx, ctx.sphere.omega(s), x, i);
  });
  Multivector out(ctx.sig);
  const double c = 1.0 / sphere_area(ctx.sig.q - 1);
  for (std::size_t s = 0; s < ns; ++s) out.add_scaled(per_slice[s], c * ctx.sphere.weights[s]);
  return out;
}

namespace {

std::vector<SplitPoint> vartheta_stencil(const AlgebraSignature& sig, const SplitPoint& x,
                                         double h) {
  std::vector<SplitPoint> pts;
  pts.reserve(2 * (sig.p + 1) + 2);
  for (int i = 0; i <= sig.p; ++i)
    for (double s : {1.0, -1.0}) {
      SplitPoint p = x;
      p.xp[i] += s * h;
      pts.push_back(std::move(p));
    }
  for (double s : {1.0, -1.0})
    pts.push_back(SplitPoint::from_polar(x.xp, x.r + s * h, x.omega));
  return pts;
}

Multivector vartheta_assemble(const AlgebraSignature& sig, const SplitPoint& x, double h,
                              std::span<const Multivector> values) {
  Multivector out(sig);
  for (int i = 0; i <= sig.p; ++i) {
    Multivector di = values[2 * i];
    di -= values[2 * i + 1];
    di *= 0.5 / h;
    if (i == 0)
      out += di;
    else
      mul_acc(out, Multivector::basis_vector(sig, i), di, 1.0);
  }
  Multivector dr = values[2 * (sig.p + 1)];
  dr -= values[2 * (sig.p + 1) + 1];
  dr *= 0.5 / h;
  mul_acc(out, embed_direction(x.omega, sig), dr, 1.0);
  return out;
}

}  // namespace

Multivector teodorescu_vartheta_slice(const SliceFunction& f, const OperatorContext& ctx,
                                      std::span<const double> omega, const SplitPoint& x) {
  const auto pts = vartheta_stencil(ctx.sig, x, ctx.fd_step);
  const auto vals = teodorescu_slice_batch(f, ctx, omega, pts);
  return vartheta_assemble(ctx.sig, x, ctx.fd_step, vals);
}

Multivector teodorescu_vartheta_full(const SliceFunction& f, const OperatorContext& ctx,
                                     const SplitPoint& x) {
  const auto pts = vartheta_stencil(ctx.sig, x, ctx.fd_step);
  const auto vals = teodorescu_full_batch(f, ctx, pts);
  return vartheta_assemble(ctx.sig, x, ctx.fd_step, vals);
}

Multivector vartheta_fd_field(const std::function<Multivector(const SplitPoint&)>& field,
                              const AlgebraSignature& sig, const SplitPoint& x, double h) {
  const auto pts = vartheta_stencil(sig, x, h);
  std::vector<Multivector> vals;
  vals.reserve(pts.size());
  for (const SplitPoint& p : pts) vals.push_back(field(p));
  return vartheta_assemble(sig, x, h, vals);
}

namespace {

/// Boundary sweep over one slice. subtract_const: closed value of the
/// boundary kernel integral against 1 (1 inside, 1/2 on the sphere, 0
/// outside); negative disables subtraction (plain quadrature).
Multivector boundary_slice_value(const SliceFunction& f, const OperatorContext& ctx,
                                 std::span<const double> omega, const SplitPoint& x,
                                 double subtract_const) {
  const AlgebraSignature sig = ctx.sig;
  const int m = sig.p + 2;
  const double inv_sigma = 1.0 / sphere_area(sig.p + 1);
  const bool subtract = subtract_const >= 0.0;

  SplitPoint xc = x;
  const SliceTargets st = make_slice_targets(f, ctx, omega, {&xc, 1});
  Multivector acc(sig), E(sig), nf(sig), nmv(sig), fy(sig), diff(sig);
  std::array<double, 16> u{}, d{};
  const double guard2 = 1e-26 * ctx.domain.rho * ctx.domain.rho;

  for (std::size_t n = 0; n < ctx.boundary.size(); ++n) {
    const auto pt = ctx.boundary.point(n);
    const auto nm = ctx.boundary.normal(n);
    const double w = ctx.boundary.weights[n];
    for (double sgn : {1.0, -1.0}) {
      for (int i = 0; i < m - 1; ++i) u[i] = pt[i];
      u[m - 1] = sgn * pt[m - 1];
      fy = f.eval_slice({u.data(), static_cast<std::size_t>(m - 1)}, u[m - 1], omega);
      nmv.set_zero();
      nmv[0] = nm[0];
      for (int i = 1; i < m - 1; ++i) nmv[1u << (i - 1)] = nm[i];
      for (int j = 0; j < sig.q; ++j) nmv[1u << (sig.p + j)] = sgn * nm[m - 1] * omega[j];

      double dist2 = 0.0;
      for (int i = 0; i < m; ++i) {
        d[i] = u[i] - st.ap[0][i];
        dist2 += d[i] * d[i];
      }
      if (dist2 > guard2) {
        write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
        if (subtract) {
          diff = fy;
          diff -= st.fap[0];
          mul_into(nf, nmv, diff);
        } else {
          mul_into(nf, nmv, fy);
        }
        Multivector ef(sig);
        mul_acc(ef, E, nf, w);
        mul_acc(acc, st.alpha[0], ef, 1.0);
      }
      dist2 = 0.0;
      for (int i = 0; i < m; ++i) {
        d[i] = u[i] - st.am[0][i];
        dist2 += d[i] * d[i];
      }
      if (dist2 > guard2) {
        write_E(E, sig, d.data(), m, omega.data(), inv_sigma);
        if (subtract) {
          diff = fy;
          diff -= st.fam[0];
          mul_into(nf, nmv, diff);
        } else {
          mul_into(nf, nmv, fy);
        }
        Multivector ef(sig);
        mul_acc(ef, E, nf, w);
        mul_acc(acc, st.beta[0], ef, 1.0);
      }
    }
  }
  if (subtract) {
    mul_acc(acc, st.alpha[0], st.fap[0], subtract_const);
    mul_acc(acc, st.beta[0], st.fam[0], subtract_const);
  }
  return acc;
}

Multivector boundary_full_value(const SliceFunction& f, const OperatorContext& ctx,
                                const SplitPoint& x, double subtract_const) {
  const std::size_t ns = ctx.sphere.size();
  std::vector<Multivector> per_slice(ns, Multivector(ctx.sig));
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    per_slice[s] = boundary_slice_value(f, ctx, ctx.sphere.omega(s), x, subtract_const);
  });
  Multivector out(ctx.sig);
  const double c = 2.0 / sphere_area(ctx.sig.q - 1);  // slice double cover
  for (std::size_t s = 0; s < ns; ++s) out.add_scaled(per_slice[s], c * ctx.sphere.weights[s]);
  return out;
}

double boundary_distance(const OperatorContext& ctx, const SplitPoint& x) {
  return ctx.domain.slice_boundary_distance(x.xp, x.r);
}

}  // namespace

Multivector cauchy_boundary_F(const SliceFunction& f, const OperatorContext& ctx,
                              const SplitPoint& x) {
  if (x.r <= 0.0) throw std::domain_error("cauchy_boundary_F: x has r = 0");
  const double dist = boundary_distance(ctx, x);
  if (std::abs(dist) < 1e-12 * ctx.domain.rho)
    throw std::invalid_argument("cauchy_boundary_F: x lies on the boundary (use plemelj_S)");
  return boundary_full_value(f, ctx, x, -1.0);
}

double cauchy_pompeiu_residual(const SliceFunction& f, const OperatorContext& ctx,
                               const SplitPoint& x) {
  require_inside(ctx, x, "cauchy_pompeiu_residual");
  SliceFunction vf = [&] {
    if (const SliceFunction* v = f.analytic_vartheta()) return *v;
    const SliceFunction fc = f;
    return SliceFunction::raw(ctx.sig, [fc](const SplitPoint& y) {
      return apply_vartheta(fc, y, 1e-5);
    });
  }();
  Multivector res = cauchy_boundary_F(f, ctx, x);
  res += teodorescu_full(vf, ctx, x);
  res -= f(x);
  return res.norm();
}

Multivector plemelj_S(const SliceFunction& u, const OperatorContext& ctx, const SplitPoint& x) {
  if (x.r <= 0.0) throw std::domain_error("plemelj_S: x has r = 0");
  if (std::abs(boundary_distance(ctx, x)) > 1e-8 * ctx.domain.rho)
    throw std::invalid_argument("plemelj_S: x must lie on the boundary");
  Multivector out = boundary_full_value(u, ctx, x, 0.5);
  return out *= 2.0;
}

Multivector plemelj_P(const SliceFunction& u, const OperatorContext& ctx, const SplitPoint& x) {
  Multivector out = u(x);
  out += plemelj_S(u, ctx, x);
  return out *= 0.5;
}

Multivector plemelj_Q(const SliceFunction& u, const OperatorContext& ctx, const SplitPoint& x) {
  Multivector out = u(x);
  out -= plemelj_S(u, ctx, x);
  return out *= 0.5;
}

std::pair<Multivector, Multivector> plemelj_jump(const SliceFunction& f,
                                                 const OperatorContext& ctx,
                                                 const SplitPoint& x_boundary, int path_steps,
                                                 JumpSide side) {
  const AlgebraSignature sig = ctx.sig;
  if (path_steps < 1) throw std::invalid_argument("plemelj_jump: path_steps must be >= 1");
  if (std::abs(boundary_distance(ctx, x_boundary)) > 1e-8 * ctx.domain.rho)
    throw std::invalid_argument("plemelj_jump: x must lie on the boundary");

  // inward slice normal direction at the boundary point
  const int np = sig.p + 1;
  std::vector<double> n_slice(np + 1);
  for (int i = 0; i < np; ++i) n_slice[i] = (x_boundary.xp[i] - ctx.domain.center_p[i]);
  n_slice[np] = x_boundary.r - ctx.domain.r0;
  double nn = 0.0;
  for (double v : n_slice) nn += v * v;
  nn = std::sqrt(nn);
  for (double& v : n_slice) v /= nn;

  const double dir = (side == JumpSide::kInterior) ? -1.0 : 1.0;
  const double t = ctx.domain.rho * std::pow(2.0, -path_steps);
  std::vector<double> xp = x_boundary.xp;
  for (int i = 0; i < np; ++i) xp[i] += dir * t * n_slice[i];
  const double r_new = x_boundary.r + dir * t * n_slice[np];
  const SplitPoint x_path = SplitPoint::from_polar(xp, r_new, x_boundary.omega);
  if (side == JumpSide::kInterior && boundary_distance(ctx, x_path) >= 0.0)
    throw std::domain_error("plemelj_jump: path left the domain");

  const double c_loc = (side == JumpSide::kInterior) ? 1.0 : 0.0;
  Multivector limit = boundary_full_value(f, ctx, x_path, c_loc);

  Multivector pv_half = boundary_full_value(f, ctx, x_boundary, 0.5);
  const double half = (side == JumpSide::kInterior) ? 0.5 : -0.5;
  pv_half.add_scaled(f(x_boundary), half);
  return {std::move(limit), std::move(pv_half)};
}

namespace {

/// Runs fn(y, w_omega * w_node * |s|^{q-1}) over one hemisphere slice,
/// both mirrored balls. The SplitPoint is reused across nodes.
template <typename Fn>
void slice_volume_sweep(const OperatorContext& ctx, std::size_t s, const Fn& fn) {
  const AlgebraSignature sig = ctx.sig;
  const int m = sig.p + 2;
  const auto omega = ctx.sphere.omega(s);
  const double wom = ctx.sphere.weights[s];
  SplitPoint y;
  y.xp.resize(m - 1);
  y.xq.resize(sig.q);
  y.omega.resize(sig.q);
  for (std::size_t n = 0; n < ctx.volume.size(); ++n) {
    const auto pt = ctx.volume.point(n);
    const double w = ctx.volume.weights[n];
    for (double sgn : {1.0, -1.0}) {
      for (int i = 0; i < m - 1; ++i) y.xp[i] = pt[i];
      y.r = pt[m - 1];
      for (int j = 0; j < sig.q; ++j) {
        y.omega[j] = sgn * omega[j];
        y.xq[j] = y.r * y.omega[j];
      }
      fn(y, wom * w * pow_int(y.r, sig.q - 1));
    }
  }
}

}  // namespace

Multivector inner_product(const SliceFunction& f, const SliceFunction& g,
                          const OperatorContext& ctx) {
  const std::size_t ns = ctx.sphere.size();
  std::vector<Multivector> per_slice(ns, Multivector(ctx.sig));
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    Multivector acc(ctx.sig);
    slice_volume_sweep(ctx, s, [&](const SplitPoint& y, double w) {
      mul_acc(acc, f(y).conjugate(), g(y), w);
    });
    per_slice[s] = std::move(acc);
  });
  Multivector out(ctx.sig);
  for (std::size_t s = 0; s < ns; ++s) out += per_slice[s];
  return out;
}

double lt_norm(const SliceFunction& f, const OperatorContext& ctx, double t) {
  if (t <= 1.0) throw std::invalid_argument("lt_norm: t must exceed 1");
  const std::size_t ns = ctx.sphere.size();
  std::vector<double> per_slice(ns, 0.0);
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    double acc = 0.0;
    slice_volume_sweep(ctx, s, [&](const SplitPoint& y, double w) {
      acc += w * std::pow(f(y).norm(), t);
    });
    per_slice[s] = acc;
  });
  double acc = 0.0;
  for (double v : per_slice) acc += v;
  return std::pow(acc, 1.0 / t);
}

double hodge_orthogonality_residual(const SplitPoint& x_eval, const SliceFunction& g,
                                    const OperatorContext& ctx) {
  const AlgebraSignature sig = ctx.sig;
  const SliceFunction* vg = g.analytic_vartheta();
  const SliceFunction vtheta = vg ? *vg : SliceFunction::raw(sig, [g](const SplitPoint& y) {
    return apply_vartheta(g, y, 1e-5);
  });
  const double inv_sq = 1.0 / sphere_area(sig.q - 1);

  const std::size_t ns = ctx.sphere.size();
  std::vector<Multivector> nums(ns, Multivector(sig));
  std::vector<double> phi2s(ns, 0.0), h2s(ns, 0.0);
  parallel_for(ns, ctx.max_threads, [&](std::size_t s) {
    Multivector num(sig);
    double phi2 = 0.0, h2 = 0.0;
    slice_volume_sweep(ctx, s, [&](const SplitPoint& y, double w) {
      // conj(phi(y)) = calE_y(x_eval)/sigma_{q-1}; the radial weight of the
      // pairing cancels against |y_q|^{1-q} in the second factor
      const Multivector k = gps_cauchy_kernel(sig, y, x_eval) * inv_sq;
      const Multivector h = vtheta(y);
      const double rq = pow_int(y.r, sig.q - 1);
      mul_acc(num, k, h, w / rq);
      phi2 += w * k.norm() * k.norm();
      h2 += w * h.norm() * h.norm() / (rq * rq);
    });
    nums[s] = std::move(num);
    phi2s[s] = phi2;
    h2s[s] = h2;
  });
  Multivector num(sig);
  double phi2 = 0.0, h2 = 0.0;
  for (std::size_t s = 0; s < ns; ++s) {
    num += nums[s];
    phi2 += phi2s[s];
    h2 += h2s[s];
  }
  if (h2 <= 0.0 || std::sqrt(h2) < 1e-14)
    throw std::domain_error("hodge_orthogonality_residual: vartheta g vanishes identically");
  return num.norm() / std::sqrt(phi2 * h2);
}

}  // namespace gps
