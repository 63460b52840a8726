#include "gps/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gps {

double sphere_area(int m) {
  if (m < 0) throw std::invalid_argument("sphere_area: m must be >= 0");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (m + 1)) / std::tgamma(0.5 * (m + 1));
}

KernelCoefficients representation_coefficients(const AlgebraSignature& sig,
                                               std::span<const double> eta,
                                               std::span<const double> omega) {
  const Multivector etam = embed_direction(eta, sig);
  const Multivector omm = embed_direction(omega, sig);
  Multivector alpha = Multivector::scalar(sig, 1.0);
  mul_acc(alpha, etam, omm, -1.0);
  alpha *= 0.5;
  Multivector beta = Multivector::scalar(sig, 1.0);
  beta -= alpha;
  return {std::move(alpha), std::move(beta)};
}

Multivector cauchy_kernel_E(const AlgebraSignature& sig, std::span<const double> d,
                            std::span<const double> omega) {
  const int m = sig.p + 2;
  if (static_cast<int>(d.size()) != m)
    throw std::invalid_argument("cauchy_kernel_E: expected p+2 slice coordinates");
  double n2 = 0.0;
  for (double v : d) n2 += v * v;
  if (n2 == 0.0) throw std::domain_error("cauchy_kernel_E: coincident points");
  const double scale = 1.0 / (sphere_area(sig.p + 1) * std::pow(n2, 0.5 * m));
  Multivector out(sig);
  out[0] = scale * d[0];
  for (int i = 1; i <= sig.p; ++i) out[1u << (i - 1)] = -scale * d[i];
  const double s = -scale * d[m - 1];
  for (int j = 0; j < sig.q; ++j) out[1u << (sig.p + j)] = s * omega[j];
  return out;
}

Multivector cauchy_kernel_E(const AlgebraSignature& sig, const SplitPoint& y,
                            const SplitPoint& x_target, std::span<const double> omega,
                            double tol) {
  auto slice_coord = [&](const SplitPoint& pt, const char* who) {
    // component of x_q along omega; the residual must vanish
    double s = 0.0;
    for (int j = 0; j < sig.q; ++j) s += pt.xq[j] * omega[j];
    double off2 = 0.0;
    for (int j = 0; j < sig.q; ++j) {
      const double v = pt.xq[j] - s * omega[j];
      off2 += v * v;
    }
    if (off2 > tol * tol * (1.0 + s * s))
      throw std::invalid_argument(std::string("cauchy_kernel_E: ") + who +
                                  " does not lie on the slice of omega");
    return s;
  };
  const double sy = slice_coord(y, "y");
  const double sx = slice_coord(x_target, "x_target");
  std::vector<double> d(sig.p + 2);
  for (int i = 0; i <= sig.p; ++i) d[i] = y.xp[i] - x_target.xp[i];
  d[sig.p + 1] = sy - sx;
  return cauchy_kernel_E(sig, d, omega);
}

Multivector gps_cauchy_kernel(const AlgebraSignature& sig, const SplitPoint& y,
                              const SplitPoint& x) {
  if (x.r <= 0.0 || y.r <= 0.0)
    throw std::domain_error("gps_cauchy_kernel: points must have nonzero sphere part");
  const auto [alpha, beta] = representation_coefficients(sig, x.omega, y.omega);
  const int m = sig.p + 2;
  std::vector<double> dp(m), dm(m);
  for (int i = 0; i <= sig.p; ++i) dp[i] = dm[i] = y.xp[i] - x.xp[i];
  dp[m - 1] = y.r - x.r;
  dm[m - 1] = y.r + x.r;
  Multivector out(sig);
  mul_acc(out, alpha, cauchy_kernel_E(sig, dp, y.omega), 1.0);
  mul_acc(out, beta, cauchy_kernel_E(sig, dm, y.omega), 1.0);
  return out;
}

Multivector weighted_kernel_K(const AlgebraSignature& sig, const SplitPoint& y,
                              const SplitPoint& x) {
  if (y.r <= 0.0) throw std::domain_error("weighted_kernel_K: |y_q| = 0");
  Multivector out = gps_cauchy_kernel(sig, y, x);
  return out *= 1.0 / (sphere_area(sig.q - 1) * std::pow(y.r, sig.q - 1));
}

}  // namespace gps
