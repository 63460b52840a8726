#pragma once

#include <span>

#include "gps/clifford.hpp"

namespace gps {

/// Surface area of the unit m-sphere, 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_area(int m);

/// Reconstruction coefficients of the two-point representation across the
/// slice pair +-omega, evaluated for a point of direction eta:
///   alpha = (1 - eta omega)/2,   beta = (1 + eta omega)/2.
/// alpha + beta = 1 exactly; both have grades in {0, 2}; alpha collapses to 1
/// when eta = omega.
struct KernelCoefficients {
  Multivector alpha, beta;
};
KernelCoefficients representation_coefficients(const AlgebraSignature& sig,
                                               std::span<const double> eta,
                                               std::span<const double> omega);

/// Monogenic Cauchy kernel of the slice plane spanned by e_0..e_p and omega,
/// evaluated on slice coordinates d = y - x (size p+2, last entry the omega
/// component):  conj(d) / (sigma_{p+1} |d|^{p+2}).
/// Throws std::domain_error at d = 0.
Multivector cauchy_kernel_E(const AlgebraSignature& sig, std::span<const double> d,
                            std::span<const double> omega);

/// Same kernel for two ambient points that must lie on the slice of omega
/// (x_q parallel to omega within tol). Throws std::invalid_argument when a
/// point is off the slice.
Multivector cauchy_kernel_E(const AlgebraSignature& sig, const SplitPoint& y,
                            const SplitPoint& x_target, std::span<const double> omega,
                            double tol = 1e-10);

/// Slice Cauchy kernel
///   alpha E(y - x_omega) + beta E(y - x_{-omega}),
/// eta the direction of x, omega the direction of y, x_{+-omega} the
/// reflections of x onto the slice of y. Throws std::domain_error when
/// r = 0, |y_q| = 0, or y meets a reflection of x.
Multivector gps_cauchy_kernel(const AlgebraSignature& sig, const SplitPoint& y,
                              const SplitPoint& x);

/// gps_cauchy_kernel / (sigma_{q-1} |y_q|^{q-1}).
Multivector weighted_kernel_K(const AlgebraSignature& sig, const SplitPoint& y,
                              const SplitPoint& x);

}  // namespace gps
