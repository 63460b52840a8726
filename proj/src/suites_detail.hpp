#pragma once

// Internal helpers shared by the suite translation units.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gps/integral_ops.hpp"
#include "gps/kernels.hpp"
#include "gps/stem_slice.hpp"
#include "gps/suites.hpp"

namespace gps::detail {

inline constexpr double kLoose = 1e300;  // informational rows always pass

inline ResultRow row(const std::string& suite, const std::string& cas, int level,
                     const std::string& metric, double value, double tol) {
  return {suite, cas, level, metric, value, tol, value <= tol};
}

inline ResultRow row_min(const std::string& suite, const std::string& cas, int level,
                         const std::string& metric, double value, double bound) {
  return {suite, cas, level, metric, value, bound, value >= bound};
}

inline Multivector random_multivector(const AlgebraSignature& sig, Rng& rng) {
  Multivector m(sig);
  for (std::size_t b = 0; b < sig.dim(); ++b) m[b] = rng.normal();
  return m;
}

inline std::vector<double> random_unit_q(const AlgebraSignature& sig, Rng& rng) {
  std::vector<double> v(sig.q);
  double n = 0.0;
  do {
    n = 0.0;
    for (double& c : v) {
      c = rng.normal();
      n += c * c;
    }
  } while (n < 1e-6);
  n = std::sqrt(n);
  for (double& c : v) c /= n;
  return v;
}

inline SplitPoint random_interior(const AlgebraSignature& sig, const MirroredBallDomain& dom,
                                  Rng& rng, double margin = 0.2) {
  while (true) {
    std::vector<double> xp(sig.p + 1);
    for (int i = 0; i <= sig.p; ++i)
      xp[i] = dom.center_p[i] + dom.rho * rng.uniform(-0.9, 0.9);
    const double r = dom.r0 + dom.rho * rng.uniform(-0.9, 0.9);
    if (dom.slice_boundary_distance(xp, r) < -margin * dom.rho)
      return SplitPoint::from_polar(std::move(xp), r, random_unit_q(sig, rng));
  }
}

inline SplitPoint random_exterior(const AlgebraSignature& sig, const MirroredBallDomain& dom,
                                  Rng& rng, double lo = 0.3, double hi = 1.0) {
  while (true) {
    std::vector<double> dir(sig.p + 2);
    double n = 0.0;
    for (double& c : dir) {
      c = rng.normal();
      n += c * c;
    }
    n = std::sqrt(n);
    if (n < 1e-6) continue;
    const double rad = dom.rho * (1.0 + rng.uniform(lo, hi));
    std::vector<double> xp(sig.p + 1);
    for (int i = 0; i <= sig.p; ++i) xp[i] = dom.center_p[i] + rad * dir[i] / n;
    const double r = dom.r0 + rad * dir[sig.p + 1] / n;
    if (r < 0.3) continue;
    return SplitPoint::from_polar(std::move(xp), r, random_unit_q(sig, rng));
  }
}

inline SplitPoint random_boundary(const AlgebraSignature& sig, const MirroredBallDomain& dom,
                                  Rng& rng) {
  while (true) {
    std::vector<double> dir(sig.p + 2);
    double n = 0.0;
    for (double& c : dir) {
      c = rng.normal();
      n += c * c;
    }
    n = std::sqrt(n);
    if (n < 1e-6) continue;
    std::vector<double> xp(sig.p + 1);
    for (int i = 0; i <= sig.p; ++i) xp[i] = dom.center_p[i] + dom.rho * dir[i] / n;
    const double r = dom.r0 + dom.rho * dir[sig.p + 1] / n;
    if (r < 0.3) continue;
    return SplitPoint::from_polar(std::move(xp), r, random_unit_q(sig, rng));
  }
}

/// Mean pairwise log2 error ratio over a level sequence; 99 when the whole
/// sequence sits at the floor.
inline double empirical_order(const std::vector<double>& errs, double floor = 1e-12) {
  double sum = 0.0;
  int cnt = 0;
  for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
    if (errs[i] < floor || errs[i + 1] < floor) continue;
    sum += std::log2(errs[i] / errs[i + 1]);
    ++cnt;
  }
  if (cnt == 0) return 99.0;
  return sum / cnt;
}

inline double rel_err(const Multivector& got, const Multivector& want) {
  Multivector d = got;
  d -= want;
  return d.norm() / std::max(want.norm(), 1e-30);
}

std::vector<ResultRow> suite_algebra(const ExperimentConfig&);
std::vector<ResultRow> suite_representation(const ExperimentConfig&);
std::vector<ResultRow> suite_kernel(const ExperimentConfig&);
std::vector<ResultRow> suite_cif(const ExperimentConfig&);
std::vector<ResultRow> suite_pompeiu(const ExperimentConfig&);
std::vector<ResultRow> suite_teodorescu(const ExperimentConfig&);
std::vector<ResultRow> suite_derivatives(const ExperimentConfig&);
std::vector<ResultRow> suite_plemelj(const ExperimentConfig&);
std::vector<ResultRow> suite_hodge(const ExperimentConfig&);

}  // namespace gps::detail
