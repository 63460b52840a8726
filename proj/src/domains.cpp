#include "gps/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gps {

void MirroredBallDomain::validate() const {
  if (center_p.empty()) throw std::invalid_argument("domain.center_p: must have p+1 entries");
  if (rho <= 0.0) throw std::invalid_argument("domain.rho: must be positive");
  if (r0 <= rho) throw std::invalid_argument("domain.r0: must exceed domain.rho");
}

bool MirroredBallDomain::slice_contains(std::span<const double> xp, double r) const {
  return slice_boundary_distance(xp, r) <= 0.0;
}

bool MirroredBallDomain::contains(const SplitPoint& x) const {
  return slice_contains(x.xp, x.r);
}

double MirroredBallDomain::slice_boundary_distance(std::span<const double> xp, double r) const {
  double d2 = 0.0;
  for (std::size_t i = 0; i < center_p.size(); ++i) {
    const double d = xp[i] - center_p[i];
    d2 += d * d;
  }
  const double dr = std::abs(r) - r0;
  return std::sqrt(d2 + dr * dr) - rho;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  // Newton iteration on P_n, symmetric roots.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      const double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    const double wi = 2.0 / ((1.0 - t * t) * pp * pp);
    x[i] = 0.5 * (b - a) * (-t) + 0.5 * (a + b);
    x[n - 1 - i] = 0.5 * (b - a) * t + 0.5 * (a + b);
    w[i] = w[n - 1 - i] = 0.5 * (b - a) * wi;
  }
}

namespace {

void require_p1(const MirroredBallDomain& domain) {
  if (domain.p() != 1)
    throw std::invalid_argument("quadrature rules are implemented for p = 1 (slice balls in R^3)");
}

}  // namespace

SliceQuadrature build_boundary_rule(const MirroredBallDomain& domain, int level) {
  require_p1(domain);
  if (level < 0) throw std::invalid_argument("build_boundary_rule: level must be >= 0");
  const int nu = 2 << level;   // Gauss-Legendre in cos(polar)
  const int nphi = 4 << level; // trapezoid in azimuth
  const double rho = domain.rho;

  std::vector<double> us, wu;
  gauss_legendre(nu, -1.0, 1.0, us, wu);

  SliceQuadrature rule;
  rule.level = level;
  rule.m = 3;
  rule.boundary = true;
  rule.pts.reserve(static_cast<std::size_t>(nu) * nphi * 3);
  rule.normals.reserve(static_cast<std::size_t>(nu) * nphi * 3);
  rule.weights.reserve(static_cast<std::size_t>(nu) * nphi);
  const double wphi = 2.0 * std::numbers::pi / nphi;
  for (int i = 0; i < nu; ++i) {
    const double cu = us[i];
    const double su = std::sqrt(std::max(0.0, 1.0 - cu * cu));
    for (int k = 0; k < nphi; ++k) {
      const double phi = wphi * (k + 0.5);
      const double nx = su * std::cos(phi), ny = su * std::sin(phi), nz = cu;
      rule.pts.push_back(domain.center_p[0] + rho * nx);
      rule.pts.push_back(domain.center_p[1] + rho * ny);
      rule.pts.push_back(domain.r0 + rho * nz);
      rule.normals.push_back(nx);
      rule.normals.push_back(ny);
      rule.normals.push_back(nz);
      rule.weights.push_back(rho * rho * wu[i] * wphi);
    }
  }
  rule.mesh = rho * std::max(std::numbers::pi / nu, wphi);
  return rule;
}

SliceQuadrature build_volume_rule(const MirroredBallDomain& domain, int level) {
  require_p1(domain);
  if (level < 0) throw std::invalid_argument("build_volume_rule: level must be >= 0");
  const int nr = 1 << level;
  const int nu = 1 << level;
  const int nphi = 2 << level;
  const double rho = domain.rho;

  std::vector<double> rs, wr, us, wu;
  gauss_legendre(nr, 0.0, rho, rs, wr);
  gauss_legendre(nu, -1.0, 1.0, us, wu);

  SliceQuadrature rule;
  rule.level = level;
  rule.m = 3;
  rule.boundary = false;
  rule.pts.reserve(static_cast<std::size_t>(nr) * nu * nphi * 3);
  rule.weights.reserve(static_cast<std::size_t>(nr) * nu * nphi);
  const double wphi = 2.0 * std::numbers::pi / nphi;
  for (int a = 0; a < nr; ++a) {
    const double rr = rs[a];
    for (int i = 0; i < nu; ++i) {
      const double cu = us[i];
      const double su = std::sqrt(std::max(0.0, 1.0 - cu * cu));
      for (int k = 0; k < nphi; ++k) {
        const double phi = wphi * (k + 0.5);
        rule.pts.push_back(domain.center_p[0] + rr * su * std::cos(phi));
        rule.pts.push_back(domain.center_p[1] + rr * su * std::sin(phi));
        rule.pts.push_back(domain.r0 + rr * cu);
        rule.weights.push_back(rr * rr * wr[a] * wu[i] * wphi);
      }
    }
  }
  rule.mesh = rho * std::max({1.0 / nr, std::numbers::pi / nu, wphi});
  return rule;
}

SphereQuadrature build_sphere_rule(int q, int level) {
  if (q < 2) throw std::invalid_argument("build_sphere_rule: q >= 2 required");
  if (q > 3) throw std::invalid_argument("build_sphere_rule: q <= 3 supported");
  if (level < 0) throw std::invalid_argument("build_sphere_rule: level must be >= 0");
  SphereQuadrature rule;
  rule.level = level;
  rule.q = q;
  if (q == 2) {
    // midpoint rule on theta in [0, pi): the sin >= 0 half circle
    const int n = 2 << level;
    const double w = std::numbers::pi / n;
    for (int j = 0; j < n; ++j) {
      const double th = w * (j + 0.5);
      rule.omegas.push_back(std::cos(th));
      rule.omegas.push_back(std::sin(th));
      rule.weights.push_back(w);
    }
  } else {
    // hemisphere z > 0 of S^2: Gauss-Legendre in cos(polar) on (0,1],
    // trapezoid in azimuth
    const int nu = std::max(2, 1 << level);
    const int nphi = 2 << level;
    std::vector<double> us, wu;
    gauss_legendre(nu, 0.0, 1.0, us, wu);
    const double wphi = 2.0 * std::numbers::pi / nphi;
    for (int i = 0; i < nu; ++i) {
      const double cu = us[i];
      const double su = std::sqrt(std::max(0.0, 1.0 - cu * cu));
      for (int k = 0; k < nphi; ++k) {
        const double phi = wphi * (k + 0.5);
        rule.omegas.push_back(su * std::cos(phi));
        rule.omegas.push_back(su * std::sin(phi));
        rule.omegas.push_back(cu);
        rule.weights.push_back(wu[i] * wphi);
      }
    }
  }
  return rule;
}

SliceQuadrature pv_excise(const SliceQuadrature& rule, std::span<const double> x_plus,
                          std::span<const double> x_minus, double eps) {
  if (eps < 0.0) throw std::invalid_argument("pv_excise: eps must be >= 0");
  SliceQuadrature out;
  out.level = rule.level;
  out.m = rule.m;
  out.boundary = rule.boundary;
  out.mesh = rule.mesh;
  const double eps2 = eps * eps;
  auto near = [&](std::span<const double> pt, std::span<const double> c) {
    double d2 = 0.0;
    for (int j = 0; j < rule.m; ++j) {
      const double d = pt[j] - c[j];
      d2 += d * d;
    }
    return d2 < eps2;
  };
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const auto pt = rule.point(i);
    if (near(pt, x_plus) || near(pt, x_minus)) continue;
    out.pts.insert(out.pts.end(), pt.begin(), pt.end());
    if (rule.boundary) {
      const auto nm = rule.normal(i);
      out.normals.insert(out.normals.end(), nm.begin(), nm.end());
    }
    out.weights.push_back(rule.weights[i]);
  }
  if (out.weights.empty() && rule.size() > 0)
    throw std::domain_error("pv_excise: excision removed every node");
  return out;
}

}  // namespace gps
