#pragma once

#include <span>
#include <vector>

#include "gps/clifford.hpp"

namespace gps {

/// Base domain D in R^{p+2}: two mirrored balls
///   B((center_p, r0), rho) u B((center_p, -r0), rho),  0 < rho < r0,
/// whose symmetric completion is the solid of revolution in R^{p+q+1}.
struct MirroredBallDomain {
  std::vector<double> center_p;  // size p+1
  double r0 = 2.0;
  double rho = 1.0;

  int p() const { return static_cast<int>(center_p.size()) - 1; }

  /// Throws std::invalid_argument unless r0 > rho > 0.
  void validate() const;

  /// Membership of (x_p, |r|) in the closed r>0 ball.
  bool slice_contains(std::span<const double> xp, double r) const;

  /// Membership of x in the closed completion Omega_D.
  bool contains(const SplitPoint& x) const;

  /// Signed distance of (x_p, |r|) to the r>0 ball boundary (negative inside).
  double slice_boundary_distance(std::span<const double> xp, double r) const;
};

/// Quadrature over the r>0 ball of a slice copy of D, in slice coordinates
/// (x_0, ..., x_p, s). Boundary rules carry outward unit normals. The mirror
/// ball (s < 0) is reached by the slice decomposition, never stored.
struct SliceQuadrature {
  int level = 0;
  int m = 3;  // slice dimension p+2
  bool boundary = false;
  std::vector<double> pts;      // node-major, m doubles per node
  std::vector<double> normals;  // boundary only, m doubles per node
  std::vector<double> weights;
  double mesh = 0.0;  // coarse upper bound on node spacing

  std::size_t size() const { return weights.size(); }
  std::span<const double> point(std::size_t i) const {
    return {pts.data() + i * m, static_cast<std::size_t>(m)};
  }
  std::span<const double> normal(std::size_t i) const {
    return {normals.data() + i * m, static_cast<std::size_t>(m)};
  }
};

/// Nodes on the hemisphere S^+ of the unit sphere in R^q.
/// Total weight is half the full sphere area; no node has its antipode in
/// the rule.
struct SphereQuadrature {
  int level = 0;
  int q = 2;
  std::vector<double> omegas;  // node-major, q doubles per node
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> omega(std::size_t i) const {
    return {omegas.data() + i * q, static_cast<std::size_t>(q)};
  }
};

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w);

/// Tensor rule on the sphere bounding the r>0 ball. Requires p == 1
/// (slice balls in R^3); throws std::invalid_argument otherwise.
SliceQuadrature build_boundary_rule(const MirroredBallDomain& domain, int level);

/// Radial Gauss x angular rule inside the r>0 ball. Requires p == 1.
SliceQuadrature build_volume_rule(const MirroredBallDomain& domain, int level);

/// Hemisphere rule: q = 2 midpoint on the half circle, q = 3 product rule.
SphereQuadrature build_sphere_rule(int q, int level);

/// Drops nodes within eps of either singular point (principal value,
/// no weight renormalization). Points are slice coordinates.
SliceQuadrature pv_excise(const SliceQuadrature& rule, std::span<const double> x_plus,
                          std::span<const double> x_minus, double eps);

}  // namespace gps
