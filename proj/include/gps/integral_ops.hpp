#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gps/clifford.hpp"
#include "gps/domains.hpp"
#include "gps/kernels.hpp"
#include "gps/stem_slice.hpp"

namespace gps {

/// How singular volume/boundary integrals are realized.
///  kSubtract: subtract the value at the singular point and add the
///             closed-form integral of the kernel (ball Teodorescu of 1,
///             solid-angle constants); no nodes are dropped. Derivatives of
///             the computed transforms are finite-difference stable.
///  kNodeDrop: drop nodes within pv_epsilon of the singular points, no
///             weight compensation.
enum class PvMode { kSubtract, kNodeDrop };

struct OperatorContext {
  AlgebraSignature sig;
  MirroredBallDomain domain;
  SliceQuadrature boundary;  // rule on the r>0 ball sphere
  SliceQuadrature volume;    // rule inside the r>0 ball
  SphereQuadrature sphere;   // hemisphere rule in R^q
  double pv_epsilon = 0.0;   // node-drop radius (kNodeDrop)
  double fd_step = 1e-3;     // step used to differentiate computed transforms
  PvMode pv_mode = PvMode::kSubtract;
  int max_threads = 0;       // 0: GPS_THREADS env or hardware concurrency
};

/// Builds rules at the given level; pv_epsilon = pv_factor * volume mesh.
OperatorContext make_context(const AlgebraSignature& sig, const MirroredBallDomain& domain,
                             int level, double pv_factor = 2.0, double fd_step = 1e-3);

/// Boundary reproduction operator
///   (1/sigma_{q-1}) sum_{omega in S+} w_omega * 2 * sum_{y on slice boundary}
///       calE_y(x) n(y) f(y) w_y
/// (each slice plane is reached by both +-omega, hence the cover factor 2).
/// Reproduces f inside for f in ker of the global operator; evaluates to 0
/// outside the closed domain. Throws std::invalid_argument on the boundary.
Multivector cauchy_boundary_F(const SliceFunction& f, const OperatorContext& ctx,
                              const SplitPoint& x);

/// Slice transform -2 int_{slice of omega} calE_y(x) f(y) dsigma(y)
/// (both mirrored balls, double cover). x must lie inside the domain.
Multivector teodorescu_slice(const SliceFunction& f, const OperatorContext& ctx,
                             std::span<const double> omega, const SplitPoint& x);
std::vector<Multivector> teodorescu_slice_batch(const SliceFunction& f,
                                                const OperatorContext& ctx,
                                                std::span<const double> omega,
                                                std::span<const SplitPoint> targets);

/// Hemisphere aggregation (1/sigma_{q-1}) sum w_omega teodorescu_slice.
Multivector teodorescu_full(const SliceFunction& f, const OperatorContext& ctx,
                            const SplitPoint& x);
std::vector<Multivector> teodorescu_full_batch(const SliceFunction& f,
                                               const OperatorContext& ctx,
                                               std::span<const SplitPoint> targets);

/// Same value assembled through the weighted kernel K and the r^{q-1}
/// volume factor over the same nodes (always node-drop semantics).
Multivector teodorescu_full_direct(const SliceFunction& f, const OperatorContext& ctx,
                                   const SplitPoint& x);

/// Closed-form partial derivatives of the slice transform; i is the ambient
/// coordinate index (0..p for the paravector block, p+1..p+q for the sphere
/// block). Matches central finite differences of teodorescu_slice in
/// kSubtract mode.
Multivector teodorescu_derivative_p(const SliceFunction& f, const OperatorContext& ctx,
                                    std::span<const double> omega, const SplitPoint& x, int i);
Multivector teodorescu_derivative_q(const SliceFunction& f, const OperatorContext& ctx,
                                    std::span<const double> omega, const SplitPoint& x, int i);

/// Full-domain closed-form derivatives (hemisphere aggregation of the above).
Multivector teodorescu_full_derivative_p(const SliceFunction& f, const OperatorContext& ctx,
                                         const SplitPoint& x, int i);
Multivector teodorescu_full_derivative_q(const SliceFunction& f, const OperatorContext& ctx,
                                         const SplitPoint& x, int i);

/// Global operator applied to the computed slice transform by central
/// differences of step ctx.fd_step (2(p+1)+2 transform evaluations).
Multivector teodorescu_vartheta_slice(const SliceFunction& f, const OperatorContext& ctx,
                                      std::span<const double> omega, const SplitPoint& x);
/// Same for the full transform.
Multivector teodorescu_vartheta_full(const SliceFunction& f, const OperatorContext& ctx,
                                     const SplitPoint& x);

/// | F f(x) + T(vartheta f)(x) - f(x) |.
double cauchy_pompeiu_residual(const SliceFunction& f, const OperatorContext& ctx,
                               const SplitPoint& x);

/// Singular boundary operator 2 p.v. integral of K n u at a boundary point,
/// realized by subtraction (the solid-angle constant of the kernel on the
/// sphere is 1/2).
Multivector plemelj_S(const SliceFunction& u, const OperatorContext& ctx, const SplitPoint& x);
/// (u + S u)/2 and (u - S u)/2; P + Q = I exactly by construction.
Multivector plemelj_P(const SliceFunction& u, const OperatorContext& ctx, const SplitPoint& x);
Multivector plemelj_Q(const SliceFunction& u, const OperatorContext& ctx, const SplitPoint& x);

enum class JumpSide { kInterior, kExterior };

/// Boundary limit pair at x on the boundary: first = F f evaluated at the
/// end of a normal approach path of path_steps halvings (t = rho 2^{-k}),
/// second = p.v. value + f(x)/2 (interior) or - f(x)/2 (exterior).
std::pair<Multivector, Multivector> plemelj_jump(const SliceFunction& f,
                                                 const OperatorContext& ctx,
                                                 const SplitPoint& x_boundary, int path_steps,
                                                 JumpSide side);

/// Algebra-valued pairing int conj(f) g over the full domain.
Multivector inner_product(const SliceFunction& f, const SliceFunction& g,
                          const OperatorContext& ctx);

/// ( int |f|^t )^{1/t} over the full domain, t > 1.
double lt_norm(const SliceFunction& f, const OperatorContext& ctx, double t);

/// Normalized orthogonality residual
///   |< phi, |y_q|^{1-q} vartheta g >| / (||phi||_2 ||.||_2),
/// phi(y) = conj(calE_y(x_eval)) / sigma_{q-1}. g must vanish on the
/// boundary and have a nonzero global derivative. x_eval outside the closed
/// domain certifies orthogonality; an interior x_eval is the negative
/// control.
double hodge_orthogonality_residual(const SplitPoint& x_eval, const SliceFunction& g,
                                    const OperatorContext& ctx);

/// Central-difference global operator applied to an arbitrary computed field.
Multivector vartheta_fd_field(const std::function<Multivector(const SplitPoint&)>& field,
                              const AlgebraSignature& sig, const SplitPoint& x, double h);

}  // namespace gps
