#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gps/clifford.hpp"
#include "gps/domains.hpp"

namespace gps {

/// Map from slice-plane coordinates (x_p, r) to an algebra element.
/// Stems are evaluated with signed r; the even-odd symmetry is the
/// constructor's responsibility and is checked by tests, not enforced here.
using StemComponent = std::function<Multivector(std::span<const double> xp, double r)>;

/// Component pair (F1 even, F2 odd in r) defining a slice function
/// x_p + r*omega  |->  F1(x_p, r) + omega * F2(x_p, r).
struct StemFunction {
  StemComponent f1, f2;
  // Optional analytic partials; when present they are used instead of
  // central differences.
  std::vector<StemComponent> df1_dxp, df2_dxp;  // size p+1
  StemComponent df1_dr, df2_dr;
  std::function<bool(std::span<const double> xp, double r)> domain_hint;  // optional

  bool has_analytic_derivatives() const {
    return !df1_dxp.empty() && !df2_dxp.empty() && df1_dr && df2_dr;
  }
  bool in_domain(std::span<const double> xp, double r) const {
    return !domain_hint || domain_hint(xp, r);
  }
};

/// Either a stem-induced slice function or a raw pointwise map (the latter
/// only carries boundary data; interior identities quantify over induced
/// functions).
class SliceFunction {
 public:
  enum class Kind { kStemInduced, kRaw };

  static SliceFunction stem_induced(AlgebraSignature sig, StemFunction stem);
  static SliceFunction raw(AlgebraSignature sig,
                           std::function<Multivector(const SplitPoint&)> fn);

  Kind kind() const { return kind_; }
  AlgebraSignature signature() const { return sig_; }
  const StemFunction& stem() const;

  Multivector operator()(const SplitPoint& x) const;
  /// Evaluation at x_p + s*omega with signed s (direction -omega for s < 0).
  Multivector eval_slice(std::span<const double> xp, double s,
                         std::span<const double> omega) const;

  /// Analytic global derivative; nullptr when not supplied.
  const SliceFunction* analytic_vartheta() const { return vartheta_.get(); }
  void set_vartheta(SliceFunction v);

 private:
  Kind kind_ = Kind::kRaw;
  AlgebraSignature sig_;
  StemFunction stem_;
  std::function<Multivector(const SplitPoint&)> raw_;
  std::shared_ptr<const SliceFunction> vartheta_;
};

/// F1(x_p, r) + omega * F2(x_p, r). Throws std::domain_error when r == 0 and
/// F2(x_p, 0) does not vanish (the induced value would depend on omega).
Multivector induce(const StemFunction& stem, const SplitPoint& x, const AlgebraSignature& sig);

/// Two-direction reconstruction
///   (omega - w2)(w1 - w2)^{-1} f(x_p + r w1) - (omega - w1)(w1 - w2)^{-1} f(x_p + r w2)
/// with omega the direction of x. Throws std::invalid_argument when w1 == w2.
Multivector representation_eval(const SliceFunction& f, const SplitPoint& x,
                                std::span<const double> omega1,
                                std::span<const double> omega2);

/// | f(x) - (1 - omega eta)/2 f(x_p + r eta) - (1 + omega eta)/2 f(x_p - r eta) |.
double representation_residual(const SliceFunction& f, const SplitPoint& x,
                               std::span<const double> eta);

/// Global operator D_{x_p} + (x_q/|x_q|^2) E_{x_q} at x. Uses analytic stem
/// partials when available, otherwise central differences of step h.
/// Throws std::domain_error when r <= 2h (singular coefficient region).
Multivector apply_vartheta(const SliceFunction& f, const SplitPoint& x, double h);

/// Slice form (D_{x_p} + omega d_r) along the slice of x; equals
/// apply_vartheta up to finite-difference error.
Multivector apply_slice_dirac(const SliceFunction& f, const SplitPoint& x, double h);

/// Cauchy-Riemann residual pair of a stem at (x_p, r):
///   ( D_{x_p}F1 - d_r F2,  conj(D_{x_p})F2 + d_r F1 )
/// with conj(D_{x_p}) = d_0 - sum_i e_i d_i. Both vanish exactly on stems of
/// functions annihilated by the global operator.
std::pair<Multivector, Multivector> cr_residual(const StemFunction& stem,
                                                const AlgebraSignature& sig,
                                                std::span<const double> xp, double r,
                                                double h);

/// Stem reweighted to (|r|^s F1, |r|^s F2). s = q-1 produces the radial
/// factor used by the orthogonal-decomposition construction.
SliceFunction radial_weight(const SliceFunction& f, double s);

// --- test-function catalogue -------------------------------------------------

struct CatalogueEntry {
  std::string name;
  SliceFunction f;
  bool gps = false;  // annihilated by the global operator
};

/// Constant function c.
SliceFunction make_constant(AlgebraSignature sig, Multivector c);
/// (x_0 + x_q) c, stem (x_0 c, r c).
SliceFunction make_linear_paravector(AlgebraSignature sig, Multivector c);
/// x_0^2, slice but not in the kernel of the global operator.
SliceFunction make_x0_squared(AlgebraSignature sig);
/// r^2 = |x_q|^2.
SliceFunction make_r_squared(AlgebraSignature sig);
/// x |-> slice Cauchy kernel with pole data y_star (monogenic for the global
/// operator away from the circularization of y_star).
SliceFunction make_kernel_section(AlgebraSignature sig, SplitPoint y_star);
/// f multiplied by a smooth mirrored bump vanishing (with all derivatives)
/// on the domain boundary. Keeps an analytic global derivative when f has
/// one.
SliceFunction make_bump_cutoff(const SliceFunction& f, const MirroredBallDomain& domain);

/// Members of the kernel of the global operator used by the integral tests.
std::vector<CatalogueEntry> gps_catalogue(AlgebraSignature sig);
/// Full catalogue: the above plus slice functions outside the kernel.
std::vector<CatalogueEntry> full_catalogue(AlgebraSignature sig);

}  // namespace gps
