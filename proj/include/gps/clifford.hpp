#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace gps {

/// Signature of the real Clifford algebra R_{p+q} with e_i^2 = -1.
/// The first p generators (plus the scalar e_0) span the slice-stable
/// paravector block, the last q generators carry the sphere directions.
struct AlgebraSignature {
  int p = 1;
  int q = 2;

  int n() const { return p + q; }
  std::size_t dim() const { return std::size_t{1} << n(); }

  /// Throws std::invalid_argument unless p >= 1, q >= 2, p + q <= 12.
  void validate() const;

  friend bool operator==(const AlgebraSignature&, const AlgebraSignature&) = default;
};

/// Grade of the basis blade with the given generator bitmask.
int blade_grade(unsigned mask);

/// Sign of e_A * e_B from swap counting and generator contraction
/// (each shared generator contributes e_i^2 = -1). Result blade is A xor B.
int blade_product_sign(unsigned a, unsigned b);

/// Dense multivector: coefficient c[b] multiplies the blade whose generator
/// set is the bit pattern of b (b = 0 is the scalar). Coefficients live
/// inline up to n = 4; larger algebras spill to the heap.
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(AlgebraSignature sig);
  Multivector(const Multivector& o);
  Multivector(Multivector&& o) noexcept;
  Multivector& operator=(const Multivector& o);
  Multivector& operator=(Multivector&& o) noexcept;
  ~Multivector() = default;

  static Multivector scalar(AlgebraSignature sig, double value);
  /// e_i for 1 <= i <= n.
  static Multivector basis_vector(AlgebraSignature sig, int i);
  static Multivector blade(AlgebraSignature sig, unsigned mask, double value);

  AlgebraSignature signature() const { return sig_; }
  std::size_t size() const { return size_; }
  double operator[](std::size_t b) const { return d_[b]; }
  double& operator[](std::size_t b) { return d_[b]; }
  std::span<const double> coeffs() const { return {d_, size_}; }
  void set_zero();

  double scalar_part() const { return size_ ? d_[0] : 0.0; }
  Multivector grade(int k) const;
  /// Largest grade with a coefficient above tol.
  int max_grade(double tol = 0.0) const;

  Multivector conjugate() const;  // grade k scaled by (-1)^{k(k+1)/2}
  Multivector reverse() const;    // grade k scaled by (-1)^{k(k-1)/2}
  double norm() const;            // sqrt(sum of squared coefficients)
  bool is_finite() const;

  /// True when only grades {0,1} carry weight above tol.
  bool is_paravector(double tol = 0.0) const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);
  Multivector operator-() const;

  /// this += w * o, no allocation.
  void add_scaled(const Multivector& o, double w);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a *= 1.0 / s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

 private:
  static constexpr std::size_t kInlineCap = 16;
  void init_storage();
  void copy_from(const Multivector& o);

  AlgebraSignature sig_;
  std::size_t size_ = 0;
  std::array<double, kInlineCap> sbo_{};
  std::unique_ptr<double[]> heap_;
  double* d_ = sbo_.data();
};

/// out = a * b. Requires matching signatures and preallocated out.
void mul_into(Multivector& out, const Multivector& a, const Multivector& b);

/// out += w * (a * b) without allocating.
void mul_acc(Multivector& out, const Multivector& a, const Multivector& b, double w = 1.0);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector clifford_conjugate(const Multivector& a);
Multivector reversion(const Multivector& a);
double norm(const Multivector& a);

/// Inverse of a nonzero paravector: conj(x) / |x|^2.
/// Throws std::domain_error on zero norm or non-paravector input.
Multivector paravector_inverse(const Multivector& x, double tol = 1e-12);

/// Point of R^{p+q+1} split as (x_p, x_q) with cached polar data of x_q.
struct SplitPoint {
  std::vector<double> xp;     // coordinates x_0 .. x_p
  std::vector<double> xq;     // coordinates x_{p+1} .. x_{p+q}
  double r = 0.0;             // |x_q|
  std::vector<double> omega;  // x_q / r; empty when r == 0

  static SplitPoint from_ambient(std::span<const double> x, const AlgebraSignature& sig);
  static SplitPoint from_polar(std::vector<double> xp, double r, std::vector<double> omega);

  std::vector<double> ambient() const;
};

/// x_0 + sum_i x_i e_i as an element of R_{p+q}.
Multivector embed_point(const SplitPoint& pt, const AlgebraSignature& sig);

/// Unit direction in R^q as a grade-1 element on generators e_{p+1}..e_{p+q}.
Multivector embed_direction(std::span<const double> omega, const AlgebraSignature& sig);

}  // namespace gps
