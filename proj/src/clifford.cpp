#include "gps/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace gps {
namespace {

// Cached sign/index tables for n <= 8; larger algebras fall back to
// on-the-fly swap counting (kernel evaluation never needs n > 8).
constexpr int kMaxTabledN = 8;

struct ProductTable {
  std::vector<std::int8_t> sign;
  std::vector<std::uint16_t> index;
};

const ProductTable& product_table(int n) {
  static ProductTable tables[kMaxTabledN + 1];
  static std::once_flag built[kMaxTabledN + 1];
  std::call_once(built[n], [n] {
    const std::size_t dim = std::size_t{1} << n;
    ProductTable& t = tables[n];
    t.sign.resize(dim * dim);
    t.index.resize(dim * dim);
    for (unsigned a = 0; a < dim; ++a)
      for (unsigned b = 0; b < dim; ++b) {
        t.sign[a * dim + b] = static_cast<std::int8_t>(blade_product_sign(a, b));
        t.index[a * dim + b] = static_cast<std::uint16_t>(a ^ b);
      }
  });
  return tables[n];
}

}  // namespace

void AlgebraSignature::validate() const {
  if (p < 1) throw std::invalid_argument("p: must be >= 1");
  if (q < 2) throw std::invalid_argument("q: must be >= 2");
  if (n() > 12) throw std::invalid_argument("p: p + q must be <= 12");
}

int blade_grade(unsigned mask) { return std::popcount(mask); }

int blade_product_sign(unsigned a, unsigned b) {
  int sign = 1;
  unsigned rest = b;
  while (rest != 0) {
    const int j = std::countr_zero(rest);
    rest &= rest - 1;
    // e_j moves left past the generators of a above position j
    if (std::popcount(a >> (j + 1)) & 1) sign = -sign;
    if (a & (1u << j)) sign = -sign;  // contraction, e_j^2 = -1
  }
  return sign;
}

void Multivector::init_storage() {
  size_ = sig_.dim();
  if (size_ <= kInlineCap) {
    d_ = sbo_.data();
    std::fill_n(d_, size_, 0.0);
  } else {
    heap_ = std::make_unique<double[]>(size_);
    d_ = heap_.get();
    std::fill_n(d_, size_, 0.0);
  }
}

void Multivector::copy_from(const Multivector& o) {
  sig_ = o.sig_;
  size_ = o.size_;
  if (size_ <= kInlineCap) {
    heap_.reset();
    d_ = sbo_.data();
  } else {
    heap_ = std::make_unique<double[]>(size_);
    d_ = heap_.get();
  }
  std::copy_n(o.d_, size_, d_);
}

Multivector::Multivector(AlgebraSignature sig) : sig_(sig) { init_storage(); }

Multivector::Multivector(const Multivector& o) { copy_from(o); }

Multivector::Multivector(Multivector&& o) noexcept
    : sig_(o.sig_), size_(o.size_), sbo_(o.sbo_), heap_(std::move(o.heap_)) {
  d_ = heap_ ? heap_.get() : sbo_.data();
  o.size_ = 0;
  o.d_ = o.sbo_.data();
}

Multivector& Multivector::operator=(const Multivector& o) {
  if (this != &o) copy_from(o);
  return *this;
}

Multivector& Multivector::operator=(Multivector&& o) noexcept {
  if (this != &o) {
    sig_ = o.sig_;
    size_ = o.size_;
    sbo_ = o.sbo_;
    heap_ = std::move(o.heap_);
    d_ = heap_ ? heap_.get() : sbo_.data();
    o.size_ = 0;
    o.d_ = o.sbo_.data();
  }
  return *this;
}

void Multivector::set_zero() { std::fill_n(d_, size_, 0.0); }

Multivector Multivector::scalar(AlgebraSignature sig, double value) {
  Multivector m(sig);
  m[0] = value;
  return m;
}

Multivector Multivector::basis_vector(AlgebraSignature sig, int i) {
  if (i < 1 || i > sig.n()) throw std::invalid_argument("basis_vector: index out of range");
  Multivector m(sig);
  m[1u << (i - 1)] = 1.0;
  return m;
}

Multivector Multivector::blade(AlgebraSignature sig, unsigned mask, double value) {
  if (mask >= sig.dim()) throw std::invalid_argument("blade: mask out of range");
  Multivector m(sig);
  m[mask] = value;
  return m;
}

Multivector Multivector::grade(int k) const {
  Multivector out(sig_);
  for (std::size_t b = 0; b < size_; ++b)
    if (blade_grade(static_cast<unsigned>(b)) == k) out[b] = d_[b];
  return out;
}

int Multivector::max_grade(double tol) const {
  int g = 0;
  for (std::size_t b = 0; b < size_; ++b)
    if (std::abs(d_[b]) > tol) g = std::max(g, blade_grade(static_cast<unsigned>(b)));
  return g;
}

Multivector Multivector::conjugate() const {
  Multivector out(sig_);
  for (std::size_t b = 0; b < size_; ++b) {
    const int k = blade_grade(static_cast<unsigned>(b));
    out[b] = ((k * (k + 1) / 2) & 1) ? -d_[b] : d_[b];
  }
  return out;
}

Multivector Multivector::reverse() const {
  Multivector out(sig_);
  for (std::size_t b = 0; b < size_; ++b) {
    const int k = blade_grade(static_cast<unsigned>(b));
    out[b] = ((k * (k - 1) / 2) & 1) ? -d_[b] : d_[b];
  }
  return out;
}

double Multivector::norm() const {
  double s = 0.0;
  for (std::size_t b = 0; b < size_; ++b) s += d_[b] * d_[b];
  return std::sqrt(s);
}

bool Multivector::is_finite() const {
  for (std::size_t b = 0; b < size_; ++b)
    if (!std::isfinite(d_[b])) return false;
  return true;
}

bool Multivector::is_paravector(double tol) const {
  for (std::size_t b = 0; b < size_; ++b)
    if (blade_grade(static_cast<unsigned>(b)) > 1 && std::abs(d_[b]) > tol) return false;
  return true;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("Multivector: signature mismatch");
  for (std::size_t b = 0; b < size_; ++b) d_[b] += o.d_[b];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("Multivector: signature mismatch");
  for (std::size_t b = 0; b < size_; ++b) d_[b] -= o.d_[b];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (std::size_t b = 0; b < size_; ++b) d_[b] *= s;
  return *this;
}

Multivector Multivector::operator-() const {
  Multivector out = *this;
  return out *= -1.0;
}

void Multivector::add_scaled(const Multivector& o, double w) {
  if (!(sig_ == o.sig_)) throw std::invalid_argument("add_scaled: signature mismatch");
  for (std::size_t b = 0; b < size_; ++b) d_[b] += w * o.d_[b];
}

void mul_into(Multivector& out, const Multivector& a, const Multivector& b) {
  out.set_zero();
  mul_acc(out, a, b, 1.0);
}

void mul_acc(Multivector& out, const Multivector& a, const Multivector& b, double w) {
  if (!(a.signature() == b.signature()) || !(a.signature() == out.signature()))
    throw std::invalid_argument("mul_acc: signature mismatch");
  const int n = a.signature().n();
  const std::size_t dim = a.signature().dim();
  if (n <= kMaxTabledN) {
    const ProductTable& t = product_table(n);
    for (unsigned i = 0; i < dim; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const double wa = w * ai;
      const std::int8_t* srow = t.sign.data() + std::size_t{i} * dim;
      const std::uint16_t* irow = t.index.data() + std::size_t{i} * dim;
      for (unsigned j = 0; j < dim; ++j) {
        const double bj = b[j];
        if (bj == 0.0) continue;
        out[irow[j]] += srow[j] * wa * bj;
      }
    }
  } else {
    for (unsigned i = 0; i < dim; ++i) {
      const double ai = a[i];
      if (ai == 0.0) continue;
      const double wa = w * ai;
      for (unsigned j = 0; j < dim; ++j) {
        const double bj = b[j];
        if (bj == 0.0) continue;
        out[i ^ j] += blade_product_sign(i, j) * wa * bj;
      }
    }
  }
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  Multivector out(a.signature());
  mul_acc(out, a, b, 1.0);
  return out;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }
Multivector clifford_conjugate(const Multivector& a) { return a.conjugate(); }
Multivector reversion(const Multivector& a) { return a.reverse(); }
double norm(const Multivector& a) { return a.norm(); }

Multivector paravector_inverse(const Multivector& x, double tol) {
  const double nx = x.norm();
  if (nx == 0.0) throw std::domain_error("paravector_inverse: zero paravector");
  if (!x.is_paravector(tol * nx))
    throw std::domain_error("paravector_inverse: input has grades above 1");
  Multivector out = x.conjugate();
  return out *= 1.0 / (nx * nx);
}

SplitPoint SplitPoint::from_ambient(std::span<const double> x, const AlgebraSignature& sig) {
  if (static_cast<int>(x.size()) != sig.n() + 1)
    throw std::invalid_argument("SplitPoint: expected p+q+1 coordinates");
  SplitPoint pt;
  pt.xp.assign(x.begin(), x.begin() + sig.p + 1);
  pt.xq.assign(x.begin() + sig.p + 1, x.end());
  double r2 = 0.0;
  for (double v : pt.xq) r2 += v * v;
  pt.r = std::sqrt(r2);
  if (pt.r > 0.0) {
    pt.omega.resize(pt.xq.size());
    for (std::size_t i = 0; i < pt.xq.size(); ++i) pt.omega[i] = pt.xq[i] / pt.r;
  }
  return pt;
}

SplitPoint SplitPoint::from_polar(std::vector<double> xp, double r, std::vector<double> omega) {
  if (r < 0.0) throw std::invalid_argument("SplitPoint: r must be >= 0");
  SplitPoint pt;
  pt.xp = std::move(xp);
  pt.r = r;
  pt.omega = std::move(omega);
  pt.xq.resize(pt.omega.size(), 0.0);
  for (std::size_t i = 0; i < pt.omega.size(); ++i) pt.xq[i] = r * pt.omega[i];
  return pt;
}

std::vector<double> SplitPoint::ambient() const {
  std::vector<double> x(xp);
  x.insert(x.end(), xq.begin(), xq.end());
  return x;
}

Multivector embed_point(const SplitPoint& pt, const AlgebraSignature& sig) {
  if (static_cast<int>(pt.xp.size()) != sig.p + 1 ||
      static_cast<int>(pt.xq.size()) != sig.q)
    throw std::invalid_argument("embed_point: point does not match signature");
  Multivector m(sig);
  m[0] = pt.xp[0];
  for (int i = 1; i <= sig.p; ++i) m[1u << (i - 1)] = pt.xp[i];
  for (int j = 0; j < sig.q; ++j) m[1u << (sig.p + j)] = pt.xq[j];
  return m;
}

Multivector embed_direction(std::span<const double> omega, const AlgebraSignature& sig) {
  if (static_cast<int>(omega.size()) != sig.q)
    throw std::invalid_argument("embed_direction: expected q components");
  Multivector m(sig);
  for (int j = 0; j < sig.q; ++j) m[1u << (sig.p + j)] = omega[j];
  return m;
}

}  // namespace gps
