#ifndef HCC_SCALAR_HPP
#define HCC_SCALAR_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hcc {

/// Exact Gaussian rational a + b*i with a, b arbitrary-precision rationals.
/// Both components are kept in lowest terms with positive denominator
/// (mpq_class canonical form), so equality is plain component comparison.
class Scalar {
public:
  Scalar() : re_(0), im_(0) {}
  Scalar(long v) : re_(v), im_(0) {}
  Scalar(long num, long den) : re_(num, den), im_(0) { re_.canonicalize(); }
  Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }
  static Scalar rational(long num, long den) { return Scalar(num, den); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }
  bool is_integer() const { return im_ == 0 && re_.get_den() == 1; }

  Scalar operator-() const { return Scalar(-re_, -im_); }

  Scalar& operator+=(const Scalar& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
    if (n == 0) throw std::domain_error("Scalar: division by zero");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const {
    Scalar r = one();
    r /= *this;
    return r;
  }

  /// Total order suitable for map keys (not compatible with arithmetic).
  friend int key_cmp(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c;
    return cmp(a.im_, b.im_);
  }
  friend bool key_less(const Scalar& a, const Scalar& b) { return key_cmp(a, b) < 0; }

  double to_double_re() const { return re_.get_d(); }
  double to_double_im() const { return im_.get_d(); }

  std::string str() const {
    if (im_ == 0) return re_.get_str();
    std::string s = re_ == 0 ? std::string() : re_.get_str();
    std::string im = im_.get_str();
    if (!s.empty() && im[0] != '-') s += "+";
    s += im + "i";
    return s;
  }

private:
  mpq_class re_, im_;
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

/// Factorial as an exact rational (used by simplex and series formulas).
inline mpq_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return mpq_class(f);
}

/// Deterministic splitmix64 generator: sampling must be identical across
/// platforms, so no std::distribution is used anywhere.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  /// Small random rational with numerator in [-9, 9], denominator in [1, 9].
  Scalar small_rational() {
    long num = static_cast<long>(below(19)) - 9;
    long den = static_cast<long>(below(9)) + 1;
    return Scalar(num, den);
  }
  /// Nonzero variant of small_rational().
  Scalar small_rational_nonzero() {
    for (;;) {
      Scalar s = small_rational();
      if (!s.is_zero()) return s;
    }
  }
  /// Small Gaussian rational a + bi.
  Scalar small_gaussian() {
    Scalar re = small_rational();
    Scalar im = small_rational();
    return re + im * Scalar::i();
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

}  // namespace hcc

#endif
