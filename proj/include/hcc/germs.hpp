#ifndef HCC_GERMS_HPP
#define HCC_GERMS_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hcc/hopf.hpp"
#include "hcc/scalar.hpp"

namespace hcc::germs {

/// Thrown when an operation needs jet data beyond the truncation order.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

using Poly = std::vector<Scalar>;  // coeff[i] multiplies x^i

inline void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

inline Poly scale(Poly a, const Scalar& s) {
  for (auto& c : a) c *= s;
  trim(a);
  return a;
}

/// Product truncated to degree T inclusive.
inline Poly mul_trunc(const Poly& a, const Poly& b, int T) {
  Poly r;
  if (a.empty() || b.empty()) return r;
  r.assign(std::min<std::size_t>(a.size() + b.size() - 1, T + 1), Scalar());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(T); ++j)
      r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline Poly pow_trunc(const Poly& a, int e, int T) {
  Poly r = {Scalar::one()};
  for (int k = 0; k < e; ++k) r = mul_trunc(r, a, T);
  return r;
}

/// Series inverse of a with a(0) != 0, to degree T.
inline Poly inv_trunc(const Poly& a, int T) {
  if (a.empty() || a[0].is_zero()) throw std::domain_error("series not invertible");
  Poly r(T + 1);
  r[0] = a[0].inverse();
  for (int n = 1; n <= T; ++n) {
    Scalar s;
    for (int k = 1; k <= n; ++k) {
      if (k < static_cast<int>(a.size())) s += a[k] * r[n - k];
    }
    r[n] = -(s * r[0]);
  }
  trim(r);
  return r;
}

/// log of a with a(0) = 1, to degree T: log a = integral of a'/a.
inline Poly log_trunc(const Poly& a, int T) {
  if (a.empty() || !a[0].is_one()) throw std::domain_error("log needs unit constant term");
  Poly da(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i) da[i - 1] = Scalar(static_cast<long>(i)) * a[i];
  Poly q = mul_trunc(da, inv_trunc(a, T), T);
  Poly r(T + 1);
  for (int i = 0; i < T && i < static_cast<int>(q.size()); ++i)
    r[i + 1] = q[i] / Scalar(static_cast<long>(i + 1));
  trim(r);
  return r;
}

/// Composition a(b(x)) truncated to degree T; requires b(0) = 0.
inline Poly compose_trunc(const Poly& a, const Poly& b, int T) {
  if (!b.empty() && !b[0].is_zero()) throw std::domain_error("compose needs b(0)=0");
  Poly r, bp = {Scalar::one()};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero()) r = add(r, scale(bp, a[i]));
    if (i + 1 < a.size()) bp = mul_trunc(bp, b, T);
  }
  trim(r);
  return r;
}

inline Poly derivative(const Poly& a) {
  Poly r(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = Scalar(static_cast<long>(i)) * a[i];
  return r;
}

/// Compositional inverse of a = x + ..., to degree T.
inline Poly revert(const Poly& a, int T) {
  if (a.size() < 2 || !a[0].is_zero() || !a[1].is_one())
    throw std::domain_error("revert needs a = x + O(x^2)");
  Poly b = {Scalar(), Scalar::one()};
  for (int n = 2; n <= T; ++n) {
    // Choose b_n killing the x^n coefficient of a(b(x)).
    Poly comp = compose_trunc(a, b, n);
    Scalar err = n < static_cast<int>(comp.size()) ? comp[n] : Scalar();
    b.resize(n + 1);
    b[n] = -err;
  }
  return b;
}

}  // namespace detail

class Germ;
int germ_cmp(const Germ& a, const Germ& b);

/// Truncated formal conformal germ: the order-N jet of psi(x) = x + c2 x^2 +
/// ... + cN x^N together with an independent antiholomorphic jet. The jets
/// of fixed order form a group under composition-then-truncation.
class Germ {
public:
  explicit Germ(int order) : order_(order) {
    if (order < 2) throw std::invalid_argument("germ order must be >= 2");
    hol_.assign(order + 1, Scalar());
    bar_.assign(order + 1, Scalar());
    hol_[1] = Scalar::one();
    bar_[1] = Scalar::one();
  }

  static Germ identity(int order) { return Germ(order); }

  /// Builds from the coefficient lists (c2, ..., cN) per sector.
  static Germ from_coeffs(int order, const std::vector<Scalar>& hol,
                          const std::vector<Scalar>& bar = {}) {
    Germ g(order);
    if (static_cast<int>(hol.size()) > order - 1 ||
        static_cast<int>(bar.size()) > order - 1)
      throw TruncationError("germ coefficients beyond truncation order");
    for (std::size_t i = 0; i < hol.size(); ++i) g.hol_[i + 2] = hol[i];
    for (std::size_t i = 0; i < bar.size(); ++i) g.bar_[i + 2] = bar[i];
    return g;
  }

  int order() const { return order_; }
  bool is_identity() const {
    for (int i = 2; i <= order_; ++i)
      if (!hol_[i].is_zero() || !bar_[i].is_zero()) return false;
    return true;
  }

  const detail::Poly& hol() const { return hol_; }
  const detail::Poly& bar() const { return bar_; }
  Scalar coeff(int k) const { return k < static_cast<int>(hol_.size()) ? hol_[k] : Scalar(); }
  Scalar coeff_bar(int k) const { return k < static_cast<int>(bar_.size()) ? bar_[k] : Scalar(); }

  /// Group law: (g o h)(x) = g(h(x)) truncated at the jet order.
  friend Germ compose(const Germ& g, const Germ& h) {
    if (g.order_ != h.order_) throw TruncationError("germ order mismatch");
    Germ r(g.order_);
    r.hol_ = detail::compose_trunc(g.hol_, h.hol_, g.order_);
    r.bar_ = detail::compose_trunc(g.bar_, h.bar_, g.order_);
    r.hol_.resize(g.order_ + 1);
    r.bar_.resize(g.order_ + 1);
    return r;
  }

  Germ inverse() const {
    Germ r(order_);
    r.hol_ = detail::revert(hol_, order_);
    r.bar_ = detail::revert(bar_, order_);
    r.hol_.resize(order_ + 1);
    r.bar_.resize(order_ + 1);
    return r;
  }

  /// delta_n coordinate: n! times the x^n coefficient of ln psi'.
  Scalar delta(int n) const { return delta_impl(hol_, n); }
  Scalar delta_bar(int n) const { return delta_impl(bar_, n); }

  /// ln psi' as a truncated series (degrees 0..N-1 are jet-determined).
  detail::Poly log_deriv() const {
    return detail::log_trunc(normalized_deriv(hol_), order_ - 1);
  }
  detail::Poly log_deriv_bar() const {
    return detail::log_trunc(normalized_deriv(bar_), order_ - 1);
  }

  /// Exact value of y0^n (d^n_z ln psi')(z0) for the literal jet polynomial,
  /// via the rational recurrence d^{n} ln psi' = P_n / (psi')^n.
  Scalar delta_at(int n, const Scalar& y0, const Scalar& z0, bool barred = false) const {
    if (n < 1) throw std::invalid_argument("delta_at needs n >= 1");
    const detail::Poly& f = barred ? bar_ : hol_;
    detail::Poly fp = detail::derivative(f);
    detail::Poly fpp = detail::derivative(fp);
    // P_1 = psi''; P_{k+1} = P_k' psi' - k P_k psi''.
    detail::Poly P = fpp;
    for (int k = 1; k < n; ++k) {
      detail::Poly Pd = detail::derivative(P);
      int T = static_cast<int>(Pd.size() + fp.size());
      P = detail::add(detail::mul_trunc(Pd, fp, T),
                      detail::scale(detail::mul_trunc(P, fpp, T), Scalar(-k)));
    }
    Scalar denom = eval(fp, z0);
    if (denom.is_zero()) throw std::domain_error("frame degenerate: psi'(z0) = 0");
    Scalar r = eval(P, z0);
    Scalar dpow = Scalar::one();
    for (int k = 0; k < n; ++k) dpow *= denom;
    Scalar ypow = Scalar::one();
    for (int k = 0; k < n; ++k) ypow *= y0;
    return ypow * r / dpow;
  }

  /// Right translation by the affine frame k = (y, z): conjugates the jet by
  /// x -> y x + z and renormalizes into the subgroup fixing 0 with slope 1.
  Germ right_translate(const Scalar& y, const Scalar& z, const Scalar& ybar,
                       const Scalar& zbar) const {
    Germ r(order_);
    r.hol_ = translate_jet(hol_, y, z, order_);
    r.bar_ = translate_jet(bar_, ybar, zbar, order_);
    return r;
  }

  friend int germ_cmp(const Germ& a, const Germ& b) {
    if (a.order_ != b.order_) return a.order_ < b.order_ ? -1 : 1;
    for (int i = 2; i <= a.order_; ++i) {
      int c = key_cmp(a.hol_[i], b.hol_[i]);
      if (c != 0) return c;
      c = key_cmp(a.bar_[i], b.bar_[i]);
      if (c != 0) return c;
    }
    return 0;
  }
  friend bool operator==(const Germ& a, const Germ& b) { return germ_cmp(a, b) == 0; }

  std::string str() const {
    std::string s = "x";
    for (int i = 2; i <= order_; ++i)
      if (!hol_[i].is_zero()) s += " + (" + hol_[i].str() + ")x^" + std::to_string(i);
    std::string t = "xb";
    for (int i = 2; i <= order_; ++i)
      if (!bar_[i].is_zero()) t += " + (" + bar_[i].str() + ")xb^" + std::to_string(i);
    return s + " | " + t;
  }

private:
  Scalar delta_impl(const detail::Poly& f, int n) const {
    if (n < 1 || n > order_ - 1)
      throw TruncationError("delta index outside truncated range");
    detail::Poly ld = detail::log_trunc(normalized_deriv(f), order_ - 1);
    Scalar c = n < static_cast<int>(ld.size()) ? ld[n] : Scalar();
    return Scalar(mpq_class(factorial(static_cast<unsigned>(n))), mpq_class(0)) * c;
  }

  static detail::Poly normalized_deriv(const detail::Poly& f) {
    detail::Poly d = detail::derivative(f);
    if (d.empty() || !d[0].is_one())
      throw std::domain_error("germ derivative not normalized");
    return d;
  }

  static Scalar eval(const detail::Poly& p, const Scalar& x) {
    Scalar r;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
  }

  static detail::Poly translate_jet(const detail::Poly& f, const Scalar& y,
                                    const Scalar& z, int order) {
    // (psi <| k)(x) = [psi(yx+z) - psi(z)] / (psi'(z) y); exact polynomial.
    detail::Poly fp = detail::derivative(f);
    Scalar slope = eval(fp, z);
    if (slope.is_zero() || y.is_zero())
      throw std::domain_error("degenerate affine frame");
    // Expand psi(yx + z) by Taylor shift then scaling.
    // Shift: psi(u + z) = sum_k psi^{(k)}(z) u^k / k!.
    detail::Poly shifted(f.size());
    detail::Poly der = f;
    mpq_class kfact(1);
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k > 0) kfact *= static_cast<long>(k);
      shifted[k] = eval(der, z) / Scalar(mpq_class(kfact), mpq_class(0));
      der = detail::derivative(der);
    }
    // Scale u = y x and renormalize.
    Scalar inv = (slope * y).inverse();
    detail::Poly out(order + 1);
    Scalar ypow = Scalar::one();
    for (int k = 1; k <= order && k < static_cast<int>(shifted.size()); ++k) {
      ypow *= y;
      out[k] = shifted[k] * ypow * inv;
    }
    return out;
  }

  int order_;
  detail::Poly hol_, bar_;
};

struct GermLess {
  bool operator()(const Germ& a, const Germ& b) const { return germ_cmp(a, b) < 0; }
};

/// Affine frame (y, z) with the antiholomorphic pair carried as independent
/// symbols; y and ybar must be invertible.
struct AffineFrame {
  Scalar y, z, ybar, zbar;
  AffineFrame(Scalar y_, Scalar z_, Scalar ybar_, Scalar zbar_)
      : y(std::move(y_)), z(std::move(z_)), ybar(std::move(ybar_)), zbar(std::move(zbar_)) {
    if (y.is_zero() || ybar.is_zero()) throw std::domain_error("frame scale must be nonzero");
  }
};

inline Germ right_translate(const Germ& g, const AffineFrame& k) {
  return g.right_translate(k.y, k.z, k.ybar, k.zbar);
}

/// Validity sentinel: the function is an honest polynomial in that variable.
constexpr int kExactOrd = 1 << 20;

struct FrameKey {
  int ez{0}, ezb{0}, ey{0}, eyb{0};
  friend auto operator<=>(const FrameKey&, const FrameKey&) = default;
};

/// Polynomial model of a smooth function on the frame bundle: a truncated
/// power series in z, zbar whose coefficients are Laurent monomials in y,
/// ybar. Each variable carries a validity order: coefficients of z^m are
/// trustworthy only for m <= ord_z, reflecting what an order-N jet of the
/// group element can determine. Operations propagate validity; comparisons
/// are made inside the common window.
class FrameFn {
public:
  FrameFn() = default;
  explicit FrameFn(const Scalar& c) {
    if (!c.is_zero()) terms_[FrameKey{}] = c;
  }

  static FrameFn monomial(int ez, int ezb, int ey, int eyb,
                          const Scalar& c = Scalar::one()) {
    FrameFn f;
    if (ez < 0 || ezb < 0) throw std::invalid_argument("negative z degree");
    if (!c.is_zero()) f.terms_[FrameKey{ez, ezb, ey, eyb}] = c;
    return f;
  }
  static FrameFn z(int e = 1) { return monomial(e, 0, 0, 0); }
  static FrameFn zbar(int e = 1) { return monomial(0, e, 0, 0); }
  static FrameFn y(int e = 1) { return monomial(0, 0, e, 0); }
  static FrameFn ybar(int e = 1) { return monomial(0, 0, 0, e); }

  const std::map<FrameKey, Scalar>& terms() const { return terms_; }
  bool has_terms() const { return !terms_.empty(); }
  int ord_z() const { return ord_z_; }
  int ord_zb() const { return ord_zb_; }

  void restrict_validity(int oz, int ozb) {
    ord_z_ = std::min(ord_z_, oz);
    ord_zb_ = std::min(ord_zb_, ozb);
    truncate();
  }

  FrameFn& operator+=(const FrameFn& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    ord_z_ = std::min(ord_z_, o.ord_z_);
    ord_zb_ = std::min(ord_zb_, o.ord_zb_);
    truncate();
    return *this;
  }
  FrameFn& operator-=(const FrameFn& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    ord_z_ = std::min(ord_z_, o.ord_z_);
    ord_zb_ = std::min(ord_zb_, o.ord_zb_);
    truncate();
    return *this;
  }
  FrameFn operator-() const {
    FrameFn r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }
  FrameFn& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend FrameFn operator+(FrameFn a, const FrameFn& b) { return a += b; }
  friend FrameFn operator-(FrameFn a, const FrameFn& b) { return a -= b; }
  friend FrameFn operator*(const Scalar& s, FrameFn a) { return a *= s; }

  friend FrameFn operator*(const FrameFn& a, const FrameFn& b) {
    FrameFn r;
    if (a.terms_.empty() || b.terms_.empty()) {
      // Exact zero: validity is unconstrained.
      return r;
    }
    r.ord_z_ = std::min(a.ord_z_, b.ord_z_);
    r.ord_zb_ = std::min(a.ord_zb_, b.ord_zb_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        FrameKey k{ka.ez + kb.ez, ka.ezb + kb.ezb, ka.ey + kb.ey, ka.eyb + kb.eyb};
        if (k.ez > r.ord_z_ || k.ezb > r.ord_zb_) continue;
        r.add_term(k, ca * cb);
      }
    return r;
  }

  /// d/dz: drops the z validity order by one.
  FrameFn dz() const {
    FrameFn r;
    r.ord_z_ = ord_z_ == kExactOrd ? kExactOrd : ord_z_ - 1;
    r.ord_zb_ = ord_zb_;
    for (const auto& [k, c] : terms_)
      if (k.ez > 0)
        r.add_term(FrameKey{k.ez - 1, k.ezb, k.ey, k.eyb}, Scalar(k.ez) * c);
    return r;
  }
  FrameFn dzb() const {
    FrameFn r;
    r.ord_z_ = ord_z_;
    r.ord_zb_ = ord_zb_ == kExactOrd ? kExactOrd : ord_zb_ - 1;
    for (const auto& [k, c] : terms_)
      if (k.ezb > 0)
        r.add_term(FrameKey{k.ez, k.ezb - 1, k.ey, k.eyb}, Scalar(k.ezb) * c);
    return r;
  }
  /// d/dy as a formal Laurent derivative (exact).
  FrameFn dy() const {
    FrameFn r;
    r.ord_z_ = ord_z_;
    r.ord_zb_ = ord_zb_;
    for (const auto& [k, c] : terms_)
      if (k.ey != 0)
        r.add_term(FrameKey{k.ez, k.ezb, k.ey - 1, k.eyb}, Scalar(k.ey) * c);
    return r;
  }
  FrameFn dyb() const {
    FrameFn r;
    r.ord_z_ = ord_z_;
    r.ord_zb_ = ord_zb_;
    for (const auto& [k, c] : terms_)
      if (k.eyb != 0)
        r.add_term(FrameKey{k.ez, k.ezb, k.ey, k.eyb - 1}, Scalar(k.eyb) * c);
    return r;
  }

  FrameFn mul_y_pow(int p, int q) const {
    FrameFn r;
    r.ord_z_ = ord_z_;
    r.ord_zb_ = ord_zb_;
    for (const auto& [k, c] : terms_)
      r.terms_[FrameKey{k.ez, k.ezb, k.ey + p, k.eyb + q}] = c;
    return r;
  }

  /// The four frame vector fields.
  FrameFn X() const { return dz().mul_y_pow(1, 0); }          // y d/dz
  FrameFn Xbar() const { return dzb().mul_y_pow(0, 1); }      // ybar d/dzbar
  FrameFn Yop() const {                                       // y d/dy
    FrameFn r;
    r.ord_z_ = ord_z_;
    r.ord_zb_ = ord_zb_;
    for (const auto& [k, c] : terms_)
      if (k.ey != 0) r.add_term(k, Scalar(k.ey) * c);
    return r;
  }
  FrameFn Ybarop() const {
    FrameFn r;
    r.ord_z_ = ord_z_;
    r.ord_zb_ = ord_zb_;
    for (const auto& [k, c] : terms_)
      if (k.eyb != 0) r.add_term(k, Scalar(k.eyb) * c);
    return r;
  }

  /// Pullback along the frame-bundle action of a germ:
  /// z -> psi(z), y -> psi'(z) y, and the barred sector likewise.
  FrameFn pullback(const Germ& g) const {
    if (g.is_identity()) return *this;
    const int N = g.order();
    FrameFn r;
    // Validity bookkeeping: a monomial touching the holomorphic germ data is
    // valid to N + ez - 1 when ez >= 1, to N - 1 when only psi' enters.
    int oz = ord_z_, ozb = ord_zb_;
    for (const auto& [k, c] : terms_) {
      if (k.ez > 0)
        oz = std::min(oz, N + k.ez - 1);
      else if (k.ey != 0)
        oz = std::min(oz, N - 1);
      if (k.ezb > 0)
        ozb = std::min(ozb, N + k.ezb - 1);
      else if (k.eyb != 0)
        ozb = std::min(ozb, N - 1);
    }
    r.ord_z_ = oz;
    r.ord_zb_ = ozb;
    const int Tz = std::min(oz, 4 * N);
    const int Tzb = std::min(ozb, 4 * N);
    detail::Poly dh = detail::derivative(g.hol());
    detail::Poly db = detail::derivative(g.bar());
    for (const auto& [k, c] : terms_) {
      detail::Poly A = detail::pow_trunc(g.hol(), k.ez, Tz);
      if (k.ey > 0)
        A = detail::mul_trunc(A, detail::pow_trunc(dh, k.ey, Tz), Tz);
      else if (k.ey < 0)
        A = detail::mul_trunc(A, detail::pow_trunc(detail::inv_trunc(dh, Tz), -k.ey, Tz), Tz);
      detail::Poly B = detail::pow_trunc(g.bar(), k.ezb, Tzb);
      if (k.eyb > 0)
        B = detail::mul_trunc(B, detail::pow_trunc(db, k.eyb, Tzb), Tzb);
      else if (k.eyb < 0)
        B = detail::mul_trunc(B, detail::pow_trunc(detail::inv_trunc(db, Tzb), -k.eyb, Tzb), Tzb);
      for (int i = 0; i < static_cast<int>(A.size()); ++i) {
        if (A[i].is_zero() || i > Tz) continue;
        for (int j = 0; j < static_cast<int>(B.size()); ++j) {
          if (B[j].is_zero() || j > Tzb) continue;
          r.add_term(FrameKey{i, j, k.ey, k.eyb}, c * A[i] * B[j]);
        }
      }
    }
    r.truncate();
    return r;
  }

  /// Exact equality of all coefficients inside the common validity window.
  /// Throws when the window has collapsed.
  friend bool equal_within(const FrameFn& a, const FrameFn& b) {
    int wz = std::min(a.ord_z_, b.ord_z_);
    int wzb = std::min(a.ord_zb_, b.ord_zb_);
    if (wz < 0 || wzb < 0)
      throw TruncationError("validity window collapsed in comparison");
    auto within = [&](const FrameKey& k) { return k.ez <= wz && k.ezb <= wzb; };
    for (const auto& [k, c] : a.terms_)
      if (within(k) && !(b.get(k) == c)) return false;
    for (const auto& [k, c] : b.terms_)
      if (within(k) && !(a.get(k) == c)) return false;
    return true;
  }

  bool is_zero_within() const {
    if (ord_z_ < 0 || ord_zb_ < 0)
      throw TruncationError("validity window collapsed in comparison");
    for (const auto& [k, c] : terms_)
      if (k.ez <= ord_z_ && k.ezb <= ord_zb_ && !c.is_zero()) return false;
    return true;
  }

  Scalar get(const FrameKey& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar() : it->second;
  }
  Scalar constant_part() const { return get(FrameKey{}); }
  bool is_constant() const {
    for (const auto& [k, c] : terms_)
      if (k != FrameKey{}) return false;
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    auto var = [](const char* n, int e) -> std::string {
      if (e == 0) return "";
      std::string r = std::string(".") + n;
      if (e != 1) r += "^" + std::to_string(e);
      return r;
    };
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")" + var("z", k.ez) + var("w", k.ezb) + var("y", k.ey) +
           var("u", k.eyb);
    }
    return s;
  }

private:
  void add_term(const FrameKey& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_[k] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  void truncate() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first.ez > ord_z_ || it->first.ezb > ord_zb_)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  std::map<FrameKey, Scalar> terms_;
  int ord_z_ = kExactOrd;
  int ord_zb_ = kExactOrd;
};

/// Series multiplier of the delta_n action on a crossed term over germ g:
/// y^n (d^n_z ln psi')(z) expanded around z = 0, valid to order N-1-n.
inline FrameFn delta_action_series(const Germ& g, int n, bool barred = false) {
  const int N = g.order();
  if (n < 1 || n > N - 1) throw TruncationError("delta action outside truncation order");
  detail::Poly ld = barred ? g.log_deriv_bar() : g.log_deriv();
  FrameFn out;
  // d^n of sum_k ld_k z^k = sum_{m} ld_{n+m} (n+m)!/m! z^m.
  for (int m = 0; n + m < static_cast<int>(ld.size()); ++m) {
    if (ld[n + m].is_zero()) continue;
    mpq_class f = factorial(static_cast<unsigned>(n + m)) /
                  factorial(static_cast<unsigned>(m));
    Scalar c = Scalar(f, mpq_class(0)) * ld[n + m];
    if (barred)
      out += FrameFn::monomial(0, m, 0, n, c);
    else
      out += FrameFn::monomial(m, 0, n, 0, c);
  }
  if (barred)
    out.restrict_validity(kExactOrd, N - 1 - n);
  else
    out.restrict_validity(N - 1 - n, kExactOrd);
  return out;
}

/// Element of the symbolic crossed product: a finite sum f_psi U*_psi.
class Crossed {
public:
  explicit Crossed(int order) : order_(order) {}

  static Crossed term(const Germ& g, const FrameFn& f) {
    Crossed c(g.order());
    if (f.has_terms()) c.terms_.emplace(g, f);
    return c;
  }

  int order() const { return order_; }
  const std::map<Germ, FrameFn, GermLess>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const Germ& g, const FrameFn& f) {
    if (g.order() != order_) throw TruncationError("germ order mismatch");
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      if (f.has_terms()) terms_.emplace(g, f);
      return;
    }
    it->second += f;
    if (!it->second.has_terms()) terms_.erase(it);
  }

  Crossed& operator+=(const Crossed& o) {
    for (const auto& [g, f] : o.terms_) add_term(g, f);
    return *this;
  }
  friend Crossed operator+(Crossed a, const Crossed& b) { return a += b; }
  Crossed operator-() const {
    Crossed r(order_);
    for (const auto& [g, f] : terms_) r.terms_.emplace(g, -f);
    return r;
  }
  friend Crossed operator-(Crossed a, const Crossed& b) { return a + (-b); }
  Crossed& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [g, f] : terms_) f *= s;
    return *this;
  }
  friend Crossed operator*(const Scalar& s, Crossed a) { return a *= s; }

  /// Crossed multiplication: f1 U*_1 . f2 U*_2 = f1 (f2 o psi1) U*_{psi2 psi1}.
  friend Crossed operator*(const Crossed& a, const Crossed& b) {
    if (a.order_ != b.order_) throw TruncationError("germ order mismatch");
    Crossed r(a.order_);
    for (const auto& [g1, f1] : a.terms_)
      for (const auto& [g2, f2] : b.terms_)
        r.add_term(compose(g2, g1), f1 * f2.pullback(g1));
    return r;
  }

  /// The model trace reads only the identity-germ component.
  FrameFn trace_component() const {
    auto it = terms_.find(Germ::identity(order_));
    return it == terms_.end() ? FrameFn() : it->second;
  }

  friend bool equal_within(const Crossed& a, const Crossed& b) {
    Crossed d = a - b;
    for (const auto& [g, f] : d.terms_)
      if (!f.is_zero_within()) return false;
    return true;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [g, f] : terms_) {
      if (!s.empty()) s += "  +  ";
      s += "[" + f.str() + "] U*{" + g.str() + "}";
    }
    return s;
  }

private:
  int order_;
  std::map<Germ, FrameFn, GermLess> terms_;
};

/// Action of a single generator on one crossed term.
inline FrameFn act_generator(const hopf::Gen& g, const Germ& psi, const FrameFn& f) {
  using K = hopf::Gen::Kind;
  switch (g.kind) {
    case K::X: return f.X();
    case K::Y: return f.Yop();
    case K::Xbar: return f.Xbar();
    case K::Ybar: return f.Ybarop();
    case K::Delta: return delta_action_series(psi, g.n, false) * f;
    case K::DeltaBar: return delta_action_series(psi, g.n, true) * f;
  }
  return {};
}

/// Hopf action on the crossed product, extended from generators by operator
/// composition (leftmost factor acts last) and linearity.
inline Crossed act_hopf(const hopf::HopfElement& h, const Crossed& a) {
  Crossed out(a.order());
  for (const auto& [mono, coeff] : h.terms()) {
    auto word = mono.word();
    for (const auto& [psi, f] : a.terms()) {
      FrameFn cur = f;
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        cur = act_generator(*it, psi, cur);
      cur *= coeff;
      Crossed t = Crossed::term(psi, cur);
      out += t;
    }
  }
  return out;
}

/// Divergence character: the constant delta(g) with
/// integral(g(F) dv) = delta(g) integral(F dv) for the invariant volume
/// dv = dz dzb dy dyb / (y yb)^2; equivalently -L_g(dv)/dv.
inline Scalar divergence_character(const hopf::Gen& g) {
  using K = hopf::Gen::Kind;
  // Vector-field components (P_z, P_y, P_zb, P_yb).
  FrameFn Pz, Py, Pzb, Pyb;
  switch (g.kind) {
    case K::X: Pz = FrameFn::y(); break;
    case K::Y: Py = FrameFn::y(); break;
    case K::Xbar: Pzb = FrameFn::ybar(); break;
    case K::Ybar: Pyb = FrameFn::ybar(); break;
    case K::Delta:
    case K::DeltaBar:
      return Scalar();  // multiplication operators do not move the volume
  }
  FrameFn density = FrameFn::monomial(0, 0, -2, -2);
  FrameFn vf = Pz * density.dz() + Py * density.dy() + Pzb * density.dzb() +
               Pyb * density.dyb();
  FrameFn div = Pz.dz() + Py.dy() + Pzb.dzb() + Pyb.dyb();
  FrameFn lie = vf + div * density;
  // delta(g) = -lie/density, which must be a constant.
  FrameFn ratio = lie * FrameFn::monomial(0, 0, 2, 2);
  if (!ratio.is_constant())
    throw std::domain_error("volume derivative is not proportional to the volume");
  return -ratio.constant_part();
}

/// Compatibility of the action with the coproduct: h(a.b) = m(Delta h (a (x) b)),
/// compared inside the truncated model's validity window.
inline bool verify_action_compatibility(const hopf::HopfOps& ops,
                                        const hopf::HopfElement& h, const Crossed& a,
                                        const Crossed& b) {
  Crossed lhs = act_hopf(h, a * b);
  hopf::TensorElement dh = ops.coproduct(h);
  Crossed rhs(a.order());
  for (const auto& [key, c] : dh.terms()) {
    Crossed t = act_hopf(hopf::HopfElement(key[0]), a) *
                act_hopf(hopf::HopfElement(key[1]), b);
    t *= c;
    rhs += t;
  }
  return equal_within(lhs, rhs);
}

}  // namespace hcc::germs

#endif
