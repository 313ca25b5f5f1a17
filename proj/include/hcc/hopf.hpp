#ifndef HCC_HOPF_HPP
#define HCC_HOPF_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hcc/scalar.hpp"

namespace hcc::hopf {

/// Lie generator of the Hopf algebra: the holomorphic family X, Y, delta_n
/// and its antiholomorphic mirror. n >= 1 for the delta families, 0 otherwise.
struct Gen {
  enum class Kind : std::uint8_t { Delta, X, Y, DeltaBar, Xbar, Ybar };
  Kind kind{Kind::X};
  int n{0};

  static Gen X() { return {Kind::X, 0}; }
  static Gen Y() { return {Kind::Y, 0}; }
  static Gen Xbar() { return {Kind::Xbar, 0}; }
  static Gen Ybar() { return {Kind::Ybar, 0}; }
  static Gen delta(int n) {
    if (n < 1) throw std::invalid_argument("delta index must be >= 1");
    return {Kind::Delta, n};
  }
  static Gen delta_bar(int n) {
    if (n < 1) throw std::invalid_argument("delta_bar index must be >= 1");
    return {Kind::DeltaBar, n};
  }

  bool barred() const {
    return kind == Kind::DeltaBar || kind == Kind::Xbar || kind == Kind::Ybar;
  }

  /// Position in the fixed PBW total order:
  /// delta_1 < delta_2 < ... < X < Y < dbar_1 < ... < Xbar < Ybar.
  std::pair<int, int> order_key() const {
    switch (kind) {
      case Kind::Delta: return {0, n};
      case Kind::X: return {1, 0};
      case Kind::Y: return {2, 0};
      case Kind::DeltaBar: return {3, n};
      case Kind::Xbar: return {4, 0};
      case Kind::Ybar: return {5, 0};
    }
    return {6, 0};
  }

  friend bool operator==(const Gen& a, const Gen& b) {
    return a.kind == b.kind && a.n == b.n;
  }
  friend bool operator<(const Gen& a, const Gen& b) {
    return a.order_key() < b.order_key();
  }

  std::string str() const {
    switch (kind) {
      case Kind::X: return "X";
      case Kind::Y: return "Y";
      case Kind::Xbar: return "Xb";
      case Kind::Ybar: return "Yb";
      case Kind::Delta: return "d" + std::to_string(n);
      case Kind::DeltaBar: return "db" + std::to_string(n);
    }
    return "?";
  }
};

/// PBW basis monomial: sparse exponent vector over the generator order.
/// Factors are kept sorted ascending with strictly positive exponents.
class PbwMonomial {
public:
  PbwMonomial() = default;
  explicit PbwMonomial(const Gen& g) { factors_.emplace_back(g, 1); }

  static PbwMonomial unit() { return {}; }

  /// Builds from an already-sorted generator word.
  static PbwMonomial from_sorted_word(std::span<const Gen> word) {
    PbwMonomial m;
    for (const Gen& g : word) {
      if (!m.factors_.empty() && m.factors_.back().first == g)
        ++m.factors_.back().second;
      else
        m.factors_.emplace_back(g, 1);
    }
    return m;
  }

  const std::vector<std::pair<Gen, int>>& factors() const { return factors_; }
  bool is_unit() const { return factors_.empty(); }

  int degree() const {
    int d = 0;
    for (const auto& [g, e] : factors_) d += e;
    return d;
  }

  std::vector<Gen> word() const {
    std::vector<Gen> w;
    for (const auto& [g, e] : factors_)
      for (int i = 0; i < e; ++i) w.push_back(g);
    return w;
  }

  /// ad-Y eigenvalue, reported as (unbarred weight, barred weight).
  std::pair<int, int> y_weight() const {
    int u = 0, b = 0;
    for (const auto& [g, e] : factors_) {
      switch (g.kind) {
        case Gen::Kind::Delta: u += g.n * e; break;
        case Gen::Kind::X: u += e; break;
        case Gen::Kind::DeltaBar: b += g.n * e; break;
        case Gen::Kind::Xbar: b += e; break;
        default: break;
      }
    }
    return {u, b};
  }

  friend bool operator==(const PbwMonomial& a, const PbwMonomial& b) {
    return a.factors_ == b.factors_;
  }
  friend bool operator<(const PbwMonomial& a, const PbwMonomial& b) {
    auto key = [](const std::pair<Gen, int>& f) {
      auto [blk, idx] = f.first.order_key();
      return std::tuple<int, int, int>(blk, idx, f.second);
    };
    return std::lexicographical_compare(
        a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
        [&](const auto& x, const auto& y) { return key(x) < key(y); });
  }

  std::string str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [g, e] : factors_) {
      if (!s.empty()) s += ".";
      s += g.str();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  }

private:
  std::vector<std::pair<Gen, int>> factors_;
};

/// Element of the Hopf algebra: finite Scalar combination of PBW monomials.
class HopfElement {
public:
  HopfElement() = default;
  HopfElement(const Scalar& s) {
    if (!s.is_zero()) terms_[PbwMonomial::unit()] = s;
  }
  HopfElement(long v) : HopfElement(Scalar(v)) {}
  explicit HopfElement(const PbwMonomial& m, const Scalar& c = Scalar::one()) {
    if (!c.is_zero()) terms_[m] = c;
  }
  explicit HopfElement(const Gen& g) { terms_[PbwMonomial(g)] = Scalar::one(); }

  static HopfElement zero() { return {}; }
  static HopfElement one() { return HopfElement(Scalar::one()); }

  const std::map<PbwMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const PbwMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  HopfElement& operator+=(const HopfElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  HopfElement& operator-=(const HopfElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  HopfElement operator-() const {
    HopfElement r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  HopfElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend HopfElement operator+(HopfElement a, const HopfElement& b) { return a += b; }
  friend HopfElement operator-(HopfElement a, const HopfElement& b) { return a -= b; }
  friend HopfElement operator*(const Scalar& s, HopfElement a) { return a *= s; }
  friend bool operator==(const HopfElement& a, const HopfElement& b) {
    return a.terms_ == b.terms_;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  /// Canonical text form: monomials in PBW order, explicit coefficients.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*" + m.str();
    }
    return s;
  }

private:
  std::map<PbwMonomial, Scalar> terms_;
};

/// Element of a fixed tensor power of the Hopf algebra. Degree 0 is the
/// scalar line, stored as the empty key.
class TensorElement {
public:
  explicit TensorElement(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("tensor degree < 0");
  }

  static TensorElement scalar(const Scalar& s) {
    TensorElement t(0);
    if (!s.is_zero()) t.terms_[{}] = s;
    return t;
  }

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<PbwMonomial>, Scalar>& terms() const { return terms_; }

  void add_term(const std::vector<PbwMonomial>& key, const Scalar& c) {
    if (static_cast<int>(key.size()) != degree_)
      throw std::invalid_argument("tensor key length mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_[key] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  TensorElement& operator+=(const TensorElement& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("tensor degree mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    if (o.degree_ != degree_) throw std::invalid_argument("tensor degree mismatch");
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  TensorElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Scalar& s, TensorElement a) { return a *= s; }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")*";
      if (k.empty()) {
        s += "1";
      } else {
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (i) s += "(x)";
          s += k[i].str();
        }
      }
    }
    return s;
  }

private:
  int degree_;
  std::map<std::vector<PbwMonomial>, Scalar> terms_;
};

/// Bracket callback: [a, b] for generators a > b in the PBW order.
using BracketFn = std::function<HopfElement(const Gen&, const Gen&)>;

/// The commutation relations of the calculus: [Y,X]=X, [Y,d_n]=n d_n,
/// [X,d_n]=d_{n+1}, [d_n,d_m]=0, identically for the barred family, and all
/// brackets between barred and unbarred generators vanish.
inline HopfElement standard_bracket(const Gen& a, const Gen& b) {
  if (a.barred() != b.barred()) return HopfElement::zero();
  const bool bar = a.barred();
  auto delta = [bar](int n) { return bar ? Gen::delta_bar(n) : Gen::delta(n); };
  const Gen::Kind kX = bar ? Gen::Kind::Xbar : Gen::Kind::X;
  const Gen::Kind kY = bar ? Gen::Kind::Ybar : Gen::Kind::Y;
  const Gen::Kind kD = bar ? Gen::Kind::DeltaBar : Gen::Kind::Delta;

  if (a.kind == kY && b.kind == kX) return HopfElement(b);                      // [Y,X]=X
  if (a.kind == kY && b.kind == kD) return Scalar(b.n) * HopfElement(b);        // [Y,d_n]=n d_n
  if (a.kind == kX && b.kind == kD) return HopfElement(delta(b.n + 1));         // [X,d_n]=d_{n+1}
  if (a.kind == kD && b.kind == kD) return HopfElement::zero();
  return HopfElement::zero();
}

/// Hopf-algebra operations parameterised by the bracket table. Tests use a
/// corrupted table as a negative control; everything else uses the default.
class HopfOps {
public:
  HopfOps() : bracket_(standard_bracket) {}
  explicit HopfOps(BracketFn bracket) : bracket_(std::move(bracket)) {}

  /// Rewrites an arbitrary generator word into the PBW basis.
  HopfElement normal_form(std::span<const Gen> word) const {
    HopfElement out;
    std::vector<std::pair<Scalar, std::vector<Gen>>> work;
    work.emplace_back(Scalar::one(), std::vector<Gen>(word.begin(), word.end()));
    while (!work.empty()) {
      auto [coeff, w] = std::move(work.back());
      work.pop_back();
      std::size_t i = 0;
      bool sorted = true;
      for (; i + 1 < w.size(); ++i) {
        if (w[i + 1] < w[i]) {
          sorted = false;
          break;
        }
      }
      if (sorted) {
        out.add_term(PbwMonomial::from_sorted_word(w), coeff);
        continue;
      }
      // w[i] > w[i+1]: swap and add the bracket correction.
      std::vector<Gen> swapped = w;
      std::swap(swapped[i], swapped[i + 1]);
      work.emplace_back(coeff, std::move(swapped));
      HopfElement corr = bracket_(w[i], w[i + 1]);
      for (const auto& [mono, c] : corr.terms()) {
        std::vector<Gen> spliced(w.begin(), w.begin() + i);
        auto mid = mono.word();
        spliced.insert(spliced.end(), mid.begin(), mid.end());
        spliced.insert(spliced.end(), w.begin() + i + 2, w.end());
        work.emplace_back(coeff * c, std::move(spliced));
      }
    }
    return out;
  }

  HopfElement normal_form(std::initializer_list<Gen> word) const {
    return normal_form(std::span<const Gen>(word.begin(), word.size()));
  }

  HopfElement multiply(const HopfElement& a, const HopfElement& b) const {
    HopfElement out;
    for (const auto& [ma, ca] : a.terms()) {
      for (const auto& [mb, cb] : b.terms()) {
        std::vector<Gen> w = ma.word();
        auto wb = mb.word();
        w.insert(w.end(), wb.begin(), wb.end());
        HopfElement nf = normal_form(w);
        nf *= ca * cb;
        out += nf;
      }
    }
    return out;
  }

  HopfElement commutator(const HopfElement& a, const HopfElement& b) const {
    return multiply(a, b) - multiply(b, a);
  }

  /// Componentwise product on a tensor power (no grading signs).
  TensorElement tensor_multiply(const TensorElement& a, const TensorElement& b) const {
    if (a.degree() != b.degree()) throw std::invalid_argument("tensor degree mismatch");
    TensorElement out(a.degree());
    for (const auto& [ka, ca] : a.terms()) {
      for (const auto& [kb, cb] : b.terms()) {
        // Expand slotwise products and distribute.
        std::vector<HopfElement> slot(ka.size());
        for (std::size_t s = 0; s < ka.size(); ++s)
          slot[s] = multiply(HopfElement(ka[s]), HopfElement(kb[s]));
        distribute(out, slot, ca * cb);
      }
    }
    return out;
  }

  TensorElement tensor_of(const std::vector<HopfElement>& factors) const {
    TensorElement out(static_cast<int>(factors.size()));
    distribute(out, factors, Scalar::one());
    return out;
  }

  /// Coproduct of a single generator.
  TensorElement coproduct_gen(const Gen& g) const {
    const bool bar = g.barred();
    auto d1 = bar ? Gen::delta_bar(1) : Gen::delta(1);
    auto Y = bar ? Gen::Ybar() : Gen::Y();
    TensorElement t(2);
    switch (g.kind) {
      case Gen::Kind::X:
      case Gen::Kind::Xbar:
        t.add_term({PbwMonomial::unit(), PbwMonomial(g)}, Scalar::one());
        t.add_term({PbwMonomial(g), PbwMonomial::unit()}, Scalar::one());
        t.add_term({PbwMonomial(d1), PbwMonomial(Y)}, Scalar::one());
        return t;
      case Gen::Kind::Y:
      case Gen::Kind::Ybar:
        t.add_term({PbwMonomial::unit(), PbwMonomial(g)}, Scalar::one());
        t.add_term({PbwMonomial(g), PbwMonomial::unit()}, Scalar::one());
        return t;
      case Gen::Kind::Delta:
      case Gen::Kind::DeltaBar: {
        if (g.n == 1) {
          t.add_term({PbwMonomial::unit(), PbwMonomial(g)}, Scalar::one());
          t.add_term({PbwMonomial(g), PbwMonomial::unit()}, Scalar::one());
          return t;
        }
        // Delta d_{n+1} = [Delta X, Delta d_n], the recursion the relations force.
        Gen X = bar ? Gen::Xbar() : Gen::X();
        Gen dprev = bar ? Gen::delta_bar(g.n - 1) : Gen::delta(g.n - 1);
        TensorElement dx = coproduct_gen(X);
        TensorElement dd = coproduct_gen(dprev);
        return tensor_multiply(dx, dd) - tensor_multiply(dd, dx);
      }
    }
    return t;
  }

  /// Coproduct extended to all of the algebra as an algebra homomorphism.
  TensorElement coproduct(const HopfElement& h) const {
    TensorElement out(2);
    for (const auto& [m, c] : h.terms()) {
      TensorElement prod(2);
      prod.add_term({PbwMonomial::unit(), PbwMonomial::unit()}, Scalar::one());
      for (const Gen& g : m.word()) prod = tensor_multiply(prod, coproduct_gen(g));
      prod *= c;
      out += prod;
    }
    return out;
  }

  /// Right-nested iterated coproduct: H -> H^{(x) n}, n >= 1.
  TensorElement iterated_coproduct(const HopfElement& h, int n) const {
    if (n < 1) throw std::invalid_argument("iterated coproduct needs n >= 1");
    TensorElement cur(1);
    for (const auto& [m, c] : h.terms()) cur.add_term({m}, c);
    for (int k = 1; k < n; ++k) {
      // Apply Delta to the last slot.
      TensorElement next(cur.degree() + 1);
      for (const auto& [key, c] : cur.terms()) {
        TensorElement dx = coproduct(HopfElement(key.back()));
        for (const auto& [pair_key, pc] : dx.terms()) {
          std::vector<PbwMonomial> nk(key.begin(), key.end() - 1);
          nk.push_back(pair_key[0]);
          nk.push_back(pair_key[1]);
          next.add_term(nk, c * pc);
        }
      }
      cur = std::move(next);
    }
    return cur;
  }

  static Scalar counit(const HopfElement& h) {
    auto it = h.terms().find(PbwMonomial::unit());
    return it == h.terms().end() ? Scalar() : it->second;
  }

  /// Antipode of a generator: S(X) = -X + d1*Y, S(Y) = -Y, S(d1) = -d1,
  /// and S(d_{n+1}) = [S(d_n), S(X)] from antimultiplicativity.
  HopfElement antipode_gen(const Gen& g) const {
    const bool bar = g.barred();
    Gen X = bar ? Gen::Xbar() : Gen::X();
    Gen Y = bar ? Gen::Ybar() : Gen::Y();
    Gen d1 = bar ? Gen::delta_bar(1) : Gen::delta(1);
    switch (g.kind) {
      case Gen::Kind::X:
      case Gen::Kind::Xbar:
        return -HopfElement(g) + normal_form({d1, Y});
      case Gen::Kind::Y:
      case Gen::Kind::Ybar:
        return -HopfElement(g);
      case Gen::Kind::Delta:
      case Gen::Kind::DeltaBar: {
        if (g.n == 1) return -HopfElement(g);
        Gen dprev = bar ? Gen::delta_bar(g.n - 1) : Gen::delta(g.n - 1);
        return commutator(antipode_gen(dprev), antipode_gen(X));
      }
    }
    return {};
  }

  /// Antipode, extended antimultiplicatively.
  HopfElement antipode(const HopfElement& h) const {
    HopfElement out;
    for (const auto& [m, c] : h.terms()) {
      HopfElement prod = HopfElement::one();
      auto w = m.word();
      for (auto it = w.rbegin(); it != w.rend(); ++it)
        prod = multiply(prod, antipode_gen(*it));
      prod *= c;
      out += prod;
    }
    return out;
  }

  /// The modular character: delta(Y) = delta(Ybar) = 1 and zero on every
  /// other generator, extended as an algebra character.
  static Scalar character_delta(const HopfElement& h) {
    Scalar out;
    for (const auto& [m, c] : h.terms()) {
      bool only_euler = true;
      for (const auto& [g, e] : m.factors()) {
        if (g.kind != Gen::Kind::Y && g.kind != Gen::Kind::Ybar) {
          only_euler = false;
          break;
        }
      }
      if (only_euler) out += c;  // delta(Y^a Ybar^b) = 1
    }
    return out;
  }

  /// Twisted antipode S~ = (delta (x) S) o Delta.
  HopfElement twisted_antipode(const HopfElement& h) const {
    TensorElement d = coproduct(h);
    HopfElement out;
    for (const auto& [key, c] : d.terms()) {
      Scalar w = character_delta(HopfElement(key[0]));
      if (w.is_zero()) continue;
      HopfElement s = antipode(HopfElement(key[1]));
      s *= c * w;
      out += s;
    }
    return out;
  }

  const BracketFn& bracket() const { return bracket_; }

private:
  void distribute(TensorElement& out, const std::vector<HopfElement>& slot,
                  const Scalar& coeff) const {
    std::vector<PbwMonomial> key(slot.size());
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t s, Scalar c) {
      if (s == slot.size()) {
        out.add_term(key, c);
        return;
      }
      for (const auto& [m, mc] : slot[s].terms()) {
        key[s] = m;
        rec(s + 1, c * mc);
      }
    };
    rec(0, coeff);
  }

  BracketFn bracket_;
};

/// All PBW monomials of total degree <= max_degree over the generators
/// {delta_1..delta_maxn, X, Y} and the barred family with delta indices
/// bounded by maxn.
inline std::vector<PbwMonomial> enumerate_monomials(int max_degree, int maxn) {
  std::vector<Gen> gens;
  for (int n = 1; n <= maxn; ++n) gens.push_back(Gen::delta(n));
  gens.push_back(Gen::X());
  gens.push_back(Gen::Y());
  for (int n = 1; n <= maxn; ++n) gens.push_back(Gen::delta_bar(n));
  gens.push_back(Gen::Xbar());
  gens.push_back(Gen::Ybar());

  // Enumerate via non-decreasing generator words; each sorted word appears once.
  std::vector<PbwMonomial> out;
  std::vector<Gen> word;
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int deg) {
    out.push_back(PbwMonomial::from_sorted_word(word));
    if (deg == max_degree) return;
    for (std::size_t i = idx; i < gens.size(); ++i) {
      word.push_back(gens[i]);
      rec(i, deg + 1);
      word.pop_back();
    }
  };
  rec(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Axiom verification report. Each entry carries the first counterexample
/// found, if any.
struct AxiomCheck {
  std::string name;
  bool passed{true};
  std::string counterexample;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

/// Verifies coassociativity, the counit laws, the antipode law, the
/// homomorphism property of the coproduct on random products, and the
/// involutivity of the twisted antipode on all PBW monomials of bounded
/// degree.
inline AxiomReport verify_hopf_axioms(const HopfOps& ops, int max_degree,
                                      std::uint64_t seed = 17) {
  if (max_degree < 1) throw std::invalid_argument("max_degree must be >= 1");
  AxiomReport report;
  auto monos = enumerate_monomials(max_degree, max_degree);

  AxiomCheck coassoc{"coassociativity"};
  AxiomCheck counit_law{"counit laws"};
  AxiomCheck antipode_law{"antipode law"};
  AxiomCheck twist{"twisted antipode involution"};
  for (const auto& m : monos) {
    HopfElement h(m);
    TensorElement d = ops.coproduct(h);

    // (Delta (x) id) Delta = (id (x) Delta) Delta
    TensorElement left(3), right(3);
    for (const auto& [key, c] : d.terms()) {
      TensorElement dl = ops.coproduct(HopfElement(key[0]));
      for (const auto& [k2, c2] : dl.terms())
        left.add_term({k2[0], k2[1], key[1]}, c * c2);
      TensorElement dr = ops.coproduct(HopfElement(key[1]));
      for (const auto& [k2, c2] : dr.terms())
        right.add_term({key[0], k2[0], k2[1]}, c * c2);
    }
    if (coassoc.passed && !(left == right)) {
      coassoc.passed = false;
      coassoc.counterexample = m.str();
    }

    // (eps (x) id) Delta = id = (id (x) eps) Delta
    HopfElement eps_left, eps_right;
    for (const auto& [key, c] : d.terms()) {
      Scalar el = HopfOps::counit(HopfElement(key[0]));
      if (!el.is_zero()) eps_left += (c * el) * HopfElement(key[1]);
      Scalar er = HopfOps::counit(HopfElement(key[1]));
      if (!er.is_zero()) eps_right += (c * er) * HopfElement(key[0]);
    }
    if (counit_law.passed && (!(eps_left == h) || !(eps_right == h))) {
      counit_law.passed = false;
      counit_law.counterexample = m.str();
    }

    // m(S (x) id)Delta = eta eps = m(id (x) S)Delta
    HopfElement s_left, s_right;
    for (const auto& [key, c] : d.terms()) {
      s_left += c * ops.multiply(ops.antipode(HopfElement(key[0])), HopfElement(key[1]));
      s_right += c * ops.multiply(HopfElement(key[0]), ops.antipode(HopfElement(key[1])));
    }
    HopfElement target = HopfOps::counit(h) * HopfElement::one();
    if (antipode_law.passed && (!(s_left == target) || !(s_right == target))) {
      antipode_law.passed = false;
      antipode_law.counterexample = m.str();
    }

    // S~ S~ = id
    if (twist.passed) {
      HopfElement tw = ops.twisted_antipode(ops.twisted_antipode(h));
      if (!(tw == h)) {
        twist.passed = false;
        twist.counterexample = m.str();
      }
    }
  }

  // Delta(ab) = Delta(a)Delta(b) on random pairs.
  AxiomCheck homo{"coproduct is an algebra homomorphism"};
  Rng rng(seed);
  for (int trial = 0; trial < 25 && homo.passed; ++trial) {
    const PbwMonomial& a = monos[rng.below(monos.size())];
    const PbwMonomial& b = monos[rng.below(monos.size())];
    HopfElement ha(a), hb(b);
    TensorElement lhs = ops.coproduct(ops.multiply(ha, hb));
    TensorElement rhs = ops.tensor_multiply(ops.coproduct(ha), ops.coproduct(hb));
    if (!(lhs == rhs)) {
      homo.passed = false;
      homo.counterexample = a.str() + " * " + b.str();
    }
  }

  report.checks = {coassoc, counit_law, antipode_law, homo, twist};
  return report;
}

}  // namespace hcc::hopf

#endif
