#pragma once

// K_m[[t]]/t^N with Gamma acting through the cyclotomic character on the
// coefficients and by g(t) = chi(g) t, the map theta, the connection
// t d/dt, and extraction of Sen operators from Gamma-action matrices.

#include <sstream>
#include <string>
#include <vector>

#include "cyclotomic.hpp"
#include "matrix.hpp"
#include "matrix_functions.hpp"
#include "padic_functions.hpp"
#include "roots.hpp"

namespace pahodge {

class BdRElement {
 public:
  BdRElement() = default;

  static BdRElement zero(const PadicField* field, int m, int n) {
    if (n < 1) throw DomainError("t-adic truncation must be at least 1");
    BdRElement r;
    r.level_ = m;
    r.a_.assign(n, CycloElement::zero(field, m));
    return r;
  }
  static BdRElement constant(const CycloElement& c, int n) {
    BdRElement r = zero(c.field(), c.level(), n);
    r.a_[0] = c;
    return r;
  }
  /// t^k
  static BdRElement t_power(const PadicField* field, int m, int n, int k = 1) {
    BdRElement r = zero(field, m, n);
    if (k < n) r.a_[k] = CycloElement::from_int(field, 1, m);
    return r;
  }
  static BdRElement from_coeffs(std::vector<CycloElement> a) {
    if (a.empty()) throw DomainError("t-adic truncation must be at least 1");
    int m = 0;
    for (const auto& c : a) m = std::max(m, c.level());
    for (auto& c : a) c = c.embed(m);
    BdRElement r;
    r.level_ = m;
    r.a_ = std::move(a);
    return r;
  }

  const PadicField* field() const { return a_[0].field(); }
  long prime() const { return a_[0].prime(); }
  int level() const { return level_; }
  int truncation() const { return static_cast<int>(a_.size()); }
  const CycloElement& operator[](int i) const { return a_[i]; }
  const std::vector<CycloElement>& coeffs() const { return a_; }

  bool is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const CycloElement& c) { return c.is_zero(); });
  }
  int precision() const {
    int r = field()->cap();
    for (const auto& c : a_) r = std::min(r, c.precision());
    return r;
  }
  /// Smallest valuation of a coefficient.  This is not multiplicative on
  /// the ring; it only measures p-adic size of the coefficients.
  Valuation valuation() const {
    Valuation v = Valuation::infinite();
    for (const auto& c : a_)
      if (!c.is_zero()) v = min(v, c.valuation());
    return v;
  }

  BdRElement zero_like() const { return zero(field(), level_, truncation()); }
  BdRElement one_like() const { return constant(CycloElement::from_int(field(), 1, level_), truncation()); }

  BdRElement embed(int m) const {
    BdRElement r = *this;
    r.level_ = m;
    for (auto& c : r.a_) c = c.embed(m);
    return r;
  }
  BdRElement truncated(int n) const {
    if (n > truncation()) throw DomainError("cannot raise the t-adic truncation");
    BdRElement r = *this;
    r.a_.resize(n);
    return r;
  }

  friend BdRElement operator+(const BdRElement& a, const BdRElement& b) {
    return combine(a, b, [](const CycloElement& x, const CycloElement& y) { return x + y; });
  }
  friend BdRElement operator-(const BdRElement& a, const BdRElement& b) {
    return combine(a, b, [](const CycloElement& x, const CycloElement& y) { return x - y; });
  }
  BdRElement operator-() const {
    BdRElement r = *this;
    for (auto& c : r.a_) c = -c;
    return r;
  }
  friend BdRElement operator*(const BdRElement& a0, const BdRElement& b0) {
    BdRElement a = a0, b = b0;
    unify(a, b);
    BdRElement r = a.zero_like();
    const int n = r.truncation();
    for (int i = 0; i < n; ++i) {
      if (a.a_[i].is_zero() && exact(a.a_[i])) continue;
      for (int j = 0; i + j < n; ++j) {
        if (b.a_[j].is_zero() && exact(b.a_[j])) continue;
        r.a_[i + j] += a.a_[i] * b.a_[j];
      }
    }
    return r;
  }
  BdRElement& operator+=(const BdRElement& o) {
    if (level_ != o.level_ || truncation() != o.truncation()) return *this = *this + o;
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  BdRElement& operator-=(const BdRElement& o) { return *this = *this - o; }
  BdRElement& operator*=(const BdRElement& o) { return *this = *this * o; }

  /// Division; the divisor must have a nonzero constant term.
  friend BdRElement operator/(const BdRElement& a, const BdRElement& b) { return a * b.inverse(); }

  BdRElement inverse() const {
    if (a_[0].is_zero()) throw DomainError("element of (t) is not invertible in the truncated ring");
    const CycloElement i0 = a_[0].inverse();
    BdRElement r = zero_like();
    r.a_[0] = i0;
    for (int k = 1; k < truncation(); ++k) {
      CycloElement s = CycloElement::zero(field(), level_);
      for (int j = 1; j <= k; ++j) s += a_[j] * r.a_[k - j];
      r.a_[k] = -(s * i0);
    }
    return r;
  }

  BdRElement scaled(const Padic& s) const {
    BdRElement r = *this;
    for (auto& c : r.a_) c = c.scaled(s);
    return r;
  }
  BdRElement scaled(const CycloElement& s) const {
    BdRElement r = *this;
    for (auto& c : r.a_) c = s * c;
    if (s.level() > level_) r.level_ = s.level();
    return r;
  }
  BdRElement mul_int(const mpz_class& k) const {
    if (k == 0) return zero_like();
    BdRElement r = *this;
    const auto [rest, e] = Padic::split_int(k, a_.empty() ? 2 : a_[0].prime());
    for (auto& c : r.a_) c.mul_split_in_place(rest, e);
    return r;
  }
  BdRElement mul_int(long k) const { return mul_int(mpz_class(k)); }
  BdRElement div_int(const mpz_class& k) const {
    BdRElement r = *this;
    for (auto& c : r.a_) c = c.div_int(k);
    return r;
  }
  BdRElement div_int(long k) const { return div_int(mpz_class(k)); }
  BdRElement with_precision(int prec) const {
    BdRElement r = *this;
    for (auto& c : r.a_) c = c.with_precision(prec);
    return r;
  }
  BdRElement in_field(const PadicField* f) const {
    BdRElement r = *this;
    for (auto& c : r.a_) c = c.in_field(f);
    return r;
  }

  friend bool operator==(const BdRElement& a, const BdRElement& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < truncation(); ++i) {
      if (a_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << a_[i].to_string() << ")";
      if (i > 0) os << "*t" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (first) os << "0";
    os << " + O(t^" << truncation() << ")";
    return os.str();
  }

 private:
  static bool exact(const CycloElement& c) { return c.precision() >= c.field()->cap(); }

  static void unify(BdRElement& a, BdRElement& b) {
    const int m = std::max(a.level_, b.level_);
    if (a.level_ != m) a = a.embed(m);
    if (b.level_ != m) b = b.embed(m);
    const int n = std::min(a.truncation(), b.truncation());
    if (a.truncation() != n) a = a.truncated(n);
    if (b.truncation() != n) b = b.truncated(n);
  }

  template <class Op>
  static BdRElement combine(BdRElement a, BdRElement b, Op op) {
    unify(a, b);
    for (int i = 0; i < a.truncation(); ++i) a.a_[i] = op(a.a_[i], b.a_[i]);
    return a;
  }

  int level_ = 0;
  std::vector<CycloElement> a_;
};

inline CycloElement theta(const BdRElement& x) { return x[0]; }

/// Action of the g with chi(g) = c: sum chi_action(c, a_i) c^i t^i.
inline BdRElement bdr_galois_act(const Padic& c, const BdRElement& x) {
  std::vector<CycloElement> out;
  out.reserve(x.truncation());
  Padic ci = c.one_like();
  for (int i = 0; i < x.truncation(); ++i) {
    out.push_back(x[i].chi_action(c).scaled(ci));
    ci *= c;
  }
  return BdRElement::from_coeffs(std::move(out)).embed(x.level());
}

/// t d/dt.
inline BdRElement bdr_nabla(const BdRElement& x) {
  std::vector<CycloElement> out(x.coeffs());
  for (int i = 0; i < x.truncation(); ++i) out[i] = out[i].mul_int(static_cast<long>(i));
  return BdRElement::from_coeffs(std::move(out)).embed(x.level());
}

/// d/dt; the result is known modulo t^{N-1}.
inline BdRElement bdr_derivative(const BdRElement& x) {
  if (x.truncation() < 2) throw PrecisionError("derivative of an element known only modulo t");
  std::vector<CycloElement> out;
  for (int i = 1; i < x.truncation(); ++i) out.push_back(x[i].mul_int(static_cast<long>(i)));
  return BdRElement::from_coeffs(std::move(out)).embed(x.level());
}

/// Smallest n with every coefficient in K_n.
inline int analytic_level(const BdRElement& x) {
  int n = 0;
  for (const auto& c : x.coeffs()) n = std::max(n, c.analytic_level());
  return n;
}

/// x_i = (1/i!) sum_k (-1)^k d^{i+k}(x)/dt^{i+k} t^k / k!, for i < N.  Each
/// x_i is returned as an element modulo t^{N-i}; for x in K_m[[t]] these are
/// the constants a_i, and x = sum x_i t^i.
inline std::vector<BdRElement> bdr_decomposition(const BdRElement& x) {
  const int n = x.truncation();
  std::vector<BdRElement> derivs{x};
  for (int j = 1; j < n; ++j) derivs.push_back(bdr_derivative(derivs.back()));
  const PadicField* f = x.field();
  std::vector<BdRElement> out;
  for (int i = 0; i < n; ++i) {
    const int len = n - i;
    BdRElement s = BdRElement::zero(f, x.level(), len);
    mpz_class kfact = 1;
    for (int k = 0; i + k < n; ++k) {
      if (k > 0) kfact *= k;
      // t^k times an element known modulo t^{len-k} is known modulo t^len.
      std::vector<CycloElement> sh(len, CycloElement::zero(f, x.level()));
      for (int j = 0; j + k < len; ++j) sh[j + k] = derivs[i + k][j];
      const BdRElement term = BdRElement::from_coeffs(std::move(sh)).embed(x.level()).div_int(kfact);
      if (k % 2 == 0)
        s += term;
      else
        s -= term;
    }
    mpz_class ifact = 1;
    for (int j = 2; j <= i; ++j) ifact *= j;
    out.push_back(s.div_int(ifact));
  }
  return out;
}

struct SenData {
  int dimension = 0;
  Matrix<CycloElement> theta;
  std::vector<CycloElement> charpoly;  // lowest degree first, monic
  long series_terms = 0;               // terms of the log series used
  int precision = 0;                   // smallest entry precision of theta
};

/// Theta = log(M) / log(c) for the action matrix M of a g with chi(g) = c.
inline SenData sen_operator(const Matrix<CycloElement>& m, const Padic& c) {
  if (m.rows() != m.cols()) throw DomainError("sen_operator: matrix is not square");
  const Padic c1 = c - c.one_like();
  if (c1.is_zero()) throw DomainError("sen_operator: c = 1 gives no information");
  const long p = c.prime();
  if (c1.ord() < (p == 2 ? 2 : 1)) throw DomainError("sen_operator: c must satisfy v_p(c - 1) >= 1");
  const auto x = m - Matrix<CycloElement>::identity(m.rows(), m.zero());
  const Valuation v = min_valuation(x);
  if (!v.is_infinite() && v < Valuation(p == 2 ? 2 : 1))
    throw DomainError("sen_operator: M is not congruent to the identity modulo p; the log series does not converge");
  SenData out;
  out.dimension = m.rows();
  const Matrix<CycloElement> lg = matrix_log(m, &out.series_terms);
  const Padic inv = log(c, AnalyticOptions{true}).inverse();
  out.theta = lg.map([&](const CycloElement& a) { return a.scaled(inv); });
  out.charpoly = charpoly(out.theta);
  out.precision = min_precision(out.theta);
  return out;
}

/// Eigenvalues of Theta, when the characteristic polynomial has coefficients
/// and roots in Q_p.
inline std::vector<Root> sen_weights(const SenData& s) {
  Poly f;
  for (const auto& a : s.charpoly) f.push_back(a.descend(0).coords()[0]);
  return roots_in_field_or_throw(f);
}

}  // namespace pahodge
