#pragma once

// B{{u}}_n: power series sum a_k u^k over a coefficient ring B with a
// Gamma-action and connection, where g acts by
//   g(sum a_k u^k) = sum g(a_k) (u + log chi(g))^k.
//
// Elements are stored with guard coefficients a_0..a_K (K >= M, the
// reported truncation) and a tail bound tau with v(a_k) + n k >= tau for
// every k > K.  The tail bound is what makes the action computable: the
// coefficient of u^j in g(z) receives contributions from every a_k, k >= j.

#include <climits>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "bdr.hpp"
#include "padic_functions.hpp"

namespace pahodge {

/// Coefficient ring K_m[[t]]/t^N with the action and connection of bdr.hpp.
struct BdRCoefficients {
  using Element = BdRElement;
  const PadicField* field;
  int level;
  int truncation;

  Element zero() const { return BdRElement::zero(field, level, truncation); }
  Element act(const Padic& c, const Element& a) const { return bdr_galois_act(c, a); }
  Element nabla(const Element& a) const { return bdr_nabla(a); }
  /// v(nabla a) >= v(a) + nabla_growth().
  Valuation nabla_growth() const { return Valuation(0); }
};

/// Q_p (or E) with nabla = multiplication by mu and g acting by
/// exp(mu log chi(g)); the action is only defined where that exponential
/// converges.  Used to produce elements that fail to be analytic.
struct EigenCoefficients {
  using Element = Padic;
  const PadicField* field;
  Padic mu;

  Element zero() const { return Padic::zero(field); }
  Element act(const Padic& c, const Element& a) const {
    const Padic arg = mu * log(c, AnalyticOptions{true});
    const long p = field->prime();
    if (!arg.is_zero() && arg.ord() < (p == 2 ? 2 : 1))
      throw DomainError("eigen coefficient ring: exp(mu log c) does not converge");
    return exp(arg, AnalyticOptions{true}) * a;
  }
  Element nabla(const Element& a) const { return mu * a; }
  Valuation nabla_growth() const { return mu.valuation(); }
};

namespace detail {

template <class E>
Valuation size_bound(const E& a) {
  return a.is_zero() ? Valuation(a.precision()) : a.valuation();
}

// Lower bound for the valuation of every coordinate (zeros count at their
// precision); much cheaper than valuation() in the cyclotomic case.
inline int coord_floor(const Padic& a) { return a.ord(); }
inline int coord_floor(const CycloElement& a) {
  int r = a.coords().front().ord();
  for (const auto& c : a.coords()) r = std::min(r, c.ord());
  return r;
}
inline int coord_floor(const BdRElement& a) {
  int r = coord_floor(a[0]);
  for (const auto& c : a.coeffs()) r = std::min(r, coord_floor(c));
  return r;
}

template <class E>
E scale(const E& a, const Padic& s) {
  if constexpr (std::is_same_v<E, Padic>)
    return s * a;
  else
    return a.scaled(s);
}

}  // namespace detail

template <class E>
class UAdjElement {
 public:
  UAdjElement() = default;
  UAdjElement(int level, int truncation, std::vector<E> coeffs, std::optional<Valuation> tail)
      : level_(level), m_(truncation), a_(std::move(coeffs)), tail_(tail) {
    if (level_ < 1) throw DomainError("B{{u}}_n needs n >= 1");
    if (m_ < 0 || static_cast<int>(a_.size()) < m_ + 1)
      throw DomainError("u-adic element needs coefficients through its truncation");
  }

  /// A polynomial in u (the tail is exactly zero).
  static UAdjElement polynomial(int level, int truncation, std::vector<E> coeffs, const E& zero) {
    while (static_cast<int>(coeffs.size()) < truncation + 1) coeffs.push_back(zero);
    return UAdjElement(level, truncation, std::move(coeffs), Valuation::infinite());
  }
  static UAdjElement constant(int level, int truncation, const E& a) {
    return polynomial(level, truncation, {a}, a.zero_like());
  }
  static UAdjElement u(int level, int truncation, const E& proto) {
    return polynomial(level, truncation, {proto.zero_like(), proto.one_like()}, proto.zero_like());
  }

  int level() const { return level_; }
  int truncation() const { return m_; }
  int guard() const { return static_cast<int>(a_.size()) - 1; }
  const E& operator[](int k) const { return a_[k]; }
  const std::vector<E>& coeffs() const { return a_; }
  /// Lower bound for v(a_k) + n k beyond the guard; empty when unknown.
  const std::optional<Valuation>& tail() const { return tail_; }

  /// min(v(a_k) + n k) over all k, including the tail.
  Valuation weighted_size() const {
    if (!tail_) throw PrecisionError("u-adic tail is not controlled at this level");
    Valuation v = *tail_;
    for (int k = 0; k <= guard(); ++k) v = min(v, detail::size_bound(a_[k]) + Valuation(level_ * k));
    return v;
  }

  friend UAdjElement operator+(const UAdjElement& a, const UAdjElement& b) {
    return combine(a, b, [](const E& x, const E& y) { return x + y; });
  }
  friend UAdjElement operator-(const UAdjElement& a, const UAdjElement& b) {
    return combine(a, b, [](const E& x, const E& y) { return x - y; });
  }
  UAdjElement operator-() const {
    UAdjElement r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }

  friend UAdjElement operator*(const UAdjElement& a, const UAdjElement& b) {
    check_level(a, b);
    const int kk = std::min(a.guard(), b.guard());
    const int n = a.level_;
    std::vector<E> r(kk + 1, a.a_[0].zero_like());
    std::optional<Valuation> tail;
    if (a.tail_ && b.tail_) {
      // Products a_i b_j with i + j > K, and those involving a tail.
      Valuation t = min(*a.tail_ + b.weighted_size(), *b.tail_ + a.weighted_size());
      for (int i = 0; i <= a.guard(); ++i)
        for (int j = std::max(0, kk + 1 - i); j <= b.guard(); ++j)
          t = min(t, detail::size_bound(a.a_[i]) + detail::size_bound(b.a_[j]) + Valuation(n * (i + j)));
      tail = t;
    }
    for (int i = 0; i <= kk; ++i)
      for (int j = 0; i + j <= kk; ++j) r[i + j] += a.a_[i] * b.a_[j];
    return UAdjElement(n, std::min(a.m_, b.m_), std::move(r), tail);
  }

  UAdjElement scaled(const Padic& s) const {
    UAdjElement r = *this;
    for (auto& x : r.a_) x = detail::scale(x, s);
    if (r.tail_ && !s.is_zero()) r.tail_ = *r.tail_ + s.valuation();
    return r;
  }

  /// Equal coefficients through the smaller reported truncation.
  friend bool operator==(const UAdjElement& a, const UAdjElement& b) {
    const int m = std::min(a.m_, b.m_);
    for (int k = 0; k <= m; ++k)
      if (!(a.a_[k] == b.a_[k])) return false;
    return true;
  }

  /// Smallest precision among the reported coefficients.
  int precision() const {
    int p = INT_MAX;
    for (int k = 0; k <= m_; ++k) p = std::min(p, a_[k].precision());
    return p;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= m_; ++k) {
      if (a_[k].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "[" << a_[k].to_string() << "]";
      if (k > 0) os << "*u" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (first) os << "0";
    os << " + O(u^" << m_ + 1 << ")";
    return os.str();
  }

 private:
  static void check_level(const UAdjElement& a, const UAdjElement& b) {
    if (a.level_ != b.level_) throw DomainError("u-adic elements at different levels");
  }

  template <class Op>
  static UAdjElement combine(const UAdjElement& a, const UAdjElement& b, Op op) {
    check_level(a, b);
    const int kk = std::min(a.guard(), b.guard());
    std::vector<E> r;
    for (int k = 0; k <= kk; ++k) r.push_back(op(a.a_[k], b.a_[k]));
    std::optional<Valuation> tail;
    if (a.tail_ && b.tail_) {
      Valuation t = min(*a.tail_, *b.tail_);
      for (const UAdjElement* z : {&a, &b})
        for (int k = kk + 1; k <= z->guard(); ++k)
          t = min(t, detail::size_bound(z->a_[k]) + Valuation(a.level_ * k));
      tail = t;
    }
    return UAdjElement(a.level_, std::min(a.m_, b.m_), std::move(r), tail);
  }

  int level_ = 1;
  int m_ = 0;
  std::vector<E> a_;
  std::optional<Valuation> tail_;
};

namespace detail {

inline void check_admissible(const Padic& c, int n) {
  const Padic c1 = c - c.one_like();
  if (c.is_zero() || c.ord() != 0) throw DomainError("character value must be a unit of Z_p");
  const int need = std::max(n, c.prime() == 2 ? 2 : 1);
  if (!c1.is_zero() && c1.ord() < need)
    throw DomainError("character value " + c.to_string() + " is outside 1 + p^" + std::to_string(need) + " Z_p");
}

inline int floor_of(const Valuation& v) { return static_cast<int>(v.floor()); }

}  // namespace detail

/// g(z) for chi(g) = c, computed through u^limit (default: every guard
/// coefficient).  Coefficient j is capped at precision floor(tau - n j).
template <class C>
UAdjElement<typename C::Element> uadj_act(const C& ring, const Padic& c, const UAdjElement<typename C::Element>& z,
                                          int limit = -1) {
  using E = typename C::Element;
  const int n = z.level();
  detail::check_admissible(c, n);
  if (!z.tail()) throw PrecisionError("the action does not converge: u-adic tail is not controlled at this level");
  const int kk = z.guard();
  const int jmax = limit < 0 ? kk : std::min(limit, kk);
  const Padic lam = log(c, AnalyticOptions{true});
  std::vector<E> moved;
  moved.reserve(kk + 1);
  for (int k = 0; k <= kk; ++k) moved.push_back(ring.act(c, z[k]));
  // lambda^i = p^{i v} w^i with w a unit; the power of p is applied exactly,
  // since p^{i v} itself underflows the precision cap for large i.
  // out_j = moved_j + w^-j sum_{k > j} binom(k, j) p^{(k - j) v} w^k moved_k
  const int v = lam.is_zero() ? 0 : lam.ord();
  const long p = lam.prime();
  const int cap = lam.field()->cap();
  const mpz_class pv = lam.field()->power(v);
  const Padic w = lam.is_zero() ? lam.one_like() : lam.div_int(pv);
  const Padic winv = w.inverse();
  std::vector<E> scaled;
  scaled.reserve(kk + 1);
  std::vector<int> floor_size(kk + 1);
  Padic wk = lam.one_like();
  for (int k = 0; k <= kk; ++k) {
    if (k > 0) wk *= w;
    scaled.push_back(k == 0 ? moved[0] : detail::scale(moved[k], wk));
    floor_size[k] = detail::coord_floor(scaled[k]);
  }
  std::vector<E> out;
  out.reserve(jmax + 1);
  Padic wj = lam.one_like();
  for (int j = 0; j <= jmax; ++j) {
    if (j > 0) wj *= winv;
    std::optional<E> sum;
    mpz_class bin = 1, pk = 1;  // binom(k, j), p^{(k - j) v}
    std::int64_t vbin = 0;
    for (int k = j + 1; k <= kk && !lam.is_zero(); ++k) {
      bin = bin * k / (k - j);
      vbin += integer_valuation(k, p) - integer_valuation(k - j, p);
      pk *= pv;
      // terms that vanish at the cap change nothing
      if (floor_size[k] + (k - j) * v + vbin >= cap) continue;
      E term = scaled[k].mul_int(mpz_class(bin * pk));
      if (sum)
        *sum += term;
      else
        sum = std::move(term);
    }
    E b = moved[j];
    if (sum) b += detail::scale(*sum, wj);
    const Valuation cap = *z.tail() - Valuation(n * j);
    if (cap < Valuation(b.precision())) b = b.with_precision(detail::floor_of(cap));
    out.push_back(std::move(b));
  }
  const int m = std::min(z.truncation(), jmax);
  return UAdjElement<E>(n, m, std::move(out), jmax == kk ? z.tail() : std::optional<Valuation>{});
}

/// nabla_u = -d/du.
template <class E>
UAdjElement<E> uadj_nabla_u(const UAdjElement<E>& z) {
  const int kk = z.guard();
  std::vector<E> out;
  for (int k = 1; k <= kk; ++k) out.push_back(-(z[k].mul_int(static_cast<long>(k))));
  if (out.empty()) out.push_back(z[0].zero_like());
  std::optional<Valuation> tail;
  if (z.tail()) tail = *z.tail() - Valuation(z.level());
  const int m = std::min(z.truncation(), static_cast<int>(out.size()) - 1);
  return UAdjElement<E>(z.level(), m, std::move(out), tail);
}

/// The connection nabla (x) 1 + d/du, whose kernel is the invariants.
template <class C>
UAdjElement<typename C::Element> uadj_total_connection(const C& ring, const UAdjElement<typename C::Element>& z) {
  using E = typename C::Element;
  std::vector<E> out;
  const int kk = z.guard();
  for (int k = 0; k < kk; ++k) out.push_back(ring.nabla(z[k]) + z[k + 1].mul_int(static_cast<long>(k + 1)));
  out.push_back(ring.nabla(z[kk]));
  const int m = std::min(z.truncation(), kk - 1);
  return UAdjElement<E>(z.level(), std::max(m, 0), std::move(out), {});
}

/// sum_i (-1)^i nabla^i(z0)/i! u^i.  Guard coefficients are added until the
/// tail bound no longer limits the reported precision.
template <class C>
UAdjElement<typename C::Element> uadj_section(const C& ring, const typename C::Element& z0, int n, int m) {
  using E = typename C::Element;
  if (n < 1) throw DomainError("B{{u}}_n needs n >= 1");
  const long p = z0.field()->prime();
  // v(a_k) + n k >= v(z0) + k(n + nu) - v_p(k!) >= v(z0) + k s + 1/(p-1).
  const Valuation s = Valuation(n) + ring.nabla_growth() - Valuation(1, p - 1);
  const Valuation v0 = detail::size_bound(z0);
  int kk = m;
  std::optional<Valuation> tail;
  if (s > Valuation(0)) {
    const Valuation need = Valuation(z0.precision()) - v0 + Valuation(n * m) - Valuation(1, p - 1);
    while (static_cast<std::int64_t>(kk + 1) * s < need && kk < m + 4096) ++kk;
    tail = v0 + static_cast<std::int64_t>(kk + 1) * s + Valuation(1, p - 1);
  }
  std::vector<E> a{z0};
  for (int i = 0; i < kk; ++i) a.push_back((-ring.nabla(a.back())).div_int(static_cast<long>(i + 1)));
  return UAdjElement<E>(n, m, std::move(a), tail);
}

template <class E>
E uadj_project0(const UAdjElement<E>& z) {
  return z[0];
}

/// Invariance under every sampled character value, together with the
/// linear criterion a_{i+1} = -nabla(a_i)/(i+1) on the reported range.
template <class C>
bool uadj_is_invariant(const C& ring, const UAdjElement<typename C::Element>& z, const std::vector<Padic>& sample) {
  for (int i = 0; i < z.truncation(); ++i)
    if (!(ring.nabla(z[i]) + z[i + 1].mul_int(static_cast<long>(i + 1))).is_zero()) return false;
  for (const auto& c : sample) {
    const auto moved = uadj_act(ring, c, z, z.truncation());
    for (int k = 0; k <= z.truncation(); ++k)
      if (!(moved[k] == z[k])) return false;
  }
  return true;
}

struct AnalyticTest {
  bool analytic = true;
  Valuation slack;
  /// table[i] = v(nabla^i(z0)/i!) + n i - v(z0); infinite when the term vanishes.
  std::vector<Valuation> table;
};

/// v_p(floor(M/(p-1))!).
inline Valuation default_analytic_slack(long p, int m) {
  return Valuation(factorial_valuation(m / (p - 1), p));
}

/// Finite Gamma_n-analyticity test: v(nabla^i(z0)/i!) + n i >= v(z0) - slack
/// for all i <= M.
template <class C>
AnalyticTest gamma_n_analytic_test(const C& ring, const typename C::Element& z0, int n, int m,
                                   std::optional<Valuation> slack = {}) {
  AnalyticTest out;
  const long p = z0.field()->prime();
  out.slack = slack ? *slack : default_analytic_slack(p, m);
  if (z0.is_zero()) {
    out.table.assign(m + 1, Valuation::infinite());
    return out;
  }
  const Valuation v0 = z0.valuation();
  auto a = z0;
  mpz_class fact = 1;
  for (int i = 0; i <= m; ++i) {
    if (i > 0) {
      a = ring.nabla(a);
      fact *= i;
    }
    const auto term = a.div_int(fact);
    const Valuation v = term.is_zero() ? Valuation::infinite() : term.valuation() + Valuation(n * i) - v0;
    out.table.push_back(v);
    if (!v.is_infinite() && v < Valuation(0) - out.slack) out.analytic = false;
  }
  return out;
}

/// Character values 1 + p^n, 1 + 2 p^n (or 1 + p^{n+1}), and (1 + p^n)^{-1}.
inline std::vector<Padic> standard_sample(const PadicField* field, int n) {
  const long p = field->prime();
  const int e = std::max(n, p == 2 ? 2 : 1);
  const Padic pn = Padic::power_of_p(field, e);
  const Padic one = Padic::from_int(field, 1L);
  const Padic second = p == 2 ? one + pn * Padic::power_of_p(field, 1) : one + pn.mul_int(2L);
  return {one + pn, second, (one + pn).inverse()};
}

/// Basis {x^k = section(t^k) : 0 <= k < N} of the invariants of
/// (K_n[[t]]/t^N){{u}}_n through u^M; x = t e^{-u}.
inline std::vector<UAdjElement<BdRElement>> bdr_uadj_invariants(const PadicField* field, int n, int big_n, int m) {
  const BdRCoefficients ring{field, n, big_n};
  const auto sample = standard_sample(field, n);
  std::vector<UAdjElement<BdRElement>> out;
  for (int k = 0; k < big_n; ++k) {
    auto x = uadj_section(ring, BdRElement::t_power(field, n, big_n, k), n, m);
    if (!uadj_is_invariant(ring, x, sample))
      throw PrecisionError("invariant basis element x^" + std::to_string(k) + " failed verification");
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace pahodge
