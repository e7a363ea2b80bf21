#pragma once

// Truncated power series in one and two variables over a coefficient ring.

#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "newton.hpp"
#include "padic.hpp"

namespace pahodge {

/// a_0 + a_1 T + ... + a_N T^N, computed modulo T^{N+1}.
template <class T>
class Series {
 public:
  Series() = default;
  Series(int truncation, const T& zero) : zero_(zero.zero_like()), c_(truncation + 1, zero_) {
    if (truncation < 0) throw DomainError("negative truncation");
  }
  Series(std::vector<T> coeffs, int truncation) : zero_(coeffs.at(0).zero_like()), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) > truncation + 1) throw DomainError("series has terms beyond its truncation");
    c_.resize(truncation + 1, zero_);
  }

  static Series constant(const T& a, int truncation) {
    Series s(truncation, a);
    s.c_[0] = a;
    return s;
  }
  static Series monomial(int k, const T& a, int truncation) {
    Series s(truncation, a);
    if (k <= truncation) s.c_[k] = a;
    return s;
  }
  /// The variable T.
  static Series variable(const T& proto, int truncation) { return monomial(1, proto.one_like(), truncation); }

  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_.at(k); }
  T& coeff(int k) { return c_.at(k); }
  const std::vector<T>& coeffs() const { return c_; }
  const T& zero_coeff() const { return zero_; }

  Series zero_like() const { return Series(truncation(), zero_); }
  Series one_like() const { return constant(zero_.one_like(), truncation()); }

  bool is_zero() const {
    for (const auto& a : c_)
      if (!a.is_zero()) return false;
    return true;
  }

  /// Index of the first coefficient that is nonzero at its precision, or
  /// truncation() + 1 when there is none.
  int order() const {
    for (int k = 0; k <= truncation(); ++k)
      if (!c_[k].is_zero()) return k;
    return truncation() + 1;
  }

  /// Same series cut at a lower truncation.
  Series truncated(int n) const {
    if (n > truncation()) throw DomainError("cannot raise the truncation of a series");
    return Series(std::vector<T>(c_.begin(), c_.begin() + n + 1), n);
  }

  friend Series operator+(const Series& a, const Series& b) {
    const int n = std::min(a.truncation(), b.truncation());
    Series r(n, a.zero_);
    for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    const int n = std::min(a.truncation(), b.truncation());
    Series r(n, a.zero_);
    for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    const int n = std::min(a.truncation(), b.truncation());
    Series r(n, a.zero_);
    for (int i = 0; i <= n; ++i) {
      if (a.c_[i].is_zero() && exact_zero(a.c_[i])) continue;
      for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const T& s) const {
    Series r = *this;
    for (auto& x : r.c_) x = s * x;
    return r;
  }
  Series mul_int(long k) const {
    Series r = *this;
    for (auto& x : r.c_) x = x.mul_int(k);
    return r;
  }
  Series div_int(long k) const {
    Series r = *this;
    for (auto& x : r.c_) x = x.div_int(k);
    return r;
  }

  Series pow(long e) const {
    Series r = one_like(), b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e > 0) b *= b;
    }
    return r;
  }

  /// d/dT; the result is truncated one degree lower.
  Series derive() const {
    const int n = std::max(truncation() - 1, 0);
    Series r(n, zero_);
    for (int k = 1; k <= truncation(); ++k) r.c_[k - 1] = c_[k].mul_int(k);
    return r;
  }

  /// T d/dT, same truncation.
  Series theta() const {
    Series r = *this;
    for (int k = 0; k <= truncation(); ++k) r.c_[k] = c_[k].mul_int(k);
    return r;
  }

  /// f(g) for g with vanishing constant term, by Horner's rule.
  Series compose(const Series& g) const {
    if (!g.c_[0].is_zero()) throw DomainError("compose: inner series has a nonzero constant term");
    const int n = std::min(truncation(), g.truncation());
    Series gg = g.truncated(n);
    gg.c_[0] = zero_;
    Series r = constant(c_[n], n);
    for (int k = n - 1; k >= 0; --k) {
      r = r * gg;
      r.c_[0] += c_[k];
    }
    return r;
  }

  /// 1/f for f with invertible constant term.
  Series inverse() const {
    if (c_[0].is_zero()) throw DomainError("invert: constant term is not a unit");
    const T inv0 = c_[0].one_like() / c_[0];
    Series r(truncation(), zero_);
    r.c_[0] = inv0;
    for (int n = 1; n <= truncation(); ++n) {
      T s = zero_;
      for (int k = 1; k <= n; ++k) s += c_[k] * r.c_[n - k];
      r.c_[n] = -(s * inv0);
    }
    return r;
  }

  /// Compositional inverse g with f(g(T)) = T, for f(0) = 0 and f'(0) invertible.
  Series reverse() const {
    if (!c_[0].is_zero()) throw DomainError("reverse: series has a nonzero constant term");
    if (truncation() < 1 || c_[1].is_zero()) throw DomainError("reverse: linear coefficient is not a unit");
    const int n = truncation();
    const T inv1 = c_[1].one_like() / c_[1];
    Series g(n, zero_);
    g.c_[1] = inv1;
    for (int m = 2; m <= n; ++m) {
      const Series h = compose(g.truncated(m).extended(n)).truncated(m);
      g.c_[m] = -(h.c_[m] * inv1);
    }
    return g;
  }

  /// Same coefficients with a larger truncation, padding with zeros.  The
  /// padded coefficients are exact zeros, so only use this where the caller
  /// truncates again.
  Series extended(int n) const {
    Series r = *this;
    r.c_.resize(n + 1, zero_);
    return r;
  }

  template <class F>
  auto map(F&& f) const {
    using U = decltype(f(c_[0]));
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& x : c_) out.push_back(f(x));
    return Series<U>(std::move(out), truncation());
  }

  friend bool operator==(const Series& a, const Series& b) {
    const int n = std::min(a.truncation(), b.truncation());
    for (int k = 0; k <= n; ++k)
      if (!(a.c_[k] == b.c_[k])) return false;
    return true;
  }

  std::string to_string(const std::string& var = "T") const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= truncation(); ++k) {
      if (c_[k].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[k].to_string() << ")";
      if (k > 0) os << "*" << var << (k > 1 ? "^" + std::to_string(k) : "");
    }
    if (first) os << "0";
    os << " + O(" << var << "^" << truncation() + 1 << ")";
    return os.str();
  }

 private:
  static bool exact_zero(const T& x) {
    if constexpr (std::is_same_v<T, Padic>)
      return x.precision() >= x.field()->cap();
    else
      return false;
  }

  T zero_{};
  std::vector<T> c_;
};

/// log(1 + T) = sum_{k=1}^N (-1)^{k+1} T^k / k.  The coefficient of T^k is
/// known to absolute precision cap - v_p(k).
inline Series<Padic> formal_log_mult(const PadicField* field, int N) {
  if (N < 1) throw DomainError("formal_log_mult needs N >= 1");
  Series<Padic> s(N, Padic::zero(field));
  const Padic one = Padic::from_int(field, 1L);
  for (int k = 1; k <= N; ++k) s.coeff(k) = (k % 2 == 1 ? one : -one).div_int(k);
  return s;
}

/// exp(T) - 1 = sum_{k=1}^N T^k / k!.
inline Series<Padic> formal_exp_minus_one(const PadicField* field, int N) {
  Series<Padic> s(N, Padic::zero(field));
  Padic term = Padic::from_int(field, 1L);
  for (int k = 1; k <= N; ++k) {
    term = term.div_int(k);
    s.coeff(k) = term;
  }
  return s;
}

/// (1 + T)^c - 1 = sum_{k>=1} binom(c, k) T^k for c in Z_p.
inline Series<Padic> binomial_series_minus_one(const Padic& c, int N) {
  Series<Padic> s(N, c.zero_like());
  Padic b = c.one_like();
  for (int k = 1; k <= N; ++k) {
    b = (b * (c - c.from_int_like(k - 1))).div_int(k);
    s.coeff(k) = b;
  }
  return s;
}

namespace detail {

inline void check_q(const PadicField* field, long q) {
  long x = q;
  while (x > 1 && x % field->prime() == 0) x /= field->prime();
  if (q < field->prime() || x != 1) throw DomainError("q must be a power of p");
}

inline Series<Padic> in_field(const Series<Padic>& s, const PadicField* f) {
  return s.map([&](const Padic& a) { return a.in_field(f); });
}

inline int lt_working_cap(const PadicField* field, int N) { return 2 * field->cap() + 2 * N + 10; }

}  // namespace detail

/// [p](T) = T^q + p T truncated at degree N.
inline Series<Padic> lubin_tate_p_series(const PadicField* field, long q, int N) {
  detail::check_q(field, q);
  Series<Padic> s(N, Padic::zero(field));
  if (q <= N) s.coeff(static_cast<int>(q)) = Padic::from_int(field, 1L);
  if (N >= 1) s.coeff(1) += Padic::from_int(field, field->prime());
  return s;
}

struct LubinTateLog {
  Series<Padic> series;
  int iterations = 0;  // k at which [p]^k(T)/p^k stopped changing
};

/// log_LT(T) = lim_k [p]^{k}(T) / p^k, iterated until two consecutive
/// quotients agree modulo p^cap below degree N+1 and q^k > N.
inline LubinTateLog lubin_tate_log_with_info(const PadicField* field, long q, int N) {
  detail::check_q(field, q);
  const PadicField* work = field->with_cap(detail::lt_working_cap(field, N));
  const Series<Padic> pser = lubin_tate_p_series(work, q, N);
  Series<Padic> it = Series<Padic>::variable(Padic::zero(work), N);
  Series<Padic> prev;
  bool have_prev = false;
  long qk = 1;
  const int kmax = work->cap() - field->cap();
  for (int k = 1; k <= kmax; ++k) {
    it = pser.compose(it);
    if (qk <= N) qk *= q;
    Series<Padic> cur = detail::in_field(it.map([&](const Padic& a) { return a / Padic::power_of_p(work, k); }), field);
    if (have_prev && qk > N && cur == prev) return {cur, k};
    prev = std::move(cur);
    have_prev = true;
  }
  throw PrecisionError("log_LT did not stabilise at the working precision");
}

inline Series<Padic> lubin_tate_log(const PadicField* field, long q, int N) {
  return lubin_tate_log_with_info(field, q, N).series;
}

/// exp_LT, the compositional inverse of log_LT.
inline Series<Padic> lubin_tate_exp(const PadicField* field, long q, int N) {
  const PadicField* work = field->with_cap(detail::lt_working_cap(field, N));
  const auto log_w = detail::in_field(lubin_tate_log(field, q, N), work);
  return detail::in_field(log_w.reverse(), field);
}

/// [a](T) = exp_LT(a log_LT(T)) for a in O_F.
inline Series<Padic> lt_multiplication(const Padic& a, long q, int N) {
  if (!a.is_zero() && a.ord() < 0) throw DomainError("[a](T) needs a in O_F");
  const PadicField* field = a.field();
  const PadicField* work = field->with_cap(detail::lt_working_cap(field, N));
  const auto log_w = detail::in_field(lubin_tate_log(field, q, N), work);
  const auto exp_w = log_w.reverse();
  return detail::in_field(exp_w.compose(log_w.scaled(a.in_field(work))), field);
}

inline NewtonPolygon newton_polygon(const Series<Padic>& f) { return newton_polygon(f.coeffs()); }

/// Units of the ring of entire series are the nonzero constants.
inline bool is_global_unit(const Series<Padic>& f) {
  if (f[0].is_zero()) return false;
  for (int k = 1; k <= f.truncation(); ++k)
    if (!f[k].is_zero()) return false;
  return true;
}

/// sum a_ij T1^i T2^j with i + j <= N.
template <class T>
class BiSeries {
 public:
  BiSeries(int truncation, const T& zero)
      : n_(truncation), zero_(zero.zero_like()), c_((truncation + 1) * (truncation + 2) / 2, zero_) {}

  int truncation() const { return n_; }
  static int index(int i, int j) {
    const int d = i + j;
    return d * (d + 1) / 2 + j;
  }
  const T& operator()(int i, int j) const { return c_.at(index(i, j)); }
  T& operator()(int i, int j) { return c_.at(index(i, j)); }

  bool is_zero() const {
    for (const auto& a : c_)
      if (!a.is_zero()) return false;
    return true;
  }

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.n_, b.n_), a.zero_);
    for (int d = 0; d <= r.n_; ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j) = a(d - j, j) + b(d - j, j);
    return r;
  }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    BiSeries r(std::min(a.n_, b.n_), a.zero_);
    for (int d1 = 0; d1 <= r.n_; ++d1)
      for (int j1 = 0; j1 <= d1; ++j1)
        for (int d2 = 0; d1 + d2 <= r.n_; ++d2)
          for (int j2 = 0; j2 <= d2; ++j2) r(d1 - j1 + d2 - j2, j1 + j2) += a(d1 - j1, j1) * b(d2 - j2, j2);
    return r;
  }

  /// (T1 d/dT1 + T2 d/dT2) applied termwise: a_ij -> (i + j) a_ij.
  BiSeries nabla_sum() const {
    BiSeries r = *this;
    for (int d = 0; d <= n_; ++d)
      for (int j = 0; j <= d; ++j) r(d - j, j) = (*this)(d - j, j).mul_int(d);
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int d = 0; d <= n_; ++d)
      for (int j = 0; j <= d; ++j) {
        const T& a = (*this)(d - j, j);
        if (a.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << a.to_string() << ")";
        if (d - j > 0) os << "*T1" << (d - j > 1 ? "^" + std::to_string(d - j) : "");
        if (j > 0) os << "*T2" << (j > 1 ? "^" + std::to_string(j) : "");
      }
    if (first) os << "0";
    return os.str();
  }

 private:
  int n_;
  T zero_;
  std::vector<T> c_;
};

/// Basis of the kernel of T1 d/dT1 + T2 d/dT2 on F[[T1, T2]] truncated at
/// total degree N, found by Gaussian elimination on the monomial basis.
inline std::vector<BiSeries<Padic>> anticyclo_kernel(const PadicField* field, int N) {
  if (N < 0) throw DomainError("anticyclo_kernel needs N >= 0");
  const int dim = (N + 1) * (N + 2) / 2;
  const Padic zero = Padic::zero(field);
  Matrix<Padic> L(dim, dim, zero);
  for (int d = 0; d <= N; ++d)
    for (int j = 0; j <= d; ++j) {
      BiSeries<Padic> mono(N, zero);
      mono(d - j, j) = Padic::from_int(field, 1L);
      const auto image = mono.nabla_sum();
      const int col = BiSeries<Padic>::index(d - j, j);
      for (int d2 = 0; d2 <= N; ++d2)
        for (int j2 = 0; j2 <= d2; ++j2) L(BiSeries<Padic>::index(d2 - j2, j2), col) = image(d2 - j2, j2);
    }
  const Matrix<Padic> K = kernel(L);
  std::vector<BiSeries<Padic>> basis;
  for (int c = 0; c < K.cols(); ++c) {
    BiSeries<Padic> s(N, zero);
    for (int d = 0; d <= N; ++d)
      for (int j = 0; j <= d; ++j) s(d - j, j) = K(BiSeries<Padic>::index(d - j, j), c);
    basis.push_back(std::move(s));
  }
  return basis;
}

}  // namespace pahodge
