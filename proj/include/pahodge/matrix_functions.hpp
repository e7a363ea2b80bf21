#pragma once

// Matrix logarithm and exponential over a p-adic coefficient ring, with the
// number of series terms chosen from the valuation of the argument.

#include <cmath>

#include "matrix.hpp"
#include "padic.hpp"
#include "padic_functions.hpp"

namespace pahodge {

template <class T>
Valuation min_valuation(const Matrix<T>& a) {
  Valuation v = Valuation::infinite();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) v = min(v, a(i, j).valuation());
  return v;
}

template <class T>
int min_precision(const Matrix<T>& a) {
  int p = a.zero().field()->cap();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) p = std::min(p, a(i, j).precision());
  return p;
}

template <class T>
Matrix<T> in_field(const Matrix<T>& a, const PadicField* f) {
  Matrix<T> r(a.rows(), a.cols(), a.zero().in_field(f));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).in_field(f);
  return r;
}

namespace detail {

// Largest k with k v - v_p(k)-bound < target, i.e. the last term of
// sum X^k/k that can still matter modulo p^target when v(X) >= v.
inline long log_terms(const Valuation& v, int target, long p) {
  const double vd = static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
  if (vd <= 0) throw DomainError("matrix log: argument is not topologically nilpotent");
  long last = 1;
  for (long k = 1;; ++k) {
    const double val = static_cast<double>(k) * vd - detail::floor_log(k, p);
    if (val < target) last = k;
    const double real = static_cast<double>(k) * vd - std::log(static_cast<double>(k)) / std::log(static_cast<double>(p));
    if (k * vd * std::log(static_cast<double>(p)) >= 1.0 && real >= target) break;
    if (k > 1000000) throw DomainError("matrix log: too many terms needed");
  }
  return last;
}

// Last k with v(X^k/k!) possibly below target, for v(X) >= v > 1/(p-1).
inline long exp_terms(const Valuation& v, int target, long p) {
  const Valuation margin = v - Valuation(1, p - 1);
  if (margin <= Valuation(0)) throw DomainError("matrix exp: argument outside the convergence disc");
  long last = 0;
  for (long k = 1;; ++k) {
    // v(X^k/k!) >= k v - (k-1)/(p-1), increasing in k.
    const Valuation val = k * v - Valuation(k - 1, p - 1);
    if (val < Valuation(target)) last = k;
    else break;
  }
  return last;
}

}  // namespace detail

/// log(M) = sum_{k=1}^{K} (-1)^{k+1} (M - I)^k / k, where K is the last
/// term that can contribute modulo p^P, P the smallest entry precision of M.
template <class T>
Matrix<T> matrix_log(const Matrix<T>& m, long* terms_used = nullptr) {
  const int n = m.rows();
  const auto one = Matrix<T>::identity(n, m.zero());
  const Matrix<T> x = m - one;
  const int target = min_precision(m);
  const Valuation v = min_valuation(x);
  if (v.is_infinite()) {
    if (terms_used) *terms_used = 0;
    return x;
  }
  const PadicField* base = m.zero().field();
  const long p = base->prime();
  const long last = detail::log_terms(v, target, p);
  if (terms_used) *terms_used = last;
  const PadicField* work = base->with_cap(base->cap() + detail::floor_log(last, p) + 1);
  const Matrix<T> xw = in_field(x, work);
  Matrix<T> sum = xw, power = xw;
  for (long k = 2; k <= last; ++k) {
    power = power * xw;
    const Matrix<T> term = power.map([&](const T& a) { return a.div_int(k); });
    if (k % 2 == 0)
      sum -= term;
    else
      sum += term;
  }
  return in_field(sum, base).map([&](const T& a) { return a.with_precision(target); });
}

/// exp(A) = sum_k A^k / k! for v(A) > 1/(p-1).
template <class T>
Matrix<T> matrix_exp(const Matrix<T>& a, long* terms_used = nullptr) {
  const int n = a.rows();
  const int target = min_precision(a);
  const Valuation v = min_valuation(a);
  const auto one = Matrix<T>::identity(n, a.zero());
  if (v.is_infinite()) {
    if (terms_used) *terms_used = 0;
    return one.map([&](const T& x) { return x.with_precision(target); });
  }
  const PadicField* base = a.zero().field();
  const long p = base->prime();
  const long last = detail::exp_terms(v, target, p);
  if (terms_used) *terms_used = last;
  const PadicField* work = base->with_cap(base->cap() + static_cast<int>(factorial_valuation(last, p)) + 1);
  const Matrix<T> aw = in_field(a, work);
  Matrix<T> sum = in_field(one, work), term = sum;
  for (long k = 1; k <= last; ++k) {
    term = (term * aw).map([&](const T& x) { return x.div_int(k); });
    sum += term;
  }
  return in_field(sum, base).map([&](const T& x) { return x.with_precision(target); });
}

}  // namespace pahodge
