#pragma once

// log, exp, Teichmuller lifts and Frobenius on capped p-adic elements.

#include <map>
#include <mutex>
#include <vector>

#include "padic.hpp"

namespace pahodge {

/// Whether p = 2 is accepted by log/exp.  With p = 2 the convergence
/// conditions are tightened to v(a - 1) >= 2 and v(a) >= 2.
struct AnalyticOptions {
  bool allow_p2 = false;
};

namespace detail {

inline void check_p2(const Padic& a, const AnalyticOptions& opt) {
  if (a.prime() == 2 && !opt.allow_p2)
    throw DomainError("p = 2 is disabled for log/exp (enable allow_p2)");
}

inline int floor_log(long k, long p) {
  int r = 0;
  while (k >= p) {
    k /= p;
    ++r;
  }
  return r;
}

}  // namespace detail

/// p-adic logarithm sum_{k>=1} (-1)^{k+1} (a-1)^k / k for v(a - 1) >= 1.
/// The output keeps the absolute precision of a: for k >= 2 the term
/// (a-1)^k / k is known to precision prec(a) + (k-1) v(a-1) - v_p(k).
inline Padic log(const Padic& a, const AnalyticOptions& opt = {}) {
  detail::check_p2(a, opt);
  const Padic y0 = a - a.one_like();
  const int prec = y0.precision();
  if (y0.is_zero()) return Padic::zero(a.field(), prec);
  const long v = y0.ord();
  const long p = a.prime();
  if (v < (p == 2 ? 2 : 1))
    throw DomainError("log: argument " + a.to_string() + " is outside the convergence disc");
  long last = 1;
  while (v * (last + 1) - detail::floor_log(last + 1, p) < prec) ++last;
  // Intermediate powers need more digits than the cap allows.
  const PadicField* work = a.field()->with_cap(a.field()->cap() + detail::floor_log(last, p) + 1);
  const Padic y = y0.in_field(work);
  Padic sum = y;
  Padic power = y;
  for (long k = 2; k <= last; ++k) {
    power *= y;
    Padic term = power.div_int(k);
    if (k % 2 == 0)
      sum -= term;
    else
      sum += term;
  }
  return sum.in_field(a.field()).with_precision(prec);
}

/// p-adic exponential sum a^k / k! for v(a) > 1/(p-1).
inline Padic exp(const Padic& a, const AnalyticOptions& opt = {}) {
  detail::check_p2(a, opt);
  const int prec = a.precision();
  const long p = a.prime();
  if (a.is_zero()) return a.one_like().with_precision(prec);
  const long v = a.ord();
  if (p == 2 ? v < 2 : v < 1)
    throw DomainError("exp: argument " + a.to_string() + " is outside the convergence disc");
  // v(a^k/k!) >= k v - (k-1)/(p-1) is increasing in k.
  long last = 0;
  while (((last + 1) * v - prec) * (p - 1) < last) ++last;
  const PadicField* work =
      a.field()->with_cap(a.field()->cap() + static_cast<int>(factorial_valuation(last, p)) + 1);
  const Padic x = a.in_field(work);
  Padic sum = x.one_like();
  Padic term = x.one_like();
  for (long k = 1; k <= last; ++k) {
    term = (term * x).div_int(k);
    sum += term;
  }
  return sum.in_field(a.field()).with_precision(prec);
}

/// Teichmuller lift of a residue class given by its coordinates in F_p^f
/// (basis 1, b, ..., b^{f-1}): the unique root of X^q = X reducing to it.
inline Padic teichmuller(const PadicField* field, const std::vector<long>& residue) {
  if (static_cast<int>(residue.size()) != field->degree())
    throw ParseError("teichmuller: residue has the wrong number of coordinates");
  std::vector<mpz_class> c(residue.size());
  for (std::size_t i = 0; i < residue.size(); ++i) c[i] = residue[i];
  Padic x = Padic::from_coords(field, std::move(c), 0, field->cap());
  if (x.is_zero()) return x;
  if (x.ord() > 0) return Padic::zero(field);
  const long q = static_cast<long>(field->residue_size());
  // x -> x^q gains one digit per step.
  for (int i = 0; i <= field->cap() + 1; ++i) {
    Padic next = x.pow(q);
    if (next.unit_coords() == x.unit_coords() && next.ord() == x.ord()) break;
    x = std::move(next);
  }
  return x;
}

inline Padic teichmuller(const PadicField* field, long residue) {
  std::vector<long> r(field->degree(), 0);
  r[0] = residue;
  return teichmuller(field, r);
}

/// Image of the generator b under the arithmetic Frobenius: the root of the
/// defining polynomial congruent to b^p, found by Newton iteration.
inline Padic frobenius_of_generator(const PadicField* field) {
  static std::mutex mu;
  static std::map<const PadicField*, Padic> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(field);
    if (it != cache.end()) return it->second;
  }
  const auto& g = field->modulus();
  auto eval = [&](const Padic& y) {
    Padic r = Padic::from_int(field, g.back());
    for (std::size_t i = g.size() - 1; i-- > 0;) r = r * y + Padic::from_int(field, g[i]);
    return r;
  };
  auto deriv = [&](const Padic& y) {
    Padic r = Padic::from_int(field, static_cast<long>(g.size() - 1) * g.back());
    for (std::size_t i = g.size() - 1; i-- > 1;) r = r * y + Padic::from_int(field, static_cast<long>(i) * g[i]);
    return r;
  };
  Padic y = Padic::generator(field).pow(field->prime());
  for (int i = 0; i < 64; ++i) {
    Padic step = eval(y) / deriv(y);
    y -= step;
    if (step.is_zero()) break;
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(field, y);
  return y;
}

/// Arithmetic Frobenius sigma on the unramified extension (identity on Q_p).
inline Padic frobenius(const Padic& a) {
  const PadicField* field = a.field();
  if (field->degree() == 1 || a.is_zero()) return a;
  const Padic s = frobenius_of_generator(field);
  const auto& c = a.unit_coords();
  Padic r = Padic::zero(field);
  for (std::size_t i = c.size(); i-- > 0;) r = r * s + Padic::from_int(field, c[i]);
  return (r * Padic::power_of_p(field, a.ord())).with_precision(a.precision());
}

}  // namespace pahodge
