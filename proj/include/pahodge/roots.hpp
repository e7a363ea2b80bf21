#pragma once

// Roots in E of polynomials with coefficients in E (E = Q_p or an
// unramified extension).  Residues are enumerated, simple roots are lifted
// by Newton iteration and clusters are refined recursively (Panayi).

#include <string>
#include <vector>

#include "newton.hpp"
#include "padic.hpp"

namespace pahodge {

using Poly = std::vector<Padic>;  // lowest degree first

inline Padic poly_eval(const Poly& f, const Padic& x) {
  Padic r = f.back();
  for (std::size_t i = f.size() - 1; i-- > 0;) r = r * x + f[i];
  return r;
}

inline Poly poly_derivative(const Poly& f) {
  if (f.size() <= 1) return {f.at(0).zero_like()};
  Poly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = f[i].mul_int(static_cast<long>(i));
  return d;
}

/// Coefficients of f(a + b y).
inline Poly poly_substitute(const Poly& f, const Padic& a, const Padic& b) {
  Poly out(f.size(), f[0].zero_like());
  // Horner in the polynomial ring: out = out * (a + b y) + f_i.
  for (std::size_t i = f.size(); i-- > 0;) {
    Poly next(f.size(), f[0].zero_like());
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (out[k].is_zero() && out[k].precision() >= out[k].field()->cap()) continue;
      next[k] += out[k] * a;
      if (k + 1 < f.size()) next[k + 1] += out[k] * b;
    }
    next[0] += f[i];
    out = std::move(next);
  }
  return out;
}

struct Root {
  Padic value;
  int multiplicity = 1;
};

namespace detail {

inline std::vector<std::vector<long>> all_residues(const PadicField* field) {
  const std::uint64_t q = field->residue_size();
  if (q > 200000) throw DomainError("residue field too large to enumerate");
  std::vector<std::vector<long>> out;
  out.reserve(q);
  const int f = field->degree();
  const long p = field->prime();
  for (std::uint64_t n = 0; n < q; ++n) {
    std::vector<long> c(f);
    std::uint64_t m = n;
    for (int i = 0; i < f; ++i) {
      c[i] = static_cast<long>(m % p);
      m /= p;
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Divide by the content so that some coefficient is a unit.
inline Poly primitive_part(const Poly& f) {
  int c = INT32_MAX;
  for (const auto& a : f)
    if (!a.is_zero()) c = std::min(c, a.ord());
  if (c == INT32_MAX) return f;
  const Padic pc = Padic::power_of_p(f[0].field(), c);
  Poly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i] / pc;
  return g;
}

inline Padic newton_lift(const Poly& f, Padic x) {
  const Poly df = poly_derivative(f);
  for (int i = 0; i < 128; ++i) {
    const Padic fx = poly_eval(f, x);
    if (fx.is_zero()) break;
    const Padic step = fx / poly_eval(df, x);
    if (step.is_zero()) break;
    x -= step;
  }
  return x;
}

// Roots in O_E of a primitive polynomial h.
inline void integral_roots(const Poly& h, const std::vector<std::vector<long>>& residues, bool units_only,
                           std::vector<Root>& out, const Padic& shift, const Padic& scale) {
  const PadicField* field = h[0].field();
  const Padic p = Padic::power_of_p(field, 1);
  for (const auto& r : residues) {
    bool is_zero_residue = true;
    for (long c : r) is_zero_residue = is_zero_residue && c == 0;
    if (units_only && is_zero_residue) continue;
    std::vector<mpz_class> coords(r.begin(), r.end());
    const Padic R = Padic::from_coords(field, coords, 0, field->cap());
    const Padic hr = poly_eval(h, R);
    if (!hr.is_zero() && hr.ord() <= 0) continue;
    // Number of roots of h in R + pO: index of the first unit coefficient of h(R + y).
    const Poly shifted = poly_substitute(h, R, R.one_like());
    int m = -1;
    for (std::size_t k = 0; k < shifted.size(); ++k)
      if (!shifted[k].is_zero() && shifted[k].ord() == 0) {
        m = static_cast<int>(k);
        break;
      }
    const Poly s = primitive_part(poly_substitute(h, R, p));
    bool all_zero = true;
    for (const auto& c : s) all_zero = all_zero && c.is_zero();
    // Residues of s are only meaningful while its coefficients carry at
    // least two digits; an exact repeated root would otherwise recurse forever.
    int s_prec = field->cap();
    for (const auto& c : s) s_prec = std::min(s_prec, c.precision());
    const bool too_deep = m > 1 && (s_prec < 2 || scale.ord() + 1 >= field->cap());
    if (all_zero || m < 0 || too_deep) {
      // Precision exhausted: report the residue class as a cluster.
      Padic v = shift + scale * R;
      out.push_back({v.with_precision(std::min(v.precision(), scale.ord() + 1)), std::max(m, 1)});
      continue;
    }
    if (m <= 0) continue;
    if (m == 1) {
      const Padic x = newton_lift(h, R);
      out.push_back({shift + scale * x, 1});
      continue;
    }
    integral_roots(s, residues, false, out, shift + scale * R, scale * p);
  }
}

}  // namespace detail

/// All roots of f lying in E, with multiplicities.  Roots whose valuation is
/// not an integer, or whose residues lie outside the residue field of E, are
/// not returned; use `roots_in_field_or_throw` when all roots are required.
inline std::vector<Root> roots_in_field(const Poly& f_in) {
  Poly f = f_in;
  while (f.size() > 1 && f.back().is_zero()) f.pop_back();
  if (f.size() == 1) {
    if (f[0].is_zero()) throw PrecisionError("polynomial is zero at the working precision");
    return {};
  }
  const PadicField* field = f[0].field();
  std::vector<Root> out;
  const NewtonPolygon np = newton_polygon(f);
  if (np.zeros_at_origin > 0) out.push_back({Padic::zero(field), np.zeros_at_origin});
  Poly g(f.begin() + np.zeros_at_origin, f.end());
  const auto residues = detail::all_residues(field);
  for (const auto& seg : np.segments) {
    const Valuation rv = Valuation(0) - seg.slope;
    if (rv.denominator() != 1) continue;
    const int r = static_cast<int>(rv.numerator());
    const Padic pr = Padic::power_of_p(field, r);
    Poly h(g.size());
    Padic pk = Padic::from_int(field, 1L);
    for (std::size_t k = 0; k < g.size(); ++k) {
      h[k] = g[k] * pk;
      pk *= pr;
    }
    detail::integral_roots(detail::primitive_part(h), residues, true, out, Padic::zero(field), pr);
  }
  return out;
}

inline int degree_of(const Poly& f) {
  int d = 0;
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!f[k].is_zero()) d = static_cast<int>(k);
  return d;
}

/// Like roots_in_field, but fails with DomainError naming the number of
/// roots that need a field extension.
inline std::vector<Root> roots_in_field_or_throw(const Poly& f) {
  auto roots = roots_in_field(f);
  int count = 0;
  for (const auto& r : roots) count += r.multiplicity;
  const int d = degree_of(f);
  if (count < d)
    throw DomainError(std::to_string(d - count) + " of " + std::to_string(d) +
                      " roots of the characteristic polynomial lie outside the coefficient field; "
                      "an extension of scalars is needed");
  return roots;
}

}  // namespace pahodge
