#pragma once

// Filtered phi-modules over E, their refinements (full phi-stable flags),
// the attached orderings of eigenvalues and weights, the parameter
// delta_i(p) = phi_i p^{-s_i}, the Sen polynomial, and the filtration on
// D<<x>>[1/x] restricted to a window of x-exponents.

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "padic.hpp"
#include "roots.hpp"

namespace pahodge {

struct FilteredPhiModule {
  Matrix<Padic> phi;
  std::vector<int> weights;  // s_1 <= ... <= s_d
  Matrix<Padic> adapted;     // columns w_l, Fil^j = span{w_l : s_l >= j}

  int dimension() const { return phi.rows(); }
  const PadicField* field() const { return phi.zero().field(); }

  void validate() const {
    const int d = phi.rows();
    if (phi.cols() != d) throw DomainError("Frobenius matrix is not square");
    if (adapted.rows() != d || adapted.cols() != d) throw DomainError("adapted basis has the wrong shape");
    if (static_cast<int>(weights.size()) != d) throw DomainError("need one weight per basis vector");
    if (!std::is_sorted(weights.begin(), weights.end())) throw DomainError("weights must be listed in increasing order");
    if (determinant(phi).is_zero()) throw DomainError("Frobenius is not invertible at the working precision");
    if (determinant(adapted).is_zero()) throw DomainError("adapted basis is not a basis");
  }

  /// Columns spanning Fil^j (possibly zero columns).
  Matrix<Padic> fil(int j) const {
    std::vector<int> cols;
    for (int l = 0; l < dimension(); ++l)
      if (weights[l] >= j) cols.push_back(l);
    Matrix<Padic> r(dimension(), static_cast<int>(cols.size()), phi.zero());
    for (std::size_t c = 0; c < cols.size(); ++c) r.set_block(0, static_cast<int>(c), adapted.column(cols[c]));
    return r;
  }
};

/// dim(span A intersect span B) for matrices with independent columns.
inline int intersection_dimension(const Matrix<Padic>& a, const Matrix<Padic>& b) {
  if (a.cols() == 0 || b.cols() == 0) return 0;
  return rank(a) + rank(b) - rank(hstack(a, b));
}

struct Refinement {
  Matrix<Padic> basis;              // F_i = span of the first i columns
  std::vector<Padic> eigenvalues;   // phi_1..phi_d
  std::vector<int> weights;         // s_1..s_d
  std::vector<Padic> delta_p;       // phi_i p^{-s_i}

  Matrix<Padic> flag(int i) const { return basis.columns(0, i); }
};

/// Whether Phi F_i is contained in F_i for every i.
inline bool flag_is_stable(const FilteredPhiModule& dm, const Matrix<Padic>& basis) {
  for (int i = 1; i <= dm.dimension(); ++i) {
    const Matrix<Padic> f = basis.columns(0, i);
    if (rank(hstack(f, dm.phi * f)) != rank(f)) return false;
  }
  return true;
}

namespace detail {

// Quotient of monic polynomials (lowest degree first); throws if the
// division is not exact.
inline Poly divide_exact(const Poly& num, const Poly& den) {
  Poly r = num;
  const int dn = static_cast<int>(num.size()) - 1, dd = static_cast<int>(den.size()) - 1;
  Poly q(dn - dd + 1, num[0].zero_like());
  for (int k = dn - dd; k >= 0; --k) {
    q[k] = r[k + dd];
    for (int j = 0; j <= dd; ++j) r[k + j] -= q[k] * den[j];
  }
  for (int j = 0; j < dd; ++j)
    if (!r[j].is_zero()) throw DomainError("restricted characteristic polynomials do not divide each other");
  return q;
}

}  // namespace detail

/// phi_i: the new root of det(T - Phi|F_i) after det(T - Phi|F_{i-1}).
inline std::vector<Padic> ordering_of_flag(const FilteredPhiModule& dm, const Matrix<Padic>& basis) {
  const int d = dm.dimension();
  std::vector<Padic> out;
  Poly prev{dm.phi.zero().one_like()};
  for (int i = 1; i <= d; ++i) {
    const Matrix<Padic> f = basis.columns(0, i);
    Matrix<Padic> restricted;
    try {
      restricted = solve(f, dm.phi * f);
    } catch (const DomainError&) {
      throw DomainError("flag is not phi-stable at step " + std::to_string(i));
    }
    const Poly cp = charpoly(restricted);
    const Poly lin = detail::divide_exact(cp, prev);
    out.push_back(-lin[0]);
    prev = cp;
  }
  return out;
}

/// s_i: the jump of the induced filtration on F_i that is new compared to F_{i-1}.
inline std::vector<int> induced_weights(const FilteredPhiModule& dm, const Matrix<Padic>& basis) {
  const int d = dm.dimension();
  const int lo = dm.weights.front(), hi = dm.weights.back();
  // jumps(i)[j - lo] = multiplicity of the jump j on F_i.
  auto jumps = [&](int i) {
    std::vector<int> m(hi - lo + 1, 0);
    if (i == 0) return m;
    const Matrix<Padic> f = basis.columns(0, i);
    for (int j = lo; j <= hi; ++j) {
      const int here = intersection_dimension(dm.fil(j), f);
      const int next = intersection_dimension(dm.fil(j + 1), f);
      m[j - lo] = here - next;
    }
    return m;
  };
  std::vector<int> out;
  std::vector<int> prev = jumps(0);
  for (int i = 1; i <= d; ++i) {
    const auto cur = jumps(i);
    int found = 0, s = 0;
    for (int j = lo; j <= hi; ++j) {
      const int diff = cur[j - lo] - prev[j - lo];
      if (diff < 0 || diff > 1) throw DomainError("induced filtration is inconsistent");
      if (diff == 1) {
        ++found;
        s = j;
      }
    }
    if (found != 1) throw DomainError("flag step " + std::to_string(i) + " does not add exactly one jump");
    out.push_back(s);
    prev = cur;
  }
  return out;
}

/// delta_i(p) = phi_i p^{-s_i}; the Gamma-part of delta_i is chi^{-s_i}.
inline std::vector<Padic> parameter(const std::vector<Padic>& eigenvalues, const std::vector<int>& weights) {
  std::vector<Padic> out;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const Padic& a = eigenvalues[i];
    out.push_back(a * Padic::power_of_p(a.field(), -weights[i]));
  }
  return out;
}

inline Refinement make_refinement(const FilteredPhiModule& dm, const Matrix<Padic>& basis) {
  if (!flag_is_stable(dm, basis)) throw DomainError("flag is not phi-stable");
  Refinement r;
  r.basis = basis;
  r.eigenvalues = ordering_of_flag(dm, basis);
  r.weights = induced_weights(dm, basis);
  r.delta_p = parameter(r.eigenvalues, r.weights);
  return r;
}

/// One refinement per ordering of the (distinct) eigenvalues of Phi.
inline std::vector<Refinement> enumerate_refinements(const FilteredPhiModule& dm) {
  dm.validate();
  const int d = dm.dimension();
  const auto roots = roots_in_field_or_throw(charpoly(dm.phi));
  for (const auto& r : roots)
    if (r.multiplicity > 1)
      throw DomainError("repeated Frobenius eigenvalue: refinements are not determined by orderings");
  std::vector<Matrix<Padic>> lines;
  for (const auto& r : roots) {
    const auto k = kernel(dm.phi - Matrix<Padic>::identity(d, dm.phi.zero()).scaled(r.value));
    if (k.cols() != 1) throw PrecisionError("eigenline is not determined at the working precision");
    lines.push_back(k);
  }
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Refinement> out;
  do {
    Matrix<Padic> basis(d, d, dm.phi.zero());
    for (int i = 0; i < d; ++i) basis.set_block(0, i, lines[perm[i]]);
    out.push_back(make_refinement(dm, basis));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// prod (T - w(delta_i)) = prod (T + s_i), lowest degree first.
inline Poly sen_polynomial(const PadicField* field, const std::vector<int>& weights) {
  Poly f{Padic::from_int(field, 1L)};
  for (int s : weights) {
    Poly g(f.size() + 1, Padic::zero(field));
    for (std::size_t i = 0; i < f.size(); ++i) {
      g[i + 1] += f[i];
      g[i] += f[i].mul_int(static_cast<long>(s));
    }
    f = g;
  }
  return f;
}

/// A finite-dimensional piece of D<<x>>[1/x]: E-span of vectors
/// sum_{a <= i <= b} x^i v_i, coordinates indexed by (i - a) d + r.
struct WindowSpan {
  int lo = 0, hi = 0, dim = 0;
  Matrix<Padic> basis;

  int coordinate(int i, int r) const { return (i - lo) * dim + r; }

  std::string to_string() const {
    std::ostringstream os;
    os << "span of " << basis.cols() << " vectors in x^" << lo << "..x^" << hi;
    return os.str();
  }
};

namespace detail {

inline void check_window(int a, int b) {
  if (a > b) throw DomainError("empty x-exponent window");
}

inline WindowSpan span_of(const FilteredPhiModule& dm, int a, int b,
                          const std::vector<std::pair<int, Matrix<Padic>>>& pieces) {
  const int d = dm.dimension();
  WindowSpan w{a, b, d, Matrix<Padic>(d * (b - a + 1), 0, dm.phi.zero())};
  int n = 0;
  for (const auto& pc : pieces) n += pc.second.cols();
  w.basis = Matrix<Padic>(d * (b - a + 1), n, dm.phi.zero());
  int c = 0;
  for (const auto& [i, vecs] : pieces)
    for (int j = 0; j < vecs.cols(); ++j, ++c)
      for (int r = 0; r < d; ++r) w.basis(w.coordinate(i, r), c) = vecs(r, j);
  return w;
}

}  // namespace detail

/// Fil^k = span{x^i w_l : i + s_l >= k, a <= i <= b}.
inline WindowSpan fil_k(const FilteredPhiModule& dm, int k, int a, int b) {
  detail::check_window(a, b);
  std::vector<std::pair<int, Matrix<Padic>>> pieces;
  for (int i = a; i <= b; ++i) pieces.push_back({i, dm.fil(k - i)});
  return detail::span_of(dm, a, b, pieces);
}

/// x^k D<<x>> within the window.
inline WindowSpan shifted_module(const FilteredPhiModule& dm, int k, int a, int b) {
  detail::check_window(a, b);
  std::vector<std::pair<int, Matrix<Padic>>> pieces;
  for (int i = std::max(a, k); i <= b; ++i) pieces.push_back({i, Matrix<Padic>::identity(dm.dimension(), dm.phi.zero())});
  return detail::span_of(dm, a, b, pieces);
}

struct DtriLattice {
  std::vector<int> exponents;  // -s_l
  Matrix<Padic> vectors;       // w_l
  WindowSpan window;           // E-span of x^{-s_l + m} w_l, m >= 0, in the window
};

/// Fil^0 of D<<x>>[1/x]: the lattice with basis x^{-s_l} w_l.
inline DtriLattice dtri_lattice(const FilteredPhiModule& dm, int a, int b) {
  dm.validate();
  detail::check_window(a, b);
  if (a > -dm.weights.back() || b < -dm.weights.front())
    throw DomainError("window [" + std::to_string(a) + ", " + std::to_string(b) + "] does not contain every -s_l");
  DtriLattice out;
  for (int s : dm.weights) out.exponents.push_back(-s);
  out.vectors = dm.adapted;
  out.window = fil_k(dm, 0, a, b);
  return out;
}

/// z = sum x^i v_i (v given for i = a..b) lies in Fil^0 iff v_i in Fil^{-i}(D)
/// for every i.
inline bool dtri_contains(const FilteredPhiModule& dm, int a, const std::vector<Matrix<Padic>>& v) {
  for (std::size_t n = 0; n < v.size(); ++n) {
    const int i = a + static_cast<int>(n);
    const Matrix<Padic> f = dm.fil(-i);
    if (v[n].is_zero()) continue;
    if (f.cols() == 0) return false;
    if (rank(hstack(f, v[n])) != rank(f)) return false;
  }
  return true;
}

/// Whether span A is contained in span B.
inline bool span_contains(const WindowSpan& b, const WindowSpan& a) {
  if (a.basis.cols() == 0) return true;
  if (b.basis.cols() == 0) return a.basis.is_zero();
  return rank(hstack(b.basis, a.basis)) == rank(b.basis);
}

inline bool span_equal(const WindowSpan& a, const WindowSpan& b) { return span_contains(a, b) && span_contains(b, a); }

}  // namespace pahodge
