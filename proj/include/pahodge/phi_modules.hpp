#pragma once

// (phi, nabla_u)-modules over E<<x>> truncated at x^N, with phi(x) = pi x
// and nabla_u = x d/dx.  A module is given by the matrices P = Mat(phi) and
// G = Mat(nabla_u) in a basis e = (e_1..e_d) with columns as coordinates:
//   phi(e) = e P,   nabla(e) = e G.
// Commutation of phi and nabla reads G P + nabla(P) = P phi(G), and a base
// change e' = e B replaces P by B^-1 P phi(B) and G by B^-1 (G B + nabla(B)).

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "matrix_functions.hpp"
#include "padic.hpp"
#include "padic_functions.hpp"
#include "roots.hpp"
#include "series.hpp"

namespace pahodge {

using TruncEx = Series<Padic>;

/// sum a_k pi^k x^k
inline TruncEx phi_x(const TruncEx& f, const Padic& pi) {
  TruncEx r = f;
  Padic pk = pi.one_like();
  for (int k = 0; k <= f.truncation(); ++k) {
    r.coeff(k) = f[k] * pk;
    pk *= pi;
  }
  return r;
}

/// sum k a_k x^k
inline TruncEx nabla_x(const TruncEx& f) { return f.theta(); }

/// Matrices over E[x]/x^{N+1}, stored degree by degree.
class XMatrix {
 public:
  XMatrix() = default;
  XMatrix(int rows, int cols, int truncation, const Padic& zero)
      : c_(truncation + 1, Matrix<Padic>(rows, cols, zero)) {}

  static XMatrix constant(const Matrix<Padic>& a, int truncation) {
    XMatrix r(a.rows(), a.cols(), truncation, a.zero());
    r.c_[0] = a;
    return r;
  }
  static XMatrix identity(int d, int truncation, const Padic& proto) {
    return constant(Matrix<Padic>::identity(d, proto), truncation);
  }
  /// Entries given as truncated series (all with the same truncation).
  static XMatrix from_entries(const std::vector<std::vector<TruncEx>>& e) {
    if (e.empty() || e[0].empty()) throw ParseError("matrix needs at least one entry");
    const int rows = static_cast<int>(e.size()), cols = static_cast<int>(e[0].size());
    const int n = e[0][0].truncation();
    XMatrix r(rows, cols, n, e[0][0][0]);
    for (int i = 0; i < rows; ++i) {
      if (static_cast<int>(e[i].size()) != cols) throw ParseError("ragged matrix rows");
      for (int j = 0; j < cols; ++j) {
        if (e[i][j].truncation() != n) throw ParseError("matrix entries have different x-adic truncations");
        for (int k = 0; k <= n; ++k) r.c_[k](i, j) = e[i][j][k];
      }
    }
    return r;
  }

  int rows() const { return c_[0].rows(); }
  int cols() const { return c_[0].cols(); }
  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  const Padic& zero() const { return c_[0].zero(); }
  const Matrix<Padic>& operator[](int k) const { return c_[k]; }
  Matrix<Padic>& coeff(int k) { return c_[k]; }

  TruncEx entry(int r, int c) const {
    std::vector<Padic> a;
    for (const auto& m : c_) a.push_back(m(r, c));
    return TruncEx(a, truncation());
  }
  void set_entry(int r, int c, const TruncEx& f) {
    for (int k = 0; k <= truncation(); ++k) c_[k](r, c) = k <= f.truncation() ? f[k] : zero();
  }

  bool is_zero() const {
    for (const auto& m : c_)
      if (!m.is_zero()) return false;
    return true;
  }
  bool is_constant() const {
    for (std::size_t k = 1; k < c_.size(); ++k)
      if (!c_[k].is_zero()) return false;
    return true;
  }

  XMatrix truncated(int n) const {
    XMatrix r = *this;
    r.c_.resize(n + 1, Matrix<Padic>(rows(), cols(), zero()));
    return r;
  }

  friend XMatrix operator+(const XMatrix& a, const XMatrix& b) {
    const int n = std::min(a.truncation(), b.truncation());
    XMatrix r = a.truncated(n);
    for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
  }
  friend XMatrix operator-(const XMatrix& a, const XMatrix& b) {
    const int n = std::min(a.truncation(), b.truncation());
    XMatrix r = a.truncated(n);
    for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
  }
  XMatrix operator-() const {
    XMatrix r = *this;
    for (auto& m : r.c_) m = -m;
    return r;
  }
  friend XMatrix operator*(const XMatrix& a, const XMatrix& b) {
    const int n = std::min(a.truncation(), b.truncation());
    XMatrix r(a.rows(), b.cols(), n, a.zero());
    // zero blocks still carry an error term, so none are skipped
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
  }

  XMatrix scaled(const Padic& s) const {
    XMatrix r = *this;
    for (auto& m : r.c_) m = m.map([&](const Padic& x) { return s * x; });
    return r;
  }
  /// Degree k scaled by s^k: phi when s = pi, the Gamma-action when s = c.
  XMatrix twisted(const Padic& s) const {
    XMatrix r = *this;
    Padic sk = s.one_like();
    for (auto& m : r.c_) {
      m = m.map([&](const Padic& x) { return sk * x; });
      sk *= s;
    }
    return r;
  }
  /// x d/dx entrywise.
  XMatrix nabla() const {
    XMatrix r = *this;
    for (int k = 0; k <= truncation(); ++k) r.c_[k] = c_[k].map([&](const Padic& x) { return x.mul_int(static_cast<long>(k)); });
    return r;
  }
  /// Divide by x^k (every entry must be divisible); truncation drops by k.
  XMatrix shifted_down(int k) const {
    for (int j = 0; j < k; ++j)
      if (!c_[j].is_zero()) throw DomainError("matrix is not divisible by the requested power of x");
    XMatrix r(rows(), cols(), truncation() - k, zero());
    for (int j = k; j <= truncation(); ++j) r.c_[j - k] = c_[j];
    return r;
  }

  XMatrix inverse() const {
    if (rows() != cols()) throw Error("inverse of a non-square matrix");
    const Matrix<Padic> i0 = pahodge::inverse(c_[0]);
    XMatrix r(rows(), cols(), truncation(), zero());
    r.c_[0] = i0;
    for (int k = 1; k <= truncation(); ++k) {
      Matrix<Padic> s(rows(), cols(), zero());
      for (int j = 1; j <= k; ++j) s += c_[j] * r.c_[k - j];
      r.c_[k] = -(i0 * s);
    }
    return r;
  }

  XMatrix block(int r0, int c0, int nr, int nc) const {
    XMatrix r = *this;
    for (auto& m : r.c_) m = m.block(r0, c0, nr, nc);
    return r;
  }
  XMatrix columns(int c0, int n) const { return block(0, c0, rows(), n); }
  void set_block(int r0, int c0, const XMatrix& b) {
    for (int k = 0; k <= std::min(truncation(), b.truncation()); ++k) c_[k].set_block(r0, c0, b.c_[k]);
  }

  /// Entries equal at the smaller precision, through the smaller truncation.
  friend bool operator==(const XMatrix& a, const XMatrix& b) { return (a - b).is_zero(); }

  /// x-adic order of column c (truncation + 1 when the column vanishes).
  int column_order(int c) const {
    for (int k = 0; k <= truncation(); ++k)
      for (int r = 0; r < rows(); ++r)
        if (!c_[k](r, c).is_zero()) return k;
    return truncation() + 1;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows(); ++i) {
      os << (i ? ", [" : "[");
      for (int j = 0; j < cols(); ++j) os << (j ? ", " : "") << entry(i, j).to_string("x");
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  std::vector<Matrix<Padic>> c_;
};

struct PhiModuleX {
  XMatrix phi;
  std::optional<XMatrix> nabla;
  Padic pi;

  int rank() const { return phi.rows(); }
  int truncation() const { return phi.truncation(); }

  /// G P + nabla(P) - P phi(G); zero for a valid module.
  XMatrix commutator() const {
    if (!nabla) throw DomainError("module has no connection matrix");
    return *nabla * phi + phi.nabla() - phi * nabla->twisted(pi);
  }

  /// Checks the shape, invertibility of Mat(phi)(0) and the commutation.
  void validate() const {
    if (phi.rows() != phi.cols()) throw DomainError("Mat(phi) is not square");
    if (determinant(phi[0]).is_zero())
      throw DomainError("constant term of Mat(phi) is not invertible");
    if (nabla) {
      if (nabla->rows() != rank() || nabla->cols() != rank() || nabla->truncation() != truncation())
        throw DomainError("Mat(nabla) has the wrong shape");
      if (!commutator().is_zero()) throw DomainError("phi and nabla_u do not commute at this truncation");
    }
  }

  PhiModuleX base_change(const XMatrix& b) const {
    const XMatrix bi = b.inverse();
    PhiModuleX r{bi * phi * b.twisted(pi), std::nullopt, pi};
    if (nabla) r.nabla = bi * (*nabla * b + b.nabla());
    return r;
  }
};

/// Basis of the kernel of phi - alpha on E[x]/x^{N+1}: {x^i} when alpha = pi^i.
inline std::vector<TruncEx> kernel_phi_minus_alpha(const Padic& alpha, int n, const Padic& pi) {
  if (alpha.is_zero()) throw DomainError("alpha must be nonzero");
  std::vector<TruncEx> out;
  Padic pk = pi.one_like();
  for (int i = 0; i <= n; ++i) {
    if ((pk - alpha).is_zero()) out.push_back(TruncEx::monomial(i, alpha.one_like(), n));
    pk *= pi;
  }
  if (out.size() > 1)
    throw PrecisionError("alpha is indistinguishable from several powers of pi at this precision");
  return out;
}

struct PhiSolve {
  std::optional<TruncEx> solution;
  int obstruction_degree = -1;  // resonant index where g does not vanish
  std::optional<Padic> residual;
};

/// f with phi(f) - alpha f = g, solved degree by degree.
inline PhiSolve solve_phi_minus_alpha(const Padic& alpha, const TruncEx& g, const Padic& pi) {
  TruncEx f = g.zero_like();
  Padic pk = pi.one_like();
  for (int k = 0; k <= g.truncation(); ++k) {
    const Padic d = pk - alpha;
    if (d.is_zero()) {
      if (!g[k].is_zero()) return {std::nullopt, k, g[k]};
    } else {
      f.coeff(k) = g[k] / d;
    }
    pk *= pi;
  }
  return {f, -1, std::nullopt};
}

struct Resonance {
  int degree;
  int row;
  int col;
};

struct NormalForm {
  XMatrix base_change;              // B
  Matrix<Padic> semisimple;         // A, diagonal
  std::vector<Matrix<Padic>> graded;  // N_0..N_N, N_0 = 0
  std::vector<Padic> eigenvalues;   // diagonal of A
  std::vector<Resonance> resonances;

  XMatrix form() const {
    XMatrix r(semisimple.rows(), semisimple.cols(), static_cast<int>(graded.size()) - 1, semisimple.zero());
    r.coeff(0) = semisimple + graded[0];
    for (std::size_t k = 1; k < graded.size(); ++k) r.coeff(static_cast<int>(k)) = graded[k];
    return r;
  }
};

namespace detail {

// Eigenvalues in E (with multiplicity) and a basis of eigenvectors.
inline std::pair<std::vector<Padic>, Matrix<Padic>> diagonalize(const Matrix<Padic>& a) {
  const int d = a.rows();
  std::vector<Padic> cp = charpoly(a);
  const auto roots = roots_in_field_or_throw(cp);
  std::vector<Padic> eig;
  Matrix<Padic> v(d, 0, a.zero());
  for (const auto& r : roots) {
    const Matrix<Padic> k = kernel(a - Matrix<Padic>::identity(d, a.zero()).scaled(r.value));
    if (k.cols() != r.multiplicity)
      throw DomainError("constant term of Mat(phi) is not semisimple over the coefficient field");
    for (int j = 0; j < k.cols(); ++j) eig.push_back(r.value);
    v = v.cols() == 0 ? k : hstack(v, k);
  }
  if (v.cols() != d) throw DomainError("eigenvectors do not span");
  // Order eigenvectors by their first nonzero coordinate, so that a
  // diagonal matrix keeps its own basis.
  std::vector<int> order(d), lead(d, d);
  for (int j = 0; j < d; ++j) {
    order[j] = j;
    for (int r = 0; r < d; ++r)
      if (!v(r, j).is_zero()) {
        lead[j] = r;
        break;
      }
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return lead[a] < lead[b]; });
  Matrix<Padic> sorted(d, d, a.zero());
  std::vector<Padic> seig;
  for (int j = 0; j < d; ++j) {
    sorted.set_block(0, j, v.column(order[j]));
    seig.push_back(eig[order[j]]);
  }
  return {seig, sorted};
}

inline int default_resonance_threshold(const Matrix<Padic>& a) {
  int p = a.zero().field()->cap();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) p = std::min(p, a(i, j).precision());
  return (p + 1) / 2;
}

}  // namespace detail

/// B with B^-1 P phi(B) = A + sum x^k N_k, A diagonal and N_k supported on
/// (r, c) with lambda_c = pi^k lambda_r.  A difference pi^k lambda_r - lambda_c
/// that is nonzero but of valuation >= threshold raises PrecisionError.
inline NormalForm normal_form(const PhiModuleX& m, std::optional<int> threshold = {}) {
  const int d = m.rank(), n = m.truncation();
  const Padic& pi = m.pi;
  const int thr = threshold ? *threshold : detail::default_resonance_threshold(m.phi[0]);
  auto [eig, v] = detail::diagonalize(m.phi[0]);
  NormalForm out;
  out.eigenvalues = eig;
  XMatrix b = XMatrix::constant(v, n);
  out.semisimple = Matrix<Padic>(d, d, pi.zero_like());
  for (int i = 0; i < d; ++i) out.semisimple(i, i) = eig[i];
  out.graded.assign(n + 1, Matrix<Padic>(d, d, pi.zero_like()));
  Padic pk = pi.one_like();
  for (int k = 1; k <= n; ++k) {
    pk *= pi;
    const XMatrix cur = b.inverse() * m.phi * b.twisted(pi);
    const Matrix<Padic>& c = cur[k];
    Matrix<Padic> x(d, d, pi.zero_like());
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col) {
        const Padic diff = pk * eig[r] - eig[col];
        if (diff.is_zero()) {
          out.graded[k](r, col) = c(r, col);
          if (!c(r, col).is_zero()) out.resonances.push_back({k, r, col});
          continue;
        }
        if (diff.ord() >= thr)
          throw PrecisionError("near-resonance at degree " + std::to_string(k) + ": pi^k lambda_" + std::to_string(r) +
                               " - lambda_" + std::to_string(col) + " has valuation " + std::to_string(diff.ord()));
        x(r, col) = -(c(r, col) / diff);
      }
    XMatrix step = XMatrix::identity(d, n, pi);
    step.coeff(k) = x;
    b = b * step;
  }
  out.base_change = b;
  const XMatrix residual = b.inverse() * m.phi * b.twisted(pi) - out.form();
  if (!residual.is_zero()) throw PrecisionError("normal form residual is nonzero at the working precision");
  return out;
}

struct Saturation {
  int k = 0;                 // x-adic content removed
  XMatrix vector;            // v / x^k, truncation N - k
  Padic eigenvalue;          // alpha / pi^k
  XMatrix complement_basis;  // [v / x^k, e_j (j != pivot)], invertible at x = 0
};

/// v with P phi(v) = alpha v; returns v / x^k with k the x-adic content.
inline Saturation saturate_eigenvector(const PhiModuleX& m, const XMatrix& v, const Padic& alpha) {
  if (v.cols() != 1 || v.rows() != m.rank()) throw DomainError("eigenvector has the wrong shape");
  if (v.is_zero()) throw DomainError("cannot saturate the zero vector");
  const XMatrix vv = v.truncated(std::min(v.truncation(), m.truncation()));
  if (!(m.phi * vv.twisted(m.pi) - vv.scaled(alpha)).is_zero())
    throw DomainError("vector is not an eigenvector of phi for the given eigenvalue");
  Saturation s;
  s.k = vv.column_order(0);
  s.vector = vv.shifted_down(s.k);
  s.eigenvalue = alpha / m.pi.pow(s.k);
  int pivot = 0;
  for (int r = 1; r < m.rank(); ++r) {
    const Padic& a = s.vector[0](r, 0);
    const Padic& b = s.vector[0](pivot, 0);
    if (!a.is_zero() && (b.is_zero() || a.valuation() < b.valuation())) pivot = r;
  }
  XMatrix basis = XMatrix::identity(m.rank(), s.vector.truncation(), m.pi);
  basis.set_block(0, 0, s.vector);
  for (int c = 1, j = 0; c < m.rank(); ++c, ++j) {
    if (j == pivot) ++j;
    XMatrix e(m.rank(), 1, s.vector.truncation(), m.pi.zero_like());
    e.coeff(0)(j, 0) = m.pi.one_like();
    basis.set_block(0, c, e);
  }
  s.complement_basis = basis;
  return s;
}

/// Solution v with v(0) != 0 of P phi(v) = lambda v, where lambda is an
/// eigenvalue of P(0) of minimal valuation (so pi^k P(0) - lambda is
/// invertible for k >= 1).
inline XMatrix phi_eigenvector(const PhiModuleX& m, const Padic& lambda) {
  const int d = m.rank(), n = m.truncation();
  const auto id = Matrix<Padic>::identity(d, m.pi);
  XMatrix v(d, 1, n, m.pi.zero_like());
  const Matrix<Padic> k0 = kernel(m.phi[0] - id.scaled(lambda));
  if (k0.cols() != 1) throw DomainError("eigenvalue is not simple");
  v.coeff(0) = k0;
  std::vector<Padic> pk{m.pi.one_like()};
  for (int k = 1; k <= n; ++k) pk.push_back(pk.back() * m.pi);
  for (int k = 1; k <= n; ++k) {
    Matrix<Padic> rhs(d, 1, m.pi.zero_like());
    for (int i = 1; i <= k; ++i)
      if (!m.phi[i].is_zero()) rhs -= m.phi[i] * v[k - i].scaled(pk[k - i]);
    v.coeff(k) = solve(m.phi[0].scaled(pk[k]) - id.scaled(lambda), rhs);
  }
  return v;
}

struct FullFlag {
  XMatrix basis;  // F; M_j is spanned by its first j columns
  std::vector<Padic> eigenvalues;
  XMatrix phi_triangular;  // F^-1 P phi(F)
  std::optional<XMatrix> nabla_triangular;

  XMatrix submodule(int j) const { return basis.columns(0, j); }
};

namespace detail {

inline bool upper_triangular(const XMatrix& a) {
  for (int k = 0; k <= a.truncation(); ++k)
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < r; ++c)
        if (!a[k](r, c).is_zero()) return false;
  return true;
}

inline XMatrix flag_basis(const PhiModuleX& m) {
  const int d = m.rank(), n = m.truncation();
  if (d == 1) return XMatrix::identity(1, n, m.pi);
  const auto roots = roots_in_field_or_throw(charpoly(m.phi[0]));
  for (const auto& r : roots)
    if (r.multiplicity > 1) throw DomainError("full_flag needs pairwise distinct eigenvalues");
  std::size_t best = 0;
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (roots[i].value.valuation() < roots[best].value.valuation()) best = i;
  const Padic lambda = roots[best].value;
  const XMatrix v = phi_eigenvector(m, lambda);
  const Saturation s = saturate_eigenvector(m, v, lambda);
  const XMatrix c = s.complement_basis;
  const PhiModuleX moved = m.base_change(c);
  PhiModuleX quotient{moved.phi.block(1, 1, d - 1, d - 1), std::nullopt, m.pi};
  if (moved.nabla) quotient.nabla = moved.nabla->block(1, 1, d - 1, d - 1);
  const XMatrix sub = flag_basis(quotient);
  XMatrix lift = XMatrix::identity(d, n, m.pi);
  lift.set_block(1, 1, sub);
  return c * lift;
}

}  // namespace detail

/// Full flag of saturated phi- and nabla-stable submodules, built from an
/// eigenvector of minimal-valuation eigenvalue and recursion on the quotient.
inline FullFlag full_flag(const PhiModuleX& m) {
  m.validate();
  FullFlag out;
  out.basis = detail::flag_basis(m);
  const PhiModuleX tri = m.base_change(out.basis);
  out.phi_triangular = tri.phi;
  out.nabla_triangular = tri.nabla;
  if (!detail::upper_triangular(tri.phi)) throw PrecisionError("flag is not phi-stable at the working precision");
  if (tri.nabla && !detail::upper_triangular(*tri.nabla))
    throw PrecisionError("flag is not nabla-stable at the working precision");
  if (determinant(out.basis[0]).is_zero()) throw PrecisionError("flag is not saturated");
  for (int i = 0; i < m.rank(); ++i) out.eigenvalues.push_back(tri.phi[0](i, i));
  return out;
}

/// k with (f) = (x^k): f = c x^k with c a nonzero constant.
inline int classify_stable_ideal(const TruncEx& f) {
  if (f.is_zero()) throw DomainError("the zero ideal");
  const int k = f.order();
  std::vector<Padic> co;
  for (int j = k; j <= f.truncation(); ++j) co.push_back(f[j]);
  const TruncEx cofactor(co, f.truncation() - k);
  if (!is_global_unit(cofactor))
    throw DomainError("cofactor " + cofactor.to_string("x") +
                      " is not a constant, so (f) is not stable (units of E<<x>> are constants)");
  return k;
}

struct Rank1Character {
  Padic delta_pi;  // Mat(phi)
  Padic weight;    // Mat(nabla_u)
};

inline Rank1Character rank1_character(const PhiModuleX& m) {
  if (m.rank() != 1) throw DomainError("rank1_character needs a module of rank 1");
  if (!m.nabla) throw DomainError("rank1_character needs Mat(nabla_u)");
  if (!m.phi.is_constant())
    throw DomainError("Mat(phi) is not constant; a rank-1 module over E<<x>> has constant Mat(phi) in a good basis");
  if (m.phi[0](0, 0).is_zero()) throw DomainError("Mat(phi) vanishes");
  if (!m.nabla->is_constant()) throw DomainError("Mat(nabla_u) is not constant: phi(h) = h forces h constant");
  if (!m.commutator().is_zero()) throw DomainError("phi and nabla_u do not commute");
  return {m.phi[0](0, 0), (*m.nabla)[0](0, 0)};
}

/// Matrix of the g with chi(g) = c: sum_k log(c)^k G_k / k!, where
/// G_0 = I and G_{k+1} = G G_k + nabla(G_k), so that g(e) = e Gamma and
/// g(f e) = f(c x) g(e).
inline XMatrix gamma_from_nabla(const PhiModuleX& m, int n, const Padic& c) {
  if (!m.nabla) throw DomainError("gamma_from_nabla needs Mat(nabla_u)");
  const long p = m.pi.prime();
  const Padic c1 = c - c.one_like();
  if (c.is_zero() || c.ord() != 0) throw DomainError("c must be a unit of Z_p");
  if (!c1.is_zero() && c1.ord() < std::max(n, p == 2 ? 2 : 1))
    throw DomainError("c is outside 1 + p^n Z_p");
  const int d = m.rank(), nx = m.truncation();
  const XMatrix& g = *m.nabla;
  Valuation vg = Valuation(0);
  for (int k = 0; k <= nx; ++k) vg = min(vg, min_valuation(g[k]));
  const Valuation rate = Valuation(n) + vg - Valuation(1, p - 1);
  if (!(rate > Valuation(0)))
    throw DomainError("exp(log(c) nabla) does not converge: need n + min(0, v(Mat(nabla))) > 1/(p-1)");
  if (c1.is_zero()) return XMatrix::identity(d, nx, m.pi);
  const Padic lam = log(c, AnalyticOptions{true});
  // v(term_k) >= k rate; stop once that bound passes the cap.
  const int prec = m.pi.field()->cap();
  long last = 0;
  while (static_cast<std::int64_t>(last + 1) * rate < Valuation(prec + 1)) ++last;
  const PadicField* base = m.pi.field();
  const PadicField* work = base->with_cap(base->cap() + static_cast<int>(factorial_valuation(last, p)) + 1);
  Padic s = Padic::from_int(work, 1L);
  const Padic lw = lam.in_field(work);
  XMatrix gk = XMatrix::identity(d, nx, m.pi);
  XMatrix sum = gk;
  for (long k = 1; k <= last; ++k) {
    gk = g * gk + gk.nabla();
    s = (s * lw).div_int(k);
    sum = sum + gk.scaled(s.in_field(base));
  }
  return sum;
}

/// The E-linear operator of g (chi(g) = c) on M / x^{N+1} in the basis
/// x^j e_i (index j d + i).
inline Matrix<Padic> gamma_operator(const XMatrix& gamma, const Padic& c) {
  const int d = gamma.rows(), n = gamma.truncation();
  Matrix<Padic> out(d * (n + 1), d * (n + 1), c.zero_like());
  Padic cj = c.one_like();
  for (int j = 0; j <= n; ++j) {
    // g(x^j e_i) = c^j x^j sum_k x^k e Gamma_k(., i)
    for (int k = 0; j + k <= n; ++k)
      for (int r = 0; r < d; ++r)
        for (int i = 0; i < d; ++i) out((j + k) * d + r, j * d + i) = cj * gamma[k](r, i);
    cj *= c;
  }
  return out;
}

/// The E-linear operator of nabla_u on M / x^{N+1} in the same basis.
inline Matrix<Padic> nabla_operator(const XMatrix& g) {
  const int d = g.rows(), n = g.truncation();
  Matrix<Padic> out(d * (n + 1), d * (n + 1), g.zero());
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; j + k <= n; ++k)
      for (int r = 0; r < d; ++r)
        for (int i = 0; i < d; ++i) out((j + k) * d + r, j * d + i) = g[k](r, i);
    for (int i = 0; i < d; ++i) out(j * d + i, j * d + i) += g.zero().from_int_like(j);
  }
  return out;
}

}  // namespace pahodge
