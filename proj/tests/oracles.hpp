#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary.

#include <gmpxx.h>

#include <vector>

#include "pahodge/uadj.hpp"

namespace testing_support {

using namespace pahodge;

struct BruteForceInvariants {
  int dimension = 0;           // over K_n
  bool divisible = true;       // nullity is a multiple of [K_n : Q_p]
  bool candidates_ok = true;   // every supplied element solves the system
};

/// Dimension over K_n of {z = sum a_ij t^i u^j : a_ij in K_{n+1}, i < N,
/// j <= M} cut out by i a_ij + (j+1) a_{i,j+1} = 0 and fixedness of every
/// a_ij under the generator 1 + p^n of Gal(K_{n+1}/K_n).
inline BruteForceInvariants brute_force_invariants(const PadicField* F, int n, int N, int M,
                                                   const std::vector<UAdjElement<BdRElement>>& check) {
  const long p = F->prime();
  const int dd = static_cast<int>(CycloElement::degree(p, n + 1));
  const int dn = static_cast<int>(CycloElement::degree(p, n));
  const int unknowns = N * (M + 1) * dd;
  auto idx = [&](int i, int j, int r) { return (i * (M + 1) + j) * dd + r; };
  const Padic zero = Padic::zero(F);
  std::vector<std::vector<Padic>> rows;
  long pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  const Padic g = Padic::from_int(F, 1 + pn);
  // sigma on the basis zeta^r of K_{n+1}.
  std::vector<std::vector<Padic>> sigma(dd);
  for (int r = 0; r < dd; ++r) sigma[r] = CycloElement::zeta(F, n + 1, r).chi_action(g).coords();
  for (int i = 0; i < N; ++i)
    for (int j = 0; j <= M; ++j) {
      for (int s = 0; s < dd; ++s) {
        std::vector<Padic> row(unknowns, zero);
        for (int r = 0; r < dd; ++r) row[idx(i, j, r)] = sigma[r][s];
        row[idx(i, j, s)] -= Padic::from_int(F, 1L);
        rows.push_back(row);
      }
      if (j < M)
        for (int s = 0; s < dd; ++s) {
          std::vector<Padic> row(unknowns, zero);
          row[idx(i, j, s)] = Padic::from_int(F, static_cast<long>(i));
          row[idx(i, j + 1, s)] += Padic::from_int(F, static_cast<long>(j + 1));
          rows.push_back(row);
        }
    }
  const auto A = Matrix<Padic>::from_rows(rows);
  BruteForceInvariants out;
  for (const auto& z : check) {
    Matrix<Padic> v(unknowns, 1, zero);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j <= M; ++j) {
        const auto c = z[j][i].embed(n + 1).coords();
        for (int r = 0; r < dd; ++r) v(idx(i, j, r), 0) = c[r];
      }
    if (!(A * v).is_zero()) out.candidates_ok = false;
  }
  const int nullity = unknowns - rank(A);
  out.divisible = nullity % dn == 0;
  out.dimension = nullity / dn;
  return out;
}

/// exp(lambda A) for an integer matrix A, summed with exact rationals.
inline std::vector<std::vector<mpq_class>> rational_exp(const std::vector<std::vector<long>>& A, const mpq_class& lambda,
                                                        int terms) {
  const std::size_t d = A.size();
  std::vector<std::vector<mpq_class>> sum(d, std::vector<mpq_class>(d, 0)), term = sum;
  for (std::size_t i = 0; i < d; ++i) sum[i][i] = term[i][i] = 1;
  for (int k = 1; k <= terms; ++k) {
    auto next = term;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        mpq_class s = 0;
        for (std::size_t l = 0; l < d; ++l) s += term[i][l] * A[l][j];
        next[i][j] = s * lambda / k;
        next[i][j].canonicalize();
      }
    term = next;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) sum[i][j] += term[i][j];
  }
  return sum;
}

}  // namespace testing_support
