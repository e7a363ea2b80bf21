#pragma once

// Random (phi, nabla_u)-modules over E<<x>> for tests: a diagonal module
// (Q, G_Q) moved by a random base change C, so P = C^-1 Q phi(C) and
// G = C^-1 (G_Q C + nabla(C)) commute by construction.

#include <random>
#include <vector>

#include "pahodge/phi_modules.hpp"

namespace testing_support {

using namespace pahodge;

inline Padic small_int(const PadicField* F, std::mt19937_64& rng, long bound) {
  return Padic::from_int(F, static_cast<long>(rng() % (2 * bound + 1)) - bound);
}

/// Random C with C(0) invertible over Z_p.
inline XMatrix random_base_change(const PadicField* F, int d, int n, std::mt19937_64& rng) {
  const Padic zero = Padic::zero(F);
  for (;;) {
    XMatrix c(d, d, n, zero);
    for (int k = 0; k <= n; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) c.coeff(k)(i, j) = small_int(F, rng, 4);
    if (determinant(c[0]).valuation() == Valuation(0)) return c;
  }
}

/// Eigenvalues u_i p^{a_i} with pairwise distinct values and no relation
/// lambda_c = pi^k lambda_r for 0 <= k <= n.
inline std::vector<Padic> non_resonant_eigenvalues(const PadicField* F, int d, int n, std::mt19937_64& rng) {
  const long p = F->prime();
  for (;;) {
    std::vector<long> units, exps;
    for (int i = 0; i < d; ++i) {
      long u;
      do u = static_cast<long>(rng() % 40) + 1;
      while (u % p == 0);
      units.push_back(u);
      exps.push_back(static_cast<long>(rng() % 3));
    }
    bool ok = true;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (i != j && units[i] == units[j]) ok = false;
    if (!ok) continue;
    std::vector<Padic> out;
    for (int i = 0; i < d; ++i) out.push_back(Padic::from_int(F, units[i]) * Padic::power_of_p(F, static_cast<int>(exps[i])));
    return out;
  }
}

/// Random module with diagonalizable, non-resonant Mat(phi)(0) and a
/// connection; the diagonal form has weights w_i.
inline PhiModuleX random_module(const PadicField* F, int d, int n, std::mt19937_64& rng,
                                std::vector<Padic>* eigenvalues = nullptr) {
  const Padic pi = Padic::from_int(F, F->prime());
  const auto eig = non_resonant_eigenvalues(F, d, n, rng);
  Matrix<Padic> q(d, d, Padic::zero(F)), w(d, d, Padic::zero(F));
  for (int i = 0; i < d; ++i) {
    q(i, i) = eig[i];
    w(i, i) = small_int(F, rng, 3);
  }
  if (eigenvalues) *eigenvalues = eig;
  const PhiModuleX diag{XMatrix::constant(q, n), XMatrix::constant(w, n), pi};
  return diag.base_change(random_base_change(F, d, n, rng));
}

/// Random Mat(phi) whose diagonal part has eigenvalues u p^a (units drawn
/// from a small set, so resonances occur) and random resonant terms.
inline PhiModuleX random_phi_module(const PadicField* F, int d, int n, std::mt19937_64& rng) {
  const Padic pi = Padic::from_int(F, F->prime());
  std::vector<Padic> eig;
  for (;;) {
    eig.clear();
    std::vector<std::pair<long, long>> seen;
    bool ok = true;
    for (int i = 0; i < d; ++i) {
      const long u = 1 + static_cast<long>(rng() % 2);
      const long a = static_cast<long>(rng() % 3);
      for (auto& s : seen) ok = ok && !(s.first == u && s.second == a);
      seen.push_back({u, a});
      eig.push_back(Padic::from_int(F, u) * Padic::power_of_p(F, static_cast<int>(a)));
    }
    if (ok) break;
  }
  XMatrix core(d, d, n, Padic::zero(F));
  for (int i = 0; i < d; ++i) core.coeff(0)(i, i) = eig[i];
  Padic pk = pi.one_like();
  for (int k = 1; k <= n; ++k) {
    pk *= pi;
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        if ((pk * eig[r] - eig[c]).is_zero()) core.coeff(k)(r, c) = small_int(F, rng, 3);
  }
  const PhiModuleX m{core, std::nullopt, pi};
  return m.base_change(random_base_change(F, d, n, rng));
}

}  // namespace testing_support
