#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "pahodge/bdr.hpp"

using namespace pahodge;

namespace {

CycloElement random_cyclo(const PadicField* F, int m, std::mt19937_64& rng) {
  std::vector<Padic> c(CycloElement::degree(F->prime(), m), Padic::zero(F));
  for (auto& x : c) x = Padic::from_int(F, static_cast<long>(rng() % 2001) - 1000);
  return CycloElement::from_coords(F, m, c);
}

BdRElement random_bdr(const PadicField* F, int m, int n, std::mt19937_64& rng) {
  std::vector<CycloElement> a;
  for (int i = 0; i < n; ++i) a.push_back(random_cyclo(F, m, rng));
  return BdRElement::from_coeffs(a);
}

Padic random_unit(const PadicField* F, std::mt19937_64& rng) {
  long c;
  do c = static_cast<long>(rng() % 100000) + 1;
  while (c % F->prime() == 0);
  return Padic::from_int(F, c);
}

Matrix<CycloElement> cmat(const PadicField* F, int m, const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<CycloElement>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long x : row) r.back().push_back(CycloElement::from_int(F, x, m));
  }
  return Matrix<CycloElement>::from_rows(r);
}

}  // namespace

TEST(BdR, Theta) {
  auto F = PadicField::get(5, 12);
  std::mt19937_64 rng(1);
  EXPECT_TRUE(theta(BdRElement::t_power(F, 1, 4)).is_zero());
  auto c = random_cyclo(F, 1, rng);
  auto y = random_bdr(F, 1, 4, rng);
  EXPECT_EQ(theta(BdRElement::constant(c, 4) + BdRElement::t_power(F, 1, 4) * y), c);
  for (int i = 0; i < 10; ++i) {
    auto a = random_bdr(F, 1, 4, rng), b = random_bdr(F, 1, 4, rng);
    EXPECT_EQ(theta(a * b), theta(a) * theta(b));
  }
}

TEST(BdR, GaloisAction) {
  auto F = PadicField::get(3, 12);
  std::mt19937_64 rng(2);
  auto x = random_bdr(F, 2, 5, rng);
  EXPECT_EQ(bdr_galois_act(Padic::from_int(F, 1L), x), x);
  const Padic c = random_unit(F, rng);
  auto t = BdRElement::t_power(F, 2, 5);
  EXPECT_EQ(bdr_galois_act(c, t), t.scaled(c));
  for (int i = 0; i < 10; ++i) {
    const Padic c1 = random_unit(F, rng), c2 = random_unit(F, rng);
    auto y = random_bdr(F, 2, 5, rng);
    EXPECT_EQ(bdr_galois_act(c1, bdr_galois_act(c2, y)), bdr_galois_act(c1 * c2, y));
    EXPECT_EQ(theta(bdr_galois_act(c1, y)), chi_action(c1, theta(y)));
    auto z = random_bdr(F, 2, 5, rng);
    EXPECT_EQ(bdr_galois_act(c1, y * z), bdr_galois_act(c1, y) * bdr_galois_act(c1, z));
  }
}

TEST(BdR, Nabla) {
  auto F = PadicField::get(5, 12);
  std::mt19937_64 rng(3);
  const auto c = BdRElement::constant(random_cyclo(F, 1, rng), 6);
  EXPECT_TRUE(bdr_nabla(c).is_zero());
  for (int k = 0; k < 6; ++k) {
    auto tk = BdRElement::t_power(F, 1, 6, k);
    EXPECT_EQ(bdr_nabla(tk), tk.mul_int(static_cast<long>(k)));
  }
  for (int i = 0; i < 10; ++i) {
    auto a = random_bdr(F, 1, 6, rng), b = random_bdr(F, 1, 6, rng);
    EXPECT_EQ(bdr_nabla(a * b), bdr_nabla(a) * b + a * bdr_nabla(b));
    // Commutes with g when chi(g) = 1 mod p^m.
    const Padic g = Padic::from_int(F, 1 + 5 * static_cast<long>(rng() % 1000));
    EXPECT_EQ(bdr_nabla(bdr_galois_act(g, a)), bdr_galois_act(g, bdr_nabla(a)));
  }
}

TEST(BdR, AnalyticLevel) {
  auto F = PadicField::get(3, 10);
  auto q = BdRElement::from_coeffs({CycloElement::from_int(F, 2, 2), CycloElement::from_int(F, 7, 2)});
  EXPECT_EQ(analytic_level(q), 0);
  auto t = BdRElement::t_power(F, 1, 3);
  EXPECT_EQ(analytic_level(BdRElement::constant(CycloElement::zeta(F, 1), 3) + t), 1);
  auto t2 = BdRElement::t_power(F, 2, 3);
  const auto z = CycloElement::zeta(F, 2, 3);
  EXPECT_EQ(analytic_level(BdRElement::constant(z, 3) + t2), 1);
  // Oracle: z lies in K_1 iff it is in the span of the image of the K_1 basis.
  std::vector<std::vector<Padic>> rows(CycloElement::degree(3, 2));
  for (long j = 0; j < CycloElement::degree(3, 1); ++j) {
    auto b = CycloElement::zeta(F, 1, j).embed(2);
    for (std::size_t r = 0; r < rows.size(); ++r) rows[r].push_back(b.coords()[r]);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) rows[r].push_back(z.coords()[r]);
  auto A = Matrix<Padic>::from_rows(rows);
  EXPECT_EQ(rank(A), rank(A.columns(0, 2)));
  // Fixed by g with chi(g) = 1 mod p when N = 1.
  auto x = BdRElement::constant(z, 1);
  EXPECT_EQ(bdr_galois_act(Padic::from_int(F, 4L), x), x);
}

TEST(BdR, DecompositionShadow) {
  auto F = PadicField::get(5, 15);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 5; ++i) {
    auto x = random_bdr(F, 1, 5, rng);
    auto parts = bdr_decomposition(x);
    ASSERT_EQ(parts.size(), 5u);
    BdRElement sum = x.zero_like();
    for (int j = 0; j < 5; ++j) {
      for (int k = 1; k < parts[j].truncation(); ++k) EXPECT_TRUE(parts[j][k].is_zero());
      sum += BdRElement::constant(parts[j][0], 5) * BdRElement::t_power(F, 1, 5, j);
    }
    EXPECT_EQ(sum, x);
  }
}

TEST(Sen, IdentityGivesZero) {
  auto F = PadicField::get(5, 20);
  auto s = sen_operator(cmat(F, 0, {{1, 0}, {0, 1}}), Padic::from_int(F, 6L));
  EXPECT_TRUE(s.theta.is_zero());
}

TEST(Sen, DiagonalWeights) {
  auto F = PadicField::get(5, 20);
  const Padic c = Padic::from_int(F, 6L);
  // exp(log(c) diag(0, 1)) = diag(1, c).
  auto M = cmat(F, 0, {{1, 0}, {0, 6}});
  auto s = sen_operator(M, c);
  EXPECT_EQ(s.theta, cmat(F, 0, {{0, 0}, {0, 1}}));
  auto w = sen_weights(s);
  ASSERT_EQ(w.size(), 2u);
  std::vector<long> ws;
  for (auto& r : w) ws.push_back(r.value.lift().get_si());
  std::sort(ws.begin(), ws.end());
  EXPECT_EQ(ws, (std::vector<long>{0, 1}));
}

TEST(Sen, ScalarTwist) {
  auto F = PadicField::get(7, 20);
  const Padic c = Padic::from_int(F, 8L);
  for (long s : {-3L, -1L, 2L, 5L}) {
    const Padic cs = c.pow(-s);
    auto one = CycloElement::from_padic(cs, 0);
    auto M = Matrix<CycloElement>::identity(2, one).scaled(one);
    auto out = sen_operator(M, c);
    EXPECT_EQ(out.theta, cmat(F, 0, {{-s, 0}, {0, -s}}));
    EXPECT_GE(out.precision, 20 - static_cast<int>(factorial_valuation(out.series_terms, 7)));
  }
}

TEST(Sen, ConjugatedOverCyclotomicField) {
  // M = U diag(c^a, c^b) U^-1 is exactly exp(log c * U diag(a, b) U^-1).
  auto F = PadicField::get(3, 24);
  const Padic c = Padic::from_int(F, 4L);
  const auto z = CycloElement::zeta(F, 1);
  const auto one = CycloElement::from_int(F, 1, 1), zero = CycloElement::zero(F, 1);
  auto U = Matrix<CycloElement>::from_rows({{one, z}, {zero, one}});
  auto Ui = Matrix<CycloElement>::from_rows({{one, -z}, {zero, one}});
  auto D = Matrix<CycloElement>::from_rows({{CycloElement::from_padic(c.pow(2), 1), zero},
                                            {zero, CycloElement::from_padic(c.pow(-1), 1)}});
  auto s = sen_operator(U * D * Ui, c);
  auto expected = U * cmat(F, 1, {{2, 0}, {0, -1}}) * Ui;
  EXPECT_EQ(s.theta, expected);
  EXPECT_EQ(s.charpoly.size(), 3u);
  // T^2 - T - 2.
  EXPECT_EQ(s.charpoly[0], CycloElement::from_int(F, -2, 1));
  EXPECT_EQ(s.charpoly[1], CycloElement::from_int(F, -1, 1));
}

TEST(Sen, RoundTripAgainstRationalExp) {
  // Oracle: exp(lambda A) summed with exact rationals, well past the p-adic tail.
  const long p = 5;
  const int P = 20;
  auto F = PadicField::get(p, P);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 4; ++trial) {
    const long c = 1 + p * (1 + static_cast<long>(rng() % 4));
    const Padic cp = Padic::from_int(F, c);
    const Padic lam = log(cp);
    std::vector<std::vector<long>> A(2, std::vector<long>(2));
    for (auto& r : A)
      for (auto& x : r) x = static_cast<long>(rng() % 7) - 3;
    const auto sum = testing_support::rational_exp(A, lam.to_rational(), 3 * P);
    std::vector<std::vector<CycloElement>> rows(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rows[i].push_back(CycloElement::from_padic(Padic::from_rational(F, sum[i][j]), 0));
    auto s = sen_operator(Matrix<CycloElement>::from_rows(rows), cp);
    const int tol = P - static_cast<int>(factorial_valuation(s.series_terms, p));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        auto diff = s.theta(i, j) - CycloElement::from_int(F, A[i][j], 0);
        EXPECT_TRUE(diff.is_zero() || diff.valuation() >= Valuation(tol)) << diff.to_string();
      }
  }
}

TEST(Sen, Errors) {
  auto F = PadicField::get(5, 20);
  EXPECT_THROW(sen_operator(cmat(F, 0, {{2, 0}, {0, 1}}), Padic::from_int(F, 6L)), DomainError);
  EXPECT_THROW(sen_operator(cmat(F, 0, {{1, 0}, {0, 1}}), Padic::from_int(F, 1L)), DomainError);
}
