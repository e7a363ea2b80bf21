#include <gtest/gtest.h>

#include <random>

#include "pahodge/cyclotomic.hpp"
#include "pahodge/matrix.hpp"
#include "pahodge/newton.hpp"

using namespace pahodge;

namespace {

CycloElement random_cyclo(const PadicField* F, int m, std::mt19937_64& rng) {
  std::vector<Padic> c(CycloElement::degree(F->prime(), m), Padic::zero(F));
  for (auto& x : c) x = Padic::from_int(F, static_cast<long>(rng() % 20001) - 10000);
  return CycloElement::from_coords(F, m, c);
}

Padic random_unit(const PadicField* F, std::mt19937_64& rng) {
  long c;
  do c = static_cast<long>(rng() % 100000) + 1;
  while (c % F->prime() == 0);
  return Padic::from_int(F, c);
}

}  // namespace

TEST(Cyclo, RootOfUnityRelations) {
  for (long p : {3L, 5L, 7L}) {
    auto F = PadicField::get(p, 15);
    auto z = CycloElement::zeta(F, 1);
    EXPECT_EQ(z * CycloElement::zeta(F, 1, p - 1), z.one_like());
    CycloElement s = CycloElement::zero(F, 1);
    for (long k = 0; k < p; ++k) s += CycloElement::zeta(F, 1, k);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(CycloElement::zeta(F, 2).embed(2) * CycloElement::zeta(F, 2, p * p - 1), CycloElement::from_int(F, 1, 2));
  }
}

TEST(Cyclo, ValuationOfZetaMinusOne) {
  for (long p : {3L, 5L}) {
    auto F = PadicField::get(p, 15);
    for (int m = 1; m <= 2; ++m) {
      // Newton polygon of Phi_{p^m}(X + 1) with integer coefficients.
      const long q = CycloElement::order(p, m), step = q / p;
      std::vector<mpz_class> phi(q - step + 1, 0);
      for (long k = 0; k < p; ++k) phi[k * step] = 1;
      std::vector<mpz_class> shifted(phi.size(), 0);
      for (std::size_t i = 0; i < phi.size(); ++i) {
        mpz_class bin = 1;
        for (std::size_t j = 0; j <= i; ++j) {
          shifted[j] += phi[i] * bin;
          bin = bin * static_cast<long>(i - j) / static_cast<long>(j + 1);
        }
      }
      std::vector<Padic> coeffs;
      for (auto& c : shifted) coeffs.push_back(Padic::from_int(F, c));
      auto np = newton_polygon(coeffs);
      ASSERT_EQ(np.segments.size(), 1u);
      const Valuation expected = Valuation(0) - np.segments[0].slope;
      auto z1 = CycloElement::zeta(F, m) - CycloElement::from_int(F, 1, m);
      EXPECT_EQ(z1.valuation(), expected);
      EXPECT_EQ(expected, Valuation(1, CycloElement::degree(p, m)));
    }
  }
}

TEST(Cyclo, EmbedLevel) {
  auto F = PadicField::get(5, 12);
  auto r = CycloElement::from_int(F, 7, 0);
  EXPECT_EQ(r.embed(2), CycloElement::from_int(F, 7, 2));
  EXPECT_EQ(CycloElement::zeta(F, 1).embed(2), CycloElement::zeta(F, 2, 5));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto a = random_cyclo(F, 1, rng), b = random_cyclo(F, 1, rng);
    EXPECT_EQ((a * b).embed(2), a.embed(2) * b.embed(2));
    EXPECT_EQ((a + b).embed(2), a.embed(2) + b.embed(2));
    EXPECT_EQ(a.embed(2).descend(1), a);
  }
}

TEST(Cyclo, ChiAction) {
  auto F = PadicField::get(5, 12);
  auto z = CycloElement::zeta(F, 1);
  EXPECT_EQ(z.chi_action(Padic::from_int(F, 2L)), CycloElement::zeta(F, 1, 2));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    auto a = random_cyclo(F, 2, rng);
    EXPECT_EQ(a.chi_action(Padic::from_int(F, 1L)), a);
    EXPECT_EQ(a.chi_action(Padic::from_int(F, 1 + 25 * static_cast<long>(rng() % 50))), a);
    auto c1 = random_unit(F, rng), c2 = random_unit(F, rng);
    EXPECT_EQ(a.chi_action(c2).chi_action(c1), a.chi_action(c1 * c2));
    auto b = random_cyclo(F, 2, rng);
    EXPECT_EQ((a * b).chi_action(c1), a.chi_action(c1) * b.chi_action(c1));
  }
  EXPECT_THROW(z.chi_action(Padic::from_int(F, 5L)), DomainError);
}

TEST(Cyclo, FixedFieldOfLevelSubgroup) {
  for (long p : {3L, 5L}) {
    auto F = PadicField::get(p, 12);
    const int m = 2;
    const long d = CycloElement::degree(p, m);
    for (int n = 0; n <= m; ++n) {
      // 1 + p^n generates {c = 1 mod p^n} modulo p^m (n >= 1); for n = 0 use a primitive root.
      long gen = n == 0 ? 2 : 1 + CycloElement::order(p, n);
      Matrix<Padic> A(d, d, Padic::zero(F));
      for (long i = 0; i < d; ++i) {
        auto e = CycloElement::zeta(F, m, i);
        auto img = e.chi_action(Padic::from_int(F, gen)) - e;
        for (long r = 0; r < d; ++r) A(r, i) = img.coords()[r];
      }
      auto K = kernel(A);
      EXPECT_EQ(K.cols(), CycloElement::degree(p, n));
      for (int c = 0; c < K.cols(); ++c) {
        std::vector<Padic> v;
        for (long r = 0; r < d; ++r) v.push_back(K(r, c));
        EXPECT_LE(CycloElement::from_coords(F, m, v).analytic_level(), n);
      }
    }
  }
}

TEST(Cyclo, InverseAndNorm) {
  auto F = PadicField::get(3, 15);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto a = random_cyclo(F, 2, rng);
    if (a.is_zero()) continue;
    EXPECT_EQ(a * a.inverse(), a.one_like());
  }
  auto z1 = CycloElement::zeta(F, 1) - CycloElement::from_int(F, 1, 1);
  EXPECT_EQ(z1.norm(), Padic::from_int(F, 3L));  // Phi_3(1) = 3 up to sign (-1)^2
}

TEST(Cyclo, AnalyticLevel) {
  auto F = PadicField::get(5, 12);
  EXPECT_EQ(CycloElement::from_int(F, 3, 2).analytic_level(), 0);
  EXPECT_EQ(CycloElement::zeta(F, 1).analytic_level(), 1);
  EXPECT_EQ(CycloElement::zeta(F, 2, 5).analytic_level(), 1);
  EXPECT_EQ(CycloElement::zeta(F, 2).analytic_level(), 2);
}
