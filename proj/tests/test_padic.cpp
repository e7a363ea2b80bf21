#include <gtest/gtest.h>

#include <random>

#include "pahodge/padic.hpp"
#include "pahodge/padic_functions.hpp"

using namespace pahodge;

namespace {

Padic random_padic(const PadicField* F, std::mt19937_64& rng, int min_val = -2) {
  std::vector<mpz_class> c(F->degree());
  for (auto& x : c) x = static_cast<long>(rng() % 1000000007ULL);
  const int v = min_val + static_cast<int>(rng() % 5);
  return Padic::from_coords(F, c, v, F->cap());
}

// Independent square root of -1 modulo p^P by Hensel iteration on integers.
mpz_class sqrt_minus_one(long p, int P, long seed) {
  mpz_class mod, x = seed;
  mpz_ui_pow_ui(mod.get_mpz_t(), p, P);
  for (int i = 0; i < 2 * P; ++i) {
    mpz_class num = x * x + 1, den = 2 * x, inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    x = x - num * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  }
  return x;
}

}  // namespace

TEST(Padic, SmallIntegers) {
  auto F = PadicField::get(5, 10);
  auto a = Padic::from_int(F, 2L), b = Padic::from_int(F, 3L);
  EXPECT_EQ(a * b, Padic::from_int(F, 6L));
  EXPECT_EQ((a * b).precision(), 10);
  EXPECT_EQ(a / a, a.one_like());
}

TEST(Padic, GeometricSeriesInverse) {
  auto F = PadicField::get(7, 15);
  auto one_plus_p = Padic::from_int(F, 8L);
  mpz_class s = 0, pk = 1;
  for (int k = 0; k < 15; ++k) {
    s += (k % 2 == 0 ? 1 : -1) * pk;
    pk *= 7;
  }
  auto series = Padic::from_int(F, s);
  EXPECT_EQ(one_plus_p * series, Padic::from_int(F, 1L));
  EXPECT_EQ(one_plus_p.inverse(), series);
}

TEST(Padic, PrecisionPropagation) {
  auto F = PadicField::get(5, 20);
  auto a = Padic::from_int(F, 3L).with_precision(8);
  auto b = Padic::from_int(F, 4L);
  EXPECT_EQ((a + b).precision(), 8);
  auto p3 = Padic::power_of_p(F, 3);
  EXPECT_EQ((a / p3).precision(), 5);
  EXPECT_EQ((a * p3).precision(), 11);
  EXPECT_EQ(a.div_int(25).precision(), 6);
  EXPECT_THROW(a / Padic::zero(F, 20), PrecisionError);
}

TEST(Padic, Valuation) {
  auto F = PadicField::get(5, 20);
  EXPECT_EQ(Padic::power_of_p(F, 3).valuation(), Valuation(3));
  EXPECT_EQ(Padic::from_int(F, 7L).valuation(), Valuation(0));
  auto x = Padic::from_int(F, 5 * 3 + 625L);
  EXPECT_EQ(x.valuation(), Valuation(1));
  EXPECT_TRUE(Padic::zero(F, 4).valuation().is_infinite());
}

TEST(Padic, RingAxiomsRandom) {
  std::mt19937_64 rng(11);
  for (auto F : {PadicField::get(5, 20), PadicField::get(3, 12, 2, {1, 0, 1}), PadicField::get(5, 10, 2, {2, 0, 1})}) {
    for (int trial = 0; trial < 200; ++trial) {
      auto a = random_padic(F, rng), b = random_padic(F, rng), c = random_padic(F, rng);
      EXPECT_EQ((a + b) * c, a * c + b * c);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a - b) + b, a);
      if (!b.is_zero()) EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(Padic, RationalRoundTrip) {
  auto F = PadicField::get(5, 20);
  mpq_class q(7, 50);
  auto x = Padic::from_rational(F, q);
  EXPECT_EQ(x.valuation(), Valuation(-2));
  EXPECT_EQ(x * Padic::from_int(F, 50L), Padic::from_int(F, 7L));
  EXPECT_EQ(Padic::from_rational(F, x.to_rational()), x);
}

TEST(Padic, LogMatchesRationalPartialSum) {
  for (long p : {3L, 5L, 7L}) {
    const int P = 20;
    auto F = PadicField::get(p, P);
    mpq_class s = 0;
    mpz_class pk = 1;
    for (int k = 1; k <= 80; ++k) {
      pk *= p;
      s += mpq_class(k % 2 == 1 ? pk : mpz_class(-pk), k);
    }
    s.canonicalize();
    auto expected = Padic::from_rational(F, s);
    auto got = log(Padic::from_int(F, 1 + p));
    EXPECT_EQ(got, expected) << got << " vs " << expected;
    EXPECT_EQ(got.precision(), P);
  }
}

TEST(Padic, LogExpIdentities) {
  auto F = PadicField::get(5, 20);
  auto one = Padic::from_int(F, 1L);
  EXPECT_TRUE(log(one).is_zero());
  auto u = Padic::from_int(F, 6L);
  EXPECT_EQ(log(u * u), log(u).mul_int(2));
  EXPECT_EQ(exp(Padic::zero(F)), one);
  auto p = Padic::from_int(F, 5L);
  EXPECT_EQ(exp(p) * exp(p), exp(p.mul_int(2)));
  auto w = Padic::from_int(F, 26L);
  EXPECT_EQ(exp(log(w)), w);
  EXPECT_EQ(log(exp(p)), p);
  EXPECT_THROW(log(Padic::from_int(F, 2L)), DomainError);
  EXPECT_THROW(exp(Padic::from_int(F, 1L)), DomainError);
}

TEST(Padic, LogHomomorphismRandom) {
  std::mt19937_64 rng(5);
  auto F = PadicField::get(3, 18, 2, {1, 0, 1});
  for (int i = 0; i < 50; ++i) {
    auto a = Padic::from_int(F, 1L) + Padic::power_of_p(F, 1) * random_padic(F, rng, 0);
    auto b = Padic::from_int(F, 1L) + Padic::power_of_p(F, 1) * random_padic(F, rng, 0);
    EXPECT_EQ(log(a * b), log(a) + log(b));
    auto y = Padic::power_of_p(F, 1) * random_padic(F, rng, 0);
    EXPECT_EQ(log(exp(y)), y);
  }
}

TEST(Padic, PrimeTwoNeedsFlag) {
  auto F = PadicField::get(2, 16);
  auto a = Padic::from_int(F, 5L);
  EXPECT_THROW(log(a), DomainError);
  AnalyticOptions opt{true};
  EXPECT_EQ(exp(log(a, opt), opt), a);
  EXPECT_THROW(log(Padic::from_int(F, 3L), opt), DomainError);
}

TEST(Padic, Teichmuller) {
  const int P = 20;
  auto F = PadicField::get(5, P);
  EXPECT_TRUE(teichmuller(F, 0L).is_zero());
  EXPECT_EQ(teichmuller(F, 1L), Padic::from_int(F, 1L));
  auto w = teichmuller(F, 2L);
  EXPECT_EQ(w.pow(4), Padic::from_int(F, 1L));
  EXPECT_EQ(w, Padic::from_int(F, sqrt_minus_one(5, P, 2)));
  auto G = PadicField::get(3, 12, 2, {1, 0, 1});
  for (long a = 0; a < 3; ++a)
    for (long b = 0; b < 3; ++b) {
      if (a == 0 && b == 0) continue;
      auto t = teichmuller(G, {a, b});
      EXPECT_EQ(t.pow(8), Padic::from_int(G, 1L));
      EXPECT_EQ(t.pow(9), t);
      EXPECT_EQ(t.residue(), (std::vector<long>{a, b}));
    }
}

TEST(Padic, Frobenius) {
  auto G = PadicField::get(5, 12, 2, {2, 0, 1});
  auto b = Padic::generator(G);
  auto s = frobenius(b);
  EXPECT_EQ(s * s + Padic::from_int(G, 2L), Padic::zero(G));
  EXPECT_FALSE(s == b);
  EXPECT_EQ(frobenius(frobenius(b)), b);
  auto x = teichmuller(G, {1, 3});
  EXPECT_EQ(frobenius(x), x.pow(5));
}

TEST(Padic, FieldValidation) {
  EXPECT_THROW(PadicField::get(6, 10), DomainError);
  EXPECT_THROW(PadicField::get(5, 10, 2, {1, 0, 1}), DomainError);  // x^2+1 splits mod 5
  EXPECT_EQ(PadicField::get(5, 10), PadicField::get(5, 10));
}
