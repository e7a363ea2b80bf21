#include <gtest/gtest.h>

#include <random>

#include "pahodge/series.hpp"

using namespace pahodge;

namespace {

Series<Padic> S(const PadicField* F, std::vector<long> c, int N) {
  Series<Padic> s(N, Padic::zero(F));
  for (std::size_t k = 0; k < c.size() && static_cast<int>(k) <= N; ++k) s.coeff(static_cast<int>(k)) = Padic::from_int(F, c[k]);
  return s;
}

Series<Padic> random_series(const PadicField* F, std::mt19937_64& rng, int N, bool zero_const) {
  Series<Padic> s(N, Padic::zero(F));
  for (int k = zero_const ? 1 : 0; k <= N; ++k) {
    long c = static_cast<long>(rng() % 2001) - 1000;
    s.coeff(k) = Padic::from_int(F, c);
  }
  return s;
}

}  // namespace

TEST(Series, BasicArithmetic) {
  auto F = PadicField::get(5, 20);
  const int N = 6;
  EXPECT_EQ(S(F, {1, 1}, N) * S(F, {1, -1}, N), S(F, {1, 0, -1}, N));
  EXPECT_EQ(S(F, {1, 1}, N).inverse(), S(F, {1, -1, 1, -1, 1, -1, 1}, N));
  EXPECT_THROW(S(F, {0, 1}, N).inverse(), DomainError);
  EXPECT_THROW(S(F, {1, 1}, N).compose(S(F, {1, 1}, N)), DomainError);
}

TEST(Series, LogExpInverse) {
  auto F = PadicField::get(5, 30);
  const int N = 10;
  auto lg = formal_log_mult(F, N);
  auto ex = formal_exp_minus_one(F, N);
  EXPECT_EQ(lg.compose(ex), Series<Padic>::variable(Padic::zero(F), N));
  EXPECT_EQ(ex.compose(lg), Series<Padic>::variable(Padic::zero(F), N));
  EXPECT_EQ(formal_log_mult(F, 1), Series<Padic>::variable(Padic::zero(F), 1));
  // d/dT log(1+T) = 1/(1+T)
  EXPECT_EQ(lg.derive(), S(F, {1, 1}, N - 1).inverse());
  EXPECT_EQ(lg[5].precision(), 29);
}

TEST(Series, LogOfBinomial) {
  auto F = PadicField::get(3, 30);
  const int N = 9;
  auto lg = formal_log_mult(F, N);
  for (long c : {2L, 7L, -4L}) {
    // (1+T)^c by repeated multiplication, independent of the binomial formula
    auto base = S(F, {1, 1}, N);
    auto power = (c >= 0 ? base.pow(c) : base.inverse().pow(-c)) - Series<Padic>::constant(Padic::from_int(F, 1L), N);
    EXPECT_EQ(lg.compose(power), lg.mul_int(c));
    EXPECT_EQ(binomial_series_minus_one(Padic::from_int(F, c), N), power);
  }
  auto half = Padic::from_rational(F, mpq_class(1, 2));
  EXPECT_EQ(lg.compose(binomial_series_minus_one(half, N)), lg.scaled(half));
}

TEST(Series, ChainRuleRandom) {
  auto F = PadicField::get(7, 20);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const int N = 8;
    auto f = random_series(F, rng, N, false), g = random_series(F, rng, N, true);
    auto lhs = f.compose(g).derive();
    auto rhs = f.derive().compose(g.truncated(N - 1)) * g.derive();
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Series, ReverseRoundTrip) {
  auto F = PadicField::get(5, 20);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 10; ++i) {
    auto f = random_series(F, rng, 8, true);
    f.coeff(1) = Padic::from_int(F, 1 + 5 * static_cast<long>(rng() % 10));
    auto g = f.reverse();
    EXPECT_EQ(f.compose(g), Series<Padic>::variable(Padic::zero(F), 8));
    EXPECT_EQ(g.compose(f), Series<Padic>::variable(Padic::zero(F), 8));
  }
}

TEST(LubinTate, LogNormalisationAndFunctionalEquation) {
  for (long p : {3L, 5L}) {
    auto F = PadicField::get(p, 20);
    const int N = 12;
    for (long q : {p, p * p}) {
      auto info = lubin_tate_log_with_info(F, q, N);
      auto lg = info.series;
      EXPECT_TRUE(lg[0].is_zero());
      EXPECT_EQ(lg[1], Padic::from_int(F, 1L));
      auto pser = lubin_tate_p_series(F, q, N);
      EXPECT_EQ(lg.compose(pser), lg.mul_int(p));
      auto ex = lubin_tate_exp(F, q, N);
      EXPECT_EQ(ex.compose(lg), Series<Padic>::variable(Padic::zero(F), N));
    }
  }
}

TEST(LubinTate, LogIsStationaryPerIterate) {
  auto F = PadicField::get(3, 15);
  const int N = 10;
  auto info = lubin_tate_log_with_info(F, 3, N);
  long qk = 1;
  for (int i = 0; i < info.iterations; ++i) qk *= 3;
  EXPECT_GT(qk, N);
  // Independent iterate: [p]^{k+1}(T) / p^{k+1} computed from scratch.
  auto W = F->with_cap(80);
  auto pser = lubin_tate_p_series(W, 3, N);
  auto it = Series<Padic>::variable(Padic::zero(W), N);
  for (int i = 0; i <= info.iterations; ++i) it = pser.compose(it);
  for (int k = 0; k <= N; ++k)
    EXPECT_EQ((it[k] / Padic::power_of_p(W, info.iterations + 1)).in_field(F), info.series[k]) << k;
}

TEST(LubinTate, Multiplication) {
  auto F = PadicField::get(5, 20);
  const int N = 8;
  const long q = 5;
  auto T = Series<Padic>::variable(Padic::zero(F), N);
  EXPECT_EQ(lt_multiplication(Padic::from_int(F, 1L), q, N), T);
  EXPECT_EQ(lt_multiplication(Padic::from_int(F, 5L), q, N), lubin_tate_p_series(F, q, N));
  auto m2 = lt_multiplication(Padic::from_int(F, 2L), q, N);
  auto m3 = lt_multiplication(Padic::from_int(F, 3L), q, N);
  auto m6 = lt_multiplication(Padic::from_int(F, 6L), q, N);
  EXPECT_EQ(m2.compose(m3), m6);
  EXPECT_EQ(m2[1], Padic::from_int(F, 2L));
  EXPECT_THROW(lt_multiplication(Padic::from_rational(F, mpq_class(1, 5)), q, N), DomainError);
}

TEST(Newton, Examples) {
  auto F = PadicField::get(5, 20);
  auto np1 = newton_polygon(S(F, {5, 1}, 4));
  ASSERT_EQ(np1.segments.size(), 1u);
  EXPECT_EQ(np1.segments[0].slope, Valuation(-1));
  EXPECT_EQ(np1.segments[0].length, 1);
  EXPECT_TRUE(newton_polygon(S(F, {3}, 4)).segments.empty());
  auto np3 = newton_polygon(S(F, {25, 5, 0, 1}, 5));
  ASSERT_EQ(np3.segments.size(), 2u);
  EXPECT_EQ(np3.segments[0].slope, Valuation(-1));
  EXPECT_EQ(np3.segments[0].length, 1);
  EXPECT_EQ(np3.segments[1].slope, Valuation(-1, 2));
  EXPECT_EQ(np3.segments[1].length, 2);
  EXPECT_THROW(newton_polygon(S(F, {0}, 3)), DomainError);
  auto np4 = newton_polygon(S(F, {0, 0, 1}, 3));
  EXPECT_EQ(np4.zeros_at_origin, 2);
  EXPECT_TRUE(np4.segments.empty());
}

TEST(Newton, GlobalUnits) {
  auto F = PadicField::get(5, 20);
  EXPECT_TRUE(is_global_unit(S(F, {3}, 5)));
  EXPECT_FALSE(is_global_unit(S(F, {1, 1}, 5)));
  EXPECT_FALSE(is_global_unit(S(F, {0}, 5)));
}

TEST(Anticyclo, KernelIsConstants) {
  auto F = PadicField::get(5, 20);
  for (int N = 0; N <= 6; ++N) {
    auto K = anticyclo_kernel(F, N);
    ASSERT_EQ(K.size(), 1u);
    for (int d = 0; d <= N; ++d)
      for (int j = 0; j <= d; ++j)
        if (d > 0) EXPECT_TRUE(K[0](d - j, j).is_zero());
    EXPECT_FALSE(K[0](0, 0).is_zero());
  }
  BiSeries<Padic> t1t2(3, Padic::zero(F));
  t1t2(1, 1) = Padic::from_int(F, 1L);
  auto img = t1t2.nabla_sum();
  EXPECT_EQ(img(1, 1), Padic::from_int(F, 2L));
  BiSeries<Padic> c(3, Padic::zero(F));
  c(0, 0) = Padic::from_int(F, 7L);
  EXPECT_TRUE(c.nabla_sum().is_zero());
}
