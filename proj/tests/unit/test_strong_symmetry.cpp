#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "bowtie/elliptic.hpp"
#include "bowtie/exact.hpp"
#include "bowtie/siegel2.hpp"
#include "bowtie/strong_symmetry.hpp"

using namespace bowtie;
using namespace bowtie::siegel2;
using namespace bowtie::strong_symmetry;

namespace {

SiegelExpansion random_lift(int k, std::int64_t T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<std::int64_t, Rational> c;
  for (std::int64_t D = 0; D <= max_lift_discriminant(T); ++D)
    if (D % 4 == 0 || D % 4 == 3) c[D] = Rational(static_cast<long>(rng() % 20001) - 10000, 1 + static_cast<long>(rng() % 7));
  return maass_lift(c, Rational(static_cast<long>(rng() % 100)), k, T);
}

// A generic element of the coefficient space that is not a lift.
SiegelExpansion random_expansion(int k, std::int64_t T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SiegelExpansion F(k, T);
  F.for_each([&](const HalfIntegralIndex& N, const Rational&) {
    F.set(N.n, N.r, N.m, Rational(static_cast<long>(rng() % 201) - 100));
  });
  return F;
}

Rational term(const SiegelExpansion& F, std::int64_t num_n, std::int64_t num_r, std::int64_t num_m, std::int64_t p,
              bool divide_n, bool divide_r, bool divide_m) {
  if ((divide_n && num_n % p) || (divide_r && num_r % p) || (divide_m && num_m % p)) return Rational(0);
  return F.coefficient(divide_n ? num_n / p : num_n, divide_r ? num_r / p : num_r, divide_m ? num_m / p : num_m);
}

}  // namespace

TEST(BowtieTerms, MatchesWrittenOutFormula) {
  const auto F = random_expansion(6, 20, 4);
  for (std::int64_t p : {2, 3}) {
    const Rational pk(ipow(p, 5));
    for (std::int64_t n = 0; n <= 4; ++n)
      for (std::int64_t m = 0; n + m <= 4; ++m)
        for (std::int64_t r = -6; r <= 6; ++r) {
          if (r * r > 4 * p * n * m) continue;
          const auto t = bowtie_terms(F, p, {n, r, m});
          EXPECT_EQ(t.lhs, pk * term(F, n, r, m, p, true, true, false) + F.coefficient(p * n, r, m));
          EXPECT_EQ(t.rhs, pk * term(F, n, r, m, p, false, true, true) + F.coefficient(n, r, p * m));
        }
  }
}

TEST(BowtieTerms, IndexOneOneOne) {
  const auto F = random_expansion(4, 8, 8);
  const auto t = bowtie_terms(F, 2, {1, 1, 1});
  EXPECT_EQ(t.lhs, F.coefficient(2, 1, 1));
  EXPECT_EQ(t.rhs, F.coefficient(1, 1, 2));
  const auto u = bowtie_terms(F, 2, {2, 2, 1});
  EXPECT_EQ(u.lhs, Rational(8) * F.coefficient(1, 1, 1) + F.coefficient(4, 2, 1));
  EXPECT_EQ(u.rhs, F.coefficient(2, 2, 2));
}

TEST(StrongSymmetry, EisensteinSeriesSatisfyIt) {
  for (int k : {4, 6, 8, 10, 12}) {
    const auto F = siegel_eisenstein2(k, 35);
    for (const auto& rep : check_strong_symmetry(F, {2, 3, 5, 7})) {
      EXPECT_TRUE(rep.pass) << "k=" << k << " p=" << rep.prime;
      EXPECT_EQ(rep.window, 35 / rep.prime);
      EXPECT_GT(rep.indices_checked, 0);
      EXPECT_EQ(rep.weight, k);
    }
  }
}

TEST(StrongSymmetry, RandomMaassLiftsSatisfyIt) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int k = 4 + 2 * static_cast<int>(seed % 5);
    const auto F = random_lift(k, 24, seed);
    for (const auto& rep : check_strong_symmetry(F, {2, 3}, 8)) EXPECT_TRUE(rep.pass) << seed << " " << rep.prime;
  }
}

TEST(StrongSymmetry, GenericExpansionFailsWithSortedViolations) {
  const auto F = random_expansion(4, 16, 12);
  const auto reports = check_strong_symmetry(F, {2});
  ASSERT_EQ(reports.size(), 1u);
  const auto& rep = reports.front();
  EXPECT_FALSE(rep.pass);
  ASSERT_FALSE(rep.violations.empty());
  for (std::size_t i = 1; i < rep.violations.size(); ++i)
    EXPECT_LT(rep.violations[i - 1].index, rep.violations[i].index);
  for (const auto& v : rep.violations) EXPECT_NE(v.lhs, v.rhs);
}

TEST(StrongSymmetry, WindowAndCount) {
  const auto F = siegel_eisenstein2(4, 12);
  const auto rep = check_strong_symmetry(F, {3}, 2).front();
  EXPECT_EQ(rep.window, 2);
  std::int64_t brute = 0;
  for (std::int64_t n = 0; n <= 2; ++n)
    for (std::int64_t m = 0; n + m <= 2; ++m)
      for (std::int64_t r = -20; r <= 20; ++r) brute += (r * r <= 12 * n * m);
  EXPECT_EQ(rep.indices_checked, brute);
}

TEST(BowtieApply, LinearAndZeroOnEisenstein) {
  const auto F = random_expansion(8, 18, 2);
  const auto G = random_expansion(8, 18, 3);
  const Rational a(3, 7);
  EXPECT_EQ(bowtie_apply(F + a * G, 3), bowtie_apply(F, 3) + a * bowtie_apply(G, 3));
  const auto B = bowtie_apply(siegel_eisenstein2(8, 18), 3);
  EXPECT_EQ(B.trace_trunc(), 6);
  B.for_each([](const HalfIntegralIndex&, const Rational& v) { EXPECT_TRUE(v.is_zero()); });
}

TEST(BowtieApply, RejectsBadInput) {
  const auto F = siegel_eisenstein2(4, 6);
  EXPECT_THROW(bowtie_apply(F, 4), std::invalid_argument);
  EXPECT_THROW(bowtie_apply(F, 1), std::invalid_argument);
  EXPECT_THROW(bowtie_apply(F, 7), std::invalid_argument);
  EXPECT_THROW(check_strong_symmetry(F, {6}), std::invalid_argument);
}

TEST(TwoVarHecke, TensorOfEigenforms) {
  const auto E = elliptic::eisenstein_qexp(12, 30);
  const auto D = elliptic::delta_qexp(30);
  const auto f = tensor(E, D);
  for (std::int64_t p : {2, 3, 5}) {
    const auto first = two_var_hecke(f, p, Slot::First);
    const auto second = two_var_hecke(f, p, Slot::Second);
    EXPECT_EQ(first, tensor(elliptic::hecke_Tn(E, p), D));
    EXPECT_EQ(second, tensor(E, elliptic::hecke_Tn(D, p)));
  }
}

TEST(Klingen, DifferenceIsMultipleOfAntisymmetricTensor) {
  const std::int64_t trunc = 10;
  const auto E = elliptic::eisenstein_qexp(12, trunc);
  const auto D = elliptic::delta_qexp(trunc);
  const auto anti = tensor(E, D) - tensor(D, E);
  const Rational tau2 = D.coefficient(2);
  EXPECT_EQ(tau2, Rational(-24));
  const Rational lambda = Rational(exact::divisor_sigma(2, 11)) - tau2;
  EXPECT_EQ(lambda, Rational(2073));
  for (const Rational& alpha : {Rational(0), Rational(1), Rational(-5, 3)}) {
    const auto d = klingen_difference(alpha, 2, trunc);
    EXPECT_EQ(d, lambda * anti);
    EXPECT_EQ(d.coefficient(0, 1), Rational(2073));
    for (std::int64_t n = 0; n <= trunc; ++n)
      for (std::int64_t m = 0; m <= trunc; ++m) EXPECT_EQ(d.coefficient(n, m), -d.coefficient(m, n));
  }
  EXPECT_EQ(klingen_difference(Rational(0), 3, 6), klingen_difference(Rational(7), 3, 6));
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (std::int64_t n = -3; n < 2000; ++n) {
    bool expected = n >= 2;
    for (std::int64_t d = 2; d * d <= n && expected; ++d) expected = n % d != 0;
    EXPECT_EQ(is_prime(n), expected) << n;
  }
}
