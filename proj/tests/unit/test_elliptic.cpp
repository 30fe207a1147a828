#include <gtest/gtest.h>

#include <map>
#include <random>

#include "bowtie/elliptic.hpp"
#include "bowtie/exact.hpp"

using namespace bowtie;
using namespace bowtie::elliptic;

namespace {

// Brute-force left-coset equivalence: g ~ h iff g h^-1 is in SL2(Z).
bool left_equivalent(const IntMatrix2& g, const IntMatrix2& h) {
  const std::int64_t det = h.det();
  if (det != g.det()) return false;
  // g * adj(h) must be det * (integral unimodular)
  const IntMatrix2 adj{h.d, -h.b, -h.c, h.a};
  const IntMatrix2 x = g * adj;
  return x.a % det == 0 && x.b % det == 0 && x.c % det == 0 && x.d % det == 0;
}

// Multiset of cosets by exhaustive pairwise equivalence (no canonical form).
bool same_coset_multiset(const HeckeElement& X, const HeckeElement& Y) {
  if (X.terms().size() != Y.terms().size()) return false;
  std::vector<bool> used(Y.terms().size(), false);
  for (const auto& s : X.terms()) {
    bool found = false;
    for (std::size_t j = 0; j < Y.terms().size(); ++j) {
      if (!used[j] && left_equivalent(s.rep, Y.terms()[j].rep) && s.coefficient == Y.terms()[j].coefficient) {
        used[j] = found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

IntMatrix2 random_sl2(std::mt19937_64& rng) {
  IntMatrix2 g;
  const IntMatrix2 S{0, -1, 1, 0}, T{1, 1, 0, 1}, Tinv{1, -1, 0, 1};
  for (int i = 0; i < 6; ++i) {
    switch (rng() % 3) {
      case 0: g = g * S; break;
      case 1: g = g * T; break;
      default: g = g * Tinv; break;
    }
  }
  return g;
}

QExpansion brute_tn(const QExpansion& f, std::int64_t n) {
  QExpansion out(f.weight(), f.trunc() / n);
  for (std::int64_t m = 0; m <= out.trunc(); ++m) {
    Rational acc;
    for (std::int64_t d = 1; d <= n; ++d) {
      if (n % d || (m % d)) continue;
      acc += Rational(ipow(d, f.weight() - 1)) * f.coefficient(n * m / (d * d));
    }
    out.set(m, acc);
  }
  return out;
}

}  // namespace

TEST(QExpansion, TruncationIsEnforced) {
  QExpansion f(4, 5);
  EXPECT_THROW(f.coefficient(6), std::out_of_range);
  EXPECT_EQ(f.coefficient(-1), Rational(0));
  EXPECT_THROW(f.set(6, Rational(1)), std::out_of_range);
  EXPECT_THROW(QExpansion(3, 5), std::invalid_argument);
}

TEST(Eisenstein, Coefficients) {
  const auto E4 = eisenstein_qexp(4, 10);
  EXPECT_EQ(E4.coefficient(0), Rational(1));
  EXPECT_EQ(E4.coefficient(1), Rational(240));
  EXPECT_EQ(E4.coefficient(2), Rational(2160));
  EXPECT_EQ(eisenstein_qexp(12, 3).coefficient(1), Rational(65520, 691));
  EXPECT_THROW(eisenstein_qexp(3, 10), std::invalid_argument);
  EXPECT_THROW(eisenstein_qexp(2, 10), std::invalid_argument);
}

TEST(Delta, LeadingCoefficients) {
  const auto D = delta_qexp(10);
  EXPECT_EQ(D.weight(), 12);
  EXPECT_EQ(D.coefficient(0), Rational(0));
  EXPECT_EQ(D.coefficient(1), Rational(1));
  EXPECT_EQ(D.coefficient(2), Rational(-24));
  EXPECT_EQ(D.coefficient(3), Rational(252));
  EXPECT_EQ(D.coefficient(10), Rational(-115920));
}

TEST(Delta, MatchesE4CubedMinusE6Squared) {
  // 1728 Delta = E4^3 - E6^2
  const std::int64_t N = 20;
  const auto E4 = eisenstein_qexp(4, N), E6 = eisenstein_qexp(6, N), D = delta_qexp(N);
  for (std::int64_t n = 0; n <= N; ++n) {
    Rational cube, square;
    for (std::int64_t i = 0; i <= n; ++i) {
      for (std::int64_t j = 0; i + j <= n; ++j) cube += E4.coefficient(i) * E4.coefficient(j) * E4.coefficient(n - i - j);
      square += E6.coefficient(i) * E6.coefficient(n - i);
    }
    EXPECT_EQ(cube - square, Rational(1728) * D.coefficient(n)) << n;
  }
}

TEST(Cosets, CountsAndShape) {
  EXPECT_EQ(coset_reps_M(1).size(), 1u);
  EXPECT_EQ(coset_reps_M(1).front(), IntMatrix2{});
  for (std::int64_t p : {2, 3, 5, 7, 11}) {
    const auto reps = coset_reps_M(p);
    ASSERT_EQ(reps.size(), static_cast<std::size_t>(p + 1));
    EXPECT_EQ(reps.front(), (IntMatrix2{p, 0, 0, 1}));
    for (std::int64_t b = 0; b < p; ++b) EXPECT_EQ(reps[1 + b], (IntMatrix2{1, b, 0, p}));
  }
  EXPECT_EQ(coset_reps_M(4).size(), 7u);
  EXPECT_THROW(coset_reps_M(0), std::invalid_argument);
}

TEST(Cosets, RepresentativesPairwiseInequivalent) {
  for (std::int64_t l = 1; l <= 12; ++l) {
    const auto reps = coset_reps_M(l);
    EXPECT_EQ(static_cast<std::int64_t>(reps.size()), static_cast<std::int64_t>(exact::divisor_sigma(l, 1).get_si()));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(left_equivalent(reps[i], reps[j]));
  }
}

TEST(Cosets, CanonicalFormIsLeftInvariant) {
  std::mt19937_64 rng(7);
  for (std::int64_t l : {2, 3, 4, 6, 9}) {
    for (const auto& g : coset_reps_M(l)) {
      for (int t = 0; t < 20; ++t) EXPECT_EQ(canonical_left_coset(random_sl2(rng) * g), g);
    }
  }
  EXPECT_THROW(canonical_left_coset(IntMatrix2{0, 1, 1, 0}), std::invalid_argument);
}

TEST(HeckeRing, IdentityIsNeutral) {
  const auto X = HeckeElement::from_cosets(coset_reps_M(6));
  EXPECT_EQ(hecke_compose(X, HeckeElement::identity()), X);
  EXPECT_EQ(hecke_compose(HeckeElement::identity(), X), X);
}

TEST(HeckeRing, T2T3EqualsT6ByExhaustiveEquivalence) {
  const auto T2 = HeckeElement::from_cosets(coset_reps_M(2));
  const auto T3 = HeckeElement::from_cosets(coset_reps_M(3));
  const auto T6 = HeckeElement::from_cosets(coset_reps_M(6));
  EXPECT_TRUE(same_coset_multiset(hecke_compose(T2, T3), T6));
  EXPECT_TRUE(same_coset_multiset(hecke_compose(T3, T2), T6));
  EXPECT_TRUE(same_coset_multiset(hecke_compose(T2, T3), hecke_compose(T3, T2)));
}

TEST(HeckeRing, T2SquaredIsT4PlusTwoScalar) {
  // Gamma\M(2) composed with itself covers M(4) once and the scalar coset 2I twice more
  const auto T2 = HeckeElement::from_cosets(coset_reps_M(2));
  const auto sq = hecke_compose(T2, T2);
  std::map<IntMatrix2, Rational> expect;
  for (const auto& g : coset_reps_M(4)) expect[g] += Rational(1);
  expect[IntMatrix2{2, 0, 0, 2}] += Rational(2);
  std::map<IntMatrix2, Rational> got;
  for (const auto& [g, c] : sq.canonical_terms()) got[g] = c;
  EXPECT_EQ(got, expect);
}

TEST(HeckeRing, IndependentOfRepresentativeChoice) {
  std::mt19937_64 rng(11);
  const auto T2 = HeckeElement::from_cosets(coset_reps_M(2));
  const auto T3 = HeckeElement::from_cosets(coset_reps_M(3));
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<HeckeElement::Term> a, b;
    for (const auto& t : T2.terms()) a.push_back({t.coefficient, random_sl2(rng) * t.rep});
    for (const auto& t : T3.terms()) b.push_back({t.coefficient, random_sl2(rng) * t.rep});
    EXPECT_EQ(hecke_compose(HeckeElement(a), HeckeElement(b)), hecke_compose(T2, T3));
  }
}

TEST(HeckeRing, MergesEquivalentRepresentatives) {
  const HeckeElement X({{Rational(1), {1, 0, 0, 2}}, {Rational(2), {1, 2, 0, 2}}, {Rational(-3), {1, 4, 0, 2}}});
  EXPECT_TRUE(X.terms().empty());
  EXPECT_THROW(hecke_compose(HeckeElement({{Rational(1), {0, 1, 1, 0}}}), HeckeElement::identity()),
               std::invalid_argument);
}

TEST(HeckeTn, IdentityAndTruncation) {
  const auto D = delta_qexp(30);
  EXPECT_EQ(hecke_Tn(D, 1), D);
  EXPECT_EQ(hecke_Tn(D, 4).trunc(), 7);
  EXPECT_THROW(hecke_Tn(D, 31), std::invalid_argument);
  EXPECT_EQ(hecke_Tn(D, 2).coefficient(1), Rational(-24));
}

TEST(HeckeTn, MatchesBruteForceDefinition) {
  const auto D = delta_qexp(60);
  const auto E = eisenstein_qexp(6, 60);
  for (std::int64_t n = 1; n <= 12; ++n) {
    EXPECT_EQ(hecke_Tn(D, n), brute_tn(D, n)) << n;
    EXPECT_EQ(hecke_Tn(E, n), brute_tn(E, n)) << n;
  }
}

TEST(HeckeTn, EisensteinEigenvalues) {
  for (int k : {4, 6, 8, 10}) {
    const auto E = eisenstein_qexp(k, 400);
    for (std::int64_t n = 1; n <= 20; ++n) {
      const Rational lambda(exact::divisor_sigma(n, k - 1));
      EXPECT_EQ(hecke_Tn(E, n), lambda * E.truncated(400 / n)) << "k=" << k << " n=" << n;
    }
  }
}

TEST(HeckeTn, MultiplicativeForCoprimeIndices) {
  const auto D = delta_qexp(1200);
  const auto E = eisenstein_qexp(8, 1200);
  for (std::int64_t m = 1; m <= 12; ++m) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      if (std::gcd(m, n) != 1 || m * n > 60) continue;
      EXPECT_EQ(hecke_Tn(hecke_Tn(D, n), m), hecke_Tn(D, m * n)) << m << " " << n;
      EXPECT_EQ(hecke_Tn(hecke_Tn(E, n), m), hecke_Tn(E, m * n)) << m << " " << n;
    }
  }
}

TEST(HeckeTn, PrimePowerRecursion) {
  const auto D = delta_qexp(600);
  for (std::int64_t p : {2, 3}) {
    std::int64_t pr = 1;
    for (int r = 1; r <= 2; ++r) {
      pr *= p;
      const auto lhs = hecke_Tn(hecke_Tn(D, pr), p);
      const auto rhs = hecke_Tn(D, pr * p) + Rational(ipow(p, 11)) * hecke_Tn(D, pr / p);
      const auto t = std::min(lhs.trunc(), rhs.trunc());
      EXPECT_EQ(lhs.truncated(t), rhs.truncated(t)) << p << "^" << r;
    }
  }
}
