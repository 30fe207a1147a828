#pragma once

// The strong symmetry operator at the level of Fourier coefficients, and the
// two-variable Hecke actions used by the Klingen counterexample.
//
// For a prime p the coefficient identity is read in the single form
//
//   B(n,r,m) = p^(k-1) A(n/p, r/p, m) + A(pn, r, m)
//            - p^(k-1) A(n, r/p, m/p) - A(n, r, pm)
//
// with terms at non-integral indices dropped. Moving the two negative terms
// across gives the "sum on both sides" arrangement; moving A(pn,r,m) and
// A(n,r,pm) instead gives the difference arrangement. All three vanish
// together.

#include <cstdint>
#include <optional>
#include <vector>

#include "bowtie/elliptic.hpp"
#include "bowtie/siegel2.hpp"

namespace bowtie::strong_symmetry {

struct BowtieTerms {
  Rational lhs;  // p^(k-1) A(n/p, r/p, m) + A(pn, r, m)
  Rational rhs;  // p^(k-1) A(n, r/p, m/p) + A(n, r, pm)
};

/// Both sides at a single index. Requires p * max(n, m) + min(n, m) within F's
/// trace truncation for indices where the large terms are in the support.
BowtieTerms bowtie_terms(const siegel2::SiegelExpansion& F, std::int64_t p, const siegel2::HalfIntegralIndex& N);

/// B(n,r,m) on the holomorphic support with n + m <= floor(T / p).
siegel2::SiegelExpansion bowtie_apply(const siegel2::SiegelExpansion& F, std::int64_t p);

struct Violation {
  siegel2::HalfIntegralIndex index;
  Rational lhs, rhs;
};

struct BowtieReport {
  int weight = 0;
  std::int64_t prime = 0;
  std::int64_t window = 0;           // certified trace window
  std::int64_t indices_checked = 0;
  std::vector<Violation> violations;  // sorted by index
  bool pass = true;
};

/// One report per prime. The checked set is every (n, r, m) with n, m >= 0,
/// n + m <= window and r^2 <= 4pnm, i.e. every index where one of the four
/// terms can be nonzero. window = floor(T / p), optionally capped.
std::vector<BowtieReport> check_strong_symmetry(const siegel2::SiegelExpansion& F,
                                                const std::vector<std::int64_t>& primes,
                                                std::optional<std::int64_t> max_window = std::nullopt);

enum class Slot { First, Second };

/// Classical T_p acting on one variable of a two-variable expansion.
siegel2::TwoVarExpansion two_var_hecke(const siegel2::TwoVarExpansion& f, std::int64_t p, Slot slot);

/// f = E_12 (x) Delta + Delta (x) E_12 + alpha Delta (x) Delta, truncation trunc in both variables.
siegel2::TwoVarExpansion klingen_restriction(const Rational& alpha, std::int64_t trunc);

/// f|T_p(first) - f|T_p(second), valid up to trunc in both variables.
siegel2::TwoVarExpansion klingen_difference(const Rational& alpha, std::int64_t p, std::int64_t trunc);

bool is_prime(std::int64_t p);

}  // namespace bowtie::strong_symmetry
