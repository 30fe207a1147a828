#pragma once

// Exact arithmetic kernel: Bernoulli numbers, divisor sums, Kronecker
// symbols and Cohen's function H(r, N).

#include <cstdint>
#include <vector>

#include "bowtie/rational.hpp"

namespace bowtie::exact {

/// B_n with the convention B_1 = -1/2. Memoized; safe to call concurrently.
Rational bernoulli(int n);

/// Bernoulli polynomial B_n(x).
Rational bernoulli_polynomial(int n, const Rational& x);

/// sigma_e(n) = sum of d^e over the positive divisors d of n. Rejects n < 1.
Integer divisor_sigma(std::int64_t n, int e);

/// Positive divisors of n in increasing order. Rejects n < 1.
std::vector<std::int64_t> divisors(std::int64_t n);

std::int64_t moebius(std::int64_t n);

/// Kronecker symbol (D | n), extended to n <= 0 and even n.
int kronecker(std::int64_t D, std::int64_t n);

bool is_fundamental_discriminant(std::int64_t D);

/// D = fundamental * conductor^2 with `fundamental` a fundamental
/// discriminant (1 counts as fundamental). D must be a nonzero
/// discriminant (D = 0, 1 mod 4).
struct DiscriminantSplit {
  std::int64_t fundamental;
  std::int64_t conductor;
};
DiscriminantSplit split_discriminant(std::int64_t D);

/// Generalized Bernoulli number B_{r, chi_D} for the primitive quadratic
/// character of fundamental discriminant D, computed term by term from
/// Bernoulli polynomials.
Rational generalized_bernoulli(int r, std::int64_t D);

/// Cohen's H(r, N), r >= 2, N >= 0:
///   H(r, 0) = zeta(1 - 2r),
///   H(r, N) = 0 when (-1)^r N = 2, 3 mod 4,
///   H(r, N) = L(1 - r, chi_D) * sum_{d | f} mu(d) chi_D(d) d^(r-1) sigma_{2r-1}(f/d)
///             where (-1)^r N = D f^2, D fundamental.
Rational cohen_h(int r, std::int64_t N);

/// H(r, N) for every 0 <= N <= max_n. Same values as cohen_h, computed by
/// batching the L-values through modular power sums; used for large
/// Eisenstein expansions.
std::vector<Rational> cohen_h_table(int r, std::int64_t max_n);

}  // namespace bowtie::exact
