#include "bowtie/exact.hpp"

#include <mutex>
#include <stdexcept>
#include <string>

namespace bowtie::exact {

namespace {

std::mutex bernoulli_mutex;
std::vector<Rational> bernoulli_cache{Rational(1)};

Integer binomial(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace

Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: n must be non-negative");
  std::lock_guard lock(bernoulli_mutex);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1
  while (static_cast<int>(bernoulli_cache.size()) <= n) {
    const long m = static_cast<long>(bernoulli_cache.size());
    if (m > 1 && m % 2 == 1) {
      bernoulli_cache.emplace_back(0);
      continue;
    }
    Rational acc;
    for (long j = 0; j < m; ++j) {
      if (bernoulli_cache[j].is_zero()) continue;
      acc += Rational(binomial(m + 1, j)) * bernoulli_cache[j];
    }
    bernoulli_cache.push_back(-acc / Rational(m + 1));
  }
  return bernoulli_cache[n];
}

Rational bernoulli_polynomial(int n, const Rational& x) {
  Rational acc;
  Rational xpow(1);
  // accumulate from the top power down: B_n(x) = sum_j C(n,j) B_j x^(n-j)
  for (int j = n; j >= 0; --j) {
    const Rational b = bernoulli(j);
    if (!b.is_zero()) acc += Rational(binomial(n, j)) * b * xpow;
    xpow *= x;
  }
  return acc;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive, got " + std::to_string(n));
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d * d != n) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Integer divisor_sigma(std::int64_t n, int e) {
  if (n < 1) throw std::invalid_argument("divisor_sigma: n must be positive, got " + std::to_string(n));
  if (e < 0) throw std::invalid_argument("divisor_sigma: exponent must be non-negative");
  Integer acc = 0;
  for (auto d : divisors(n)) acc += ipow(d, static_cast<unsigned long>(e));
  return acc;
}

std::int64_t moebius(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("moebius: n must be positive");
  std::int64_t mu = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

int kronecker(std::int64_t D, std::int64_t n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (D < 0) result = -result;
  }
  // factor out powers of two: (D|2) = 0 for even D, else +1 for D = +-1 mod 8
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (D % 2 == 0) return 0;
    const std::int64_t r8 = ((D % 8) + 8) % 8;
    if ((twos % 2 == 1) && (r8 == 3 || r8 == 5)) result = -result;
  }
  // Jacobi symbol (D | n) for odd n > 0
  std::int64_t a = ((D % n) + n) % n;
  std::int64_t m = n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

namespace {

bool squarefree(std::int64_t n) {
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

std::int64_t mod4(std::int64_t x) { return ((x % 4) + 4) % 4; }

}  // namespace

bool is_fundamental_discriminant(std::int64_t D) {
  if (D == 1) return true;
  if (D == 0) return false;
  if (mod4(D) == 1) return squarefree(D);
  if (mod4(D) == 0) {
    const std::int64_t d = D / 4;
    return (mod4(d) == 2 || mod4(d) == 3) && squarefree(d);
  }
  return false;
}

DiscriminantSplit split_discriminant(std::int64_t D) {
  if (D == 0 || (mod4(D) != 0 && mod4(D) != 1)) {
    throw std::invalid_argument("split_discriminant: " + std::to_string(D) + " is not a nonzero discriminant");
  }
  // strip the largest square f^2 with D / f^2 still a discriminant
  std::int64_t f = 1;
  std::int64_t core = D;
  for (std::int64_t p = 2; p * p <= (core < 0 ? -core : core); ++p) {
    while (core % (p * p) == 0) {
      const std::int64_t reduced = core / (p * p);
      if (p == 2 && mod4(reduced) != 0 && mod4(reduced) != 1) break;
      core = reduced;
      f *= p;
    }
  }
  return {core, f};
}

Rational generalized_bernoulli(int r, std::int64_t D) {
  if (!is_fundamental_discriminant(D)) {
    throw std::invalid_argument("generalized_bernoulli: " + std::to_string(D) + " is not fundamental");
  }
  const std::int64_t f = D < 0 ? -D : D;
  Rational acc;
  for (std::int64_t a = 1; a <= f; ++a) {
    const int chi = kronecker(D, a);
    if (chi == 0) continue;
    const Rational term = bernoulli_polynomial(r, Rational(a, f));
    if (chi > 0) acc += term;
    else acc -= term;
  }
  return acc * Rational(ipow(f, static_cast<unsigned long>(r - 1)));
}

Rational cohen_h(int r, std::int64_t N) {
  if (r < 2) throw std::invalid_argument("cohen_h: r must be at least 2, got " + std::to_string(r));
  if (N < 0) throw std::invalid_argument("cohen_h: N must be non-negative");
  if (N == 0) return -bernoulli(2 * r) / Rational(2L * r);
  const std::int64_t signed_n = (r % 2 == 0) ? N : -N;
  if (mod4(signed_n) == 2 || mod4(signed_n) == 3) return Rational(0);
  const auto [D, f] = split_discriminant(signed_n);
  const Rational l_value = -generalized_bernoulli(r, D) / Rational(r);
  Integer sum = 0;
  for (auto d : divisors(f)) {
    const auto mu = moebius(d);
    if (mu == 0) continue;
    const int chi = kronecker(D, d);
    if (chi == 0) continue;
    sum += Integer(mu * chi) * ipow(d, static_cast<unsigned long>(r - 1)) * divisor_sigma(f / d, 2 * r - 1);
  }
  return l_value * Rational(sum);
}

}  // namespace bowtie::exact
