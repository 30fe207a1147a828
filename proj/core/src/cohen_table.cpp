#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bowtie/exact.hpp"

namespace bowtie::exact {

namespace {

// Residues modulo 2^64 (free via wraparound) and four primes 2^31 - c below 2^31.
constexpr std::array<std::uint64_t, 4> kOffsets{1, 19, 61, 69};
constexpr std::array<std::uint64_t, 4> kPrimes{(1ULL << 31) - kOffsets[0], (1ULL << 31) - kOffsets[1],
                                               (1ULL << 31) - kOffsets[2], (1ULL << 31) - kOffsets[3]};

// x mod (2^31 - c) for x < 2^62, folding twice with 2^31 = c
template <std::size_t I>
inline std::uint64_t reduce(std::uint64_t x) {
  constexpr std::uint64_t mask = (1ULL << 31) - 1;
  x = (x >> 31) * kOffsets[I] + (x & mask);
  x = (x >> 31) * kOffsets[I] + (x & mask);
  return x >= kPrimes[I] ? x - kPrimes[I] : x;
}
constexpr double kModulusBits = 64.0 + 4 * 30.99999;

std::vector<std::int32_t> smallest_prime_factors(std::int64_t n) {
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n + 1), 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i) {
      if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
    }
  }
  return spf;
}

Integer mod_inverse(const Integer& a, std::uint64_t p) {
  Integer inv;
  Integer mod(static_cast<unsigned long>(p));
  mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
  return inv;
}

// Reconstructs the integer congruent to r64 mod 2^64 and res[i] mod kPrimes[i],
// in the symmetric range around zero.
Integer crt_signed(std::uint64_t r64, const std::array<std::uint64_t, 4>& res) {
  Integer x(static_cast<unsigned long>(r64));
  Integer modulus = Integer(1) << 64;
  for (std::size_t i = 0; i < kPrimes.size(); ++i) {
    const Integer p(static_cast<unsigned long>(kPrimes[i]));
    Integer diff = Integer(static_cast<unsigned long>(res[i])) - x;
    diff %= p;
    if (diff < 0) diff += p;
    Integer t = (diff * mod_inverse(modulus % p, kPrimes[i])) % p;
    x += modulus * t;
    modulus *= p;
  }
  if (x > modulus / 2) x -= modulus;
  return x;
}

// Half-range power sums S_e = sum_{1 <= a < f/2} chi(a) a^e, exact, for the
// exponents the Bernoulli expansion reads: e = r, r-2, r-4, ... and e = r-1.
// Other entries are left at zero.
std::vector<Integer> half_range_power_sums(std::int64_t D, int r, const std::vector<std::int32_t>& spf) {
  const std::int64_t f = D < 0 ? -D : D;
  const std::int64_t half = (f - 1) / 2;
  std::vector<std::int8_t> chi(static_cast<std::size_t>(half + 1), 0);
  if (half >= 1) chi[1] = 1;
  for (std::int64_t a = 2; a <= half; ++a) {
    const std::int64_t q = spf[a];
    chi[a] = (q == a) ? static_cast<std::int8_t>(kronecker(D, a))
                      : static_cast<std::int8_t>(chi[q] * chi[a / q]);
  }

  const std::size_t exps = static_cast<std::size_t>(r) + 1;
  const int first = r % 2;
  std::vector<std::uint64_t> s64(exps, 0);
  std::vector<std::array<std::uint64_t, 4>> pos(exps), neg(exps);
  for (auto& v : pos) v.fill(0);
  for (auto& v : neg) v.fill(0);

  for (std::int64_t a = 1; a <= half; ++a) {
    const int c = chi[a];
    if (c == 0) continue;
    const std::uint64_t ua = static_cast<std::uint64_t>(a);
    const std::array<std::uint64_t, 4> sq{reduce<0>(ua * ua), reduce<1>(ua * ua), reduce<2>(ua * ua),
                                          reduce<3>(ua * ua)};
    const std::uint64_t sq64 = ua * ua;
    std::uint64_t w = first ? ua : 1;
    std::array<std::uint64_t, 4> v{w, w, w, w};
    auto& target = c > 0 ? pos : neg;
    for (int e = first; e <= r; e += 2) {
      if (c > 0) s64[e] += w;
      else s64[e] -= w;
      auto& t = target[e];
      t[0] += v[0];
      t[1] += v[1];
      t[2] += v[2];
      t[3] += v[3];
      if (e == r - 2) {
        // the single odd-one-out exponent r - 1
        if (c > 0) s64[r - 1] += w * ua;
        else s64[r - 1] -= w * ua;
        auto& u = target[r - 1];
        u[0] += reduce<0>(v[0] * ua);
        u[1] += reduce<1>(v[1] * ua);
        u[2] += reduce<2>(v[2] * ua);
        u[3] += reduce<3>(v[3] * ua);
      }
      w *= sq64;
      v[0] = reduce<0>(v[0] * sq[0]);
      v[1] = reduce<1>(v[1] * sq[1]);
      v[2] = reduce<2>(v[2] * sq[2]);
      v[3] = reduce<3>(v[3] * sq[3]);
    }
  }

  std::vector<Integer> sums;
  sums.reserve(exps);
  for (std::size_t e = 0; e < exps; ++e) {
    std::array<std::uint64_t, 4> res{};
    for (std::size_t i = 0; i < kPrimes.size(); ++i) {
      const std::uint64_t p = kPrimes[i];
      res[i] = (pos[e][i] % p + p - neg[e][i] % p) % p;
    }
    sums.push_back(crt_signed(s64[e], res));
  }
  return sums;
}

Integer binomial(long n, long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

// L(1 - r, chi_D) for fundamental D.
Rational l_value(int r, std::int64_t D, const std::vector<std::int32_t>& spf) {
  const std::int64_t f = D < 0 ? -D : D;
  if (f == 1) return -bernoulli(r) / Rational(r);

  const double bits = (r + 1) * std::log2(static_cast<double>(f)) + 2.0;
  if (bits >= kModulusBits || f >= (std::int64_t{1} << 16)) {
    return -generalized_bernoulli(r, D) / Rational(r);
  }
  // chi(-1) = (-1)^r, so a and f - a contribute equally to
  // B_{r,chi} = f^(r-1) sum_a chi(a) B_r(a/f), giving
  // B_{r,chi} = 2 sum_j C(r,j) B_j f^(j-1) S_{r-j} over the half range.
  const auto sums = half_range_power_sums(D, r, spf);
  Rational acc;
  for (int j = 0; j <= r; ++j) {
    const Rational b = bernoulli(j);
    if (b.is_zero() || sums[r - j] == 0) continue;
    Rational term = Rational(binomial(r, j)) * b * Rational(sums[r - j]);
    if (j == 0) term /= Rational(f);
    else term *= Rational(ipow(f, static_cast<unsigned long>(j - 1)));
    acc += term;
  }
  return Rational(-2) * acc / Rational(r);
}

std::int64_t mod4(std::int64_t x) { return ((x % 4) + 4) % 4; }

}  // namespace

std::vector<Rational> cohen_h_table(int r, std::int64_t max_n) {
  if (r < 2) throw std::invalid_argument("cohen_h_table: r must be at least 2");
  if (max_n < 0) throw std::invalid_argument("cohen_h_table: max_n must be non-negative");
  std::vector<Rational> table(static_cast<std::size_t>(max_n + 1));
  table[0] = cohen_h(r, 0);
  if (max_n == 0) return table;

  const auto spf = smallest_prime_factors(max_n);
  std::unordered_map<std::int64_t, Rational> l_values;

  for (std::int64_t n = 1; n <= max_n; ++n) {
    const std::int64_t signed_n = (r % 2 == 0) ? n : -n;
    if (mod4(signed_n) == 2 || mod4(signed_n) == 3) continue;
    const auto [D, f] = split_discriminant(signed_n);
    auto it = l_values.find(D);
    if (it == l_values.end()) it = l_values.emplace(D, l_value(r, D, spf)).first;

    Integer sum = 0;
    for (auto d : divisors(f)) {
      const auto mu = moebius(d);
      if (mu == 0) continue;
      const int chi = kronecker(D, d);
      if (chi == 0) continue;
      sum += Integer(mu * chi) * ipow(d, static_cast<unsigned long>(r - 1)) * divisor_sigma(f / d, 2 * r - 1);
    }
    table[n] = it->second * Rational(sum);
  }
  return table;
}

}  // namespace bowtie::exact
