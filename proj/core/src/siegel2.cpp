#include "bowtie/siegel2.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bowtie/exact.hpp"

namespace bowtie::siegel2 {

namespace {

std::int64_t isqrt(std::int64_t x) {
  if (x <= 0) return 0;
  auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

const Rational& zero_rational() {
  static const Rational zero;
  return zero;
}

}  // namespace

std::int64_t HalfIntegralIndex::content() const { return std::gcd(std::gcd(n, r), m); }

HalfIntegralIndex HalfIntegralIndex::transform(const elliptic::IntMatrix2& U) const {
  // U^t (n, r/2; r/2, m) U, written out so that r stays integral
  const auto [a, b, c, d] = U;
  return {n * a * a + r * a * c + m * c * c,
          2 * n * a * b + r * (a * d + b * c) + 2 * m * c * d,
          n * b * b + r * b * d + m * d * d};
}

SiegelExpansion::SiegelExpansion(int weight, std::int64_t trace_trunc) : weight_(weight), trace_trunc_(trace_trunc) {
  if (trace_trunc < 0) throw std::invalid_argument("SiegelExpansion: negative trace truncation");
  const auto side = static_cast<std::size_t>(trace_trunc + 1);
  offset_.assign(side * side, -1);
  radius_.assign(side * side, 0);
  std::int64_t next = 0;
  for (std::int64_t n = 0; n <= trace_trunc; ++n) {
    for (std::int64_t m = 0; n + m <= trace_trunc; ++m) {
      const auto idx = slab(n, m);
      radius_[idx] = isqrt(4 * n * m);
      offset_[idx] = next;
      next += 2 * radius_[idx] + 1;
    }
  }
  coeffs_.resize(static_cast<std::size_t>(next));
}

std::size_t SiegelExpansion::locate(std::int64_t n, std::int64_t r, std::int64_t m) const {
  const auto idx = slab(n, m);
  return static_cast<std::size_t>(offset_[idx] + r + radius_[idx]);
}

const Rational& SiegelExpansion::coefficient(std::int64_t n, std::int64_t r, std::int64_t m) const {
  if (n < 0 || m < 0 || 4 * n * m - r * r < 0) return zero_rational();
  if (n + m > trace_trunc_) {
    throw std::out_of_range("SiegelExpansion: index (" + std::to_string(n) + "," + std::to_string(r) + "," +
                            std::to_string(m) + ") beyond trace truncation " + std::to_string(trace_trunc_));
  }
  return coeffs_[locate(n, r, m)];
}

void SiegelExpansion::set(std::int64_t n, std::int64_t r, std::int64_t m, Rational value) {
  if (n < 0 || m < 0 || 4 * n * m - r * r < 0 || n + m > trace_trunc_) {
    throw std::out_of_range("SiegelExpansion::set: index outside support or truncation");
  }
  coeffs_[locate(n, r, m)] = std::move(value);
}

void SiegelExpansion::for_each(const std::function<void(const HalfIntegralIndex&, const Rational&)>& fn) const {
  for (std::int64_t n = 0; n <= trace_trunc_; ++n) {
    for (std::int64_t m = 0; n + m <= trace_trunc_; ++m) {
      const auto idx = slab(n, m);
      const std::int64_t R = radius_[idx];
      for (std::int64_t r = -R; r <= R; ++r) fn({n, r, m}, coeffs_[static_cast<std::size_t>(offset_[idx] + r + R)]);
    }
  }
}

SiegelExpansion SiegelExpansion::truncated(std::int64_t new_trunc) const {
  SiegelExpansion out(weight_, std::min(new_trunc, trace_trunc_));
  for (std::int64_t n = 0; n <= out.trace_trunc_; ++n) {
    for (std::int64_t m = 0; n + m <= out.trace_trunc_; ++m) {
      const std::int64_t R = out.radius_[out.slab(n, m)];
      for (std::int64_t r = -R; r <= R; ++r) out.coeffs_[out.locate(n, r, m)] = coeffs_[locate(n, r, m)];
    }
  }
  return out;
}

namespace {

template <class Op>
SiegelExpansion combine(const SiegelExpansion& a, const SiegelExpansion& b, Op op) {
  if (a.weight() != b.weight()) throw std::invalid_argument("SiegelExpansion: weight mismatch");
  SiegelExpansion out(a.weight(), std::min(a.trace_trunc(), b.trace_trunc()));
  const auto T = out.trace_trunc();
  for (std::int64_t n = 0; n <= T; ++n) {
    for (std::int64_t m = 0; n + m <= T; ++m) {
      const std::int64_t R = isqrt(4 * n * m);
      for (std::int64_t r = -R; r <= R; ++r) {
        out.set(n, r, m, op(a.coefficient(n, r, m), b.coefficient(n, r, m)));
      }
    }
  }
  return out;
}

}  // namespace

SiegelExpansion operator+(const SiegelExpansion& a, const SiegelExpansion& b) {
  return combine(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}

SiegelExpansion operator-(const SiegelExpansion& a, const SiegelExpansion& b) {
  return combine(a, b, [](const Rational& x, const Rational& y) { return x - y; });
}

SiegelExpansion operator*(const Rational& s, const SiegelExpansion& F) {
  return combine(F, F, [&](const Rational& x, const Rational&) { return s * x; });
}

TwoVarExpansion::TwoVarExpansion(int weight, std::int64_t trunc_first, std::int64_t trunc_second)
    : weight_(weight), trunc_first_(trunc_first), trunc_second_(trunc_second) {
  if (trunc_first < 0 || trunc_second < 0) throw std::invalid_argument("TwoVarExpansion: negative truncation");
  coeffs_.resize(static_cast<std::size_t>((trunc_first + 1) * (trunc_second + 1)));
}

const Rational& TwoVarExpansion::coefficient(std::int64_t n, std::int64_t m) const {
  if (n < 0 || m < 0) return zero_rational();
  if (n > trunc_first_ || m > trunc_second_) {
    throw std::out_of_range("TwoVarExpansion: index (" + std::to_string(n) + "," + std::to_string(m) +
                            ") beyond truncation");
  }
  return coeffs_[static_cast<std::size_t>(n * (trunc_second_ + 1) + m)];
}

void TwoVarExpansion::set(std::int64_t n, std::int64_t m, Rational value) {
  if (n < 0 || m < 0 || n > trunc_first_ || m > trunc_second_) {
    throw std::out_of_range("TwoVarExpansion::set: index out of range");
  }
  coeffs_[static_cast<std::size_t>(n * (trunc_second_ + 1) + m)] = std::move(value);
}

TwoVarExpansion TwoVarExpansion::truncated(std::int64_t trunc_first, std::int64_t trunc_second) const {
  TwoVarExpansion out(weight_, std::min(trunc_first, trunc_first_), std::min(trunc_second, trunc_second_));
  for (std::int64_t n = 0; n <= out.trunc_first_; ++n)
    for (std::int64_t m = 0; m <= out.trunc_second_; ++m) out.set(n, m, coefficient(n, m));
  return out;
}

namespace {

template <class Op>
TwoVarExpansion combine(const TwoVarExpansion& a, const TwoVarExpansion& b, Op op) {
  if (a.weight() != b.weight()) throw std::invalid_argument("TwoVarExpansion: weight mismatch");
  TwoVarExpansion out(a.weight(), std::min(a.trunc_first(), b.trunc_first()),
                      std::min(a.trunc_second(), b.trunc_second()));
  for (std::int64_t n = 0; n <= out.trunc_first(); ++n)
    for (std::int64_t m = 0; m <= out.trunc_second(); ++m) out.set(n, m, op(a.coefficient(n, m), b.coefficient(n, m)));
  return out;
}

}  // namespace

TwoVarExpansion operator+(const TwoVarExpansion& a, const TwoVarExpansion& b) {
  return combine(a, b, [](const Rational& x, const Rational& y) { return x + y; });
}

TwoVarExpansion operator-(const TwoVarExpansion& a, const TwoVarExpansion& b) {
  return combine(a, b, [](const Rational& x, const Rational& y) { return x - y; });
}

TwoVarExpansion operator*(const Rational& s, const TwoVarExpansion& f) {
  return combine(f, f, [&](const Rational& x, const Rational&) { return s * x; });
}

TwoVarExpansion tensor(const elliptic::QExpansion& g, const elliptic::QExpansion& h) {
  if (g.weight() != h.weight()) throw std::invalid_argument("tensor: weight mismatch");
  TwoVarExpansion out(g.weight(), g.trunc(), h.trunc());
  for (std::int64_t n = 0; n <= g.trunc(); ++n)
    for (std::int64_t m = 0; m <= h.trunc(); ++m) out.set(n, m, g.coefficient(n) * h.coefficient(m));
  return out;
}

std::int64_t max_lift_discriminant(std::int64_t trace_trunc) {
  // 4nm - r^2 is largest at r = 0, n = floor(T/2), m = ceil(T/2)
  const std::int64_t n = trace_trunc / 2;
  return 4 * n * (trace_trunc - n);
}

namespace {

using CoefficientLookup = std::function<const Rational&(std::int64_t)>;

SiegelExpansion lift_impl(const CoefficientLookup& c, const Rational& c0, int k, std::int64_t trace_trunc) {
  if (k % 2 != 0) throw std::invalid_argument("maass_lift: weight must be even, got " + std::to_string(k));
  SiegelExpansion F(k, trace_trunc);

  std::vector<Integer> dpow(static_cast<std::size_t>(trace_trunc + 1));
  for (std::int64_t d = 1; d <= trace_trunc; ++d) dpow[d] = ipow(d, static_cast<unsigned long>(k - 1));

  F.set(0, 0, 0, c0);
  for (std::int64_t n = 0; n <= trace_trunc; ++n) {
    for (std::int64_t m = 0; n + m <= trace_trunc; ++m) {
      const std::int64_t R = isqrt(4 * n * m);
      for (std::int64_t r = -R; r <= R; ++r) {
        if (n == 0 && r == 0 && m == 0) continue;
        const HalfIntegralIndex N{n, r, m};
        const std::int64_t D = N.disc();
        const std::int64_t g = N.content();
        if (g == 1) {
          F.set(n, r, m, c(D));
          continue;
        }
        Rational acc;
        for (std::int64_t d = 1; d <= g; ++d) {
          if (g % d == 0) acc += Rational(dpow[d]) * c(D / (d * d));
        }
        F.set(n, r, m, std::move(acc));
      }
    }
  }
  return F;
}

}  // namespace

SiegelExpansion maass_lift(const std::map<std::int64_t, Rational>& c, const Rational& c0, int k,
                           std::int64_t trace_trunc) {
  return lift_impl(
      [&](std::int64_t D) -> const Rational& {
        auto it = c.find(D);
        if (it == c.end()) throw std::invalid_argument("maass_lift: coefficient c(" + std::to_string(D) + ") missing");
        return it->second;
      },
      c0, k, trace_trunc);
}

SiegelExpansion maass_lift(const std::vector<Rational>& c, const Rational& c0, int k, std::int64_t trace_trunc) {
  return lift_impl(
      [&](std::int64_t D) -> const Rational& {
        if (D < 0 || D >= static_cast<std::int64_t>(c.size())) {
          throw std::invalid_argument("maass_lift: coefficient c(" + std::to_string(D) + ") missing");
        }
        return c[static_cast<std::size_t>(D)];
      },
      c0, k, trace_trunc);
}

SiegelExpansion siegel_eisenstein2(int k, std::int64_t trace_trunc) {
  if (k < 4 || k % 2 != 0) {
    throw std::invalid_argument("siegel_eisenstein2: k must be even and >= 4, got " + std::to_string(k));
  }
  // c(D) = c0 H(k-1, D) / H(k-1, 0) with c0 = -2k / B_k; this makes A(0,0,0) = 1
  // and A(n,0,0) the elliptic E_k coefficient.
  const auto H = exact::cohen_h_table(k - 1, max_lift_discriminant(trace_trunc));
  const Rational c0 = Rational(-2L * k) / exact::bernoulli(k);
  const Rational scale = c0 / H[0];
  std::vector<Rational> c(H.size());
  for (std::size_t D = 0; D < H.size(); ++D) {
    if (!H[D].is_zero()) c[D] = scale * H[D];
  }
  return maass_lift(c, Rational(1), k, trace_trunc);
}

elliptic::QExpansion phi_restrict(const SiegelExpansion& F) {
  elliptic::QExpansion f(F.weight(), F.trace_trunc());
  for (std::int64_t n = 0; n <= F.trace_trunc(); ++n) f.set(n, F.coefficient(n, 0, 0));
  return f;
}

TwoVarExpansion diagonal_restrict(const SiegelExpansion& F) {
  const std::int64_t t = F.trace_trunc() / 2;
  TwoVarExpansion f(F.weight(), t, t);
  for (std::int64_t n = 0; n <= t; ++n) {
    for (std::int64_t m = 0; m <= t; ++m) {
      const std::int64_t R = isqrt(4 * n * m);
      Rational acc;
      for (std::int64_t r = -R; r <= R; ++r) acc += F.coefficient(n, r, m);
      f.set(n, m, std::move(acc));
    }
  }
  return f;
}

}  // namespace bowtie::siegel2
