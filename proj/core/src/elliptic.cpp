#include "bowtie/elliptic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "bowtie/exact.hpp"

namespace bowtie::elliptic {

QExpansion::QExpansion(int weight, std::int64_t trunc)
    : weight_(weight), trunc_(trunc), coeffs_(static_cast<std::size_t>(trunc + 1)) {
  if (trunc < 0) throw std::invalid_argument("QExpansion: negative truncation");
  if (weight % 2 != 0) throw std::invalid_argument("QExpansion: weight must be even, got " + std::to_string(weight));
}

const Rational& QExpansion::coefficient(std::int64_t n) const {
  static const Rational zero;
  if (n < 0) return zero;
  if (n > trunc_) {
    throw std::out_of_range("QExpansion: coefficient " + std::to_string(n) + " beyond truncation " +
                            std::to_string(trunc_));
  }
  return coeffs_[static_cast<std::size_t>(n)];
}

void QExpansion::set(std::int64_t n, Rational value) {
  if (n < 0 || n > trunc_) throw std::out_of_range("QExpansion::set: index " + std::to_string(n) + " out of range");
  coeffs_[static_cast<std::size_t>(n)] = std::move(value);
}

QExpansion QExpansion::truncated(std::int64_t new_trunc) const {
  QExpansion out(weight_, std::min(trunc_, new_trunc));
  for (std::int64_t n = 0; n <= out.trunc_; ++n) out.coeffs_[n] = coeffs_[n];
  return out;
}

namespace {

void require_same_weight(const QExpansion& a, const QExpansion& b) {
  if (a.weight() != b.weight()) throw std::invalid_argument("QExpansion: weight mismatch");
}

}  // namespace

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
  require_same_weight(a, b);
  QExpansion out(a.weight(), std::min(a.trunc(), b.trunc()));
  for (std::int64_t n = 0; n <= out.trunc(); ++n) out.set(n, a.coefficient(n) + b.coefficient(n));
  return out;
}

QExpansion operator-(const QExpansion& a, const QExpansion& b) {
  require_same_weight(a, b);
  QExpansion out(a.weight(), std::min(a.trunc(), b.trunc()));
  for (std::int64_t n = 0; n <= out.trunc(); ++n) out.set(n, a.coefficient(n) - b.coefficient(n));
  return out;
}

QExpansion operator*(const Rational& s, const QExpansion& f) {
  QExpansion out(f.weight(), f.trunc());
  for (std::int64_t n = 0; n <= f.trunc(); ++n) out.set(n, s * f.coefficient(n));
  return out;
}

namespace {

// x*a + y*b = g = gcd(a, b) >= 0
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  x = x0;
  y = y0;
  return a;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

IntMatrix2 canonical_left_coset(const IntMatrix2& g) {
  const std::int64_t det = g.det();
  if (det <= 0) throw std::invalid_argument("canonical_left_coset: determinant must be positive");
  // U = (x, y; -c/h, a/h) in SL2(Z) clears the lower-left entry.
  std::int64_t x = 0, y = 0;
  const std::int64_t h = ext_gcd(g.a, g.c, x, y);
  IntMatrix2 out{h, x * g.b + y * g.d, 0, det / h};
  out.b = floor_mod(out.b, out.d);
  return out;
}

CosetList coset_reps_M(std::int64_t l) {
  if (l < 1) throw std::invalid_argument("coset_reps_M: l must be positive, got " + std::to_string(l));
  CosetList reps;
  for (auto d : exact::divisors(l)) {
    for (std::int64_t b = 0; b < d; ++b) reps.push_back({l / d, b, 0, d});
  }
  return reps;
}

HeckeElement::HeckeElement(std::vector<Term> terms) {
  std::map<IntMatrix2, std::size_t> seen;
  for (auto& t : terms) {
    const auto key = canonical_left_coset(t.rep);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, terms_.size());
      terms_.push_back(std::move(t));
    } else {
      terms_[it->second].coefficient += t.coefficient;
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coefficient.is_zero(); });
}

HeckeElement HeckeElement::from_cosets(const CosetList& reps, const Rational& coefficient) {
  std::vector<Term> terms;
  terms.reserve(reps.size());
  for (const auto& g : reps) terms.push_back({coefficient, g});
  return HeckeElement(std::move(terms));
}

HeckeElement HeckeElement::identity() { return from_cosets({IntMatrix2{}}); }

std::vector<std::pair<IntMatrix2, Rational>> HeckeElement::canonical_terms() const {
  std::vector<std::pair<IntMatrix2, Rational>> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.emplace_back(canonical_left_coset(t.rep), t.coefficient);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

HeckeElement hecke_compose(const HeckeElement& x, const HeckeElement& y) {
  std::map<IntMatrix2, Rational> collected;
  for (const auto& s : x.terms()) {
    for (const auto& t : y.terms()) {
      const IntMatrix2 prod = s.rep * t.rep;
      if (prod.det() <= 0) throw std::invalid_argument("hecke_compose: representative with non-positive determinant");
      collected[canonical_left_coset(prod)] += s.coefficient * t.coefficient;
    }
  }
  std::vector<HeckeElement::Term> terms;
  for (auto& [rep, coef] : collected) terms.push_back({std::move(coef), rep});
  return HeckeElement(std::move(terms));
}

QExpansion eisenstein_qexp(int k, std::int64_t trunc) {
  if (k < 4 || k % 2 != 0) throw std::invalid_argument("eisenstein_qexp: k must be even and >= 4, got " + std::to_string(k));
  QExpansion f(k, trunc);
  f.set(0, Rational(1));
  const Rational c0 = Rational(-2L * k) / exact::bernoulli(k);
  for (std::int64_t n = 1; n <= trunc; ++n) f.set(n, c0 * Rational(exact::divisor_sigma(n, k - 1)));
  return f;
}

QExpansion delta_qexp(std::int64_t trunc) {
  if (trunc < 1) throw std::invalid_argument("delta_qexp: trunc must be at least 1");
  // P = prod_{n=1}^{trunc-1} (1 - q^n)^24 mod q^trunc, integer arithmetic
  const std::size_t len = static_cast<std::size_t>(trunc);
  std::vector<Integer> p(len, 0);
  p[0] = 1;
  for (std::size_t n = 1; n < len; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (std::size_t i = len - 1; i >= n; --i) p[i] -= p[i - n];
    }
  }
  QExpansion f(12, trunc);
  for (std::size_t i = 0; i < len; ++i) f.set(static_cast<std::int64_t>(i + 1), Rational(p[i]));
  return f;
}

QExpansion hecke_Tn(const QExpansion& f, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("hecke_Tn: n must be positive");
  if (n > f.trunc()) {
    throw std::invalid_argument("hecke_Tn: n = " + std::to_string(n) + " exceeds truncation " + std::to_string(f.trunc()));
  }
  const int k = f.weight();
  QExpansion out(k, f.trunc() / n);
  for (std::int64_t m = 0; m <= out.trunc(); ++m) {
    Rational acc;
    if (m == 0) {
      // every d | n divides 0
      for (auto d : exact::divisors(n)) acc += Rational(ipow(d, static_cast<unsigned long>(k - 1))) * f.coefficient(0);
    } else {
      for (auto d : exact::divisors(std::gcd(n, m))) {
        acc += Rational(ipow(d, static_cast<unsigned long>(k - 1))) * f.coefficient(n * m / (d * d));
      }
    }
    out.set(m, std::move(acc));
  }
  return out;
}

}  // namespace bowtie::elliptic
