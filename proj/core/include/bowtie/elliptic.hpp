#pragma once

// One-variable modular forms of level one: q-expansions, coset
// representatives of Gamma \ M(l), the Hecke ring product and the classical
// Hecke operators T_n.

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "bowtie/rational.hpp"

namespace bowtie::elliptic {

/// Truncated Fourier expansion sum_{n <= trunc} a(n) q^n of an even weight
/// form. Coefficients beyond `trunc` are unknown, not zero.
class QExpansion {
 public:
  QExpansion(int weight, std::int64_t trunc);

  int weight() const { return weight_; }
  std::int64_t trunc() const { return trunc_; }

  /// a(n); throws std::out_of_range for n > trunc, returns 0 for n < 0.
  const Rational& coefficient(std::int64_t n) const;
  void set(std::int64_t n, Rational value);

  /// Same weight, coefficients up to min(trunc, new_trunc).
  QExpansion truncated(std::int64_t new_trunc) const;

  friend bool operator==(const QExpansion&, const QExpansion&) = default;

 private:
  int weight_;
  std::int64_t trunc_;
  std::vector<Rational> coeffs_;
};

QExpansion operator+(const QExpansion& a, const QExpansion& b);
QExpansion operator-(const QExpansion& a, const QExpansion& b);
QExpansion operator*(const Rational& s, const QExpansion& f);

struct IntMatrix2 {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend auto operator<=>(const IntMatrix2&, const IntMatrix2&) = default;
};

/// Canonical representative of the left coset Gamma * g (g with positive
/// determinant): the unique (a, b; 0, d) with a, d > 0, 0 <= b < d.
IntMatrix2 canonical_left_coset(const IntMatrix2& g);

using CosetList = std::vector<IntMatrix2>;

/// Representatives of Gamma \ M(l): (a, b; 0, d) with ad = l, 0 <= b < d,
/// ordered by d then b. For a prime p this is (p,0;0,1) and (1,b;0,p).
CosetList coset_reps_M(std::int64_t l);

/// Formal sum sum_j a_j Gamma g_j. Representatives are kept as given; terms
/// whose representatives are left-equivalent are merged on construction and
/// zero terms dropped.
class HeckeElement {
 public:
  struct Term {
    Rational coefficient;
    IntMatrix2 rep;
  };

  HeckeElement() = default;
  explicit HeckeElement(std::vector<Term> terms);
  static HeckeElement from_cosets(const CosetList& reps, const Rational& coefficient = Rational(1));
  static HeckeElement identity();

  const std::vector<Term>& terms() const { return terms_; }

  /// Terms keyed by canonical coset representative, sorted.
  std::vector<std::pair<IntMatrix2, Rational>> canonical_terms() const;

  /// Equality as formal sums of cosets (representative choice ignored).
  friend bool operator==(const HeckeElement& x, const HeckeElement& y) {
    return x.canonical_terms() == y.canonical_terms();
  }

 private:
  std::vector<Term> terms_;
};

/// Ring product sum_{i,j} a_i b_j Gamma g_i h_j, collected into left cosets.
HeckeElement hecke_compose(const HeckeElement& x, const HeckeElement& y);

/// E_k with constant term 1; a(n) = (-2k / B_k) sigma_{k-1}(n).
QExpansion eisenstein_qexp(int k, std::int64_t trunc);

/// Delta = q prod_{n >= 1} (1 - q^n)^24.
QExpansion delta_qexp(std::int64_t trunc);

/// Classical T_n: a'(m) = sum_{d | gcd(n, m)} d^(k-1) a(nm / d^2), valid for
/// m <= floor(trunc / n).
QExpansion hecke_Tn(const QExpansion& f, std::int64_t n);

}  // namespace bowtie::elliptic
