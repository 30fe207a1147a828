#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bowtie {

/// Arbitrary-precision integer.
using Integer = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT: implicit from integers
  Rational(int value) : value_(value) {}   // NOLINT
  Rational(const Integer& value) : value_(value) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);
  Rational(long num, long den);

  static Rational from_mpq(const mpq_class& q);

  /// Parses "p/q" or "p" (optional leading '-').
  static Rational parse(std::string_view text);

  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  const mpq_class& mpq() const { return value_; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return from_mpq(-a.value_); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& q);

/// base^exp for exp >= 0.
Integer ipow(const Integer& base, unsigned long exp);
Integer ipow(long base, unsigned long exp);

}  // namespace bowtie
