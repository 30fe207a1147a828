#include "bowtie/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace bowtie {

Rational::Rational(const Integer& num, const Integer& den) : value_(num, den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::from_mpq(const mpq_class& q) {
  Rational r;
  r.value_ = q;
  r.value_.canonicalize();
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty integer in '" + std::string(text) + "'");
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("Rational::parse: bad integer '" + std::string(s) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rational::parse: bad integer '" + std::string(s) + "'");
    }
    std::string str(s.front() == '+' ? s.substr(1) : s);
    return Integer(str, 10);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const auto den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("Rational::parse: denominator must be positive in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

Integer ipow(long base, unsigned long exp) { return ipow(Integer(base), exp); }

}  // namespace bowtie
