#pragma once

// Degree-2 holomorphic Fourier expansions indexed by half-integral
// N = (n, r/2; r/2, m), truncated by trace n + m.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bowtie/elliptic.hpp"
#include "bowtie/rational.hpp"

namespace bowtie::siegel2 {

struct HalfIntegralIndex {
  std::int64_t n = 0, r = 0, m = 0;

  std::int64_t disc() const { return 4 * n * m - r * r; }
  std::int64_t content() const;
  bool in_holomorphic_support() const { return n >= 0 && m >= 0 && disc() >= 0; }

  /// N[U] = U^t N U for an integral 2x2 matrix U.
  HalfIntegralIndex transform(const elliptic::IntMatrix2& U) const;

  friend auto operator<=>(const HalfIntegralIndex&, const HalfIntegralIndex&) = default;
};

class SiegelExpansion {
 public:
  SiegelExpansion(int weight, std::int64_t trace_trunc);

  int weight() const { return weight_; }
  std::int64_t trace_trunc() const { return trace_trunc_; }

  /// A(n, r, m). Indices outside the holomorphic support give 0; an index in
  /// the support with n + m > trace_trunc throws std::out_of_range.
  const Rational& coefficient(std::int64_t n, std::int64_t r, std::int64_t m) const;
  const Rational& coefficient(const HalfIntegralIndex& N) const { return coefficient(N.n, N.r, N.m); }
  void set(std::int64_t n, std::int64_t r, std::int64_t m, Rational value);

  /// Calls fn(N, A(N)) for every index in the support, in lexicographic order.
  void for_each(const std::function<void(const HalfIntegralIndex&, const Rational&)>& fn) const;
  std::size_t size() const { return coeffs_.size(); }

  SiegelExpansion truncated(std::int64_t new_trunc) const;

  friend bool operator==(const SiegelExpansion&, const SiegelExpansion&) = default;

 private:
  std::size_t slab(std::int64_t n, std::int64_t m) const { return static_cast<std::size_t>(n * (trace_trunc_ + 1) + m); }
  std::size_t locate(std::int64_t n, std::int64_t r, std::int64_t m) const;

  int weight_;
  std::int64_t trace_trunc_;
  std::vector<std::int64_t> offset_;  // per (n, m) slab, -1 when n + m > trace_trunc
  std::vector<std::int64_t> radius_;
  std::vector<Rational> coeffs_;
};

SiegelExpansion operator+(const SiegelExpansion& a, const SiegelExpansion& b);
SiegelExpansion operator-(const SiegelExpansion& a, const SiegelExpansion& b);
SiegelExpansion operator*(const Rational& s, const SiegelExpansion& F);

/// f(tau, tau~) = sum b(n, m) q^n q~^m, valid for n <= trunc_first, m <= trunc_second.
class TwoVarExpansion {
 public:
  TwoVarExpansion(int weight, std::int64_t trunc_first, std::int64_t trunc_second);

  int weight() const { return weight_; }
  std::int64_t trunc_first() const { return trunc_first_; }
  std::int64_t trunc_second() const { return trunc_second_; }

  /// Negative indices give 0; indices beyond a truncation throw.
  const Rational& coefficient(std::int64_t n, std::int64_t m) const;
  void set(std::int64_t n, std::int64_t m, Rational value);

  TwoVarExpansion truncated(std::int64_t trunc_first, std::int64_t trunc_second) const;

  friend bool operator==(const TwoVarExpansion&, const TwoVarExpansion&) = default;

 private:
  int weight_;
  std::int64_t trunc_first_, trunc_second_;
  std::vector<Rational> coeffs_;
};

TwoVarExpansion operator+(const TwoVarExpansion& a, const TwoVarExpansion& b);
TwoVarExpansion operator-(const TwoVarExpansion& a, const TwoVarExpansion& b);
TwoVarExpansion operator*(const Rational& s, const TwoVarExpansion& f);

/// g(tau) h(tau~).
TwoVarExpansion tensor(const elliptic::QExpansion& g, const elliptic::QExpansion& h);

/// Discriminant values the lift reads for a given trace truncation:
/// every D <= max_lift_discriminant(T) with D = 0, 3 (mod 4).
std::int64_t max_lift_discriminant(std::int64_t trace_trunc);

/// A(0,0,0) = c0, otherwise A(n,r,m) = sum_{d | content} d^(k-1) c(disc / d^2).
/// Throws std::invalid_argument if c lacks a discriminant that is read.
SiegelExpansion maass_lift(const std::map<std::int64_t, Rational>& c, const Rational& c0, int k,
                           std::int64_t trace_trunc);
/// Dense variant: c[D] for 0 <= D < c.size().
SiegelExpansion maass_lift(const std::vector<Rational>& c, const Rational& c0, int k, std::int64_t trace_trunc);

/// Holomorphic Siegel Eisenstein series of degree 2, constant term 1.
SiegelExpansion siegel_eisenstein2(int k, std::int64_t trace_trunc);

/// n -> A(n, 0, 0), trunc = trace_trunc.
elliptic::QExpansion phi_restrict(const SiegelExpansion& F);

/// b(n, m) = sum_r A(n, r, m), both truncations floor(trace_trunc / 2).
TwoVarExpansion diagonal_restrict(const SiegelExpansion& F);

}  // namespace bowtie::siegel2
