#include "bowtie/strong_symmetry.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bowtie::strong_symmetry {

using siegel2::HalfIntegralIndex;
using siegel2::SiegelExpansion;
using siegel2::TwoVarExpansion;

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

void require_prime(std::int64_t p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": p = " + std::to_string(p) + " is not prime");
}

// A at an index that may have non-integral entries after dividing by p
const Rational& divided(const SiegelExpansion& F, std::int64_t n, std::int64_t r, std::int64_t m, std::int64_t p,
                        bool divide_n, bool divide_r, bool divide_m) {
  static const Rational zero;
  if ((divide_n && n % p) || (divide_r && r % p) || (divide_m && m % p)) return zero;
  return F.coefficient(divide_n ? n / p : n, divide_r ? r / p : r, divide_m ? m / p : m);
}

}  // namespace

BowtieTerms bowtie_terms(const SiegelExpansion& F, std::int64_t p, const HalfIntegralIndex& N) {
  const auto [n, r, m] = N;
  const Rational pk = Rational(ipow(p, static_cast<unsigned long>(F.weight() - 1)));
  BowtieTerms t;
  t.lhs = pk * divided(F, n, r, m, p, true, true, false) + F.coefficient(p * n, r, m);
  t.rhs = pk * divided(F, n, r, m, p, false, true, true) + F.coefficient(n, r, p * m);
  return t;
}

SiegelExpansion bowtie_apply(const SiegelExpansion& F, std::int64_t p) {
  require_prime(p, "bowtie_apply");
  if (F.trace_trunc() < p) {
    throw std::invalid_argument("bowtie_apply: trace truncation " + std::to_string(F.trace_trunc()) +
                                " is below p = " + std::to_string(p));
  }
  SiegelExpansion out(F.weight(), F.trace_trunc() / p);
  for (std::int64_t n = 0; n <= out.trace_trunc(); ++n) {
    for (std::int64_t m = 0; n + m <= out.trace_trunc(); ++m) {
      for (std::int64_t r = 0; r * r <= 4 * n * m; ++r) {
        auto t = bowtie_terms(F, p, {n, r, m});
        Rational b = t.lhs - t.rhs;
        if (r != 0) out.set(n, -r, m, b);
        out.set(n, r, m, std::move(b));
      }
    }
  }
  return out;
}

std::vector<BowtieReport> check_strong_symmetry(const SiegelExpansion& F, const std::vector<std::int64_t>& primes,
                                                std::optional<std::int64_t> max_window) {
  std::vector<BowtieReport> reports;
  for (auto p : primes) {
    require_prime(p, "check_strong_symmetry");
    if (F.trace_trunc() < p) {
      throw std::invalid_argument("check_strong_symmetry: prime " + std::to_string(p) + " exceeds trace truncation");
    }
    BowtieReport rep;
    rep.weight = F.weight();
    rep.prime = p;
    rep.window = F.trace_trunc() / p;
    if (max_window) rep.window = std::min(rep.window, *max_window);
    for (std::int64_t n = 0; n <= rep.window; ++n) {
      for (std::int64_t m = 0; n + m <= rep.window; ++m) {
        const std::int64_t bound = 4 * p * n * m;
        std::int64_t R = 0;
        while ((R + 1) * (R + 1) <= bound) ++R;
        for (std::int64_t r = -R; r <= R; ++r) {
          auto t = bowtie_terms(F, p, {n, r, m});
          ++rep.indices_checked;
          if (t.lhs != t.rhs) rep.violations.push_back({{n, r, m}, std::move(t.lhs), std::move(t.rhs)});
        }
      }
    }
    std::sort(rep.violations.begin(), rep.violations.end(),
              [](const Violation& a, const Violation& b) { return a.index < b.index; });
    rep.pass = rep.violations.empty();
    reports.push_back(std::move(rep));
  }
  return reports;
}

TwoVarExpansion two_var_hecke(const TwoVarExpansion& f, std::int64_t p, Slot slot) {
  require_prime(p, "two_var_hecke");
  const bool first = slot == Slot::First;
  const std::int64_t t = first ? f.trunc_first() : f.trunc_second();
  if (t < p) throw std::invalid_argument("two_var_hecke: slot truncation below p");
  const Rational pk = Rational(ipow(p, static_cast<unsigned long>(f.weight() - 1)));
  TwoVarExpansion out(f.weight(), first ? t / p : f.trunc_first(), first ? f.trunc_second() : t / p);
  for (std::int64_t n = 0; n <= out.trunc_first(); ++n) {
    for (std::int64_t m = 0; m <= out.trunc_second(); ++m) {
      const std::int64_t slot_index = first ? n : m;
      Rational b = first ? f.coefficient(p * n, m) : f.coefficient(n, p * m);
      if (slot_index % p == 0) b += pk * (first ? f.coefficient(n / p, m) : f.coefficient(n, m / p));
      out.set(n, m, std::move(b));
    }
  }
  return out;
}

TwoVarExpansion klingen_restriction(const Rational& alpha, std::int64_t trunc) {
  const auto E = elliptic::eisenstein_qexp(12, trunc);
  const auto D = elliptic::delta_qexp(trunc);
  return siegel2::tensor(E, D) + siegel2::tensor(D, E) + alpha * siegel2::tensor(D, D);
}

TwoVarExpansion klingen_difference(const Rational& alpha, std::int64_t p, std::int64_t trunc) {
  if (trunc < p) throw std::invalid_argument("klingen_difference: trunc must be at least p");
  const auto f = klingen_restriction(alpha, p * trunc);
  const auto d = two_var_hecke(f, p, Slot::First) - two_var_hecke(f, p, Slot::Second);
  return d.truncated(trunc, trunc);
}

}  // namespace bowtie::strong_symmetry
