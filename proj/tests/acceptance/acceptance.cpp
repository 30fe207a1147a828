// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bowtie/analytic.hpp"
#include "bowtie/elliptic.hpp"
#include "bowtie/exact.hpp"
#include "bowtie/siegel2.hpp"
#include "bowtie/strong_symmetry.hpp"

using namespace bowtie;
using analytic::Complex;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

// tau = 1.6i, z = 0.1 + 0.1i, tau~ = 1.5i
analytic::SiegelPoint reference_point(Complex s) {
  return analytic::SiegelPoint::make({0.0, 1.6}, {0.1, 0.1}, {0.0, 1.5}, s);
}

Outcome exact_eisenstein() {
  const std::vector<std::int64_t> primes{2, 3, 5, 7};
  const std::int64_t window = 24;
  std::int64_t checked = 0;
  std::ostringstream bad;
  for (int k = 4; k <= 12; k += 2) {
    const auto F = siegel2::siegel_eisenstein2(k, window * 7);
    for (const auto& r : strong_symmetry::check_strong_symmetry(F, primes, window)) {
      checked += r.indices_checked;
      if (!r.pass || r.window != window) bad << " k=" << k << ",p=" << r.prime << ",window=" << r.window;
    }
  }
  std::ostringstream d;
  d << "k=4..12, p=2,3,5,7, window n+m<=" << window << ", " << checked << " indices";
  if (!bad.str().empty()) d << "; violations at" << bad.str();
  return {bad.str().empty(), d.str()};
}

Outcome random_lifts() {
  const std::int64_t window = 12;
  const std::int64_t trace = window * 3;
  const std::int64_t dmax = siegel2::max_lift_discriminant(trace);
  std::mt19937_64 rng(20240601);
  int failures = 0;
  std::int64_t checked = 0;
  for (int i = 0; i < 100; ++i) {
    const int k = 4 + 2 * (i % 5);
    std::vector<Rational> c(static_cast<std::size_t>(dmax + 1));
    for (std::int64_t D = 0; D <= dmax; ++D)
      if (D % 4 == 0 || D % 4 == 3)
        c[D] = Rational(static_cast<long>(rng() % 2000001) - 1000000, 1 + static_cast<long>(rng() % 97));
    const auto F = siegel2::maass_lift(c, Rational(static_cast<long>(rng() % 1001) - 500), k, trace);
    for (const auto& r : strong_symmetry::check_strong_symmetry(F, {2, 3}, window)) {
      checked += r.indices_checked;
      failures += !r.pass;
    }
  }
  std::ostringstream d;
  d << "100 seeded lifts, p=2,3, window n+m<=" << window << ", " << checked << " indices, " << failures
    << " failing reports";
  return {failures == 0, d.str()};
}

Outcome klingen() {
  std::mt19937_64 rng(7);
  const Rational random_alpha(static_cast<long>(rng() % 2001) - 1000, 1 + static_cast<long>(rng() % 50));
  const std::int64_t trunc = 10;
  std::vector<siegel2::TwoVarExpansion> diffs;
  for (const auto& alpha : {Rational(0), Rational(1), random_alpha})
    diffs.push_back(strong_symmetry::klingen_difference(alpha, 2, trunc));
  bool nonzero = false, diagonal_zero = true;
  for (std::int64_t n = 0; n <= trunc; ++n)
    for (std::int64_t m = 0; m <= trunc; ++m) nonzero = nonzero || !diffs[0].coefficient(n, m).is_zero();
  for (std::int64_t n = 0; n <= trunc; ++n) diagonal_zero = diagonal_zero && diffs[0].coefficient(n, n).is_zero();
  const bool independent = diffs[0] == diffs[1] && diffs[0] == diffs[2];
  const Rational c01 = diffs[0].coefficient(0, 1);
  std::ostringstream d;
  d << "(0,1) coefficient " << c01.to_string() << ", nonzero=" << nonzero << ", diagonal zero=" << diagonal_zero
    << ", alpha-independent over {0, 1, " << random_alpha.to_string() << "}=" << independent;
  return {nonzero && diagonal_zero && independent && c01 == Rational(2073), d.str()};
}

Outcome normalization() {
  analytic::TruncationPolicy p1;
  p1.height = 200;
  const Complex tau(0.0, 1.3);
  const double e1 =
      rel(analytic::eval_E1(tau, 0.0, 4, p1), analytic::eval_qexpansion(elliptic::eisenstein_qexp(4, 80), tau));

  const auto P = reference_point(0.0);
  const Complex oracle = analytic::eval_siegel_expansion(siegel2::siegel_eisenstein2(8, 16), P);
  std::vector<double> r;
  for (std::int64_t H : {3, 6, 12}) {
    analytic::TruncationPolicy pol;
    pol.height = H;
    r.push_back(rel(analytic::eval_E2(P, 8, pol), oracle));
  }
  const bool pass = e1 <= 1e-6 && r[2] <= 1e-3 && r[1] < r[0] && r[2] < r[1];
  std::ostringstream d;
  d << "E1 rel err " << e1 << " (height 200); E2 rel err " << r[0] << " / " << r[1] << " / " << r[2]
    << " at height 3 / 6 / 12";
  return {pass, d.str()};
}

Outcome numeric_bowtie() {
  analytic::TruncationPolicy pol;
  pol.height = 8;
  const auto r = analytic::bowtie_residual_numeric(8, reference_point(0.75), 2, pol);
  std::ostringstream d;
  d << "k=8, s=0.75, p=2, height " << r.height << ": residual " << r.eisenstein.relative << " (height "
    << pol.halved().height << ": " << r.eisenstein_half_height << "), control " << r.control.relative
    << ", separation " << r.separation;
  return {r.eisenstein.relative <= 1e-2 && r.separation >= 100.0, d.str()};
}

Outcome eigen_ratio() {
  const Complex s(0.75, 0.0);
  const std::vector<analytic::SiegelPoint> points{
      reference_point(s), analytic::SiegelPoint::make({0.3, 1.2}, {0.05, 0.2}, {-0.2, 1.4}, s),
      analytic::SiegelPoint::make({0.0, 2.0}, {0.0, 0.3}, {0.4, 1.3}, s)};
  const auto r = analytic::eigen_ratio_A(8, 2, points, {0.2, 1.1}, analytic::TruncationPolicy{});
  std::ostringstream d;
  d << "k=8, p=2, s=0.75: ratio " << r.ratios.front().real() << (r.ratios.front().imag() < 0 ? "" : "+")
    << r.ratios.front().imag() << "i, spread " << r.spread << ", degree-1 deviation " << r.degree1_deviation;
  return {r.spread <= 1e-2 && r.degree1_deviation <= 1e-2, d.str()};
}

Outcome decomposition() {
  analytic::TruncationPolicy pol;
  pol.height = 6;
  pol.m_max = 3;
  const auto P = reference_point(0.75);
  const auto lo = analytic::decomposition_residual(8, P, pol);
  auto doubled = pol;
  doubled.height = 12;
  doubled.pair_height = 2 * pol.pair_height;
  const auto hi = analytic::decomposition_residual(8, P, doubled);
  std::string passing;
  double passing_worst = 1.0;
  std::ostringstream d;
  d << "k=8, s=0.75, m_max=3:";
  for (std::size_t i = 0; i < lo.variants.size(); ++i) {
    const auto& a = lo.variants[i];
    const auto& b = hi.variants[i];
    d << " " << a.name() << " " << a.residual << "/" << b.residual;
    const double worst = std::max(a.residual, b.residual);
    if (worst <= 5e-2 && worst < passing_worst) {
      passing = a.name();
      passing_worst = worst;
    }
  }
  d << " (height 6/12); best " << lo.variants[lo.best].name() << "/" << hi.variants[hi.best].name();
  d << "; recorded variant " << (passing.empty() ? "none" : passing);
  return {!passing.empty(), d.str()};
}

Outcome hecke_algebra() {
  using namespace elliptic;
  std::ostringstream bad;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19})
    if (coset_reps_M(p).size() != static_cast<std::size_t>(p + 1)) bad << " count(M(" << p << "))";
  if (coset_reps_M(4).size() != 7) bad << " count(M(4))";

  auto T = [](std::int64_t n) { return HeckeElement::from_cosets(coset_reps_M(n)); };
  for (std::int64_t a = 1; a <= 6; ++a)
    for (std::int64_t b = a + 1; b <= 6; ++b)
      if (!(hecke_compose(T(a), T(b)) == hecke_compose(T(b), T(a)))) bad << " commute(" << a << "," << b << ")";
  if (!(hecke_compose(T(2), T(3)) == T(6))) bad << " T2T3";

  int eigen_checks = 0;
  for (int k = 4; k <= 12; k += 2) {
    const auto E = eisenstein_qexp(k, 400);
    for (std::int64_t n = 1; n <= 20; ++n) {
      const auto lhs = hecke_Tn(E, n);
      if (!(lhs == Rational(exact::divisor_sigma(n, k - 1)) * E.truncated(lhs.trunc()))) bad << " T" << n << "E" << k;
      ++eigen_checks;
    }
  }
  std::ostringstream d;
  d << "coset counts p+1 (p<=19) and 7 for M(4), commutativity for n<=6, T2T3=T6, " << eigen_checks
    << " eigenvalue checks";
  if (!bad.str().empty()) d << "; failed:" << bad.str();
  return {bad.str().empty(), d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, exact_eisenstein}, {2, random_lifts}, {3, klingen},       {4, normalization},
      {5, numeric_bowtie},   {6, eigen_ratio},  {7, decomposition}, {8, hecke_algebra}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
