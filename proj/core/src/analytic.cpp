#include "bowtie/analytic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "bowtie/strong_symmetry.hpp"

namespace bowtie::analytic {

namespace {

template <class R>
using Cx = std::complex<R>;

template <class R>
Cx<R> widen(Complex z) {
  return {static_cast<R>(z.real()), static_cast<R>(z.imag())};
}

Complex narrow(const Cx<long double>& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
Complex narrow(const Cx<double>& z) { return z; }

// w^(-k) by repeated squaring, one division at the end
template <class R>
Cx<R> inv_pow(Cx<R> w, int k) {
  Cx<R> acc(1), base = w;
  for (unsigned e = static_cast<unsigned>(k); e != 0; e >>= 1) {
    if (e & 1u) acc *= base;
    base *= base;
  }
  return Cx<R>(1) / acc;
}

// j^(-k) |j|^(-2s)
template <class R>
Cx<R> chi(const Cx<R>& j, int k, const Cx<R>& s) {
  Cx<R> v = inv_pow(j, k);
  if (s != Cx<R>(0)) v *= std::exp(R(-2) * s * std::log(std::abs(j)));
  return v;
}

template <class R>
Cx<R> real_pow(R base, const Cx<R>& s) {
  if (s == Cx<R>(0)) return Cx<R>(1);
  return std::exp(s * std::log(base));
}

// Largest radius whose disk |c tau + d| <= R fits in the box |c|, |d| <= H.
double box_radius(Complex tau, std::int64_t H) {
  const double y = tau.imag(), x = std::abs(tau.real());
  return static_cast<double>(H) * std::min(y, 1.0 / (1.0 + x / y));
}

std::vector<CoprimePair> radial_pairs(Complex tau, std::int64_t H) {
  const double R = box_radius(tau, H);
  std::vector<CoprimePair> out;
  for (const auto& pr : coprime_pairs(H)) {
    if (std::abs(static_cast<double>(pr.c) * tau + static_cast<double>(pr.d)) <= R) out.push_back(pr);
  }
  return out;
}

bool extended(const parallel::Execution& exec) { return exec.precision == parallel::Precision::Extended; }

template <class R>
struct PointR {
  Cx<R> tau, z, tt, s;
  R delta;
  explicit PointR(const SiegelPoint& P)
      : tau(widen<R>(P.tau)), z(widen<R>(P.z)), tt(widen<R>(P.tau_t)), s(widen<R>(P.s)) {
    delta = tau.imag() * tt.imag() - z.imag() * z.imag();
  }
};

template <class R>
Cx<R> det_CZ_plus_D(const SymPairRep& g, const PointR<R>& P) {
  Cx<R> m[2][2];
  for (int i = 0; i < 2; ++i) {
    const R c0 = static_cast<R>(g.C(i, 0)), c1 = static_cast<R>(g.C(i, 1));
    m[i][0] = c0 * P.tau + c1 * P.z + static_cast<R>(g.D(i, 0));
    m[i][1] = c0 * P.z + c1 * P.tt + static_cast<R>(g.D(i, 1));
  }
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

template <class R>
Complex e1_impl(Complex tau, Complex s, int k, std::int64_t H, unsigned threads) {
  const auto pairs = radial_pairs(tau, H);
  const Cx<R> t = widen<R>(tau), sr = widen<R>(s);
  const auto sum = parallel::chunked_sum<R>(
      pairs.size(),
      [&](std::size_t i) {
        const Cx<R> w = static_cast<R>(pairs[i].c) * t + static_cast<R>(pairs[i].d);
        return chi(w, k, sr);
      },
      threads);
  return narrow(Cx<R>(sum * real_pow(static_cast<R>(tau.imag()), sr)));
}

template <class R>
Complex e2_impl(const std::vector<SymPairRep>& reps, const SiegelPoint& P, int k, unsigned threads) {
  const PointR<R> Q(P);
  const auto sum = parallel::chunked_sum<R>(
      reps.size(), [&](std::size_t i) { return chi(det_CZ_plus_D(reps[i], Q), k, Q.s); }, threads);
  return narrow(Cx<R>(sum * real_pow(Q.delta, Q.s)));
}

template <class R>
Complex a_impl(const SiegelPoint& P, int k, std::int64_t H, unsigned threads) {
  const auto p1 = radial_pairs(P.tau, H);
  const auto p2 = radial_pairs(P.tau_t, H);
  const PointR<R> Q(P);
  const Cx<R> z2 = Q.z * Q.z;
  const std::size_t n2 = p2.size();
  const auto sum = parallel::chunked_sum<R>(
      p1.size() * n2,
      [&](std::size_t i) {
        const auto& g = p1[i / n2];
        const auto& h = p2[i % n2];
        const R c1 = static_cast<R>(g.c), c2 = static_cast<R>(h.c);
        const Cx<R> j = (c1 * Q.tau + static_cast<R>(g.d)) * (c2 * Q.tt + static_cast<R>(h.d)) - c1 * c2 * z2;
        return chi(j, k, Q.s);
      },
      threads);
  return narrow(Cx<R>(sum * real_pow(Q.delta, Q.s)));
}

// x d + y c = 1 for coprime (c, d)
void unit_solution(std::int64_t c, std::int64_t d, std::int64_t& a, std::int64_t& b) {
  std::int64_t r0 = d, r1 = c, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (r0 < 0) {
    x0 = -x0;
    y0 = -y0;
  }
  a = x0;   // a d - b c = 1
  b = -y0;
}

template <class R>
struct BItem {
  Cx<R> phi0;    // phi(g_lower Z) for the centred translate
  Cx<R> weight;  // chi(j)
};

template <class R>
Complex b_impl(const SiegelPoint& P, int k, const TruncationPolicy& policy, unsigned threads,
               std::optional<std::uint64_t> base_seed) {
  const auto pairs = radial_pairs(P.tau_t, policy.pair_height);
  const PointR<R> Q(P);
  std::optional<std::mt19937_64> rng;
  if (base_seed) rng.emplace(*base_seed);

  std::vector<BItem<R>> items;
  items.reserve(2 * pairs.size());
  for (const auto& pr : pairs) {
    std::int64_t a0 = 0, b0 = 0;
    unit_solution(pr.c, pr.d, a0, b0);
    if (rng) {
      const auto u = static_cast<std::int64_t>((*rng)() % 101) - 50;
      a0 += u * pr.c;
      b0 += u * pr.d;
    }
    for (int sign : {1, -1}) {
      // g and -g act differently on H_2 (z -> -z), so both are summed
      const R a = static_cast<R>(sign * a0), b = static_cast<R>(sign * b0);
      const R c = static_cast<R>(sign * pr.c), d = static_cast<R>(sign * pr.d);
      const Cx<R> j = c * Q.tt + d;
      const Cx<R> tau = Q.tau - c * Q.z * Q.z / j;
      const Cx<R> z = Q.z / j;
      const Cx<R> tt = (a * Q.tt + b) / j;
      Cx<R> phi = tau + R(2) * z + tt;
      phi -= std::round(phi.real());
      items.push_back({phi, chi(j, k, Q.s)});
    }
  }

  const std::int64_t S = policy.shift_bound;
  const auto width = static_cast<std::size_t>(2 * S + 1);
  const auto sum = parallel::chunked_sum<R>(
      items.size() * width,
      [&](std::size_t i) {
        const auto& it = items[i / width];
        const Cx<R> ph = it.phi0 + static_cast<R>(static_cast<std::int64_t>(i % width) - S);
        return chi(ph, k, Q.s) * it.weight;
      },
      threads);
  return narrow(Cx<R>(sum * real_pow(Q.delta, Q.s)));
}

}  // namespace

SiegelPoint SiegelPoint::make(Complex tau, Complex z, Complex tau_t, Complex s) {
  SiegelPoint P{tau, z, tau_t, s};
  if (!(tau.imag() > 0) || !(P.delta() > 0)) throw DomainError("SiegelPoint: Im Z is not positive definite");
  return P;
}

double SiegelPoint::min_eigen_y() const {
  const double a = tau.imag(), b = z.imag(), c = tau_t.imag();
  const double mean = 0.5 * (a + c);
  const double rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  return mean - rad;
}

void require_domain(const SiegelPoint& P, int k) {
  if (!(P.tau.imag() > 0) || !(P.delta() > 0)) throw DomainError("Im Z is not positive definite");
  if (!(2.0 * P.s.real() + k > 3.0)) {
    throw DomainError("s outside the convergence domain: need 2 Re(s) + k > 3 (k = " + std::to_string(k) + ")");
  }
}

void TruncationPolicy::validate() const {
  if (height < 1 || shift_bound < 1 || m_max < 0 || pair_height < 1) {
    throw std::invalid_argument("TruncationPolicy: bounds must be >= 1 (m_max >= 0)");
  }
  if (!(y_floor > 0)) throw std::invalid_argument("TruncationPolicy: y_floor must be positive");
}

TruncationPolicy TruncationPolicy::halved() const {
  TruncationPolicy h = *this;
  h.height = std::max<std::int64_t>(1, height / 2);
  h.pair_height = std::max<std::int64_t>(1, pair_height / 2);
  return h;
}

Complex eval_E1(Complex tau, Complex s, int k, const TruncationPolicy& policy, const parallel::Execution& exec) {
  policy.validate();
  if (!(tau.imag() > 0)) throw DomainError("eval_E1: Im(tau) must be positive");
  if (!(2.0 * s.real() + k > 2.0)) throw DomainError("eval_E1: need 2 Re(s) + k > 2");
  const unsigned threads = parallel::thread_count(exec);
  return extended(exec) ? e1_impl<long double>(tau, s, k, policy.height, threads)
                        : e1_impl<double>(tau, s, k, policy.height, threads);
}

Complex eval_E2(const SiegelPoint& P, int k, const TruncationPolicy& policy, const parallel::Execution& exec) {
  policy.validate();
  require_domain(P, k);
  const auto reps = sym_pair_reps(policy.height);
  const unsigned threads = parallel::thread_count(exec);
  return extended(exec) ? e2_impl<long double>(*reps, P, k, threads) : e2_impl<double>(*reps, P, k, threads);
}

Complex eval_E2_nondiagonal(const SiegelPoint& P, int k, const TruncationPolicy& policy,
                            const parallel::Execution& exec) {
  policy.validate();
  require_domain(P, k);
  const auto all = sym_pair_reps(policy.height);
  std::vector<SymPairRep> reps;
  std::copy_if(all->begin(), all->end(), std::back_inserter(reps), [](const auto& g) { return !is_diagonal_type(g); });
  const unsigned threads = parallel::thread_count(exec);
  return extended(exec) ? e2_impl<long double>(reps, P, k, threads) : e2_impl<double>(reps, P, k, threads);
}

Complex eval_A(const SiegelPoint& P, int k, const TruncationPolicy& policy, const parallel::Execution& exec) {
  policy.validate();
  require_domain(P, k);
  const unsigned threads = parallel::thread_count(exec);
  return extended(exec) ? a_impl<long double>(P, k, policy.pair_height, threads)
                        : a_impl<double>(P, k, policy.pair_height, threads);
}

Complex eval_B(const SiegelPoint& P, int k, const TruncationPolicy& policy, const parallel::Execution& exec,
               std::optional<std::uint64_t> base_seed) {
  policy.validate();
  require_domain(P, k);
  const unsigned threads = parallel::thread_count(exec);
  return extended(exec) ? b_impl<long double>(P, k, policy, threads, base_seed)
                        : b_impl<double>(P, k, policy, threads, base_seed);
}

Complex eval_siegel_expansion(const siegel2::SiegelExpansion& F, const SiegelPoint& P) {
  const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
  parallel::ComplexSum<double> acc;
  F.for_each([&](const siegel2::HalfIntegralIndex& N, const Rational& a) {
    if (a.is_zero()) return;
    const Complex phase = static_cast<double>(N.n) * P.tau + static_cast<double>(N.r) * P.z +
                          static_cast<double>(N.m) * P.tau_t;
    acc.add(a.to_double() * std::exp(two_pi_i * phase));
  });
  return acc.value();
}

Complex eval_qexpansion(const elliptic::QExpansion& f, Complex tau) {
  const Complex q = std::exp(Complex(0.0, 2.0 * std::numbers::pi) * tau);
  parallel::ComplexSum<double> acc;
  Complex qn = 1.0;
  for (std::int64_t n = 0; n <= f.trunc(); ++n) {
    acc.add(f.coefficient(n).to_double() * qn);
    qn *= q;
  }
  return acc.value();
}

Action act(const RealMatrix2& g, const SiegelPoint& P, Bullet bullet) {
  const bool upper = bullet == Bullet::Upper;
  const Complex x = upper ? P.tau : P.tau_t;  // the acted-on corner
  const Complex other = upper ? P.tau_t : P.tau;
  const Complex j = g.c * x + g.d;
  const Complex x2 = (g.a * x + g.b) / j;
  const Complex z2 = P.z / j;
  const Complex other2 = other - g.c * P.z * P.z / j;
  Action out{SiegelPoint{upper ? x2 : other2, z2, upper ? other2 : x2, P.s}, j};
  return out;
}

Action act(const Sp4& g, const SiegelPoint& P) {
  using M2 = std::array<std::array<Complex, 2>, 2>;
  const M2 Z{{{P.tau, P.z}, {P.z, P.tau_t}}};
  auto block = [&](int r0, int c0) {
    M2 out{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = static_cast<double>(g.at(r0 + i, c0 + j));
    return out;
  };
  auto mul = [](const M2& x, const M2& y) {
    M2 out{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return out;
  };
  auto add = [](M2 x, const M2& y) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) x[i][j] += y[i][j];
    return x;
  };
  const M2 num = add(mul(block(0, 0), Z), block(0, 2));
  const M2 den = add(mul(block(2, 0), Z), block(2, 2));
  const Complex det = den[0][0] * den[1][1] - den[0][1] * den[1][0];
  const M2 inv{{{den[1][1] / det, -den[0][1] / det}, {-den[1][0] / det, den[0][0] / det}}};
  const M2 W = mul(num, inv);
  // W is symmetric up to rounding; average the off-diagonal entries
  return {SiegelPoint{W[0][0], 0.5 * (W[0][1] + W[1][0]), W[1][1], P.s}, det};
}

std::vector<RealMatrix2> tilde_hecke_reps(std::int64_t p) {
  std::vector<RealMatrix2> out;
  const double r = std::sqrt(static_cast<double>(p));
  for (const auto& g : elliptic::coset_reps_M(p)) out.push_back({g.a / r, g.b / r, g.c / r, g.d / r});
  return out;
}

Complex hecke_bullet(const SiegelFunction& F, int k, std::int64_t p, Bullet bullet, const SiegelPoint& P) {
  Complex acc = 0.0;
  for (const auto& g : tilde_hecke_reps(p)) {
    const auto [W, j] = act(g, P, bullet);
    acc += inv_pow<double>(j, k) * F(W);
  }
  return acc;
}

Complex hecke_degree1(const std::function<Complex(Complex)>& f, int k, std::int64_t p, Complex tau) {
  Complex acc = 0.0;
  for (const auto& g : tilde_hecke_reps(p)) {
    const Complex j = g.c * tau + g.d;
    acc += inv_pow<double>(j, k) * f((g.a * tau + g.b) / j);
  }
  return acc;
}

EigenRatioReport eigen_ratio_A(int k, std::int64_t p, const std::vector<SiegelPoint>& points, Complex tau1,
                               const TruncationPolicy& policy, const parallel::Execution& exec) {
  if (points.empty()) throw std::invalid_argument("eigen_ratio_A: no sample points");
  EigenRatioReport rep;
  const SiegelFunction A = [&](const SiegelPoint& W) { return eval_A(W, k, policy, exec); };
  for (const auto& P : points) rep.ratios.push_back(hecke_bullet(A, k, p, Bullet::Upper, P) / A(P));

  TruncationPolicy p1 = policy;
  p1.height = policy.pair_height;
  const Complex s = points.front().s;
  const auto E = [&](Complex t) { return eval_E1(t, s, k, p1, exec); };
  rep.degree1_ratio = hecke_degree1(E, k, p, tau1) / E(tau1);

  for (const auto& r : rep.ratios) {
    rep.spread = std::max(rep.spread, std::abs(r - rep.ratios.front()) / std::abs(rep.ratios.front()));
    rep.degree1_deviation =
        std::max(rep.degree1_deviation, std::abs(r - rep.degree1_ratio) / std::abs(rep.degree1_ratio));
  }
  return rep;
}

BowtieFunctional bowtie_functional(const SiegelFunction& F, int k, std::int64_t p, const SiegelPoint& P,
                                   double y_floor) {
  if (p != 1 && !strong_symmetry::is_prime(p)) {
    throw std::invalid_argument("bowtie_functional: p = " + std::to_string(p) + " is neither 1 nor prime");
  }
  const double pd = static_cast<double>(p);
  auto point = [&](Complex tau, Complex z, Complex tt) {
    const auto W = SiegelPoint::make(tau, z, tt, P.s);
    if (W.min_eigen_y() < y_floor) {
      throw DomainError("bowtie_functional: scaled point has Im eigenvalue " + std::to_string(W.min_eigen_y()) +
                        " below the floor " + std::to_string(y_floor));
    }
    return W;
  };
  const double pk = std::pow(pd, k - 1);

  Complex lhs = pk * F(point(pd * P.tau, pd * P.z, P.tau_t));
  Complex rhs = pk * F(point(P.tau, pd * P.z, pd * P.tau_t));
  Complex lsum = 0.0, rsum = 0.0;
  for (std::int64_t l = 0; l < p; ++l) {
    const double ld = static_cast<double>(l);
    lsum += F(point((P.tau + ld) / pd, P.z, P.tau_t));
    rsum += F(point(P.tau, P.z, (P.tau_t + ld) / pd));
  }
  lhs += lsum / pd;
  rhs += rsum / pd;

  BowtieFunctional out;
  out.value = lhs - rhs;
  out.magnitude = std::abs(F(P));
  out.relative = std::abs(out.value) / out.magnitude;
  return out;
}

namespace {

struct KlingenSeries {
  elliptic::QExpansion E, D;
};

const KlingenSeries& klingen_series() {
  static const KlingenSeries series{elliptic::eisenstein_qexp(12, 120), elliptic::delta_qexp(120)};
  return series;
}

}  // namespace

Complex klingen_control(const SiegelPoint& P, double alpha) {
  const auto& [E, D] = klingen_series();
  const Complex e1 = eval_qexpansion(E, P.tau), e2 = eval_qexpansion(E, P.tau_t);
  const Complex d1 = eval_qexpansion(D, P.tau), d2 = eval_qexpansion(D, P.tau_t);
  return e1 * d2 + e2 * d1 + alpha * d1 * d2;
}

NumericBowtieReport bowtie_residual_numeric(int k, const SiegelPoint& P, std::int64_t p,
                                            const TruncationPolicy& policy, const parallel::Execution& exec) {
  policy.validate();
  require_domain(P, k);
  NumericBowtieReport rep;
  rep.height = policy.height;
  const auto half = policy.halved();
  rep.eisenstein = bowtie_functional([&](const SiegelPoint& W) { return eval_E2(W, k, policy, exec); }, k, p, P,
                                     policy.y_floor);
  rep.eisenstein_half_height =
      bowtie_functional([&](const SiegelPoint& W) { return eval_E2(W, k, half, exec); }, k, p, P, policy.y_floor)
          .relative;
  rep.control = bowtie_functional([](const SiegelPoint& W) { return klingen_control(W); }, 12, p, P, policy.y_floor);
  rep.separation = rep.control.relative / rep.eisenstein.relative;
  return rep;
}

std::string DecompositionVariant::name() const {
  return std::string(bullet == Bullet::Upper ? "upper" : "lower") + (weighted ? "-weighted" : "-pure");
}

DecompositionReport decomposition_residual(int k, const SiegelPoint& P, const TruncationPolicy& policy,
                                           const parallel::Execution& exec) {
  policy.validate();
  require_domain(P, k);
  DecompositionReport rep;
  rep.height = policy.height;
  rep.m_max = policy.m_max;
  rep.E = eval_E2(P, k, policy, exec);
  rep.difference = eval_E2_nondiagonal(P, k, policy, exec);

  for (Bullet bullet : {Bullet::Upper, Bullet::Lower}) {
    Complex pure = 0.0, weighted = 0.0;
    for (std::int64_t m = 1; m <= policy.m_max; ++m) {
      const Complex mfac = std::exp(-(2.0 * P.s + static_cast<double>(k)) * std::log(static_cast<double>(m)));
      for (const auto& g : diag_double_coset_reps(m)) {
        const double sc = static_cast<double>(g.scale);
        const RealMatrix2 gr{g.M.a / sc, g.M.b / sc, g.M.c / sc, g.M.d / sc};
        const auto [W, j] = act(gr, P, bullet);
        const Complex term = inv_pow<double>(j, k) * eval_B(W, k, policy, exec) * mfac;
        pure += term;
        weighted += term * std::exp(-2.0 * P.s * std::log(std::abs(j)));
      }
    }
    for (bool w : {false, true}) {
      DecompositionVariant v;
      v.bullet = bullet;
      v.weighted = w;
      v.b_sum = w ? weighted : pure;
      v.residual = std::abs(rep.difference - v.b_sum) / std::abs(rep.E);
      v.residual_rel_difference = std::abs(rep.difference - v.b_sum) / std::abs(rep.difference);
      rep.variants.push_back(v);
    }
  }
  for (std::size_t i = 1; i < rep.variants.size(); ++i)
    if (rep.variants[i].residual < rep.variants[rep.best].residual) rep.best = i;
  return rep;
}

}  // namespace bowtie::analytic
