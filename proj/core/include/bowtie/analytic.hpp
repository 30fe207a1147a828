#pragma once

// Numerical evaluation of real-analytic Eisenstein series in degree 1 and 2,
// the two subseries A_k and B_k, and the numeric identity checks built on
// them. Everything is a truncated coset sum in a fixed order, summed through
// bowtie::parallel so results do not depend on the thread count.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bowtie/elliptic.hpp"
#include "bowtie/parallel.hpp"
#include "bowtie/siegel2.hpp"

namespace bowtie::analytic {

using Complex = std::complex<double>;

/// A point or parameter outside the region where a series is evaluated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------- cosets

struct CoprimePair {
  std::int64_t c = 0, d = 1;
  friend bool operator==(const CoprimePair&, const CoprimePair&) = default;
};

/// Coprime (c, d) with |c|, |d| <= height, one per sign class (c > 0, or
/// c = 0 and d = 1), sorted by (|c|, |d|, c, d).
std::vector<CoprimePair> coprime_pairs(std::int64_t height);

/// Rows (C_i0, C_i1, D_i0, D_i1) of the 2x4 block (C | D).
struct SymPairRep {
  std::array<std::int32_t, 8> e{};

  std::int64_t C(int i, int j) const { return e[4 * i + j]; }
  std::int64_t D(int i, int j) const { return e[4 * i + 2 + j]; }
  /// 2x2 minor of columns (a, b) of the block.
  std::int64_t minor(int a, int b) const { return std::int64_t{e[a]} * e[4 + b] - std::int64_t{e[b]} * e[4 + a]; }

  friend auto operator<=>(const SymPairRep&, const SymPairRep&) = default;
};

/// Row Hermite normal form of a rank-2 block under left GL_2(Z): first pivot
/// positive, second row zero up to its positive pivot, entry above the second
/// pivot reduced into [0, pivot). Throws std::invalid_argument on rank < 2.
SymPairRep canonical_sym_pair(const std::array<std::int64_t, 8>& block);

bool is_symmetric_pair(const SymPairRep& rep);
bool is_primitive(const SymPairRep& rep);

/// C and D simultaneously diagonalizable by the left action: the coset comes
/// from a pair of degree-1 cosets (the A_k part of the degree-2 sum).
bool is_diagonal_type(const SymPairRep& rep);

/// Canonical representatives of Gamma_{2,0} \ Sp_4(Z) whose canonical form has
/// all entries bounded by height in absolute value. Sorted; cached per height.
std::shared_ptr<const std::vector<SymPairRep>> sym_pair_reps(std::int64_t height);

/// 4x4 integral matrix (A B; C D), row-major.
struct Sp4 {
  std::array<std::int64_t, 16> e{};
  std::int64_t at(int i, int j) const { return e[4 * i + j]; }
};

/// Some (A B; C D) in Sp_4(Z) with the given bottom block.
Sp4 complete_to_symplectic(const SymPairRep& rep);
bool is_symplectic(const Sp4& g);

/// (1/scale) * M with M integral, primitive, upper triangular of determinant scale^2.
struct ScaledMatrix {
  elliptic::IntMatrix2 M;
  std::int64_t scale = 1;
};

/// Representatives of Gamma \ Gamma diag(m, 1/m) Gamma.
std::vector<ScaledMatrix> diag_double_coset_reps(std::int64_t m);

// ---------------------------------------------------------------- points

struct SiegelPoint {
  Complex tau, z, tau_t;
  Complex s{0.0, 0.0};

  /// Throws DomainError unless Im Z is positive definite.
  static SiegelPoint make(Complex tau, Complex z, Complex tau_t, Complex s = {});

  double delta() const { return tau.imag() * tau_t.imag() - z.imag() * z.imag(); }
  double min_eigen_y() const;
};

/// 2 Re(s) + k > 3 and Im Z > 0, else DomainError.
void require_domain(const SiegelPoint& P, int k);

struct TruncationPolicy {
  std::int64_t height = 6;        // degree-2 cosets; the (c, d) box for eval_E1
  std::int64_t shift_bound = 25;  // translations t in eval_B, centred per (c, d)
  std::int64_t m_max = 3;         // decomposition sum
  std::int64_t pair_height = 24;  // degree-1 pairs inside A_k and B_k
  double y_floor = 0.25;          // smallest Im eigenvalue accepted after scaling

  void validate() const;
  TruncationPolicy halved() const;
};

// ---------------------------------------------------------------- series

Complex eval_E1(Complex tau, Complex s, int k, const TruncationPolicy& policy, const parallel::Execution& exec = {});
Complex eval_E2(const SiegelPoint& P, int k, const TruncationPolicy& policy, const parallel::Execution& exec = {});
/// Part of the truncated eval_E2 sum over cosets that are not of diagonal type.
Complex eval_E2_nondiagonal(const SiegelPoint& P, int k, const TruncationPolicy& policy,
                            const parallel::Execution& exec = {});
Complex eval_A(const SiegelPoint& P, int k, const TruncationPolicy& policy, const parallel::Execution& exec = {});
/// base_seed, when set, replaces each base solution (a0, b0) by (a0 + uc, b0 + ud)
/// for a pseudo-random u; the value must not change beyond rounding.
Complex eval_B(const SiegelPoint& P, int k, const TruncationPolicy& policy, const parallel::Execution& exec = {},
               std::optional<std::uint64_t> base_seed = std::nullopt);

/// sum A(N) exp(2 pi i (n tau + r z + m tau~)) over all stored indices.
Complex eval_siegel_expansion(const siegel2::SiegelExpansion& F, const SiegelPoint& P);
Complex eval_qexpansion(const elliptic::QExpansion& f, Complex tau);

// ---------------------------------------------------------------- actions

struct RealMatrix2 {
  double a = 1, b = 0, c = 0, d = 1;
};

enum class Bullet { Upper, Lower };

struct Action {
  SiegelPoint W;
  Complex j;
};

/// Embedded action of g in SL_2(R): Upper acts on tau, Lower on tau~.
Action act(const RealMatrix2& g, const SiegelPoint& P, Bullet bullet);
/// Full symplectic action; W = (AZ + B)(CZ + D)^-1 and j = det(CZ + D).
Action act(const Sp4& g, const SiegelPoint& P);

/// Representatives of Gamma \ M(p), scaled by det^(-1/2).
std::vector<RealMatrix2> tilde_hecke_reps(std::int64_t p);

using SiegelFunction = std::function<Complex(const SiegelPoint&)>;

/// (F |_k T~_p^bullet)(Z) = sum_g j(g_bullet, Z)^-k F(g_bullet Z).
Complex hecke_bullet(const SiegelFunction& F, int k, std::int64_t p, Bullet bullet, const SiegelPoint& P);
/// Degree-1 analogue of hecke_bullet.
Complex hecke_degree1(const std::function<Complex(Complex)>& f, int k, std::int64_t p, Complex tau);

struct EigenRatioReport {
  std::vector<Complex> ratios;  // (A|T~_p^up)/A per sample point
  Complex degree1_ratio;        // (E(., s)|T~_p)/E(., s)
  double spread = 0;            // max |ratio_i - ratio_0| / |ratio_0|
  double degree1_deviation = 0; // max |ratio_i - degree1| / |degree1|
};

EigenRatioReport eigen_ratio_A(int k, std::int64_t p, const std::vector<SiegelPoint>& points, Complex tau1,
                               const TruncationPolicy& policy, const parallel::Execution& exec = {});

// ---------------------------------------------------------------- identities

struct BowtieFunctional {
  Complex value;           // lhs - rhs of the four-term functional
  double magnitude = 0;    // |F(Z)|
  double relative = 0;     // |value| / magnitude
};

/// p^(k-1) F(p tau, p z, tau~) + (1/p) sum_l F((tau + l)/p, z, tau~)
///  - p^(k-1) F(tau, p z, p tau~) - (1/p) sum_l F(tau, z, (tau~ + l)/p).
/// p = 1 is accepted (the value is exactly 0); composite p is rejected.
/// Any scaled point with Im eigenvalue below y_floor raises DomainError.
BowtieFunctional bowtie_functional(const SiegelFunction& F, int k, std::int64_t p, const SiegelPoint& P,
                                   double y_floor);

/// E_12(tau) Delta(tau~) + E_12(tau~) Delta(tau) + alpha Delta(tau) Delta(tau~), ignoring z.
Complex klingen_control(const SiegelPoint& P, double alpha = 1.0);

struct NumericBowtieReport {
  std::int64_t height = 0;
  BowtieFunctional eisenstein;
  double eisenstein_half_height = 0;  // same residual at height / 2
  BowtieFunctional control;           // weight 12 Klingen-type control
  double separation = 0;              // control.relative / eisenstein.relative
};

NumericBowtieReport bowtie_residual_numeric(int k, const SiegelPoint& P, std::int64_t p,
                                            const TruncationPolicy& policy, const parallel::Execution& exec = {});

struct DecompositionVariant {
  Bullet bullet = Bullet::Upper;
  bool weighted = false;  // slash carries |j|^(-2s) as well as j^(-k)
  Complex b_sum;          // sum_m m^(-2s-k) (B | Gamma diag(m, 1/m) Gamma)(Z)
  double residual = 0;    // |(E - A) - b_sum| / |E|
  double residual_rel_difference = 0;  // same, relative to |E - A|
  std::string name() const;
};

struct DecompositionReport {
  std::int64_t height = 0;
  std::int64_t m_max = 0;
  Complex E;
  Complex difference;  // E - A as the non-diagonal part of the E sum
  std::vector<DecompositionVariant> variants;
  std::size_t best = 0;  // index of the smallest residual
};

DecompositionReport decomposition_residual(int k, const SiegelPoint& P, const TruncationPolicy& policy,
                                           const parallel::Execution& exec = {});

}  // namespace bowtie::analytic
