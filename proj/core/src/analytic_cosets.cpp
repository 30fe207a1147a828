#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>

#include "bowtie/analytic.hpp"

namespace bowtie::analytic {

std::vector<CoprimePair> coprime_pairs(std::int64_t height) {
  if (height < 1) throw std::invalid_argument("coprime_pairs: height must be positive");
  std::vector<CoprimePair> out;
  for (std::int64_t c = 0; c <= height; ++c) {
    for (std::int64_t d = -height; d <= height; ++d) {
      if (std::gcd(c, d) != 1) continue;
      if (c == 0 && d != 1) continue;
      out.push_back({c, d});
    }
  }
  std::sort(out.begin(), out.end(), [](const CoprimePair& x, const CoprimePair& y) {
    return std::make_tuple(std::abs(x.c), std::abs(x.d), x.c, x.d) <
           std::make_tuple(std::abs(y.c), std::abs(y.d), y.c, y.d);
  });
  return out;
}

SymPairRep canonical_sym_pair(const std::array<std::int64_t, 8>& block) {
  std::array<std::array<std::int64_t, 4>, 2> M{};
  for (int i = 0; i < 8; ++i) M[i / 4][i % 4] = block[i];
  auto sub = [&](int dst, int src, std::int64_t q) {
    for (int j = 0; j < 4; ++j) M[dst][j] -= q * M[src][j];
  };

  int row = 0;
  for (int col = 0; col < 4 && row < 2; ++col) {
    // Euclid on the remaining rows in this column
    if (row == 0) {
      while (M[0][col] != 0 && M[1][col] != 0) {
        if (std::abs(M[0][col]) > std::abs(M[1][col])) std::swap(M[0], M[1]);
        sub(1, 0, M[1][col] / M[0][col]);
      }
      if (M[0][col] == 0 && M[1][col] == 0) continue;
      if (M[0][col] == 0) std::swap(M[0], M[1]);
    } else if (M[1][col] == 0) {
      continue;
    }
    if (M[row][col] < 0) {
      for (auto& x : M[row]) x = -x;
    }
    if (row == 1) {
      std::int64_t q = M[0][col] / M[1][col];
      if (M[0][col] - q * M[1][col] < 0) --q;
      sub(0, 1, q);
    }
    ++row;
  }
  if (row < 2) throw std::invalid_argument("canonical_sym_pair: block has rank < 2");

  SymPairRep rep;
  for (int i = 0; i < 8; ++i) rep.e[i] = static_cast<std::int32_t>(M[i / 4][i % 4]);
  return rep;
}

bool is_symmetric_pair(const SymPairRep& x) {
  // C D^t symmetric  <=>  c11 d21 + c12 d22 = c21 d11 + c22 d12
  return x.C(0, 0) * x.D(1, 0) + x.C(0, 1) * x.D(1, 1) == x.C(1, 0) * x.D(0, 0) + x.C(1, 1) * x.D(0, 1);
}

bool is_primitive(const SymPairRep& x) {
  std::int64_t g = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g = std::gcd(g, x.minor(a, b));
  return g == 1;
}

bool is_diagonal_type(const SymPairRep& x) { return x.minor(0, 2) == 0 && x.minor(1, 3) == 0; }

namespace {

// Enumerates canonical forms directly. Row 0 has pivot p1 at column j1, row 1
// pivot p2 at column j2 > j1; the symmetry constraint is bilinear and is
// solved for one entry in each shape.
std::vector<SymPairRep> enumerate_sym_pairs(std::int64_t H) {
  std::vector<SymPairRep> out;
  auto emit = [&](std::array<std::int64_t, 4> r0, std::array<std::int64_t, 4> r1) {
    for (auto v : r0)
      if (std::abs(v) > H) return;
    for (auto v : r1)
      if (std::abs(v) > H) return;
    SymPairRep rep;
    for (int j = 0; j < 4; ++j) {
      rep.e[j] = static_cast<std::int32_t>(r0[j]);
      rep.e[4 + j] = static_cast<std::int32_t>(r1[j]);
    }
    if (is_symmetric_pair(rep) && is_primitive(rep)) out.push_back(rep);
  };

  for (std::int64_t p1 = 1; p1 <= H; ++p1) {
    for (std::int64_t p2 = 1; p2 <= H; ++p2) {
      const std::int64_t amax = std::min(p2 - 1, H);
      for (std::int64_t a = 0; a <= amax; ++a) {
        // (j1, j2) = (0, 1): p1 u + a v = p2 y
        for (std::int64_t x = -H; x <= H; ++x)
          for (std::int64_t u = -H; u <= H; ++u)
            for (std::int64_t v = -H; v <= H; ++v) {
              const std::int64_t num = p1 * u + a * v;
              if (num % p2 == 0) emit({p1, a, x, num / p2}, {0, p2, u, v});
            }
        // (0, 2): p1 p2 + x v = 0
        for (std::int64_t y = -H; y <= H; ++y)
          for (std::int64_t v = -H; v <= H; ++v) {
            if (v == 0 || (p1 * p2) % v != 0) continue;
            emit({p1, -(p1 * p2) / v, a, y}, {0, 0, p2, v});
          }
        // (0, 3): entry (0, 1) vanishes
        for (std::int64_t y = -H; y <= H; ++y) emit({p1, 0, y, a}, {0, 0, 0, p2});
        // (1, 2): entry (1, 3) vanishes
        for (std::int64_t y = -H; y <= H; ++y) emit({0, p1, a, y}, {0, 0, p2, 0});
        // (1, 3) has no symmetric solutions; (2, 3) is C = 0
        emit({0, 0, p1, a}, {0, 0, 0, p2});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::shared_ptr<const std::vector<SymPairRep>> sym_pair_reps(std::int64_t height) {
  if (height < 1) throw std::invalid_argument("sym_pair_reps: height must be positive");
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const std::vector<SymPairRep>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[height];
  if (!slot) slot = std::make_shared<const std::vector<SymPairRep>>(enumerate_sym_pairs(height));
  return slot;
}

namespace {

using Mat = std::vector<std::vector<std::int64_t>>;

// Q (4x2) with W Q = I for a primitive 2x4 W, via column reduction.
Mat right_inverse(const std::array<std::array<std::int64_t, 4>, 2>& W) {
  auto A = W;
  Mat V(4, std::vector<std::int64_t>(4, 0));
  for (int i = 0; i < 4; ++i) V[i][i] = 1;
  auto colop = [&](int dst, int src, std::int64_t q) {  // col dst -= q col src
    for (int i = 0; i < 2; ++i) A[i][dst] -= q * A[i][src];
    for (int i = 0; i < 4; ++i) V[i][dst] -= q * V[i][src];
  };
  auto colswap = [&](int x, int y) {
    for (int i = 0; i < 2; ++i) std::swap(A[i][x], A[i][y]);
    for (int i = 0; i < 4; ++i) std::swap(V[i][x], V[i][y]);
  };
  for (int row = 0; row < 2; ++row) {
    for (;;) {
      int best = -1;
      for (int j = row; j < 4; ++j)
        if (A[row][j] != 0 && (best < 0 || std::abs(A[row][j]) < std::abs(A[row][best]))) best = j;
      if (best < 0) throw std::invalid_argument("complete_to_symplectic: block is not primitive");
      colswap(row, best);
      bool done = true;
      for (int j = row + 1; j < 4; ++j) {
        if (A[row][j] != 0) {
          colop(j, row, A[row][j] / A[row][row]);
          if (A[row][j] != 0) done = false;
        }
      }
      if (done) break;
    }
  }
  // W V = (L | 0), L lower triangular with unit-modulus diagonal
  if (std::abs(A[0][0]) != 1 || std::abs(A[1][1]) != 1) {
    throw std::invalid_argument("complete_to_symplectic: block is not primitive");
  }
  const std::int64_t l00 = A[0][0], l10 = A[1][0], l11 = A[1][1];
  // L^-1 = (1/l00, 0; -l10/(l00 l11), 1/l11), integral since l00, l11 = +-1
  const std::int64_t inv[2][2] = {{l00, 0}, {-l10 * l00 * l11, l11}};
  Mat Q(4, std::vector<std::int64_t>(2, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) Q[i][j] = V[i][0] * inv[0][j] + V[i][1] * inv[1][j];
  return Q;
}

// x J y^t with J = (0 I; -I 0)
std::int64_t omega(const std::array<std::int64_t, 4>& x, const std::array<std::int64_t, 4>& y) {
  return x[0] * y[2] + x[1] * y[3] - x[2] * y[0] - x[3] * y[1];
}

}  // namespace

Sp4 complete_to_symplectic(const SymPairRep& rep) {
  std::array<std::array<std::int64_t, 4>, 2> M{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) M[i][j] = rep.e[4 * i + j];
  // Top rows a_i need omega(a_i, m_j) = delta_ij, i.e. a_i . (J m_j^t) = delta_ij.
  std::array<std::array<std::int64_t, 4>, 2> W{};
  for (int i = 0; i < 2; ++i) W[i] = {M[i][2], M[i][3], -M[i][0], -M[i][1]};
  const Mat Q = right_inverse(W);
  std::array<std::array<std::int64_t, 4>, 2> top{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) top[i][j] = Q[j][i];
  // make the top rows isotropic without disturbing the pairing with M
  const std::int64_t e = omega(top[0], top[1]);
  for (int j = 0; j < 4; ++j) top[0][j] += e * M[1][j];

  Sp4 g;
  for (int j = 0; j < 4; ++j) {
    g.e[j] = top[0][j];
    g.e[4 + j] = top[1][j];
    g.e[8 + j] = M[0][j];
    g.e[12 + j] = M[1][j];
  }
  return g;
}

bool is_symplectic(const Sp4& g) {
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      std::array<std::int64_t, 4> x{}, y{};
      for (int j = 0; j < 4; ++j) {
        x[j] = g.at(i, j);
        y[j] = g.at(k, j);
      }
      std::int64_t want = 0;
      if (k == i + 2) want = 1;
      if (i == k + 2) want = -1;
      if (omega(x, y) != want) return false;
    }
  }
  return true;
}

std::vector<ScaledMatrix> diag_double_coset_reps(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("diag_double_coset_reps: m must be positive");
  std::vector<ScaledMatrix> out;
  const std::int64_t det = m * m;
  for (auto M : elliptic::coset_reps_M(det)) {
    if (std::gcd(std::gcd(M.a, M.b), M.d) == 1) out.push_back({M, m});
  }
  return out;
}

}  // namespace bowtie::analytic
