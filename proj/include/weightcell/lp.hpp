#pragma once
#ifndef WEIGHTCELL_LP_HPP
#define WEIGHTCELL_LP_HPP

// Exact rational linear algebra and a small dense simplex solver (Bland's rule).

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "weightcell/rational.hpp"

namespace weightcell {

using RationalMatrix = std::vector<RationalVector>;

struct RowEchelon {
  RationalMatrix rows;             // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each row
};

/// Reduced row echelon form; `cols` is needed when the matrix has no rows.
inline RowEchelon rref(RationalMatrix m, std::size_t cols) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const RationalMatrix& m, std::size_t cols) { return rref(m, cols).rows.size(); }

/// Primitive integer basis of the right kernel, one vector per free column (ascending).
inline std::vector<IntVector> kernel_basis(const RationalMatrix& m, std::size_t cols) {
  const auto e = rref(m, cols);
  std::vector<char> is_pivot(cols, 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  std::vector<IntVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) v[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(primitive(std::span<const Rational>(v)));
  }
  return basis;
}

/// Inverse of a square nonsingular matrix.
inline RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix aug(n, RationalVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  const auto e = rref(std::move(aug), 2 * n);
  RationalMatrix inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows.at(i)[n + j];
  return inv;
}

enum class LpStatus { Optimal, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Rational value;
  RationalVector x;
};

/// maximize c.x subject to A x <= b with x free, b >= 0 (so the origin is feasible).
inline LpResult maximize_free(const RationalMatrix& A, const RationalVector& b, const RationalVector& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  for (const auto& v : b)
    if (v < 0) throw ValidationError("maximize_free needs a nonnegative right-hand side");
  // Columns: x+ (n), x- (n), slacks (m). Tableau rows hold [coeffs | rhs].
  const std::size_t cols = 2 * n + m;
  RationalMatrix t(m, RationalVector(cols + 1, 0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      t[i][j] = A[i][j];
      t[i][n + j] = -A[i][j];
    }
    t[i][2 * n + i] = 1;
    t[i][cols] = b[i];
    basis[i] = 2 * n + i;
  }
  // Reduced costs for maximization: obj[j] = c_j - z_j.
  RationalVector obj(cols + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    obj[j] = c[j];
    obj[n + j] = -c[j];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (obj[j] > 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][cols] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return {LpStatus::Unbounded, 0, {}};
    const Rational inv = 1 / t[leave][enter];
    for (auto& v : t[leave]) v *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    const Rational f = obj[enter];
    for (std::size_t j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    basis[leave] = enter;
  }

  LpResult result;
  result.value = -obj[cols];
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) result.x[basis[i]] += t[i][cols];
    else if (basis[i] < 2 * n) result.x[basis[i] - n] -= t[i][cols];
  }
  return result;
}

}  // namespace weightcell

#endif  // WEIGHTCELL_LP_HPP
