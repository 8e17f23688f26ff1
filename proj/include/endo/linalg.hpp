#pragma once

// Dense exact linear algebra over Q, plus the integer lattice helpers needed
// for translation-lattice indices.

#include "endo/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace endo {

using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major

inline QVec zeros(std::size_t n) { return QVec(n, Rational(0)); }

inline QVec unit(std::size_t n, std::size_t i) {
  QVec v = zeros(n);
  v[i] = 1;
  return v;
}

inline QMat identity(std::size_t n) {
  QMat m(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline QVec operator+(QVec a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline QVec operator-(QVec a, const QVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline QVec operator-(QVec a) {
  for (auto& x : a) x = -x;
  return a;
}

inline QVec operator*(const Rational& s, QVec a) {
  for (auto& x : a) x *= s;
  return a;
}

inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline QVec mat_vec(const QMat& m, const QVec& v) {
  QVec out = zeros(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

/// Row vector times matrix: (f^T M)^T. Used to pull back functionals.
inline QVec vec_mat(const QVec& f, const QMat& m) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  QVec out = zeros(cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += f[i] * m[i][j];
  return out;
}

inline QMat mat_mul(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat out(n, zeros(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

inline QMat transpose(const QMat& a) {
  if (a.empty()) return {};
  QMat t(a[0].size(), zeros(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

namespace detail {

/// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(QMat& a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational inv = Rational(1) / a[row][col];
    for (auto& x : a[row]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t c = 0; c < a[r].size(); ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline std::size_t rank(QMat a) {
  if (a.empty()) return 0;
  return detail::rref(a, a[0].size()).size();
}

/// Unique solution of A x = b, or nullopt when the system is inconsistent or
/// underdetermined.
inline std::optional<QVec> solve_unique(const QMat& a, const QVec& b) {
  if (a.empty()) return std::nullopt;
  std::size_t n = a[0].size();
  QMat aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = detail::rref(aug, n + 1);
  if (!piv.empty() && piv.back() == n) return std::nullopt;  // inconsistent
  if (piv.size() != n) return std::nullopt;
  QVec x = zeros(n);
  for (std::size_t r = 0; r < n; ++r) x[piv[r]] = aug[r][n];
  return x;
}

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<QMat> inverse(const QMat& a) {
  std::size_t n = a.size();
  QMat aug = a;
  for (std::size_t i = 0; i < n; ++i) {
    QVec e = unit(n, i);
    aug[i].insert(aug[i].end(), e.begin(), e.end());
  }
  auto piv = detail::rref(aug, n);
  if (piv.size() != n) return std::nullopt;
  QMat inv(n, zeros(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Basis of { v : A v = 0 }.
inline QMat nullspace(QMat a, std::size_t ncols) {
  if (a.empty()) return identity(ncols);
  auto piv = detail::rref(a, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : piv) is_pivot[p] = true;
  QMat basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    QVec v = zeros(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Index [Z^n : L] of the full-rank lattice L spanned by integer generators.
/// Returns 0 when the generators do not span a full-rank sublattice.
inline Integer lattice_index(std::vector<std::vector<Integer>> gens, std::size_t n) {
  Integer det = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n; ++col) {
    // Euclid on column col among rows >= row until one nonzero remains.
    while (true) {
      std::size_t best = gens.size();
      for (std::size_t r = row; r < gens.size(); ++r)
        if (gens[r][col] != 0 && (best == gens.size() || abs(gens[r][col]) < abs(gens[best][col]))) best = r;
      if (best == gens.size()) return 0;
      std::swap(gens[row], gens[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < gens.size(); ++r) {
        if (gens[r][col] == 0) continue;
        Integer q = gens[r][col] / gens[row][col];
        for (std::size_t c = col; c < n; ++c) gens[r][c] -= q * gens[row][c];
        if (gens[r][col] != 0) done = false;
      }
      if (done) break;
    }
    det *= abs(gens[row][col]);
    ++row;
  }
  return det;
}

}  // namespace endo
