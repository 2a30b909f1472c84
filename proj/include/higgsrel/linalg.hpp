#pragma once

#include <higgsrel/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace higgsrel {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

inline bool is_zero_vector(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// In-place reduced row-echelon form. Zero rows are dropped; the returned
/// vector holds the pivot column of each remaining row.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  for (const auto& row : m)
    if (row.size() != cols) throw std::invalid_argument("rref: ragged matrix");
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    if (m[r][c] != 1) {
      const Rational inv = Rational(1) / m[r][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[r][j] *= inv;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Basis of {x : m x = 0}, one vector per free column.
inline Matrix nullspace(Matrix m, std::size_t cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// One solution x of sum_j x_j columns[j] = target, or nullopt if none exists.
/// Free unknowns are set to zero.
inline std::optional<Vector> solve_columns(const Matrix& columns, const Vector& target) {
  const std::size_t n = columns.size();
  const std::size_t rows = target.size();
  Matrix aug(rows, Vector(n + 1, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("solve_columns: size mismatch");
    for (std::size_t i = 0; i < rows; ++i) aug[i][j] = columns[j][i];
  }
  for (std::size_t i = 0; i < rows; ++i) aug[i][n] = target[i];
  auto pivots = rref(aug, n + 1);
  Vector x(n, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == n) return std::nullopt;
    x[pivots[i]] = aug[i][n];
  }
  return x;
}

inline Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  const std::size_t inner = b.size();
  const std::size_t cols = b.empty() ? 0 : b.front().size();
  Matrix out(a.size(), Vector(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw std::invalid_argument("multiply: dimension mismatch");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace higgsrel
