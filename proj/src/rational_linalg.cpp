#include "toric/rational_linalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace toric {

namespace {

// Row echelon reduction in place; returns the rank. When rhs is non-null it
// is carried along as an extra column.
int echelon(RatMat& a, RatVec* rhs) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows && a[sel][col] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[pivot_row]);
    if (rhs) std::swap((*rhs)[sel], (*rhs)[pivot_row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[pivot_row][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= factor * a[pivot_row][c];
      if (rhs) (*rhs)[r] -= factor * (*rhs)[pivot_row];
    }
    ++pivot_row;
  }
  return static_cast<int>(pivot_row);
}

}  // namespace

std::optional<RatVec> solve_linear(RatMat a, RatVec rhs) {
  const std::size_t n = a.size();
  if (n == 0) return RatVec{};
  if (a[0].size() != n || rhs.size() != n)
    throw std::invalid_argument("solve_linear: non-square system");
  if (echelon(a, &rhs) < static_cast<int>(n)) return std::nullopt;
  RatVec x(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::size_t col = 0;
    while (col < n && a[r][col] == 0) ++col;
    x[col] = rhs[r] / a[r][col];
  }
  return x;
}

Rational determinant(RatMat a) {
  const std::size_t n = a.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) return Rational(0);
    if (sel != col) {
      std::swap(a[sel], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

int matrix_rank(RatMat a) { return a.empty() ? 0 : echelon(a, nullptr); }

int affine_rank(const std::vector<RatVec>& points) {
  if (points.empty()) return -1;
  RatMat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) {
    RatVec d(points[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = points[i][j] - points[0][j];
    diffs.push_back(std::move(d));
  }
  return diffs.empty() ? 0 : matrix_rank(diffs);
}

}  // namespace toric
