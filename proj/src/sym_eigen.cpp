#include "toric/sym_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "toric/errors.hpp"

namespace toric {

double SymMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (int i = 0; i < order_; ++i)
    for (int j = 0; j < order_; ++j) sum += at(i, j) * at(i, j);
  return std::sqrt(sum);
}

namespace {

void normalize_sign(std::vector<double>& v) {
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) return;
  double lead = 0.0;
  for (double x : v) {
    if (std::abs(x) > 1e-14 * norm) { lead = x; break; }
  }
  const double scale = (lead < 0.0 ? -1.0 : 1.0) / norm;
  for (double& x : v) x *= scale;
}

}  // namespace

EigenResult symmetric_eigen(SymMatrix c) {
  const int n = c.order();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) v[i][i] = 1.0;  // v[column][row]

  const double scale = std::max(c.frobenius_norm(), 1e-300);
  const int max_sweeps = 30;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) off += c.at(i, j) * c.at(i, j);
    if (std::sqrt(off) <= 1e-14 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = c.at(p, q);
        if (std::abs(apq) <= 1e-18 * scale) continue;
        const double theta = (c.at(q, q) - c.at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        // Rotate rows/columns p and q.
        const double app = c.at(p, p), aqq = c.at(q, q);
        c.at(p, p) = app - t * apq;
        c.at(q, q) = aqq + t * apq;
        c.at(p, q) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = c.at(k, p), akq = c.at(k, q);
          c.at(k, p) = cs * akp - sn * akq;
          c.at(k, q) = sn * akp + cs * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[p][k], vkq = v[q][k];
          v[p][k] = cs * vkp - sn * vkq;
          v[q][k] = sn * vkp + cs * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return c.at(a, a) < c.at(b, b); });

  EigenResult out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (int k : order) {
    out.values.push_back(c.at(k, k));
    std::vector<double> col = v[k];
    normalize_sign(col);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

std::vector<double> cholesky_lower(const SymMatrix& b) {
  const int n = b.order();
  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = b.at(i, j);
      for (int k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (sum <= 0.0)
          throw NumericError("matrix not positive definite at pivot " +
                             std::to_string(i) + " (value " + std::to_string(sum) + ")");
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  return l;
}

EigenResult generalized_symmetric_eigen(const SymMatrix& a, const SymMatrix& b) {
  const int n = a.order();
  const std::vector<double> l = cholesky_lower(b);

  // c = L^-1 A L^-T, formed column-by-column by triangular solves.
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (int col = 0; col < n; ++col) {
    // Forward solve L w_col = A e_col (w holds L^-1 A).
    for (int i = 0; i < n; ++i) {
      double sum = a.at(i, col);
      for (int k = 0; k < i; ++k) sum -= l[i * n + k] * w[col][k];
      w[col][i] = sum / l[i * n + i];
    }
  }
  SymMatrix c(n);
  // Row `row` of W = L^-1 A is {w[k][row]}; solving L y = W[row,:]^T gives
  // row `row` of C = W L^-T.
  for (int row = 0; row < n; ++row) {
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      double sum = w[i][row];
      for (int k = 0; k < i; ++k) sum -= l[i * n + k] * y[k];
      y[i] = sum / l[i * n + i];
    }
    for (int i = 0; i <= row; ++i) c.at(row, i) = y[i];
  }

  EigenResult reduced = symmetric_eigen(c);

  // Back-substitute eigenvectors: x = L^-T y.
  EigenResult out;
  out.values = reduced.values;
  out.vectors.reserve(n);
  for (const auto& y : reduced.vectors) {
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
      double sum = y[i];
      for (int k = i + 1; k < n; ++k) sum -= l[k * n + i] * x[k];
      x[i] = sum / l[i * n + i];
    }
    normalize_sign(x);
    out.vectors.push_back(std::move(x));
  }
  return out;
}

}  // namespace toric
