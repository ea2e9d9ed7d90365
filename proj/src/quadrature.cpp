#include "toric/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace toric {

namespace {

// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = (n == 0) ? p0 : p1;
  dp = (n == 0) ? 0.0 : n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

Quadrature1D gauss_legendre(int order) {
  if (order < 1 || order > 256)
    throw std::invalid_argument("gauss_legendre: order must be in [1, 256]");
  Quadrature1D rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(order, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(order, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) {
    // Odd orders put the middle node exactly at zero.
    rule.nodes[half - 1] = 0.0;
    double p, dp;
    legendre(order, 0.0, p, dp);
    rule.weights[half - 1] = 2.0 / (dp * dp);
  }
  return rule;
}

TriangleRule duffy_triangle(int order, const std::array<Point2, 3>& v) {
  const Quadrature1D gauss = gauss_legendre(order);
  const double area2 =
      std::abs((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
               (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]));
  TriangleRule rule;
  rule.points.reserve(static_cast<std::size_t>(order) * order);
  rule.weights.reserve(static_cast<std::size_t>(order) * order);
  for (int i = 0; i < order; ++i) {
    const double xi = 0.5 * (gauss.nodes[i] + 1.0);   // radial, collapses at v[0]
    const double wi = 0.5 * gauss.weights[i];
    for (int j = 0; j < order; ++j) {
      const double eta = 0.5 * (gauss.nodes[j] + 1.0);
      const double wj = 0.5 * gauss.weights[j];
      // Barycentric (1-xi, xi(1-eta), xi*eta); Jacobian xi.
      const double l1 = 1.0 - xi;
      const double l2 = xi * (1.0 - eta);
      const double l3 = xi * eta;
      rule.points.push_back({l1 * v[0][0] + l2 * v[1][0] + l3 * v[2][0],
                             l1 * v[0][1] + l2 * v[1][1] + l3 * v[2][1]});
      rule.weights.push_back(wi * wj * xi * area2);
    }
  }
  return rule;
}

}  // namespace toric
