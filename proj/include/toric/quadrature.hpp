#pragma once

#include <array>
#include <vector>

namespace toric {

struct Quadrature1D {
  std::vector<double> nodes;    // in (-1, 1), ascending
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule, exact for polynomials of degree 2*order - 1.
/// Nodes by Newton iteration on the Legendre recurrence, tolerance 1e-15.
Quadrature1D gauss_legendre(int order);

using Point2 = std::array<double, 2>;

struct TriangleRule {
  std::vector<Point2> points;   // strictly interior to the triangle
  std::vector<double> weights;  // sum to the triangle area
};

/// Tensor Gauss grid mapped onto a triangle through the Duffy transform,
/// collapsing at vertex[0]; order^2 points.
TriangleRule duffy_triangle(int order, const std::array<Point2, 3>& vertices);

}  // namespace toric
