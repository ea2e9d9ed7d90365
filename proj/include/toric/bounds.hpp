#pragma once

#include <string>
#include <vector>

#include "toric/integrate.hpp"
#include "toric/polytope.hpp"

namespace toric {

/// Affine scalar curvature candidate S(x) = constant + <gradient, x>, solved
/// exactly from the integration-by-parts moment equations
///   int_P S * {1, x_j} dmu = 2 int_dP {1, x_j} dsigma.
struct ScalarAffine {
  Rational constant;
  RatVec gradient;

  Polynomial to_polynomial() const;
  double eval(std::span<const double> x) const;
  std::string to_string() const;
};

/// Result of minimizing b^T N b / b^T D b over b != 0: the smallest
/// generalized eigenvalue of the exact moment pencil (converted to floats
/// only for the eigensolve).
struct BoundResult {
  double value = 0.0;
  std::vector<double> minimizer_b;
  RatMat numerator;    // N, exact
  RatMat denominator;  // D, exact (centered second moments; positive definite)
  double applied_scale = 1.0;
  std::vector<std::string> warnings;
};

/// Upper bound on the first invariant eigenvalue valid for metrics of
/// non-negative scalar curvature in the polytope's class:
///   N_ij = int_dP x_i x_j dsigma   (uncentered),
///   D_ij = int_P (x_i - c_i)(x_j - c_j) dmu.
BoundResult curvature_bound(const DelzantPolytope& p);

ScalarAffine solve_extremal_scalar(const DelzantPolytope& p);

/// Upper bound valid for extremal metrics:
///   N_ij = int_dP x_i x_j dsigma - 1/2 int_P S x_i x_j dmu,
/// with S from solve_extremal_scalar and D as in curvature_bound.
BoundResult extremal_bound(const DelzantPolytope& p);

/// Eigenvalues scale inversely with the metric scale: value /= scale.
BoundResult rescale_bound(BoundResult r, double scale);

/// Invariant spectrum of the product of two round spheres with factors
/// scaled by a and 1/a: values a^-1 k(1+k) + a l(1+l) for k, l <= cutoff,
/// sorted and deduplicated. First nonzero entry is 2/a for a >= 1.
std::vector<double> product_sphere_spectrum(double a, int cutoff);

}  // namespace toric
