#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "toric/parallel.hpp"
#include "toric/rational.hpp"
#include "toric/sym_eigen.hpp"

namespace toric {

/// One member of the explicit extremal family on the one-point blow-up of
/// the projective plane, living over trapezoid(a) with a in (-1, 2). The
/// scalar curvature is affine, S = slope * (x1 + x2) + offset, and the
/// family is normalized by g_a = family_scale(a) * g(a).
struct CalabiMetric {
  double a;
  double scalar_slope;      // 48(2-a) / ((a+1)(a^2-16a+37))
  double scalar_offset;     // 12(4a-3a^2+13) / ((a+1)(a^2-16a+37))
  double normalization;     // 2 sqrt(2) / sqrt((a+1)(5-a))
};

CalabiMetric calabi_metric(double a);
double family_scale(double a);

/// Exact-rational scalar curvature coefficients for rational a.
void exact_extremal_coefficients(const Rational& a, Rational& slope, Rational& offset);

/// Radial profile z(t) of the U(2)-invariant metric, t = x1 + x2 in [-a, 1];
/// vanishes at both ends and is positive inside.
double profile(double a, double t);

/// Left side of the second-order extremal ODE evaluated on the closed-form
/// profile via exact quotient differentiation; zero up to rounding.
double extremal_ode_residual(double a, double t);

using Mat2 = std::array<std::array<double, 2>, 2>;
using Point2d = std::array<double, 2>;

/// Euclidean Hessian of the symplectic potential at a strictly interior
/// point, and its inverse (the metric on the torus fibers).
Mat2 hessian_u(double a, const Point2d& x);
Mat2 inverse_hessian(double a, const Point2d& x);

/// Central finite-difference check of the curvature formula S = -u^{ij}_{,ij}:
/// returns the difference between the differenced curvature and the affine
/// closed form. Requires margin >= 2h to every facet.
double scalar_curvature_residual(double a, const Point2d& x, double h);

/// Coefficients of the unnormalized Rayleigh quotient over centered linear
/// test functions b1 x~1 + b2 x~2 with b1 = 1:
///   (num_diag (1 + b2^2) + b2 num_cross) / (den_diag (1 + b2^2) + b2 den_cross).
/// num_diag equals N_11 of extremal_bound(trapezoid(a)), num_cross = 2 N_12,
/// and likewise for the denominator; tests cross-validate the two pipelines.
struct QuotientCoefficients {
  double num_diag, num_cross, den_diag, den_cross;

  /// Value at b2 = sign (+1 or -1).
  double branch_value(int sign) const;
};

QuotientCoefficients quotient_coefficients(double a);

/// Determinant-like combination num_diag*den_cross - num_cross*den_diag whose
/// sign decides which branch minimizes; vanishes exactly at the critical
/// parameter.
double branch_discriminant(double a);

/// 2a^4 - 85a^3 + 777a^2 - 2233a + 1763, the factor of the discriminant with
/// a single root in (-1, 2).
double branch_switch_polynomial(double a);

/// Unique zero of branch_switch_polynomial on [-1, 2], bisected to 1e-12.
double critical_parameter();

enum class Branch { anti_invariant, invariant };

const char* branch_name(Branch b);

struct ClosedFormBound {
  double value;  // normalized to the family g_a
  Branch branch;
};

/// Piecewise closed form of the normalized linear-test-function bound, with
/// the branch selected by a against the critical parameter.
ClosedFormBound closed_form_bound(double a);

/// Gram matrices over the quadratic test set {1, x1, x2, x1^2, x2^2, x1x2}:
/// mass M_ij = <phi_i, phi_j> from exact moments, stiffness
/// Mt_ij = int u^{kl} d_k phi_i d_l phi_j dmu by Gauss-Legendre x Duffy
/// quadrature on the two-triangle split of the trapezoid. The (2pi)^2 torus
/// fiber volume is omitted from BOTH matrices, so Rayleigh quotients are
/// unaffected while absolute norms differ from the manifold L^2 norms by
/// that constant factor.
struct GramPair {
  SymMatrix mass;
  SymMatrix stiffness;
  int order;
  std::vector<std::string> warnings;
};

GramPair gram_matrices(double a, int order, Exec exec = Exec::parallel);

/// Textbook per-node accumulation, kept as the reference implementation for
/// the buffered kernel above; results agree bit-for-bit.
SymMatrix gram_stiffness_reference(double a, int order);

/// Smallest positive eigenvalue of the pencil (stiffness, mass), normalized
/// to the family g_a. "Positive" means above 1e-9 of the largest pencil
/// eigenvalue, which deflates the constant function's exact zero.
double rayleigh_ritz(double a, int order, Exec exec = Exec::parallel);

struct SweepRecord {
  double a = 0.0;
  double bound_anti_invariant = 0.0;
  double bound_invariant = 0.0;
  double bound = 0.0;  // min of the two, normalized
  Branch branch = Branch::anti_invariant;
  double rayleigh_ritz = 0.0;  // normalized
  double gap = 0.0;            // bound - rayleigh_ritz, >= -1e-8
  std::string error;           // per-record failure, does not abort the sweep
};

/// Equally spaced grid on [a_min, a_max]; records are independent, so the
/// parallel path fills preassigned slots and is bit-identical to the serial
/// one.
std::vector<SweepRecord> sweep(double a_min, double a_max, int count, int order,
                               Exec exec = Exec::parallel);

/// Header "a,bound_antiinv,bound_inv,bound,branch,rayleigh_ritz,gap", floats
/// at 12 significant digits; byte-identical across runs of the same config.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

/// Plain-text gnuplot script plotting bound, Rayleigh-Ritz value and gap
/// from a sweep CSV.
std::string gnuplot_script(const std::string& csv_path);

}  // namespace toric
