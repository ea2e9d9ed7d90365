#include "toric/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "toric/errors.hpp"
#include "toric/rational_linalg.hpp"
#include "toric/sym_eigen.hpp"

namespace toric {

namespace {

Polynomial::Exponents unit(int dim, int i) {
  Polynomial::Exponents e(dim, 0);
  e[i] = 1;
  return e;
}

Polynomial::Exponents pair(int dim, int i, int j) {
  Polynomial::Exponents e(dim, 0);
  ++e[i];
  ++e[j];
  return e;
}

SymMatrix to_sym(const RatMat& m) {
  SymMatrix out(static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      out.at(static_cast<int>(i), static_cast<int>(j)) = to_double(m[i][j]);
  return out;
}

// Centered second moments D_ij = m_{ij} - c_i c_j m_0 (using m_{e_i} = c_i m_0).
RatMat centered_second_moments(const DelzantPolytope& p, const MomentTable& mt) {
  const int n = p.dim();
  const Rational& m0 = mt.interior(Polynomial::Exponents(n, 0));
  RatVec c(n);
  for (int i = 0; i < n; ++i) c[i] = mt.interior(unit(n, i)) / m0;
  RatMat d(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d[i][j] = mt.interior(pair(n, i, j)) - c[i] * c[j] * m0;
  return d;
}

// Smallest generalized eigenvalue with the deterministic tie-break: among
// eigenvectors within relative 1e-9 of the minimum, take the one whose
// absolute component sequence is lexicographically largest.
void minimize_pencil(const RatMat& num, const RatMat& den, BoundResult& out) {
  const SymMatrix a = to_sym(num);
  const SymMatrix b = to_sym(den);
  EigenResult eig;
  try {
    eig = generalized_symmetric_eigen(a, b);
  } catch (const NumericError& e) {
    throw NumericError(std::string("denominator moment matrix: ") + e.what());
  }
  const double lambda_min = eig.values.front();
  const double scale =
      std::max(std::abs(eig.values.back()), std::abs(lambda_min));
  std::size_t best = 0;
  for (std::size_t k = 1; k < eig.values.size(); ++k) {
    if (eig.values[k] - lambda_min > 1e-9 * std::max(scale, 1.0)) break;
    const auto& u = eig.vectors[best];
    const auto& v = eig.vectors[k];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (std::abs(v[i]) == std::abs(u[i])) continue;
      if (std::abs(v[i]) > std::abs(u[i])) best = k;
      break;
    }
  }
  out.value = lambda_min;
  out.minimizer_b = eig.vectors[best];
  out.numerator = num;
  out.denominator = den;
}

}  // namespace

Polynomial ScalarAffine::to_polynomial() const {
  return Polynomial::affine(constant, gradient);
}

double ScalarAffine::eval(std::span<const double> x) const {
  double out = to_double(constant);
  for (std::size_t i = 0; i < gradient.size(); ++i)
    out += to_double(gradient[i]) * x[i];
  return out;
}

std::string ScalarAffine::to_string() const {
  std::ostringstream os;
  os << toric::to_string(constant);
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    os << (gradient[i] >= 0 ? " + " : " - ")
       << toric::to_string(abs(gradient[i])) << " x" << i + 1;
  }
  return os.str();
}

BoundResult curvature_bound(const DelzantPolytope& p) {
  const int n = p.dim();
  const MomentTable mt = moments_up_to(p, 2);

  RatMat num(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) num[i][j] = mt.boundary(pair(n, i, j));
  const RatMat den = centered_second_moments(p, mt);

  BoundResult out;
  minimize_pencil(num, den, out);
  out.warnings.push_back(
      "bound is valid only for metrics with non-negative scalar curvature "
      "(hypothesis not checkable from polytope data)");
  if (!p.delzant_report().pass)
    out.warnings.push_back("polytope fails the Delzant condition");
  return out;
}

ScalarAffine solve_extremal_scalar(const DelzantPolytope& p) {
  const int n = p.dim();
  const MomentTable mt = moments_up_to(p, 2);
  const Polynomial::Exponents zero(n, 0);

  RatMat m(n + 1, RatVec(n + 1));
  RatVec rhs(n + 1);
  m[0][0] = mt.interior(zero);
  for (int i = 0; i < n; ++i) m[0][i + 1] = mt.interior(unit(n, i));
  rhs[0] = 2 * mt.boundary(zero);
  for (int j = 0; j < n; ++j) {
    m[j + 1][0] = mt.interior(unit(n, j));
    for (int i = 0; i < n; ++i) m[j + 1][i + 1] = mt.interior(pair(n, i, j));
    rhs[j + 1] = 2 * mt.boundary(unit(n, j));
  }

  auto sol = solve_linear(std::move(m), std::move(rhs));
  if (!sol)
    throw NumericError(
        "extremal moment system is singular (degenerate polytope?)");
  ScalarAffine s;
  s.constant = (*sol)[0];
  s.gradient.assign(sol->begin() + 1, sol->end());
  return s;
}

BoundResult extremal_bound(const DelzantPolytope& p) {
  const int n = p.dim();
  const ScalarAffine s = solve_extremal_scalar(p);
  const MomentTable mt = moments_up_to(p, 3);

  RatMat num(n, RatVec(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational s_moment = s.constant * mt.interior(pair(n, i, j));
      for (int k = 0; k < n; ++k) {
        Polynomial::Exponents e = pair(n, i, j);
        ++e[k];
        s_moment += s.gradient[k] * mt.interior(e);
      }
      num[i][j] = mt.boundary(pair(n, i, j)) - s_moment / 2;
    }
  }
  const RatMat den = centered_second_moments(p, mt);

  BoundResult out;
  minimize_pencil(num, den, out);
  if (out.value <= 0.0)
    out.warnings.push_back(
        "bound is non-positive: no extremal metric with this polytope's "
        "affine scalar curvature can exist in the class");
  if (!p.delzant_report().pass)
    out.warnings.push_back("polytope fails the Delzant condition");
  return out;
}

BoundResult rescale_bound(BoundResult r, double scale) {
  if (!(scale > 0.0))
    throw std::invalid_argument("rescale_bound: scale must be positive");
  r.value /= scale;
  r.applied_scale *= scale;
  return r;
}

std::vector<double> product_sphere_spectrum(double a, int cutoff) {
  if (!(a >= 1.0))
    throw std::invalid_argument(
        "product_sphere_spectrum: normalization takes a in [1, inf)");
  if (cutoff < 1)
    throw std::invalid_argument("product_sphere_spectrum: cutoff must be >= 1");
  std::vector<double> values;
  for (int k = 0; k <= cutoff; ++k)
    for (int l = 0; l <= cutoff; ++l)
      values.push_back(static_cast<double>(k) * (k + 1) / a +
                       a * static_cast<double>(l) * (l + 1));
  std::sort(values.begin(), values.end());
  std::vector<double> dedup;
  for (double v : values)
    if (dedup.empty() || v - dedup.back() > 1e-9 * (1.0 + std::abs(v)))
      dedup.push_back(v);
  return dedup;
}

}  // namespace toric
