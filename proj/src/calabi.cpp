#include "toric/calabi.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "toric/errors.hpp"
#include "toric/integrate.hpp"
#include "toric/polytope.hpp"
#include "toric/quadrature.hpp"
#include "toric/roots.hpp"

namespace toric {

namespace {

void require_parameter(double a) {
  if (!(a > -1.0 && a < 2.0))
    throw InputError("family parameter must lie in (-1, 2), got " +
                     std::to_string(a));
}

// Dense univariate polynomial, ascending coefficients. Only used for the
// closed-form profile and its exact quotient derivatives.
using UniPoly = std::vector<double>;

UniPoly mul(const UniPoly& p, const UniPoly& q) {
  UniPoly out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

UniPoly diff(const UniPoly& p) {
  if (p.size() <= 1) return {0.0};
  UniPoly out(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = p[i] * static_cast<double>(i);
  return out;
}

UniPoly sub(const UniPoly& p, const UniPoly& q) {
  UniPoly out(std::max(p.size(), q.size()), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) out[i] -= q[i];
  return out;
}

double eval(const UniPoly& p, double t) {
  double out = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) out = out * t + p[i];
  return out;
}

// z(t) = p(t) / ((t+2)^2 K) with p the closed-form quartic
//   (t-1)(a+t)(a^2 t - 4a^2 + 2a t^2 + 10a t + 36a - 4t^2 - 33t - 74)
// and K = (a+1)(a^2 - 16a + 37). Keeping the (t+2) power factored (instead
// of expanding the full denominator and its derivatives) avoids the large
// cancellations that would otherwise dominate the ODE residual near t = -a.
struct ProfileQuotient {
  UniPoly p;
  double k;
};

ProfileQuotient profile_quotient(double a) {
  const UniPoly lin1{-1.0, 1.0};
  const UniPoly lin2{a, 1.0};
  const UniPoly quad{-4.0 * a * a + 36.0 * a - 74.0,
                     a * a + 10.0 * a - 33.0,
                     2.0 * a - 4.0};
  return ProfileQuotient{mul(mul(lin1, lin2), quad),
                         (a + 1.0) * (a * a - 16.0 * a + 37.0)};
}

double profile_value(const ProfileQuotient& z, double t) {
  const double s = 1.0 / (t + 2.0);
  return eval(z.p, t) * s * s / z.k;
}

}  // namespace

double family_scale(double a) {
  require_parameter(a);
  return 2.0 * std::sqrt(2.0) / std::sqrt((a + 1.0) * (5.0 - a));
}

CalabiMetric calabi_metric(double a) {
  require_parameter(a);
  const double denom = (a + 1.0) * (a * a - 16.0 * a + 37.0);
  return CalabiMetric{a, 48.0 * (2.0 - a) / denom,
                      12.0 * (4.0 * a - 3.0 * a * a + 13.0) / denom,
                      family_scale(a)};
}

void exact_extremal_coefficients(const Rational& a, Rational& slope,
                                 Rational& offset) {
  const Rational denom = (a + 1) * (a * a - 16 * a + 37);
  slope = 48 * (2 - a) / denom;
  offset = 12 * (4 * a - 3 * a * a + 13) / denom;
}

double profile(double a, double t) {
  require_parameter(a);
  if (!(t >= -a - 1e-12 && t <= 1.0 + 1e-12))
    throw std::domain_error("profile argument t outside [-a, 1]");
  return profile_value(profile_quotient(a), t);
}

double extremal_ode_residual(double a, double t) {
  require_parameter(a);
  const CalabiMetric m = calabi_metric(a);
  const ProfileQuotient zq = profile_quotient(a);

  // With z = p s^2 / K, s = 1/(t+2):
  //   z'  = u s^3 / K,  u = p'(t+2) - 2p,
  //   z'' = v s^4 / K,  v = u'(t+2) - 3u,
  // so the ODE left side collapses to
  //   s^4 (v + 4u + 2p) / K - 2 s^2 + (slope*t + offset) s / 2.
  const UniPoly tp2{2.0, 1.0};
  const UniPoly u = sub(mul(diff(zq.p), tp2), mul(UniPoly{2.0}, zq.p));
  const UniPoly v = sub(mul(diff(u), tp2), mul(UniPoly{3.0}, u));
  UniPoly w = sub(v, mul(UniPoly{-4.0}, u));
  w = sub(w, mul(UniPoly{-2.0}, zq.p));

  const double s = 1.0 / (t + 2.0);
  return eval(w, t) * s * s * s * s / zq.k - 2.0 * s * s +
         (m.scalar_slope * t + m.scalar_offset) * s / 2.0;
}

Mat2 hessian_u(double a, const Point2d& x) {
  require_parameter(a);
  const double t = x[0] + x[1];
  if (!(x[0] > -1.0 && x[1] > -1.0 && t > -a && t < 1.0))
    throw std::domain_error("hessian_u: point not strictly interior to the trapezoid");
  const double z = profile_value(profile_quotient(a), t);
  if (!(z > 0.0))
    throw std::domain_error("hessian_u: profile not positive at t = " +
                            std::to_string(t));
  const double w = (1.0 / z - 1.0) / (2.0 + t);
  return Mat2{{{0.5 * (1.0 / (x[0] + 1.0) + w), 0.5 * w},
               {0.5 * w, 0.5 * (1.0 / (x[1] + 1.0) + w)}}};
}

Mat2 inverse_hessian(double a, const Point2d& x) {
  const Mat2 h = hessian_u(a, x);
  const double det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
  return Mat2{{{h[1][1] / det, -h[0][1] / det}, {-h[1][0] / det, h[0][0] / det}}};
}

double scalar_curvature_residual(double a, const Point2d& x, double h) {
  require_parameter(a);
  const CalabiMetric m = calabi_metric(a);
  // Margin: Euclidean distance to every facet at least 2h.
  const DelzantPolytope trap = builtin_polytope("trapezoid", rational_from_double(a));
  for (const auto& f : trap.facets()) {
    double norm = 0.0;
    for (long long c : f.normal) norm += static_cast<double>(c) * c;
    if (f.eval(std::span<const double>(x.data(), 2)) < 2.0 * h * std::sqrt(norm))
      throw std::domain_error(
          "scalar_curvature_residual: stencil margin 2h violated");
  }

  const auto u11 = [&](double p, double q) { return inverse_hessian(a, {p, q})[0][0]; };
  const auto u12 = [&](double p, double q) { return inverse_hessian(a, {p, q})[0][1]; };
  const auto u22 = [&](double p, double q) { return inverse_hessian(a, {p, q})[1][1]; };

  const double d11 =
      (u11(x[0] + h, x[1]) - 2.0 * u11(x[0], x[1]) + u11(x[0] - h, x[1])) / (h * h);
  const double d22 =
      (u22(x[0], x[1] + h) - 2.0 * u22(x[0], x[1]) + u22(x[0], x[1] - h)) / (h * h);
  const double d12 = (u12(x[0] + h, x[1] + h) - u12(x[0] + h, x[1] - h) -
                      u12(x[0] - h, x[1] + h) + u12(x[0] - h, x[1] - h)) /
                     (4.0 * h * h);

  const double s_fd = -(d11 + 2.0 * d12 + d22);
  return s_fd - (m.scalar_slope * (x[0] + x[1]) + m.scalar_offset);
}

double QuotientCoefficients::branch_value(int sign) const {
  const double s = sign >= 0 ? 1.0 : -1.0;
  return (2.0 * num_diag + s * num_cross) / (2.0 * den_diag + s * den_cross);
}

QuotientCoefficients quotient_coefficients(double a) {
  require_parameter(a);
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const double ap1 = a + 1.0;
  const double q37 = a2 - 16.0 * a + 37.0;
  QuotientCoefficients c;
  c.num_diag = ap1 * (a4 - 14.0 * a3 + 132.0 * a2 - 590.0 * a + 883.0) / (10.0 * q37);
  c.num_cross =
      -ap1 * (7.0 * a4 - 188.0 * a3 + 1284.0 * a2 - 3860.0 * a + 4381.0) / (30.0 * q37);
  c.den_diag =
      -ap1 * (a4 - 14.0 * a3 + 60.0 * a2 - 158.0 * a + 253.0) / (36.0 * (a - 5.0));
  c.den_cross =
      ap1 * (a4 - 14.0 * a3 + 114.0 * a2 - 374.0 * a + 469.0) / (36.0 * (a - 5.0));
  return c;
}

double branch_discriminant(double a) {
  const QuotientCoefficients c = quotient_coefficients(a);
  return c.num_diag * c.den_cross - c.num_cross * c.den_diag;
}

double branch_switch_polynomial(double a) {
  return ((2.0 * a - 85.0) * a + 777.0) * a * a - 2233.0 * a + 1763.0;
}

double critical_parameter() {
  static const double a_c =
      bisect_root(branch_switch_polynomial, -1.0, 2.0, 1e-12);
  return a_c;
}

const char* branch_name(Branch b) {
  return b == Branch::anti_invariant ? "anti-invariant" : "invariant";
}

ClosedFormBound closed_form_bound(double a) {
  require_parameter(a);
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const double q37 = a2 - 16.0 * a + 37.0;
  if (a < critical_parameter()) {
    const double value =
        std::sqrt(2.0 * (a + 1.0)) *
        (13.0 * a4 - 272.0 * a3 + 2076.0 * a2 - 7400.0 * a + 9679.0) /
        (10.0 * std::sqrt(5.0 - a) * (a2 - 4.0 * a + 13.0) * q37);
    return ClosedFormBound{value, Branch::anti_invariant};
  }
  const double value = -3.0 * std::sqrt(2.0) * std::pow(5.0 - a, 1.5) *
                       (a3 - 105.0 * a2 + 597.0 * a - 917.0) /
                       (10.0 * std::sqrt(a + 1.0) * q37 * q37);
  return ClosedFormBound{value, Branch::invariant};
}

namespace {

// Gradients of the test set {1, x1, x2, x1^2, x2^2, x1x2} at a point.
std::array<Point2d, 6> test_gradients(const Point2d& x) {
  return {Point2d{0.0, 0.0},          Point2d{1.0, 0.0},
          Point2d{0.0, 1.0},          Point2d{2.0 * x[0], 0.0},
          Point2d{0.0, 2.0 * x[1]},   Point2d{x[1], x[0]}};
}

constexpr int kPairCount = 21;  // packed upper triangle of a 6x6 symmetric matrix

std::vector<Point2d> trapezoid_nodes(double a, int order, std::vector<double>& weights) {
  // Two-triangle split of the trapezoid, fan apex (-1, 2); the Duffy collapse
  // happens at that apex so all nodes stay strictly interior.
  const std::array<Point2, 3> tri1{Point2{-1.0, 2.0}, Point2{2.0, -1.0},
                                   Point2{1.0 - a, -1.0}};
  const std::array<Point2, 3> tri2{Point2{-1.0, 2.0}, Point2{1.0 - a, -1.0},
                                   Point2{-1.0, 1.0 - a}};
  std::vector<Point2d> nodes;
  for (const auto& tri : {tri1, tri2}) {
    const TriangleRule rule = duffy_triangle(order, tri);
    nodes.insert(nodes.end(), rule.points.begin(), rule.points.end());
    weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
  }
  return nodes;
}

// Per-node contributions to the packed stiffness entries. Shared by the
// parallel kernel and the serial reference so the summands are identical.
std::array<double, kPairCount> stiffness_node_contribution(double a,
                                                           const Point2d& x,
                                                           double weight) {
  const Mat2 u = inverse_hessian(a, x);
  const auto grads = test_gradients(x);
  std::array<double, kPairCount> out;
  int e = 0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      const Point2d& gi = grads[i];
      const Point2d& gj = grads[j];
      out[e++] = weight * (gi[0] * (u[0][0] * gj[0] + u[0][1] * gj[1]) +
                           gi[1] * (u[1][0] * gj[0] + u[1][1] * gj[1]));
    }
  }
  return out;
}

SymMatrix assemble_stiffness(double a, int order, Exec exec) {
  std::vector<double> weights;
  const std::vector<Point2d> nodes = trapezoid_nodes(a, order, weights);

  std::vector<std::array<double, kPairCount>> contrib(nodes.size());
  for_each_index(static_cast<std::ptrdiff_t>(nodes.size()), exec, [&](std::size_t k) {
    contrib[k] = stiffness_node_contribution(a, nodes[k], weights[k]);
  });

  // Fixed-order accumulation keeps the result independent of thread count.
  std::array<double, kPairCount> acc{};
  for (const auto& c : contrib)
    for (int e = 0; e < kPairCount; ++e) acc[e] += c[e];

  SymMatrix mt(6);
  int e = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) mt.at(i, j) = acc[e++];
  return mt;
}

const std::array<Polynomial::Exponents, 6>& test_exponents() {
  static const std::array<Polynomial::Exponents, 6> exps = {
      Polynomial::Exponents{0, 0}, Polynomial::Exponents{1, 0},
      Polynomial::Exponents{0, 1}, Polynomial::Exponents{2, 0},
      Polynomial::Exponents{0, 2}, Polynomial::Exponents{1, 1}};
  return exps;
}

}  // namespace

SymMatrix gram_stiffness_reference(double a, int order) {
  std::vector<double> weights;
  const std::vector<Point2d> nodes = trapezoid_nodes(a, order, weights);
  std::array<double, kPairCount> acc{};
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto c = stiffness_node_contribution(a, nodes[k], weights[k]);
    for (int e = 0; e < kPairCount; ++e) acc[e] += c[e];
  }
  SymMatrix mt(6);
  int e = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i; j < 6; ++j) mt.at(i, j) = acc[e++];
  return mt;
}

GramPair gram_matrices(double a, int order, Exec exec) {
  require_parameter(a);
  if (order < 8)
    throw std::invalid_argument("gram_matrices: quadrature order must be >= 8");

  GramPair out{SymMatrix(6), SymMatrix(6), order, {}};

  // Mass matrix from exact degree-4 moments, converted to floats at the end.
  const DelzantPolytope trap = builtin_polytope("trapezoid", rational_from_double(a));
  const MomentTable mt = moments_up_to(trap, 4, Exec::serial);
  const auto& exps = test_exponents();
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      Polynomial::Exponents sum{exps[i][0] + exps[j][0], exps[i][1] + exps[j][1]};
      out.mass.at(i, j) = to_double(mt.interior(sum));
    }
  }

  out.stiffness = assemble_stiffness(a, order, exec);

  // Convergence check against the half-order rule.
  const SymMatrix coarse = assemble_stiffness(a, std::max(4, order / 2), exec);
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      const double denom = std::max(std::abs(out.stiffness.at(i, j)), 1.0);
      worst = std::max(worst,
                       std::abs(out.stiffness.at(i, j) - coarse.at(i, j)) / denom);
    }
  }
  if (worst > 1e-6) {
    std::ostringstream os;
    os << "quadrature not converged: relative change " << worst
       << " between orders " << std::max(4, order / 2) << " and " << order;
    out.warnings.push_back(os.str());
  }
  return out;
}

double rayleigh_ritz(double a, int order, Exec exec) {
  const GramPair gram = gram_matrices(a, order, exec);
  EigenResult eig;
  try {
    eig = generalized_symmetric_eigen(gram.stiffness, gram.mass);
  } catch (const NumericError& e) {
    throw NumericError(std::string("Rayleigh-Ritz mass matrix: ") + e.what());
  }
  const double largest = std::abs(eig.values.back());
  for (double v : eig.values)
    if (v > 1e-9 * largest) return v / family_scale(a);
  throw NumericError("Rayleigh-Ritz pencil has no positive eigenvalue");
}

std::vector<SweepRecord> sweep(double a_min, double a_max, int count, int order,
                               Exec exec) {
  if (!(a_min > -1.0 && a_max < 2.0 && a_min < a_max))
    throw InputError("sweep grid must satisfy -1 < a_min < a_max < 2");
  if (count < 2) throw InputError("sweep needs at least 2 grid points");

  std::vector<SweepRecord> records(count);
  const double step = (a_max - a_min) / (count - 1);
  // One parallel level only: when the sweep is parallel the per-point
  // quadrature runs serial, and vice versa.
  const Exec inner = exec == Exec::parallel ? Exec::serial : Exec::parallel;
  for_each_index(count, exec, [&](std::size_t k) {
    SweepRecord& rec = records[k];
    rec.a = a_min + static_cast<double>(k) * step;
    try {
      const QuotientCoefficients q = quotient_coefficients(rec.a);
      const double scale = family_scale(rec.a);
      rec.bound_anti_invariant = q.branch_value(-1) / scale;
      rec.bound_invariant = q.branch_value(+1) / scale;
      if (rec.bound_anti_invariant <= rec.bound_invariant) {
        rec.bound = rec.bound_anti_invariant;
        rec.branch = Branch::anti_invariant;
      } else {
        rec.bound = rec.bound_invariant;
        rec.branch = Branch::invariant;
      }
      rec.rayleigh_ritz = toric::rayleigh_ritz(rec.a, order, inner);
      rec.gap = rec.bound - rec.rayleigh_ritz;
    } catch (const std::exception& e) {
      rec.error = e.what();
    }
  });
  return records;
}

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << "a,bound_antiinv,bound_inv,bound,branch,rayleigh_ritz,gap\n";
  for (const auto& r : records) {
    if (!r.error.empty()) {
      os << fmt12(r.a) << ",nan,nan,nan,error,nan,nan\n";
      continue;
    }
    os << fmt12(r.a) << ',' << fmt12(r.bound_anti_invariant) << ','
       << fmt12(r.bound_invariant) << ',' << fmt12(r.bound) << ','
       << branch_name(r.branch) << ',' << fmt12(r.rayleigh_ritz) << ','
       << fmt12(r.gap) << '\n';
  }
}

std::string gnuplot_script(const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set xlabel 'a'\n"
     << "set terminal svg size 800,600\n"
     << "set output 'bound.svg'\n"
     << "plot '" << csv_path << "' using 1:4 with lines title 'bound'\n"
     << "set output 'rayleigh_ritz.svg'\n"
     << "plot '" << csv_path << "' using 1:6 with lines title 'Rayleigh-Ritz'\n"
     << "set output 'gap.svg'\n"
     << "plot '" << csv_path << "' using 1:7 with lines title 'bound - Rayleigh-Ritz'\n";
  return os.str();
}

}  // namespace toric
