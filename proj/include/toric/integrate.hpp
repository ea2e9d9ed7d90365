#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "toric/parallel.hpp"
#include "toric/polynomial.hpp"
#include "toric/polytope.hpp"

namespace toric {

/// Exact integral of x^alpha over a simplex under its measure_scale, via the
/// barycentric substitution x = sum lambda_i s_i, multinomial expansion and
/// the Dirichlet integral  int lambda^a = d! (prod a_i!) / (d + |a|)! * vol.
Rational integrate_monomial_simplex(const Simplex& s,
                                    const Polynomial::Exponents& alpha);

Rational integrate_polynomial_simplex(const Simplex& s, const Polynomial& f);

/// Vertex-evaluation formula for int_s phi^q with phi affine:
///   vol(s) * d! q! / (q + d)! * sum_{|k| = q} prod_i phi(s_i)^{k_i}.
/// Agrees exactly with integrate_monomial_simplex on the expanded power;
/// the two are kept as independent oracles of each other.
Rational brion_linear_power(const Simplex& s, const Polynomial& phi, unsigned q);

/// Lebesgue integral over the polytope (sum over the interior triangulation).
Rational integrate_over_polytope(const DelzantPolytope& p, const Polynomial& f);

/// Integral over the boundary with the lattice-normalized sigma measure.
Rational integrate_over_boundary(const DelzantPolytope& p, const Polynomial& f);

/// All interior moments m_alpha = int_P x^alpha dmu and boundary moments
/// b_alpha = int_dP x^alpha dsigma with |alpha| <= max_degree, exact.
class MomentTable {
 public:
  MomentTable(int dim, int max_degree, std::string source = {})
      : dim_(dim), max_degree_(max_degree), source_(std::move(source)) {}

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const std::string& source() const { return source_; }  // polytope name

  const Rational& interior(const Polynomial::Exponents& alpha) const;
  const Rational& boundary(const Polynomial::Exponents& alpha) const;

  Rational integrate_interior(const Polynomial& f) const;
  Rational integrate_boundary(const Polynomial& f) const;

  void set(const Polynomial::Exponents& alpha, Rational interior, Rational boundary);

 private:
  int dim_;
  int max_degree_;
  std::string source_;
  std::map<Polynomial::Exponents, Rational> interior_;
  std::map<Polynomial::Exponents, Rational> boundary_;
};

/// The monomial loop is the data-parallel kernel here; each slot is written
/// once, so serial and parallel runs agree exactly (rational arithmetic).
MomentTable moments_up_to(const DelzantPolytope& p, int max_degree,
                          Exec exec = Exec::parallel);

/// Point c with int_P (x_i - c_i) dmu = 0, exact.
RatVec centroid(const DelzantPolytope& p);

struct MonteCarloEstimate {
  double value;
  double std_error;
  double acceptance;
  std::uint64_t samples;
};

/// Rejection sampling in the vertex bounding box; testing oracle only.
/// Throws NumericError when no sample lands inside the polytope.
MonteCarloEstimate monte_carlo_estimate(const DelzantPolytope& p,
                                        const Polynomial& f,
                                        std::uint64_t samples, std::uint64_t seed);

}  // namespace toric
