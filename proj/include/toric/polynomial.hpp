#pragma once

#include <map>
#include <span>
#include <vector>

#include "toric/rational.hpp"

namespace toric {

/// Multivariate polynomial with exact rational coefficients, stored as a map
/// from exponent multi-indices to coefficients. Zero coefficients are never
/// stored, so is_zero() means the term map is empty.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(int dim) : dim_(dim) {}

  static Polynomial constant(int dim, const Rational& c);
  static Polynomial monomial(int dim, Exponents alpha, const Rational& c);
  static Polynomial variable(int dim, int index);
  /// a0 + sum grad[i] * x_i
  static Polynomial affine(const Rational& a0, const RatVec& grad);

  int dim() const { return dim_; }
  int degree() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_affine() const { return degree() <= 1; }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const Exponents& alpha) const;
  void add_term(const Exponents& alpha, const Rational& c);

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial pow(unsigned exponent) const;
  Polynomial derivative(int index) const;

  /// Substitutes x_i -> x_i + shift_i.
  Polynomial translated(const RatVec& shift) const;

  Rational eval(const RatVec& x) const;
  double eval(std::span<const double> x) const;

  bool operator==(const Polynomial& other) const {
    return dim_ == other.dim_ && terms_ == other.terms_;
  }

 private:
  int dim_;
  TermMap terms_;
};

/// All exponent multi-indices with |alpha| <= degree, graded lexicographic.
std::vector<Polynomial::Exponents> monomials_up_to(int dim, int degree);

}  // namespace toric
