#include "toric/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace toric {

Polynomial Polynomial::constant(int dim, const Rational& c) {
  Polynomial p(dim);
  p.add_term(Exponents(dim, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int dim, Exponents alpha, const Rational& c) {
  if (static_cast<int>(alpha.size()) != dim)
    throw std::invalid_argument("monomial: exponent arity mismatch");
  Polynomial p(dim);
  p.add_term(std::move(alpha), c);
  return p;
}

Polynomial Polynomial::variable(int dim, int index) {
  Exponents alpha(dim, 0);
  alpha.at(index) = 1;
  return monomial(dim, std::move(alpha), Rational(1));
}

Polynomial Polynomial::affine(const Rational& a0, const RatVec& grad) {
  const int dim = static_cast<int>(grad.size());
  Polynomial p = constant(dim, a0);
  for (int i = 0; i < dim; ++i) {
    Exponents alpha(dim, 0);
    alpha[i] = 1;
    p.add_term(alpha, grad[i]);
  }
  return p;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [alpha, c] : terms_)
    deg = std::max(deg, std::accumulate(alpha.begin(), alpha.end(), 0));
  return deg;
}

Rational Polynomial::coefficient(const Exponents& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponents& alpha, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [alpha, c] : other.terms_) out.add_term(alpha, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  for (const auto& [alpha, c] : other.terms_) out.add_term(alpha, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out(dim_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : other.terms_) {
      Exponents sum(dim_);
      for (int i = 0; i < dim_; ++i) sum[i] = a[i] + b[i];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out(dim_);
  if (c == 0) return out;
  for (const auto& [alpha, coeff] : terms_) out.add_term(alpha, coeff * c);
  return out;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out = constant(dim_, Rational(1));
  for (unsigned i = 0; i < exponent; ++i) out = out * *this;
  return out;
}

Polynomial Polynomial::derivative(int index) const {
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[index] == 0) continue;
    Exponents reduced = alpha;
    --reduced[index];
    out.add_term(reduced, c * Rational(alpha[index]));
  }
  return out;
}

Polynomial Polynomial::translated(const RatVec& shift) const {
  if (static_cast<int>(shift.size()) != dim_)
    throw std::invalid_argument("translated: shift arity mismatch");
  Polynomial out(dim_);
  for (const auto& [alpha, c] : terms_) {
    // Expand prod_i (x_i + shift_i)^alpha_i one variable at a time.
    Polynomial term = constant(dim_, c);
    for (int i = 0; i < dim_; ++i) {
      if (alpha[i] == 0) continue;
      Polynomial base = variable(dim_, i) + constant(dim_, shift[i]);
      term = term * base.pow(static_cast<unsigned>(alpha[i]));
    }
    out = out + term;
  }
  return out;
}

Rational Polynomial::eval(const RatVec& x) const {
  Rational out(0);
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < dim_; ++i)
      if (alpha[i] > 0) term *= rat_pow(x[i], static_cast<unsigned>(alpha[i]));
    out += term;
  }
  return out;
}

double Polynomial::eval(std::span<const double> x) const {
  double out = 0.0;
  for (const auto& [alpha, c] : terms_) {
    double term = to_double(c);
    for (int i = 0; i < dim_; ++i)
      for (int k = 0; k < alpha[i]; ++k) term *= x[i];
    out += term;
  }
  return out;
}

namespace {

void enumerate(int dim, int pos, int remaining, Polynomial::Exponents& cur,
               std::vector<Polynomial::Exponents>& out) {
  if (pos == dim) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[pos] = e;
    enumerate(dim, pos + 1, remaining - e, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Polynomial::Exponents> monomials_up_to(int dim, int degree) {
  std::vector<Polynomial::Exponents> out;
  Polynomial::Exponents cur(dim, 0);
  for (int total = 0; total <= degree; ++total) {
    std::vector<Polynomial::Exponents> level;
    enumerate(dim, 0, total, cur, level);
    for (auto& alpha : level)
      if (std::accumulate(alpha.begin(), alpha.end(), 0) == total)
        out.push_back(std::move(alpha));
  }
  return out;
}

}  // namespace toric
