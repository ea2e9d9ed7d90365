#include "toric/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "toric/errors.hpp"
#include "toric/rng.hpp"

namespace toric {

namespace {

// Polynomial in the barycentric variables lambda_0..lambda_d, used for the
// multinomial expansion of x^alpha restricted to a simplex.
using BaryPoly = std::map<std::vector<int>, Rational>;

void compositions(unsigned total, std::size_t parts, std::vector<unsigned>& cur,
                  std::size_t pos, const std::function<void(const std::vector<unsigned>&)>& fn) {
  if (pos + 1 == parts) {
    cur[pos] = total;
    fn(cur);
    return;
  }
  for (unsigned k = 0; k <= total; ++k) {
    cur[pos] = k;
    compositions(total - k, parts, cur, pos + 1, fn);
  }
}

}  // namespace

Rational integrate_monomial_simplex(const Simplex& s,
                                    const Polynomial::Exponents& alpha) {
  const int d = s.dim;
  const std::size_t nverts = s.verts.size();
  const int total = std::accumulate(alpha.begin(), alpha.end(), 0);

  BaryPoly poly;
  poly.emplace(std::vector<int>(nverts, 0), Rational(1));
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    for (int rep = 0; rep < alpha[j]; ++rep) {
      BaryPoly next;
      for (const auto& [expo, coeff] : poly) {
        for (std::size_t i = 0; i < nverts; ++i) {
          const Rational& sij = s.verts[i][j];
          if (sij == 0) continue;
          std::vector<int> e = expo;
          ++e[i];
          auto [it, inserted] = next.emplace(std::move(e), coeff * sij);
          if (!inserted) it->second += coeff * sij;
        }
      }
      poly = std::move(next);
    }
  }

  Rational sum(0);
  for (const auto& [expo, coeff] : poly) {
    Rational prod = coeff;
    for (int e : expo) prod *= factorial(static_cast<unsigned>(e));
    sum += prod;
  }
  return s.measure_scale * factorial(static_cast<unsigned>(d)) /
         factorial(static_cast<unsigned>(d + total)) * sum;
}

Rational integrate_polynomial_simplex(const Simplex& s, const Polynomial& f) {
  Rational out(0);
  for (const auto& [alpha, c] : f.terms())
    out += c * integrate_monomial_simplex(s, alpha);
  return out;
}

Rational brion_linear_power(const Simplex& s, const Polynomial& phi, unsigned q) {
  if (!phi.is_affine())
    throw std::invalid_argument("brion_linear_power: phi must be affine");
  const int d = s.dim;
  std::vector<Rational> values;
  values.reserve(s.verts.size());
  for (const auto& v : s.verts) values.push_back(phi.eval(v));

  Rational sum(0);
  std::vector<unsigned> cur(values.size(), 0);
  compositions(q, values.size(), cur, 0, [&](const std::vector<unsigned>& k) {
    Rational prod(1);
    for (std::size_t i = 0; i < values.size(); ++i)
      if (k[i] > 0) prod *= rat_pow(values[i], k[i]);
    sum += prod;
  });

  return s.measure_scale * factorial(static_cast<unsigned>(d)) * factorial(q) /
         factorial(static_cast<unsigned>(d) + q) * sum;
}

Rational integrate_over_polytope(const DelzantPolytope& p, const Polynomial& f) {
  Rational out(0);
  for (const auto& s : p.interior_simplices())
    out += integrate_polynomial_simplex(s, f);
  return out;
}

Rational integrate_over_boundary(const DelzantPolytope& p, const Polynomial& f) {
  Rational out(0);
  for (const auto& facet : p.facet_decomposition())
    for (const auto& s : facet.simplices) out += integrate_polynomial_simplex(s, f);
  return out;
}

const Rational& MomentTable::interior(const Polynomial::Exponents& alpha) const {
  auto it = interior_.find(alpha);
  if (it == interior_.end())
    throw std::out_of_range("moment table: interior moment beyond table degree");
  return it->second;
}

const Rational& MomentTable::boundary(const Polynomial::Exponents& alpha) const {
  auto it = boundary_.find(alpha);
  if (it == boundary_.end())
    throw std::out_of_range("moment table: boundary moment beyond table degree");
  return it->second;
}

Rational MomentTable::integrate_interior(const Polynomial& f) const {
  Rational out(0);
  for (const auto& [alpha, c] : f.terms()) out += c * interior(alpha);
  return out;
}

Rational MomentTable::integrate_boundary(const Polynomial& f) const {
  Rational out(0);
  for (const auto& [alpha, c] : f.terms()) out += c * boundary(alpha);
  return out;
}

void MomentTable::set(const Polynomial::Exponents& alpha, Rational interior,
                      Rational boundary) {
  interior_[alpha] = std::move(interior);
  boundary_[alpha] = std::move(boundary);
}

MomentTable moments_up_to(const DelzantPolytope& p, int max_degree, Exec exec) {
  const auto alphas = monomials_up_to(p.dim(), max_degree);
  std::vector<Rational> interior(alphas.size());
  std::vector<Rational> boundary(alphas.size());

  for_each_index(static_cast<std::ptrdiff_t>(alphas.size()), exec, [&](std::size_t i) {
    Rational in(0);
    for (const auto& s : p.interior_simplices())
      in += integrate_monomial_simplex(s, alphas[i]);
    Rational bd(0);
    for (const auto& facet : p.facet_decomposition())
      for (const auto& s : facet.simplices)
        bd += integrate_monomial_simplex(s, alphas[i]);
    interior[i] = std::move(in);
    boundary[i] = std::move(bd);
  });

  MomentTable table(p.dim(), max_degree, p.name());
  for (std::size_t i = 0; i < alphas.size(); ++i)
    table.set(alphas[i], std::move(interior[i]), std::move(boundary[i]));
  return table;
}

RatVec centroid(const DelzantPolytope& p) {
  const Rational vol = p.volume();
  RatVec c(p.dim());
  for (int i = 0; i < p.dim(); ++i) {
    Polynomial::Exponents alpha(p.dim(), 0);
    alpha[i] = 1;
    Rational first(0);
    for (const auto& s : p.interior_simplices())
      first += integrate_monomial_simplex(s, alpha);
    c[i] = first / vol;
  }
  return c;
}

MonteCarloEstimate monte_carlo_estimate(const DelzantPolytope& p,
                                        const Polynomial& f,
                                        std::uint64_t samples, std::uint64_t seed) {
  if (samples < 1000)
    throw std::invalid_argument("monte_carlo_estimate: need at least 1000 samples");
  const int n = p.dim();
  std::vector<double> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    Rational lo_r = p.vertices()[0][j], hi_r = p.vertices()[0][j];
    for (const auto& v : p.vertices()) {
      lo_r = std::min(lo_r, v[j]);
      hi_r = std::max(hi_r, v[j]);
    }
    lo[j] = std::nextafter(to_double(lo_r), -1e300);
    hi[j] = std::nextafter(to_double(hi_r), 1e300);
  }
  double boxvol = 1.0;
  for (int j = 0; j < n; ++j) boxvol *= hi[j] - lo[j];

  SplitMix64 rng(seed);
  std::vector<double> x(n);
  double sum = 0.0, sumsq = 0.0;
  std::uint64_t accepted = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    for (int j = 0; j < n; ++j) x[j] = lo[j] + rng.uniform() * (hi[j] - lo[j]);
    double g = 0.0;
    if (p.contains(std::span<const double>(x))) {
      ++accepted;
      g = f.eval(std::span<const double>(x));
    }
    sum += g;
    sumsq += g * g;
  }
  if (accepted == 0)
    throw NumericError("monte_carlo_estimate: no sample hit the polytope");

  const double ns = static_cast<double>(samples);
  const double mean = sum / ns;
  const double var = std::max(0.0, (sumsq - ns * mean * mean) / (ns - 1.0));
  return MonteCarloEstimate{boxvol * mean, boxvol * std::sqrt(var / ns),
                            static_cast<double>(accepted) / ns, samples};
}

}  // namespace toric
