#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toric/errors.hpp"
#include "toric/integrate.hpp"
#include "toric/rational_linalg.hpp"
#include "toric/rng.hpp"

using namespace toric;

namespace {

Simplex unit_simplex2() {
  Simplex s;
  s.dim = 2;
  s.verts = {RatVec{Rational(0), Rational(0)}, RatVec{Rational(1), Rational(0)},
             RatVec{Rational(0), Rational(1)}};
  s.measure_scale = make_rational(1, 2);
  return s;
}

Polynomial::Exponents e2(int a, int b) { return Polynomial::Exponents{a, b}; }

}  // namespace

TEST_CASE("monomial integration over simplices: frozen oracle values") {
  // Dirichlet integral a! b! / (a + b + 2)! on the unit 2-simplex.
  const Simplex s = unit_simplex2();
  CHECK(integrate_monomial_simplex(s, e2(1, 1)) == make_rational(1, 24));
  CHECK(integrate_monomial_simplex(s, e2(0, 0)) == s.measure_scale);
  CHECK(integrate_monomial_simplex(s, e2(2, 0)) == make_rational(1, 12));
  CHECK(integrate_monomial_simplex(s, e2(3, 1)) == make_rational(1, 120));

  const auto p = builtin_polytope("cpn", Rational(2));
  const MomentTable mt = moments_up_to(p, 2);
  CHECK(mt.interior(e2(0, 0)) == make_rational(9, 2));
  CHECK(mt.interior(e2(1, 0)) == 0);
  CHECK(mt.interior(e2(2, 0)) == make_rational(9, 4));
}

TEST_CASE("vertex-power formula matches the known simplex values") {
  for (int n = 1; n <= 4; ++n) {
    const auto p = builtin_polytope("cpn", Rational(n));
    const Simplex& s = p.interior_simplices()[0];
    const Polynomial x1 = Polynomial::variable(n, 0);
    CHECK(brion_linear_power(s, x1, 1) == 0);
    const Rational vol = rat_pow(Rational(n + 1), static_cast<unsigned>(n)) /
                         factorial(static_cast<unsigned>(n));
    CHECK(brion_linear_power(s, x1, 2) == vol * Rational(n) / Rational(n + 2));

    // Facet simplices: vol(facet) * 2!(n-1)!/(n+1)! * n(n+1)/2, same for
    // every facet despite the asymmetric vertex values.
    for (const auto& facet : p.facet_decomposition()) {
      REQUIRE(facet.simplices.size() == 1);
      const Simplex& fs = facet.simplices[0];
      const Rational expected = fs.measure_scale * 2 *
                                factorial(static_cast<unsigned>(n - 1)) /
                                factorial(static_cast<unsigned>(n + 1)) *
                                Rational(n * (n + 1)) / 2;
      CHECK(brion_linear_power(fs, x1, 2) == expected);
    }
  }
  CHECK_THROWS(brion_linear_power(unit_simplex2(),
                                  Polynomial::monomial(2, e2(2, 0), Rational(1)), 1));
}

TEST_CASE("oracle equivalence on 200 random simplex/affine/power triples") {
  SplitMix64 rng(314159);
  int done = 0;
  while (done < 200) {
    const int d = 1 + static_cast<int>(rng.below(3));
    Simplex s;
    s.dim = d;
    for (int v = 0; v <= d; ++v) {
      RatVec pt(d);
      for (int j = 0; j < d; ++j)
        pt[j] = Rational(static_cast<long>(rng.below(9)) - 4);
      s.verts.push_back(std::move(pt));
    }
    if (affine_rank(s.verts) != d) continue;
    s.measure_scale = make_rational(1 + static_cast<long>(rng.below(6)),
                                    1 + static_cast<long>(rng.below(4)));
    Polynomial phi(d);
    phi.add_term(Polynomial::Exponents(d, 0),
                 Rational(static_cast<long>(rng.below(7)) - 3));
    for (int j = 0; j < d; ++j) {
      Polynomial::Exponents e(d, 0);
      e[j] = 1;
      phi.add_term(e, Rational(static_cast<long>(rng.below(7)) - 3));
    }
    const unsigned q = static_cast<unsigned>(rng.below(5));
    CHECK(brion_linear_power(s, phi, q) ==
          integrate_polynomial_simplex(s, phi.pow(q)));
    ++done;
  }
}

TEST_CASE("polytope integrals: trapezoid moments and centroid") {
  for (const char* text : {"0", "1", "3/2", "-1/2", "19/10"}) {
    const Rational a = parse_rational(text);
    const auto p = builtin_polytope("trapezoid", a);
    const Polynomial one = Polynomial::constant(2, Rational(1));
    const Polynomial x1 = Polynomial::variable(2, 0);
    CHECK(integrate_over_polytope(p, one) == (1 + a) * (5 - a) / 2);
    CHECK(integrate_over_polytope(p, x1) == (1 + a) * (2 - a) * (2 - a) / 6);
    const RatVec c = centroid(p);
    const Rational expected = (2 - a) * (2 - a) / (3 * (5 - a));
    CHECK(c[0] == expected);
    CHECK(c[1] == expected);
    CHECK(integrate_over_polytope(p, Polynomial(2)) == 0);
  }

  for (int n = 1; n <= 4; ++n) {
    for (const Rational& c : centroid(builtin_polytope("cpn", Rational(n))))
      CHECK(c == 0);
  }
  for (const Rational& c : centroid(builtin_polytope("rectangle", Rational(2))))
    CHECK(c == 0);
}

TEST_CASE("boundary integrals with the sigma measure") {
  const auto simplex = builtin_polytope("cpn", Rational(2));
  const Polynomial x1sq = Polynomial::monomial(2, e2(2, 0), Rational(1));
  CHECK(integrate_over_boundary(simplex, x1sq) == 9);

  for (const Rational& a : {Rational(1), make_rational(3, 2), Rational(2)}) {
    const auto rect = builtin_polytope("rectangle", a);
    CHECK(integrate_over_boundary(rect, x1sq) ==
          4 * a + 4 * a * a * a / 3);
    const Polynomial one = Polynomial::constant(2, Rational(1));
    CHECK(integrate_over_boundary(rect, one) == 4 * a + 4 / a);
  }

  // Positivity of the sigma perimeter.
  for (const char* text : {"0", "1", "3/2"})
    CHECK(builtin_polytope("trapezoid", parse_rational(text)).boundary_measure() > 0);
}

TEST_CASE("moment table symmetry and the simplex moment ratio") {
  const auto trap = builtin_polytope("trapezoid", make_rational(4, 5));
  const MomentTable mt = moments_up_to(trap, 3);
  CHECK(mt.interior(e2(1, 0)) == mt.interior(e2(0, 1)));
  CHECK(mt.interior(e2(2, 1)) == mt.interior(e2(1, 2)));
  CHECK(mt.boundary(e2(1, 0)) == mt.boundary(e2(0, 1)));

  // boundary(x1^2) / central second moment = n + 2, exactly.
  for (int n = 1; n <= 5; ++n) {
    const auto p = builtin_polytope("cpn", Rational(n));
    Polynomial::Exponents sq(n, 0);
    sq[0] = 2;
    const MomentTable m = moments_up_to(p, 2);
    CHECK(m.boundary(sq) / m.interior(sq) == n + 2);
  }
}

TEST_CASE("translation covariance, linearity, triangulation independence") {
  const auto trap = builtin_polytope("trapezoid", make_rational(1, 3));
  SplitMix64 rng(8);
  for (int rep = 0; rep < 5; ++rep) {
    Polynomial f(2);
    for (const auto& alpha : monomials_up_to(2, 3))
      f.add_term(alpha, Rational(static_cast<long>(rng.below(9)) - 4));
    const RatVec shift{make_rational(static_cast<long>(rng.below(7)) - 3, 4),
                       make_rational(static_cast<long>(rng.below(7)) - 3, 5)};

    // int_P f(x + s) dx = int_{P + s} f(y) dy: compare coefficient shifting
    // against integrating over the translated polytope, whose facets are
    // psi'(y) = psi(y - s).
    std::vector<AffineFunctional> facets = trap.facets();
    for (auto& fac : facets) {
      Rational dot(0);
      for (int j = 0; j < 2; ++j) dot += rational_of(fac.normal[j]) * shift[j];
      fac.offset -= dot;
    }
    const auto shifted = DelzantPolytope::from_facets(2, std::move(facets));
    CHECK(integrate_over_polytope(trap, f.translated(shift)) ==
          integrate_over_polytope(shifted, f));

    // Linearity.
    Polynomial g(2);
    g.add_term(e2(1, 1), make_rational(7, 3));
    g.add_term(e2(0, 2), Rational(-2));
    CHECK(integrate_over_polytope(trap, f + g) ==
          integrate_over_polytope(trap, f) + integrate_over_polytope(trap, g));

    // Triangulation independence: integrate over each alternative fan.
    for (std::size_t apex = 0; apex < trap.vertices().size(); ++apex) {
      Rational total(0);
      for (const auto& s : trap.triangulate_interior_from(apex))
        total += integrate_polynomial_simplex(s, f);
      CHECK(total == integrate_over_polytope(trap, f));
    }
  }
}

TEST_CASE("monte carlo oracle within three standard errors") {
  const auto trap = builtin_polytope("trapezoid", Rational(1));
  const auto est = monte_carlo_estimate(trap, Polynomial::constant(2, Rational(1)),
                                        1000000, 20177);
  CHECK(std::abs(est.value - 4.0) <= 3.0 * est.std_error);

  const auto square = builtin_polytope("rectangle", Rational(1));
  const auto est2 =
      monte_carlo_estimate(square, Polynomial::variable(2, 0), 1000000, 20177);
  CHECK(std::abs(est2.value) <= 3.0 * est2.std_error);

  const auto simplex = builtin_polytope("cpn", Rational(2));
  const auto est3 = monte_carlo_estimate(
      simplex, Polynomial::monomial(2, e2(2, 0), Rational(1)), 1000000, 20177);
  CHECK(std::abs(est3.value - 2.25) <= 3.0 * est3.std_error);

  // Deterministic for a fixed seed.
  const auto rerun = monte_carlo_estimate(trap, Polynomial::constant(2, Rational(1)),
                                          1000000, 20177);
  CHECK(rerun.value == est.value);
  CHECK(rerun.std_error == est.std_error);

  CHECK_THROWS(monte_carlo_estimate(trap, Polynomial(2), 10, 1));
}
