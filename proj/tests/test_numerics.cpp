#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "toric/errors.hpp"
#include "toric/quadrature.hpp"
#include "toric/rational.hpp"
#include "toric/rng.hpp"
#include "toric/roots.hpp"
#include "toric/sym_eigen.hpp"

using namespace toric;

namespace {

Rational random_rational(SplitMix64& rng) {
  const long num = static_cast<long>(rng.below(2001)) - 1000;
  const long den = 1 + static_cast<long>(rng.below(50));
  return make_rational(num, den);
}

}  // namespace

TEST_CASE("rational field axioms on random operands") {
  SplitMix64 rng(42);
  for (int i = 0; i < 300; ++i) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const Rational c = random_rational(rng);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + 0 == a);
    CHECK(a * 1 == a);
    CHECK(a - a == 0);
    if (b != 0) CHECK(a / b * b == a);
  }
}

TEST_CASE("rational parse/print round-trip and canonical form") {
  SplitMix64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational q = random_rational(rng);
    CHECK(parse_rational(to_string(q)) == q);
  }
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("5/-10")) == "-1/2");
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1.5"), InputError);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
  CHECK(rational_from_double(0.5) == make_rational(1, 2));
  CHECK(rational_from_double(0.1) != make_rational(1, 10));  // binary 0.1 is not 1/10
}

TEST_CASE("eigen pencil: diagonal and identity cases") {
  SymMatrix a(2), b(2);
  a.at(0, 0) = 16.0 / 3.0;
  a.at(1, 1) = 16.0 / 3.0;
  b.at(0, 0) = 4.0 / 3.0;
  b.at(1, 1) = 4.0 / 3.0;
  const auto eig = generalized_symmetric_eigen(a, b);
  CHECK(eig.values.front() == doctest::Approx(4.0).epsilon(1e-13));

  SymMatrix id(3);
  for (int i = 0; i < 3; ++i) id.at(i, i) = 1.0;
  const auto all_one = generalized_symmetric_eigen(id, id);
  for (double v : all_one.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigen pencil: swap-symmetric 2x2 closed form") {
  // [[a, b/2], [b/2, a]] vs [[c, d/2], [d/2, c]] has eigenvectors (1, +-1)
  // and eigenvalues (2a +- b) / (2c +- d).
  const double pa = 3.0, pb = -1.4, pc = 2.0, pd = 0.6;
  SymMatrix a(2), b(2);
  a.at(0, 0) = pa; a.at(1, 1) = pa; a.at(0, 1) = pb / 2.0;
  b.at(0, 0) = pc; b.at(1, 1) = pc; b.at(0, 1) = pd / 2.0;
  const auto eig = generalized_symmetric_eigen(a, b);
  const double plus = (2.0 * pa + pb) / (2.0 * pc + pd);
  const double minus = (2.0 * pa - pb) / (2.0 * pc - pd);
  CHECK(eig.values.front() == doctest::Approx(std::min(plus, minus)).epsilon(1e-12));
  CHECK(eig.values.back() == doctest::Approx(std::max(plus, minus)).epsilon(1e-12));
  for (const auto& v : eig.vectors)
    CHECK(std::abs(std::abs(v[0]) - std::abs(v[1])) < 1e-10);
}

TEST_CASE("eigen backward error on random SPD pencils up to order 8") {
  SplitMix64 rng(99);
  for (int order = 2; order <= 8; ++order) {
    for (int rep = 0; rep < 20; ++rep) {
      SymMatrix a(order), b(order);
      // SPD via M = R R^T + eps I.
      std::vector<std::vector<double>> ra(order, std::vector<double>(order));
      std::vector<std::vector<double>> rb(order, std::vector<double>(order));
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) {
          ra[i][j] = rng.uniform() * 2.0 - 1.0;
          rb[i][j] = rng.uniform() * 2.0 - 1.0;
        }
      for (int i = 0; i < order; ++i)
        for (int j = 0; j <= i; ++j) {
          double sa = 0.0, sb = 0.0;
          for (int k = 0; k < order; ++k) {
            sa += ra[i][k] * ra[j][k];
            sb += rb[i][k] * rb[j][k];
          }
          a.at(i, j) = sa;
          b.at(i, j) = sb + (i == j ? 0.5 : 0.0);
        }
      const auto eig = generalized_symmetric_eigen(a, b);
      const double norm_a = a.frobenius_norm();
      for (std::size_t k = 0; k < eig.values.size(); ++k) {
        double worst = 0.0;
        for (int i = 0; i < order; ++i) {
          double av = 0.0, bv = 0.0;
          for (int j = 0; j < order; ++j) {
            av += a.at(i, j) * eig.vectors[k][j];
            bv += b.at(i, j) * eig.vectors[k][j];
          }
          worst = std::max(worst, std::abs(av - eig.values[k] * bv));
        }
        CHECK(worst <= 1e-10 * norm_a);
      }
    }
  }
}

TEST_CASE("cholesky names the failing pivot") {
  SymMatrix b(2);
  b.at(0, 0) = 1.0;
  b.at(1, 1) = -1.0;
  CHECK_THROWS_WITH_AS(cholesky_lower(b),
                       doctest::Contains("pivot 1"), NumericError);
}

TEST_CASE("gauss-legendre basics") {
  const auto rule2 = gauss_legendre(2);
  CHECK(rule2.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rule2.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(rule2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rule2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  for (int order : {1, 3, 8, 33, 64}) {
    const auto rule = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    // Exact for degree 2*order - 1: check odd powers vanish and an even
    // moment matches 2/(k+1).
    const int k = std::min(2 * order - 2, 10);
    double even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      even += rule.weights[i] * std::pow(rule.nodes[i], k);
      odd += rule.weights[i] * std::pow(rule.nodes[i], std::min(2 * order - 1, 11));
    }
    CHECK(even == doctest::Approx(2.0 / (k + 1)).epsilon(1e-13));
    CHECK(std::abs(odd) < 1e-13);
  }
  CHECK_THROWS(gauss_legendre(0));
  CHECK_THROWS(gauss_legendre(257));
}

TEST_CASE("duffy triangle rule integrates exactly and stays interior") {
  const std::array<Point2, 3> unit{{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}};
  const auto rule = duffy_triangle(8, unit);
  double wsum = 0.0, xy = 0.0;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    wsum += rule.weights[i];
    xy += rule.weights[i] * rule.points[i][0] * rule.points[i][1];
    CHECK(rule.points[i][0] > 0.0);
    CHECK(rule.points[i][1] > 0.0);
    CHECK(rule.points[i][0] + rule.points[i][1] < 1.0);
  }
  CHECK(wsum == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(xy == doctest::Approx(1.0 / 24.0).epsilon(1e-12));

  const std::array<Point2, 3> tri{{{-1.0, 2.0}, {2.0, -1.0}, {0.0, -1.0}}};
  const auto mapped = duffy_triangle(12, tri);
  double area = 0.0;
  for (double w : mapped.weights) area += w;
  CHECK(area == doctest::Approx(3.0).epsilon(1e-13));  // |det|/2 = 6/2
}

TEST_CASE("bisection root finding") {
  CHECK(bisect_root([](double x) { return x; }, -1.0, 1.0, 1e-12) ==
        doctest::Approx(0.0).epsilon(1e-11));
  CHECK(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK_THROWS(bisect_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12));
}
