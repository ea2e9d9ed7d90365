#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "toric/errors.hpp"
#include "toric/polytope.hpp"
#include "toric/rational_linalg.hpp"
#include "toric/rng.hpp"

using namespace toric;

namespace {

RatVec pt(long x, long y) { return RatVec{Rational(x), Rational(y)}; }

bool has_vertex(const DelzantPolytope& p, const RatVec& v) {
  return std::find(p.vertices().begin(), p.vertices().end(), v) !=
         p.vertices().end();
}

// Random unimodular integer matrix as a product of elementary shears/swaps.
std::vector<std::vector<long long>> random_unimodular(int n, SplitMix64& rng) {
  std::vector<std::vector<long long>> u(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  for (int step = 0; step < 6; ++step) {
    const int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n));
    if (i == j) j = (j + 1) % n;
    const long long c = static_cast<long long>(rng.below(5)) - 2;
    for (int k = 0; k < n; ++k) u[i][k] += c * u[j][k];  // row_i += c row_j
    if (rng.below(2)) std::swap(u[i], u[j]);
  }
  return u;
}

// Lattice map x -> U x sends facets <nu, x> + c to <U^-T nu, x> + c.
DelzantPolytope apply_lattice_map(const DelzantPolytope& p,
                                  const std::vector<std::vector<long long>>& u) {
  const int n = p.dim();
  RatMat ur(n, RatVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ur[i][j] = rational_of(u[i][j]);
  std::vector<AffineFunctional> facets;
  for (const auto& f : p.facets()) {
    // Solve U^T m = nu for m = U^-T nu.
    RatMat ut(n, RatVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ut[i][j] = ur[j][i];
    RatVec rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = rational_of(f.normal[i]);
    const auto m = solve_linear(ut, rhs);
    REQUIRE(m.has_value());
    std::vector<long long> normal(n);
    for (int i = 0; i < n; ++i) {
      REQUIRE((*m)[i].get_den() == 1);
      normal[i] = static_cast<long long>((*m)[i].get_num().get_si());
    }
    facets.push_back(AffineFunctional{std::move(normal), f.offset});
  }
  return DelzantPolytope::from_facets(n, std::move(facets));
}

}  // namespace

TEST_CASE("vertex enumeration on the model families") {
  const auto simplex = builtin_polytope("cpn", Rational(2));
  CHECK(simplex.vertices().size() == 3);
  CHECK(has_vertex(simplex, pt(2, -1)));
  CHECK(has_vertex(simplex, pt(-1, 2)));
  CHECK(has_vertex(simplex, pt(-1, -1)));

  const auto square = builtin_polytope("rectangle", Rational(1));
  CHECK(square.vertices().size() == 4);
  for (long sx : {-1, 1})
    for (long sy : {-1, 1}) CHECK(has_vertex(square, pt(sx, sy)));

  const auto trap = builtin_polytope("trapezoid", Rational(1));
  CHECK(trap.vertices().size() == 4);
  CHECK(has_vertex(trap, pt(-1, 2)));
  CHECK(has_vertex(trap, pt(2, -1)));
  CHECK(has_vertex(trap, pt(-1, 0)));
  CHECK(has_vertex(trap, pt(0, -1)));
}

TEST_CASE("unbounded and empty inputs produce certificates") {
  std::vector<AffineFunctional> half;
  half.push_back(AffineFunctional{{1, 0}, Rational(1)});
  half.push_back(AffineFunctional{{0, 1}, Rational(1)});
  CHECK_THROWS_AS(DelzantPolytope::from_facets(2, std::move(half)), GeometryError);
  try {
    std::vector<AffineFunctional> again;
    again.push_back(AffineFunctional{{1, 0}, Rational(1)});
    again.push_back(AffineFunctional{{0, 1}, Rational(1)});
    DelzantPolytope::from_facets(2, std::move(again));
  } catch (const GeometryError& e) {
    CHECK(e.kind == GeometryError::Kind::unbounded);
    CHECK(std::string(e.what()).find("direction") != std::string::npos);
  }

  std::vector<AffineFunctional> empty;
  empty.push_back(AffineFunctional{{1}, Rational(-2)});   // x >= 2
  empty.push_back(AffineFunctional{{-1}, Rational(1)});   // x <= 1
  CHECK_THROWS_AS(DelzantPolytope::from_facets(1, std::move(empty)), GeometryError);
}

TEST_CASE("delzant check: builtins pass, skewed square fails") {
  for (int n = 1; n <= 5; ++n)
    CHECK(check_delzant(builtin_polytope("cpn", Rational(n))).pass);
  for (const char* a : {"0", "1", "3/2"})
    CHECK(check_delzant(builtin_polytope("trapezoid", parse_rational(a))).pass);

  std::vector<AffineFunctional> skew;
  skew.push_back(AffineFunctional{{1, 0}, Rational(1)});
  skew.push_back(AffineFunctional{{-1, 0}, Rational(1)});
  skew.push_back(AffineFunctional{{1, 2}, Rational(1)});
  skew.push_back(AffineFunctional{{-1, -2}, Rational(1)});
  const auto p = DelzantPolytope::from_facets(2, std::move(skew));
  const auto report = check_delzant(p);
  CHECK(!report.pass);
  for (const auto& e : report.entries) {
    CHECK(e.active_facets.size() == 2);
    CHECK(abs(e.normal_det) == 2);
  }
  // Accepted with a warning, not rejected.
  CHECK(!p.warnings().empty());
}

TEST_CASE("interior triangulation: counts, volumes, apex independence") {
  const auto simplex = builtin_polytope("cpn", Rational(2));
  CHECK(simplex.interior_simplices().size() == 1);
  CHECK(simplex.volume() == make_rational(9, 2));

  const auto rect = builtin_polytope("rectangle", Rational(2));
  CHECK(rect.interior_simplices().size() == 2);
  for (const auto& s : rect.interior_simplices()) CHECK(s.measure_scale == 2);

  for (const char* text : {"0", "1", "3/2", "-1/2"}) {
    const Rational a = parse_rational(text);
    const auto trap = builtin_polytope("trapezoid", a);
    CHECK(trap.interior_simplices().size() == 2);
    const Rational expected = (1 + a) * (5 - a) / 2;
    CHECK(trap.volume() == expected);
    for (std::size_t apex = 0; apex < trap.vertices().size(); ++apex) {
      Rational total(0);
      for (const auto& s : trap.triangulate_interior_from(apex))
        total += s.measure_scale;
      CHECK(total == expected);
    }
  }

  // 20 rational parameters, exact volume formula.
  for (int k = 0; k < 20; ++k) {
    const Rational a = make_rational(-9, 10) + make_rational(7 * k, 50);
    CHECK(builtin_polytope("trapezoid", a).volume() == (1 + a) * (5 - a) / 2);
  }
}

TEST_CASE("higher-dimensional volumes are exact") {
  for (int n = 1; n <= 5; ++n) {
    const auto p = builtin_polytope("cpn", Rational(n));
    CHECK(p.volume() ==
          rat_pow(Rational(n + 1), static_cast<unsigned>(n)) / factorial(n));
  }
}

TEST_CASE("facet decomposition carries lattice-normalized measure") {
  // Unit right triangle: hypotenuse has sigma length 1.
  std::vector<AffineFunctional> tri;
  tri.push_back(AffineFunctional{{1, 0}, Rational(0)});
  tri.push_back(AffineFunctional{{0, 1}, Rational(0)});
  tri.push_back(AffineFunctional{{-1, -1}, Rational(1)});
  const auto p = DelzantPolytope::from_facets(2, std::move(tri));
  for (const auto& f : p.facet_decomposition())
    CHECK(f.sigma_volume() == 1);

  // cpn(2): each facet has sigma length 3.
  const auto simplex = builtin_polytope("cpn", Rational(2));
  for (const auto& f : simplex.facet_decomposition())
    CHECK(f.sigma_volume() == 3);
  CHECK(simplex.boundary_measure() == 9);

  // rectangle(a): sigma lengths 2/a (vertical) and 2a (horizontal).
  const Rational a(3);
  const auto rect = builtin_polytope("rectangle", a);
  for (const auto& f : rect.facet_decomposition()) {
    if (f.functional.normal[0] != 0)
      CHECK(f.sigma_volume() == 2 / a);
    else
      CHECK(f.sigma_volume() == 2 * a);
  }

  // cpn(n): facet sigma volume (n+1)^{n-1}/(n-1)!.
  for (int n = 2; n <= 4; ++n) {
    const auto p2 = builtin_polytope("cpn", Rational(n));
    const Rational expected =
        rat_pow(Rational(n + 1), static_cast<unsigned>(n - 1)) /
        factorial(static_cast<unsigned>(n - 1));
    for (const auto& f : p2.facet_decomposition())
      CHECK(f.sigma_volume() == expected);
  }
}

TEST_CASE("sigma measure is invariant under relabeling and lattice maps") {
  SplitMix64 rng(2024);
  const auto trap = builtin_polytope("trapezoid", make_rational(1, 2));
  for (int rep = 0; rep < 10; ++rep) {
    const auto u = random_unimodular(2, rng);
    const auto mapped = apply_lattice_map(trap, u);
    CHECK(mapped.volume() == trap.volume());
    CHECK(mapped.boundary_measure() == trap.boundary_measure());
  }

  // Relabeling simplex vertices leaves the computed sigma scale unchanged:
  // the scale formula uses |det|, so any vertex order gives the same value.
  const auto facets = trap.facet_decomposition();
  for (const auto& f : facets) {
    for (const auto& s : f.simplices) {
      Simplex rev = s;
      std::reverse(rev.verts.begin(), rev.verts.end());
      RatMat m;
      for (std::size_t i = 1; i < rev.verts.size(); ++i) {
        RatVec e(2);
        for (int j = 0; j < 2; ++j) e[j] = rev.verts[i][j] - rev.verts[0][j];
        m.push_back(std::move(e));
      }
      RatVec nu{rational_of(f.functional.normal[0]), rational_of(f.functional.normal[1])};
      m.push_back(nu);
      Rational nu_sq(0);
      for (long long x : f.functional.normal) nu_sq += rational_of(x) * rational_of(x);
      CHECK(abs(determinant(m)) / nu_sq == s.measure_scale);
    }
  }
}

TEST_CASE("three-dimensional recursion: cube and a sheared-facet simplex") {
  std::vector<AffineFunctional> cube;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {1, -1}) {
      std::vector<long long> nu(3, 0);
      nu[axis] = sign;
      cube.push_back(AffineFunctional{std::move(nu), Rational(1)});
    }
  const auto p = DelzantPolytope::from_facets(3, std::move(cube), "cube");
  CHECK(p.vertices().size() == 8);
  CHECK(p.volume() == 8);
  CHECK(p.boundary_measure() == 24);  // six faces of sigma-area 4
  for (const auto& f : p.facet_decomposition()) CHECK(f.sigma_volume() == 4);
  CHECK(p.delzant_report().pass);
  // Apex-independent volume.
  for (std::size_t apex = 0; apex < 8; ++apex) {
    Rational total(0);
    for (const auto& s : p.triangulate_interior_from(apex))
      total += s.measure_scale;
    CHECK(total == 8);
  }

  // Standard 3-simplex: the slanted facet has Euclidean area sqrt(3)/2 but
  // sigma-area 1/2 (primitive normal of length sqrt(3)).
  std::vector<AffineFunctional> simplex;
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<long long> nu(3, 0);
    nu[axis] = 1;
    simplex.push_back(AffineFunctional{std::move(nu), Rational(0)});
  }
  simplex.push_back(AffineFunctional{{-1, -1, -1}, Rational(1)});
  const auto s = DelzantPolytope::from_facets(3, std::move(simplex));
  CHECK(s.volume() == make_rational(1, 6));
  for (const auto& f : s.facet_decomposition()) CHECK(f.sigma_volume() == make_rational(1, 2));
}

TEST_CASE("builtin parameter validation") {
  CHECK_THROWS_AS(builtin_polytope("trapezoid", Rational(2)), InputError);
  CHECK_THROWS_WITH_AS(builtin_polytope("trapezoid", Rational(2)),
                       doctest::Contains("degenerates"), InputError);
  CHECK_THROWS_AS(builtin_polytope("trapezoid", Rational(-1)), InputError);
  CHECK_THROWS_AS(builtin_polytope("rectangle", make_rational(1, 2)), InputError);
  CHECK_THROWS_AS(builtin_polytope("cpn", make_rational(3, 2)), InputError);
  CHECK_THROWS_AS(builtin_polytope("hexagon", Rational(1)), InputError);
  CHECK_THROWS_AS(parse_builtin("cpn"), InputError);

  // cpn(1) is the interval [-1, 1].
  const auto interval = builtin_polytope("cpn", Rational(1));
  CHECK(interval.dim() == 1);
  CHECK(interval.vertices().size() == 2);
  CHECK(interval.volume() == 2);
  CHECK(interval.boundary_measure() == 2);
}

TEST_CASE("non-primitive normals are reduced with a warning") {
  std::vector<std::string> warnings;
  const auto f = make_functional({2, 4}, Rational(6), &warnings);
  CHECK(f.normal == std::vector<long long>{1, 2});
  CHECK(f.offset == 3);
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(make_functional({0, 0}, Rational(1)), InputError);
}

TEST_CASE("json polytope round-trip and diagnostics") {
  const auto trap = builtin_polytope("trapezoid", make_rational(1, 2));
  const auto round = polytope_from_json_text(polytope_to_json_text(trap));
  CHECK(round.vertices() == trap.vertices());
  CHECK(round.volume() == trap.volume());

  CHECK_THROWS_AS(polytope_from_json_text("{ not json"), InputError);
  CHECK_THROWS_AS(polytope_from_json_text("{\"dim\": 2}"), InputError);
  CHECK_THROWS_AS(
      polytope_from_json_text(
          R"({"dim": 2, "facets": [{"normal": [1.5, 0], "offset": "1"}]})"),
      InputError);
  CHECK_THROWS_AS(
      polytope_from_json_text(
          R"({"dim": 2, "facets": [{"normal": [1, 0, 0], "offset": "1"}]})"),
      InputError);
  // Non-primitive normals load fine (reduced with a warning).
  const auto reduced = polytope_from_json_text(
      R"({"dim": 1, "facets": [{"normal": [2], "offset": "2"},
                                {"normal": [-2], "offset": "2"}]})");
  CHECK(reduced.volume() == 2);
  CHECK(!reduced.warnings().empty());
}

TEST_CASE("dilation scales offsets") {
  const auto p = builtin_polytope("cpn", Rational(2));
  const auto q = dilate(p, Rational(3));
  CHECK(q.volume() == p.volume() * 9);
  CHECK(q.boundary_measure() == p.boundary_measure() * 3);
  CHECK_THROWS_AS(dilate(p, Rational(0)), InputError);
}
