#include "toric/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <utility>

#include "toric/bounds.hpp"
#include "toric/calabi.hpp"
#include "toric/integrate.hpp"
#include "toric/polytope.hpp"
#include "toric/rational_linalg.hpp"
#include "toric/rng.hpp"

namespace toric {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool pass = true;
  std::ostringstream detail;
  int items = 0;

  void expect(bool ok, const std::string& what) {
    ++items;
    if (!ok) {
      pass = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
};

CheckResult finish(const std::string& name, Checker& c, Clock::time_point start) {
  CheckResult r;
  r.name = name;
  r.pass = c.pass;
  r.millis = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  r.detail = c.pass ? std::to_string(c.items) + " assertions" : c.detail.str();
  return r;
}

Polynomial::Exponents exps2(int a, int b) { return Polynomial::Exponents{a, b}; }

// 100-point default grid shared by checks 4 and 6.
std::vector<double> default_grid() {
  std::vector<double> grid(100);
  for (int k = 0; k < 100; ++k) grid[k] = -0.99 + k * (1.99 - -0.99) / 99.0;
  return grid;
}

CheckResult check_projective_space_bound() {
  const auto start = Clock::now();
  Checker c;
  for (int n = 1; n <= 5; ++n) {
    const auto p = builtin_polytope("cpn", Rational(n));
    const Rational vol_expected =
        rat_pow(Rational(n + 1), static_cast<unsigned>(n)) / factorial(n);
    c.expect(p.volume() == vol_expected,
             "cpn(" + std::to_string(n) + ") volume != (n+1)^n/n!");

    const MomentTable mt = moments_up_to(p, 2);
    Polynomial::Exponents x1sq(n, 0);
    x1sq[0] = 2;
    c.expect(mt.interior(x1sq) == vol_expected * Rational(n) / Rational(n + 2),
             "cpn(" + std::to_string(n) + ") second moment != vol * n/(n+2)");
    const Rational boundary_expected =
        Rational(n) * rat_pow(Rational(n + 1), static_cast<unsigned>(n + 1)) /
        factorial(static_cast<unsigned>(n + 1));
    c.expect(mt.boundary(x1sq) == boundary_expected,
             "cpn(" + std::to_string(n) + ") boundary x1^2 != n(n+1)^{n+1}/(n+1)!");

    const BoundResult b = curvature_bound(p);
    c.expect(std::abs(b.value - (n + 2)) <= 1e-10,
             "cpn(" + std::to_string(n) + ") bound " + std::to_string(b.value) +
                 " != n+2");
  }
  return finish("projective-space bound equals n+2 with exact moment ratios", c, start);
}

CheckResult check_extremal_scalar(bool tamper) {
  const auto start = Clock::now();
  Checker c;
  for (int k = 0; k < 20; ++k) {
    const Rational a = make_rational(-9, 10) + make_rational(7 * k, 50);
    const auto p = builtin_polytope("trapezoid", a);
    const ScalarAffine s = solve_extremal_scalar(p);
    Rational slope, offset;
    exact_extremal_coefficients(a, slope, offset);
    if (tamper) slope *= Rational(1000001, 1000000);
    c.expect(s.gradient[0] == slope && s.gradient[1] == slope,
             "trapezoid(" + to_string(a) + ") slope " + to_string(s.gradient[0]) +
                 " != closed form " + to_string(slope));
    c.expect(s.constant == offset,
             "trapezoid(" + to_string(a) + ") offset mismatch");
  }
  return finish("extremal scalar curvature matches the closed form exactly", c, start);
}

CheckResult check_product_tightness() {
  const auto start = Clock::now();
  Checker c;
  const Rational params[] = {Rational(1), Rational(3, 2), Rational(2), Rational(3)};
  for (const Rational& a : params) {
    const auto p = builtin_polytope("rectangle", a);
    const BoundResult b = extremal_bound(p);
    const double expected = 2.0 / to_double(a);
    c.expect(std::abs(b.value - expected) <= 1e-12,
             "rectangle(" + to_string(a) + ") bound " + std::to_string(b.value) +
                 " != 2/a");
    const auto spectrum = product_sphere_spectrum(to_double(a), 6);
    double first_nonzero = 0.0;
    for (double v : spectrum)
      if (v > 1e-12) { first_nonzero = v; break; }
    c.expect(std::abs(b.value - first_nonzero) <= 1e-12,
             "rectangle(" + to_string(a) + ") bound != first spectrum entry");
  }
  return finish("product-of-spheres bound is tight (2/a, equals true spectrum)", c,
                start);
}

CheckResult check_closed_form_match() {
  const auto start = Clock::now();
  Checker c;
  const double a_c = critical_parameter();
  c.expect(std::abs(a_c - 1.2877) <= 5e-5,
           "critical parameter " + std::to_string(a_c) + " != 1.2877 +- 5e-5");
  c.expect(std::abs(branch_switch_polynomial(a_c)) <= 1e-9,
           "switch polynomial not zero at its root");

  const auto grid = default_grid();
  int switch_index = -1;
  int switches = 0;
  Branch prev = Branch::anti_invariant;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double a = grid[k];
    const BoundResult b = extremal_bound(builtin_polytope("trapezoid",
                                                          rational_from_double(a)));
    const double normalized = b.value / family_scale(a);
    const ClosedFormBound cf = closed_form_bound(a);
    if (std::abs(normalized - cf.value) > 1e-9) {
      c.expect(false, "pencil/closed-form mismatch at a = " + std::to_string(a) +
                          " (diff " + std::to_string(normalized - cf.value) + ")");
    }
    ++c.items;
    // Which branch actually minimizes the quotient (the argmin, not the
    // piecewise selector).
    const QuotientCoefficients q = quotient_coefficients(a);
    const Branch argmin = q.branch_value(-1) <= q.branch_value(+1)
                              ? Branch::anti_invariant
                              : Branch::invariant;
    if (k > 0 && argmin != prev) {
      ++switches;
      switch_index = static_cast<int>(k);
    }
    prev = argmin;
  }
  c.expect(switches == 1, "expected exactly one branch switch on the grid");
  if (switches == 1) {
    c.expect(grid[switch_index - 1] <= a_c && a_c <= grid[switch_index],
             "branch switch not bracketed by one grid step around a_c");
  }

  const double limit = extremal_bound(builtin_polytope(
                           "trapezoid", rational_from_double(1.999))).value /
                       family_scale(1.999);
  c.expect(std::abs(limit - 3.0 * std::sqrt(2.0) / 2.0) <= 1e-2,
           "bound at a = 1.999 is " + std::to_string(limit) +
               ", expected ~3*sqrt(2)/2");
  return finish("normalized pencil bound matches the piecewise closed form", c, start);
}

CheckResult check_ode_and_curvature() {
  const auto start = Clock::now();
  Checker c;
  for (int i = 0; i < 10; ++i) {
    const double a = -0.9 + i * (1.9 - -0.9) / 9.0;
    for (int j = 1; j <= 50; ++j) {
      const double t = -a + j * (1.0 + a) / 51.0;
      const double res = extremal_ode_residual(a, t);
      if (std::abs(res) >= 1e-10)
        c.expect(false, "ODE residual " + std::to_string(res) + " at a = " +
                            std::to_string(a) + ", t = " + std::to_string(t));
      ++c.items;
    }
  }

  const double h = 1e-3;
  const double r1 = scalar_curvature_residual(1.0, {0.0, 0.0}, h);
  c.expect(std::abs(r1) < 1e-5, "curvature residual at a=1, origin: " +
                                    std::to_string(r1));
  const double r2 = scalar_curvature_residual(0.0, {-0.2, 0.3}, h);
  c.expect(std::abs(r2) < 1e-5, "curvature residual at a=0, (-0.2,0.3): " +
                                    std::to_string(r2));
  const double coarse = scalar_curvature_residual(0.0, {-0.2, 0.3}, 2.0 * h);
  const double ratio = coarse / r2;
  c.expect(ratio >= 3.5 && ratio <= 4.5,
           "Richardson ratio " + std::to_string(ratio) + " outside [3.5, 4.5]");
  return finish("profile satisfies the extremal ODE; curvature check is O(h^2)", c,
                start);
}

CheckResult check_rayleigh_ritz(int order) {
  const auto start = Clock::now();
  Checker c;
  for (double a : default_grid()) {
    const double rr = rayleigh_ritz(a, order);
    const double cf = closed_form_bound(a).value;
    if (rr > cf + 1e-8)
      c.expect(false, "Rayleigh-Ritz " + std::to_string(rr) + " exceeds bound " +
                          std::to_string(cf) + " at a = " + std::to_string(a));
    ++c.items;
  }

  for (double a : {0.0, 1.0, 1.6}) {
    const double rr32 = rayleigh_ritz(a, 32);
    const double rr64 = rayleigh_ritz(a, 64);
    c.expect(std::abs(rr64 - rr32) <= 1e-8,
             "Rayleigh-Ritz unstable under order doubling at a = " +
                 std::to_string(a) + " (" + std::to_string(rr64 - rr32) + ")");
  }

  // Integration-by-parts spot check: the stiffness block of the linear test
  // functions must reproduce the exact numerator moments of the pencil.
  for (const Rational& a : {Rational(1, 2), Rational(3, 2)}) {
    const double ad = to_double(a);
    const GramPair gram = gram_matrices(ad, order);
    const BoundResult b = extremal_bound(builtin_polytope("trapezoid", a));
    const double n11 = to_double(b.numerator[0][0]);
    const double n12 = to_double(b.numerator[0][1]);
    const double n22 = to_double(b.numerator[1][1]);
    c.expect(std::abs(gram.stiffness.at(1, 1) - n11) <= 1e-6 &&
                 std::abs(gram.stiffness.at(1, 2) - n12) <= 1e-6 &&
                 std::abs(gram.stiffness.at(2, 2) - n22) <= 1e-6,
             "stiffness of linear functions disagrees with exact moments at a = " +
                 to_string(a));
    c.expect(gram.warnings.empty(), "quadrature convergence warning at a = " +
                                        to_string(a));
  }
  return finish("Rayleigh-Ritz refines the bound; quadrature stable and IBP-consistent",
                c, start);
}

CheckResult check_integration_oracles(std::uint64_t seed) {
  const auto start = Clock::now();
  Checker c;

  // Two independent exact routes over random simplices.
  SplitMix64 rng(seed);
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
    s.measure_scale = make_rational(1 + static_cast<long>(rng.below(5)),
                                    1 + static_cast<long>(rng.below(5)));
    Polynomial phi(d);
    phi.add_term(Polynomial::Exponents(d, 0),
                 Rational(static_cast<long>(rng.below(7)) - 3));
    for (int j = 0; j < d; ++j) {
      Polynomial::Exponents e(d, 0);
      e[j] = 1;
      phi.add_term(e, Rational(static_cast<long>(rng.below(7)) - 3));
    }
    const unsigned q = static_cast<unsigned>(rng.below(5));
    const Rational direct = brion_linear_power(s, phi, q);
    const Rational expanded = integrate_polynomial_simplex(s, phi.pow(q));
    if (direct != expanded)
      c.expect(false, "oracle mismatch on random simplex (d = " +
                          std::to_string(d) + ", q = " + std::to_string(q) + ")");
    ++c.items;
    ++done;
  }

  // Monte Carlo against exact values, fixed seed, reproducible bits.
  struct Case {
    DelzantPolytope p;
    Polynomial f;
    double exact;
  };
  std::vector<Case> cases;
  cases.push_back({builtin_polytope("trapezoid", Rational(1)),
                   Polynomial::constant(2, Rational(1)), 4.0});
  cases.push_back({builtin_polytope("rectangle", Rational(1)),
                   Polynomial::variable(2, 0), 0.0});
  cases.push_back({builtin_polytope("cpn", Rational(2)),
                   Polynomial::monomial(2, exps2(2, 0), Rational(1)), 2.25});
  for (const auto& cs : cases) {
    const auto est = monte_carlo_estimate(cs.p, cs.f, 1000000, seed);
    c.expect(std::abs(est.value - cs.exact) <= 3.0 * est.std_error,
             cs.p.name() + ": Monte Carlo " + std::to_string(est.value) +
                 " not within 3 sigma of " + std::to_string(cs.exact));
    const auto rerun = monte_carlo_estimate(cs.p, cs.f, 1000000, seed);
    c.expect(rerun.value == est.value && rerun.std_error == est.std_error,
             cs.p.name() + ": seeded Monte Carlo not reproducible");
  }

  // Lattice normalization: the unit right triangle's hypotenuse has sigma
  // length 1, not sqrt(2).
  std::vector<AffineFunctional> tri;
  tri.push_back(AffineFunctional{{1, 0}, Rational(0)});
  tri.push_back(AffineFunctional{{0, 1}, Rational(0)});
  tri.push_back(AffineFunctional{{-1, -1}, Rational(1)});
  const auto p = DelzantPolytope::from_facets(2, std::move(tri), "unit-triangle");
  bool found = false;
  for (const auto& facet : p.facet_decomposition()) {
    if (facet.functional.normal == std::vector<long long>{-1, -1}) {
      found = true;
      c.expect(facet.sigma_volume() == 1, "hypotenuse sigma length != 1");
    }
  }
  c.expect(found, "hypotenuse facet not found");
  return finish("integration oracles agree exactly; Monte Carlo within 3 sigma", c,
                start);
}

CheckResult check_property_suite(std::uint64_t seed) {
  const auto start = Clock::now();
  Checker c;

  // Delzant checker on builtins and the constructed counterexample.
  for (int n = 1; n <= 5; ++n)
    c.expect(builtin_polytope("cpn", Rational(n)).delzant_report().pass,
             "cpn(" + std::to_string(n) + ") should pass Delzant");
  for (const Rational& a : {Rational(1), Rational(3, 2), Rational(2)})
    c.expect(builtin_polytope("rectangle", a).delzant_report().pass,
             "rectangle should pass Delzant");
  for (const Rational& a : {Rational(0), Rational(1), Rational(3, 2)})
    c.expect(builtin_polytope("trapezoid", a).delzant_report().pass,
             "trapezoid should pass Delzant");
  {
    std::vector<AffineFunctional> skew;
    skew.push_back(AffineFunctional{{1, 0}, Rational(1)});
    skew.push_back(AffineFunctional{{-1, 0}, Rational(1)});
    skew.push_back(AffineFunctional{{1, 2}, Rational(1)});
    skew.push_back(AffineFunctional{{-1, -2}, Rational(1)});
    const auto p = DelzantPolytope::from_facets(2, std::move(skew), "skew-square");
    c.expect(!p.delzant_report().pass,
             "non-unimodular square should fail Delzant");
  }

  // Dilation law: N scales by t^{n+1}, D by t^{n+2}, value by 1/t.
  SplitMix64 rng(seed ^ 0xD11A7E);
  for (const char* which : {"trapezoid", "cpn"}) {
    const auto p = std::string(which) == "cpn"
                       ? builtin_polytope("cpn", Rational(2))
                       : builtin_polytope("trapezoid", Rational(1, 2));
    const BoundResult base = curvature_bound(p);
    for (int rep = 0; rep < 3; ++rep) {
      const Rational t = make_rational(1 + static_cast<long>(rng.below(12)),
                                       1 + static_cast<long>(rng.below(6)));
      const BoundResult scaled = curvature_bound(dilate(p, t));
      const Rational tn1 = rat_pow(t, static_cast<unsigned>(p.dim() + 1));
      const Rational tn2 = rat_pow(t, static_cast<unsigned>(p.dim() + 2));
      bool exact = true;
      for (int i = 0; i < p.dim(); ++i) {
        for (int j = 0; j < p.dim(); ++j) {
          exact = exact && scaled.numerator[i][j] == tn1 * base.numerator[i][j];
          exact = exact && scaled.denominator[i][j] == tn2 * base.denominator[i][j];
        }
      }
      c.expect(exact, std::string(which) + ": moment matrices violate the exact "
                                           "dilation law at t = " + to_string(t));
      c.expect(std::abs(scaled.value - base.value / to_double(t)) <=
                   1e-9 * std::abs(base.value),
               std::string(which) + ": bound does not scale as 1/t");
    }
  }

  // Minimizer direction on the two sides of the critical parameter.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  {
    const BoundResult b =
        extremal_bound(builtin_polytope("trapezoid", Rational(1)));
    c.expect(std::abs(std::abs(b.minimizer_b[0] * inv_sqrt2 -
                               b.minimizer_b[1] * inv_sqrt2) -
                      1.0) <= 1e-7,
             "minimizer below a_c is not along (1, -1)");
  }
  {
    const BoundResult b =
        extremal_bound(builtin_polytope("trapezoid", Rational(8, 5)));
    c.expect(std::abs(std::abs(b.minimizer_b[0] * inv_sqrt2 +
                               b.minimizer_b[1] * inv_sqrt2) -
                      1.0) <= 1e-7,
             "minimizer above a_c is not along (1, 1)");
  }
  return finish("Delzant checker, dilation law and minimizer branches", c, start);
}

}  // namespace

std::vector<CheckResult> run_selfcheck(const CheckOptions& options) {
  std::vector<std::pair<std::string, std::function<CheckResult()>>> checks;
  checks.emplace_back("projective-space bound",
                      [] { return check_projective_space_bound(); });
  checks.emplace_back("extremal scalar curvature", [&] {
    return check_extremal_scalar(options.tamper_extremal_coefficients);
  });
  checks.emplace_back("product tightness", [] { return check_product_tightness(); });
  checks.emplace_back("closed-form match", [] { return check_closed_form_match(); });
  checks.emplace_back("ODE and curvature", [] { return check_ode_and_curvature(); });
  checks.emplace_back("Rayleigh-Ritz",
                      [&] { return check_rayleigh_ritz(options.order); });
  checks.emplace_back("integration oracles",
                      [&] { return check_integration_oracles(options.seed); });
  checks.emplace_back("property suite",
                      [&] { return check_property_suite(options.seed); });

  std::vector<CheckResult> results;
  for (auto& [tag, run] : checks) {
    if (!options.only.empty() && tag.find(options.only) == std::string::npos)
      continue;
    results.push_back(run());
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace toric
