// Command-line surface: polytope ingestion, the two bound pipelines, the
// extremal-family sweep, and the self-check suite.
//
// Exit codes: 0 success, 1 self-check failure, 2 malformed input,
// 3 infeasible polytope, 4 unwritable output.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "toric/bounds.hpp"
#include "toric/calabi.hpp"
#include "toric/errors.hpp"
#include "toric/integrate.hpp"
#include "toric/polytope.hpp"
#include "toric/selfcheck.hpp"
#include "toric/version.hpp"

namespace {

using namespace toric;

constexpr int kExitCheckFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUnwritable = 4;

struct CommonOptions {
  std::string builtin;
  std::string input;
  std::string out;
  int order = 40;
  int grid = 100;
  double a_min = -0.99;
  double a_max = 1.99;
  bool normalize = false;
  double scale = 0.0;  // 0 = auto (family scale, trapezoid builtins only)
  std::uint64_t seed = 0x5eedULL;
  bool gnuplot = false;
  bool serial = false;
  std::string only;     // check-name filter
  bool tamper = false;  // hidden negative-control hook for the check command
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_metadata(const CommonOptions& opt, const std::string& command) {
  std::cout << "# toricbound " << kVersion << "\n"
            << "# command: " << command;
  if (!opt.builtin.empty()) std::cout << " --builtin " << opt.builtin;
  if (!opt.input.empty()) std::cout << " --input " << opt.input;
  if (command == "calabi")
    std::cout << " --grid " << opt.grid << " --amin " << fmt(opt.a_min)
              << " --amax " << fmt(opt.a_max)
              << (opt.serial ? " --serial" : "");
  std::cout << "\n"
            << "# quadrature order: " << opt.order << "\n"
            << "# seed: " << opt.seed << "\n"
            << "# tolerances: eigen residual 1e-10, quadrature convergence 1e-6\n";
}

DelzantPolytope resolve_polytope(const CommonOptions& opt) {
  if (!opt.builtin.empty() && !opt.input.empty())
    throw InputError("give either --builtin or --input, not both");
  if (!opt.builtin.empty()) return parse_builtin(opt.builtin);
  if (!opt.input.empty()) return load_polytope(opt.input);
  throw InputError("a polytope is required: --builtin name:param or --input FILE");
}

void print_polytope_summary(const DelzantPolytope& p) {
  std::cout << "polytope: " << (p.name().empty() ? "<unnamed>" : p.name())
            << ", dim " << p.dim() << ", " << p.facets().size() << " facets, "
            << p.vertices().size() << " vertices\n";
  std::cout << "vertices:";
  for (const auto& v : p.vertices()) {
    std::cout << " (";
    for (std::size_t j = 0; j < v.size(); ++j)
      std::cout << (j ? "," : "") << to_string(v[j]);
    std::cout << ")";
  }
  std::cout << "\n";
  std::cout << "volume (Lebesgue): " << to_string(p.volume()) << " = "
            << fmt(to_double(p.volume())) << "\n";
  std::cout << "boundary measure (sigma): " << to_string(p.boundary_measure())
            << " = " << fmt(to_double(p.boundary_measure())) << "\n";
  std::cout << "delzant: " << p.delzant_report().summary() << "\n";
  for (const auto& w : p.warnings()) std::cout << "warning: " << w << "\n";
}

void print_bound(const BoundResult& b, const std::string& label) {
  std::cout << label << ": " << fmt(b.value) << "\n";
  std::cout << "minimizer b: (";
  for (std::size_t i = 0; i < b.minimizer_b.size(); ++i)
    std::cout << (i ? ", " : "") << fmt(b.minimizer_b[i]);
  std::cout << ")\n";
  if (b.applied_scale != 1.0)
    std::cout << "normalization scale applied: " << fmt(b.applied_scale) << "\n";
  for (const auto& w : b.warnings) std::cout << "note: " << w << "\n";
}

std::optional<double> auto_scale(const CommonOptions& opt,
                                 const DelzantPolytope& p) {
  if (opt.scale > 0.0) return opt.scale;
  if (!opt.normalize) return std::nullopt;
  if (p.name().rfind("trapezoid:", 0) == 0) {
    const double a = to_double(parse_rational(p.name().substr(10)));
    return family_scale(a);
  }
  throw InputError(
      "--normalize without --scale is only defined for trapezoid builtins "
      "(the one-parameter family); pass an explicit --scale");
}

int run_bound(const CommonOptions& opt) {
  print_metadata(opt, "bound");
  const DelzantPolytope p = resolve_polytope(opt);
  print_polytope_summary(p);
  BoundResult b = curvature_bound(p);
  if (auto s = auto_scale(opt, p)) b = rescale_bound(std::move(b), *s);
  print_bound(b, "bound (non-negative scalar curvature)");
  return 0;
}

int run_extremal(const CommonOptions& opt) {
  print_metadata(opt, "extremal");
  const DelzantPolytope p = resolve_polytope(opt);
  print_polytope_summary(p);
  const ScalarAffine s = solve_extremal_scalar(p);
  std::cout << "extremal scalar curvature: S(x) = " << s.to_string() << "\n";
  std::cout << "  constant = " << fmt(to_double(s.constant));
  for (std::size_t i = 0; i < s.gradient.size(); ++i)
    std::cout << ", grad[" << i + 1 << "] = " << fmt(to_double(s.gradient[i]));
  std::cout << "\n";
  BoundResult b = extremal_bound(p);
  if (auto scale = auto_scale(opt, p)) b = rescale_bound(std::move(b), *scale);
  print_bound(b, "bound (extremal)");
  return 0;
}

int run_calabi(const CommonOptions& opt) {
  print_metadata(opt, "calabi");
  const std::string out_path = opt.out.empty() ? "calabi_sweep.csv" : opt.out;
  const auto records = sweep(opt.a_min, opt.a_max, opt.grid, opt.order,
                             opt.serial ? Exec::serial : Exec::parallel);

  std::ofstream out(out_path);
  if (!out) throw std::ios_base::failure("cannot open " + out_path + " for writing");
  write_sweep_csv(out, records);
  out.flush();
  if (!out) throw std::ios_base::failure("write to " + out_path + " failed");
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";

  if (opt.gnuplot) {
    const std::string script_path = out_path + ".gp";
    std::ofstream gp(script_path);
    if (!gp) throw std::ios_base::failure("cannot open " + script_path);
    gp << gnuplot_script(out_path);
    std::cout << "wrote gnuplot script " << script_path << "\n";
  }

  const double a_c = critical_parameter();
  std::cout << "critical parameter a_c = " << fmt(a_c) << "\n";
  double max_gap = 0.0, max_bound = 0.0;
  int errors = 0;
  for (const auto& r : records) {
    if (!r.error.empty()) { ++errors; continue; }
    max_gap = std::max(max_gap, r.gap);
    max_bound = std::max(max_bound, r.bound);
  }
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k].error.empty() && records[k - 1].error.empty() &&
        records[k].branch != records[k - 1].branch)
      std::cout << "branch switch between a = " << fmt(records[k - 1].a)
                << " and a = " << fmt(records[k].a) << "\n";
  }
  std::cout << "max gap (bound - Rayleigh-Ritz): " << fmt(max_gap) << "\n";
  std::cout << "bound at last grid point: " << fmt(records.back().bound)
            << " (family limit 3*sqrt(2)/2 = " << fmt(3.0 * std::sqrt(2.0) / 2.0)
            << ")\n";
  if (max_bound > 3.0 * std::sqrt(2.0) / 2.0 + 1e-6)
    std::cout << "observation: a grid bound exceeds the limiting value "
              << fmt(max_bound) << "\n";
  if (errors > 0) std::cout << errors << " records failed; see CSV\n";
  return 0;
}

int run_check(const CommonOptions& opt) {
  print_metadata(opt, "check");
  CheckOptions copt;
  copt.order = opt.order;
  copt.seed = opt.seed;
  copt.only = opt.only;
  copt.tamper_extremal_coefficients = opt.tamper;
  const auto results = run_selfcheck(copt);
  if (results.empty()) {
    std::cerr << "no criteria match --only '" << opt.only << "'\n";
    return kExitBadInput;
  }
  bool ok = true;
  int index = 0;
  for (const auto& r : results) {
    ++index;
    std::printf("[%s] %d. %s (%.0f ms)%s%s\n", r.pass ? "PASS" : "FAIL", index,
                r.name.c_str(), r.millis, r.pass ? "" : " -- ",
                r.pass ? "" : r.detail.c_str());
    ok = ok && r.pass;
  }
  std::cout << (ok ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds for the first torus-invariant Laplacian eigenvalue "
               "of toric Kahler metrics, from moment polytope data"};
  app.set_version_flag("--version", toric::kVersion);
  app.require_subcommand(1);

  CommonOptions opt;
  auto add_common = [&](CLI::App* cmd, bool wants_polytope) {
    if (wants_polytope) {
      cmd->add_option("--builtin", opt.builtin,
                      "builtin polytope name:param (cpn:N, rectangle:A, trapezoid:A; "
                      "A as p or p/q)");
      cmd->add_option("--input", opt.input, "polytope JSON file");
    }
    cmd->add_option("--order", opt.order, "quadrature order per direction")
        ->check(CLI::Range(8, 256));
    cmd->add_option("--seed", opt.seed, "PRNG seed");
    return cmd;
  };

  CLI::App* bound = add_common(
      app.add_subcommand("bound", "curvature-hypothesis bound from polytope data"),
      true);
  bound->add_flag("--normalize", opt.normalize, "apply the family scale");
  bound->add_option("--scale", opt.scale, "explicit normalization scale");

  CLI::App* extremal = add_common(
      app.add_subcommand("extremal",
                         "solve the affine scalar curvature and bound extremal metrics"),
      true);
  extremal->add_flag("--normalize", opt.normalize, "apply the family scale");
  extremal->add_option("--scale", opt.scale, "explicit normalization scale");

  CLI::App* calabi = add_common(
      app.add_subcommand("calabi", "sweep the extremal family and emit CSV"), false);
  calabi->add_option("--out", opt.out, "output CSV path (default calabi_sweep.csv)");
  calabi->add_option("--grid", opt.grid, "number of grid points")->check(CLI::Range(2, 100000));
  calabi->add_option("--amin", opt.a_min, "grid start (inside (-1,2))");
  calabi->add_option("--amax", opt.a_max, "grid end (inside (-1,2))");
  calabi->add_flag("--gnuplot-script", opt.gnuplot,
                   "also write a gnuplot script next to the CSV");
  calabi->add_flag("--serial", opt.serial, "disable the parallel sweep");

  CLI::App* check = add_common(
      app.add_subcommand("check", "run the verification suite"), false);
  check->add_option("--only", opt.only, "run only criteria matching this substring");
  check->add_flag("--tamper-alpha", opt.tamper, "negative-control hook")
      ->group("");  // hidden

  CLI11_PARSE(app, argc, argv);

  try {
    if (bound->parsed()) return run_bound(opt);
    if (extremal->parsed()) return run_extremal(opt);
    if (calabi->parsed()) return run_calabi(opt);
    if (check->parsed()) return run_check(opt);
  } catch (const toric::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const toric::GeometryError& e) {
    std::cerr << "infeasible polytope: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitUnwritable;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return 0;
}
