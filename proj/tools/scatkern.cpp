// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: point evaluation of scattering kernels, grid
// generation with CSV/PGM output, convergence studies, and the closed-form
// Henyey-Greenstein kernels.
//
// Exit codes: 0 success, 1 numeric-domain failure, 2 argument error,
// 3 file I/O failure.  Stdout carries only CSV data; diagnostics go to
// stderr.

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scatkern/scatkern.hpp"

namespace {

using scatkern::format_shortest;

struct PhaseSource {
  std::optional<double> hg_g;
  std::string spec_path;
};

void add_phase_flags(CLI::App* cmd, PhaseSource* src) {
  auto* hg = cmd->add_option("--hg", src->hg_g, "inline Henyey-Greenstein asymmetry factor g");
  auto* spec = cmd->add_option("--phase", src->spec_path, "phase-spec file");
  hg->excludes(spec);
  spec->excludes(hg);
}

// Arguments are validated (including phase construction) before any
// computation starts, so failures here map to exit code 2.
scatkern::PhaseFunction make_phase(const PhaseSource& src) {
  if (src.hg_g.has_value() == !src.spec_path.empty()) {
    throw CLI::ValidationError("phase", "exactly one of --hg and --phase is required");
  }
  if (src.hg_g) {
    try {
      return scatkern::PhaseFunction::henyey_greenstein(*src.hg_g);
    } catch (const std::domain_error& e) {
      throw CLI::ValidationError("--hg", e.what());
    }
  }
  try {
    return scatkern::load_phase_spec(src.spec_path);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--phase", e.what());
  }
}

struct EvalArgs {
  PhaseSource src;
  int m = 0;
  double x = 0.0, y = 0.0;
  std::optional<double> tol;
  std::optional<int> n_override;
  double bound_m = 1.0;
};

void require_tol_xor_n(const std::optional<double>& tol, const std::optional<int>& n) {
  if (tol.has_value() == n.has_value()) {
    throw CLI::ValidationError("nodes", "exactly one of --tol and --n is required");
  }
}

int run_eval(const EvalArgs& a) {
  require_tol_xor_n(a.tol, a.n_override);
  scatkern::PhaseFunction p = make_phase(a.src);
  scatkern::IntegrandGeometry geom;
  try {
    geom = scatkern::IntegrandGeometry::from_xy(a.x, a.y, a.m);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("eval", e.what());
  }
  scatkern::SingularitySet sing = scatkern::singularity_set(p);

  scatkern::TrapezoidPlan plan;
  if (a.tol) {
    plan = scatkern::choose_n(sing, geom, *a.tol, a.bound_m);
  } else {
    plan.geometry = geom;
    plan.bound_m = a.bound_m;
    plan.n_nodes = *a.n_override;
    if (geom.b == 0.0) {
      plan.exact = true;
      plan.alpha = std::numeric_limits<double>::infinity();
    } else {
      plan.alpha = scatkern::strip_half_width(sing, geom);
    }
    plan.predicted_error = scatkern::error_bound(plan).analytic_bound;
  }
  double value = scatkern::trapezoid_kernel(p, a.x, a.y, a.m, plan.n_nodes);
  std::cout << format_shortest(value) << ',' << plan.n_nodes << ','
            << format_shortest(plan.alpha) << ',' << format_shortest(plan.predicted_error)
            << '\n';
  return 0;
}

struct GridArgs {
  PhaseSource src;
  scatkern::GridOptions opt;
  std::optional<double> tol;
  std::optional<int> uniform_n;
  std::string csv_path;
  std::string heatmap_path;
  bool log_scale = false;
};

int run_grid(const GridArgs& a) {
  require_tol_xor_n(a.tol, a.uniform_n);
  scatkern::PhaseFunction p = make_phase(a.src);
  scatkern::GridOptions opt = a.opt;
  opt.tol = a.tol.value_or(0.0);
  opt.uniform_n = a.uniform_n.value_or(0);

  auto start = std::chrono::steady_clock::now();
  scatkern::KernelGrid grid = scatkern::eval_grid(p, opt);
  std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

  if (!a.csv_path.empty()) scatkern::write_csv(grid, a.csv_path);
  if (!a.heatmap_path.empty()) scatkern::write_heatmap(grid, a.heatmap_path, a.log_scale);

  auto [lo, hi] = std::minmax_element(grid.values.begin(), grid.values.end());
  std::string summary = std::to_string(grid.nx()) + "," + std::to_string(grid.ny()) + "," +
                        format_shortest(*lo) + "," + format_shortest(*hi) + "," +
                        format_shortest(grid.max_predicted_error) + "," +
                        format_shortest(wall.count());
  if (a.csv_path.empty()) {
    // grid data itself claims stdout; the summary is a diagnostic
    scatkern::write_csv(grid, std::cout);
    std::cerr << summary << '\n';
  } else {
    std::cout << summary << '\n';
  }
  return 0;
}

struct ConvergeArgs {
  PhaseSource src;
  int m = 0;
  double y0 = 0.0;
  std::vector<int> n_list;
  int points = 201;
  int ref_n = 0;
  bool self_reference = false;
  double bound_m = 1.0;
  std::string csv_path;
};

int run_converge(const ConvergeArgs& a) {
  scatkern::PhaseFunction p = make_phase(a.src);
  if (a.points < 2) throw CLI::ValidationError("--points", "need at least 2");
  for (int n : a.n_list) {
    if (n < std::max(4, a.m + 1)) {
      throw CLI::ValidationError("--n", "node counts must be >= max(4, m + 1)");
    }
  }
  scatkern::Reference ref;
  if (!a.self_reference && p.is_henyey_greenstein() && a.m == 0) {
    ref.kind = scatkern::ReferenceKind::closed_form;
  } else {
    ref.kind = scatkern::ReferenceKind::self_converged;
    ref.ref_n = a.ref_n;
  }
  scatkern::ConvergenceStudy st = scatkern::convergence_study(
      p, a.y0, a.m, a.n_list, scatkern::grid_nodes(a.points), ref, a.bound_m);
  if (a.csv_path.empty()) {
    scatkern::write_convergence_csv(st, std::cout);
  } else {
    scatkern::write_convergence_csv(st, a.csv_path);
  }
  return 0;
}

struct ExactHgArgs {
  double g = 0.0, x = 0.0, y = 0.0;
};

int run_exact_hg(const ExactHgArgs& a) {
  if (!(std::abs(a.g) < 1.0)) throw CLI::ValidationError("--g", "need |g| < 1");
  if (!(std::abs(a.x) <= 1.0) || !(std::abs(a.y) <= 1.0)) {
    throw CLI::ValidationError("exact-hg", "need |x| <= 1 and |y| <= 1");
  }
  double h = scatkern::h_closed(a.x, a.y, a.g);
  double h0 = scatkern::h0_closed(a.x, a.y, a.g);
  std::cout << format_shortest(h) << ',' << format_shortest(h0) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scattering-kernel evaluation via exponentially convergent quadrature"};
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate P_m at one (x, y)");
  add_phase_flags(eval, &eval_args.src);
  eval->add_option("--m", eval_args.m, "harmonic order")->check(CLI::NonNegativeNumber);
  eval->add_option("--x", eval_args.x, "x = cos(theta)")->required();
  eval->add_option("--y", eval_args.y, "y = cos(mu)")->required();
  eval->add_option("--tol", eval_args.tol, "target error bound; picks N automatically");
  eval->add_option("--n", eval_args.n_override, "fixed node count");
  eval->add_option("--bound-M", eval_args.bound_m, "strip bound M in the error estimate");

  GridArgs grid_args;
  auto* grid = app.add_subcommand("grid", "evaluate P_m on an nx-by-ny grid");
  add_phase_flags(grid, &grid_args.src);
  grid->add_option("--m", grid_args.opt.m, "harmonic order")->check(CLI::NonNegativeNumber);
  grid->add_option("--nx", grid_args.opt.nx, "grid columns")->required();
  grid->add_option("--ny", grid_args.opt.ny, "grid rows")->required();
  grid->add_option("--tol", grid_args.tol, "target error bound; picks N per point");
  grid->add_option("--uniform-n", grid_args.uniform_n, "fixed node count for every point");
  grid->add_option("--bound-M", grid_args.opt.bound_m, "strip bound M in the error estimate");
  grid->add_option("--csv", grid_args.csv_path, "write the grid CSV here (default: stdout)");
  grid->add_option("--heatmap", grid_args.heatmap_path, "write a 16-bit PGM heatmap here");
  grid->add_flag("--log", grid_args.log_scale, "log10 intensity mapping for the heatmap");

  ConvergeArgs conv_args;
  auto* converge = app.add_subcommand("converge", "tabulate error vs N along y = y0");
  add_phase_flags(converge, &conv_args.src);
  converge->add_option("--m", conv_args.m, "harmonic order")->check(CLI::NonNegativeNumber);
  converge->add_option("--y0", conv_args.y0, "fixed y")->required();
  converge->add_option("--n", conv_args.n_list, "node counts, e.g. 40,80,160")
      ->required()
      ->delimiter(',');
  converge->add_option("--points", conv_args.points, "x-grid size (default 201)");
  converge->add_option("--ref-n", conv_args.ref_n,
                       "self-reference node count (default 8 x max N)");
  converge->add_flag("--self", conv_args.self_reference,
                     "force the self-converged reference even when a closed form exists");
  converge->add_option("--bound-M", conv_args.bound_m, "strip bound M in the error estimate");
  converge->add_option("--csv", conv_args.csv_path, "write the CSV here (default: stdout)");

  ExactHgArgs exact_args;
  auto* exact = app.add_subcommand("exact-hg", "closed-form H and H0 for Henyey-Greenstein");
  exact->add_option("--g", exact_args.g, "asymmetry factor")->required();
  exact->add_option("--x", exact_args.x, "x = cos(theta)")->required();
  exact->add_option("--y", exact_args.y, "y = cos(mu)")->required();

  try {
    app.parse(argc, argv);
    if (eval->parsed()) return run_eval(eval_args);
    if (grid->parsed()) return run_grid(grid_args);
    if (converge->parsed()) return run_converge(conv_args);
    if (exact->parsed()) return run_exact_hg(exact_args);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const scatkern::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    // numeric-domain failures: near-singular closed forms, unreachable
    // tolerances, invalid singularity geometry
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
