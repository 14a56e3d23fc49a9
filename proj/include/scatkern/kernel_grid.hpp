// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Batch evaluation of P_m over Cartesian grids in [-1, 1]^2, convergence
// studies against a closed-form or self-converged reference, and plain-text
// serialization (CSV, 16-bit PGM heatmaps).
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "scatkern/errors.hpp"
#include "scatkern/hg_closed.hpp"
#include "scatkern/quadrature.hpp"

namespace scatkern {

// Shortest decimal string that parses back to the same double.
inline std::string format_shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct KernelGrid {
  int m = 0;
  std::vector<double> xs;      // strictly increasing, columns
  std::vector<double> ys;      // strictly increasing, rows
  std::vector<double> values;  // row-major, values[iy * nx + jx]
  std::vector<int> n_used;     // nodes spent per point, 0 for the exact B = 0 path
  int uniform_n = 0;           // nonzero if a fixed N was forced
  double max_predicted_error = 0.0;

  int nx() const { return static_cast<int>(xs.size()); }
  int ny() const { return static_cast<int>(ys.size()); }
  double at(int iy, int jx) const { return values[static_cast<std::size_t>(iy) * xs.size() + jx]; }
  double& at(int iy, int jx) { return values[static_cast<std::size_t>(iy) * xs.size() + jx]; }
};

struct GridOptions {
  int m = 0;
  int nx = 0;
  int ny = 0;
  double tol = 0.0;   // drives per-point node selection when uniform_n == 0
  int uniform_n = 0;  // force a fixed node count instead
  double bound_m = 1.0;
  int max_nodes = kDefaultMaxNodes;
};

inline std::vector<double> grid_nodes(int n) {
  // endpoints included; integer numerator keeps the list exactly antisymmetric
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    xs[static_cast<std::size_t>(j)] = static_cast<double>(2 * j - (n - 1)) / (n - 1);
  }
  return xs;
}

inline KernelGrid eval_grid(const PhaseFunction& p, const GridOptions& opt) {
  if (opt.nx < 2 || opt.ny < 2) throw std::invalid_argument("eval_grid: need nx, ny >= 2");
  if (opt.m < 0) throw std::invalid_argument("eval_grid: harmonic order must be >= 0");
  if (opt.uniform_n == 0 && !(opt.tol > 0.0)) {
    throw std::invalid_argument("eval_grid: either a tolerance or a uniform N is required");
  }
  KernelGrid grid;
  grid.m = opt.m;
  grid.xs = grid_nodes(opt.nx);
  grid.ys = grid_nodes(opt.ny);
  grid.values.assign(static_cast<std::size_t>(opt.nx) * opt.ny, 0.0);
  grid.n_used.assign(grid.values.size(), 0);
  grid.uniform_n = opt.uniform_n;

  SingularitySet sing = singularity_set(p);
  const bool symmetric = opt.nx == opt.ny;  // node lists coincide

  for (int iy = 0; iy < opt.ny; ++iy) {
    int j0 = symmetric ? iy : 0;
    for (int jx = j0; jx < opt.nx; ++jx) {
      double x = grid.xs[static_cast<std::size_t>(jx)];
      double y = grid.ys[static_cast<std::size_t>(iy)];
      IntegrandGeometry geom = IntegrandGeometry::from_xy(x, y, opt.m);
      double value;
      int n_used = 0;
      double predicted = 0.0;
      if (geom.b == 0.0) {
        value = opt.m == 0 ? p(std::clamp(geom.a, -1.0, 1.0)) : 0.0;
      } else if (opt.uniform_n > 0) {
        value = trapezoid_kernel(p, x, y, opt.m, opt.uniform_n);
        n_used = opt.uniform_n;
        TrapezoidPlan plan{geom, strip_half_width(sing, geom), opt.bound_m, opt.uniform_n,
                           0.0, false};
        predicted = error_bound(plan).analytic_bound;
      } else {
        TrapezoidPlan plan;
        try {
          plan = choose_n(sing, geom, opt.tol, opt.bound_m, opt.max_nodes);
        } catch (const tolerance_error& e) {
          throw tolerance_error("eval_grid: tolerance unreachable at (x, y) = (" +
                                    format_shortest(x) + ", " + format_shortest(y) +
                                    "): " + e.what(),
                                e.achievable_bound);
        }
        value = trapezoid_kernel(p, x, y, opt.m, plan.n_nodes);
        n_used = plan.n_nodes;
        predicted = plan.predicted_error;
      }
      grid.at(iy, jx) = value;
      grid.n_used[static_cast<std::size_t>(iy) * opt.nx + jx] = n_used;
      grid.max_predicted_error = std::max(grid.max_predicted_error, predicted);
      if (symmetric && jx != iy) {
        grid.at(jx, iy) = value;  // P_m(x, y) = P_m(y, x)
        grid.n_used[static_cast<std::size_t>(jx) * opt.nx + iy] = n_used;
      }
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Convergence studies (error vs N along a line y = y0)

enum class ReferenceKind {
  closed_form,     // Henyey-Greenstein, m = 0 only
  self_converged,  // trapezoid rule at a much larger N
};

struct Reference {
  ReferenceKind kind = ReferenceKind::self_converged;
  int ref_n = 0;  // 0 picks 8 x max(n_list)
};

struct ConvergenceStudy {
  double y0 = 0.0;
  int m = 0;
  std::vector<int> n_list;
  std::vector<double> xs;
  std::vector<double> reference;
  std::vector<std::vector<double>> errors;  // [n_index][x_index]
  std::vector<std::vector<double>> bounds;  // analytic bound, M from bound_m
};

inline ConvergenceStudy convergence_study(const PhaseFunction& p, double y0, int m,
                                          std::vector<int> n_list, std::vector<double> xs,
                                          Reference ref = {}, double bound_m = 1.0) {
  if (n_list.empty() || xs.empty()) {
    throw std::invalid_argument("convergence_study: empty N list or x grid");
  }
  ConvergenceStudy st;
  st.y0 = y0;
  st.m = m;
  st.n_list = std::move(n_list);
  st.xs = std::move(xs);

  double g = 0.0;
  if (ref.kind == ReferenceKind::closed_form) {
    const auto* hg = std::get_if<HenyeyGreenstein>(&p.kind());
    if (hg == nullptr || m != 0) {
      throw std::invalid_argument(
          "convergence_study: the closed-form reference exists only for "
          "Henyey-Greenstein phase functions at m = 0");
    }
    g = hg->g;
  }
  int ref_n = ref.ref_n;
  if (ref.kind == ReferenceKind::self_converged && ref_n == 0) {
    ref_n = 8 * *std::max_element(st.n_list.begin(), st.n_list.end());
  }

  SingularitySet sing = singularity_set(p);
  st.reference.resize(st.xs.size());
  for (std::size_t i = 0; i < st.xs.size(); ++i) {
    st.reference[i] = ref.kind == ReferenceKind::closed_form
                          ? h_closed(st.xs[i], y0, g)
                          : trapezoid_kernel(p, st.xs[i], y0, m, ref_n);
  }
  st.errors.assign(st.n_list.size(), std::vector<double>(st.xs.size()));
  st.bounds.assign(st.n_list.size(), std::vector<double>(st.xs.size()));
  for (std::size_t k = 0; k < st.n_list.size(); ++k) {
    int n = st.n_list[k];
    for (std::size_t i = 0; i < st.xs.size(); ++i) {
      double x = st.xs[i];
      st.errors[k][i] = std::abs(trapezoid_kernel(p, x, y0, m, n) - st.reference[i]);
      IntegrandGeometry geom = IntegrandGeometry::from_xy(x, y0, m);
      if (geom.b == 0.0) {
        st.bounds[k][i] = 0.0;
      } else {
        TrapezoidPlan plan{geom, strip_half_width(sing, geom), bound_m, n, 0.0, false};
        st.bounds[k][i] = error_bound(plan).analytic_bound;
      }
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// Serialization

// First row "x\y,<x values>", then one row "<y value>,<P_m values>" per y.
inline void write_csv(const KernelGrid& grid, std::ostream& out) {
  out << "x\\y";
  for (double x : grid.xs) out << ',' << format_shortest(x);
  out << '\n';
  for (int iy = 0; iy < grid.ny(); ++iy) {
    out << format_shortest(grid.ys[static_cast<std::size_t>(iy)]);
    for (int jx = 0; jx < grid.nx(); ++jx) out << ',' << format_shortest(grid.at(iy, jx));
    out << '\n';
  }
  if (!out) throw io_error("write_csv: stream failure");
}

inline void write_csv(const KernelGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("write_csv: cannot open " + path);
  write_csv(grid, out);
}

// x, then one measured-error column per N, then one bound column per N.
inline void write_convergence_csv(const ConvergenceStudy& st, std::ostream& out) {
  out << 'x';
  for (int n : st.n_list) out << ",err_n" << n;
  for (int n : st.n_list) out << ",bound_n" << n;
  out << '\n';
  for (std::size_t i = 0; i < st.xs.size(); ++i) {
    out << format_shortest(st.xs[i]);
    for (std::size_t k = 0; k < st.n_list.size(); ++k)
      out << ',' << format_shortest(st.errors[k][i]);
    for (std::size_t k = 0; k < st.n_list.size(); ++k)
      out << ',' << format_shortest(st.bounds[k][i]);
    out << '\n';
  }
  if (!out) throw io_error("write_convergence_csv: stream failure");
}

inline void write_convergence_csv(const ConvergenceStudy& st, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("write_convergence_csv: cannot open " + path);
  write_convergence_csv(st, out);
}

// Plain-text 16-bit grayscale (PGM "P2"), one sample per grid cell, image top
// row at y = +1.  Values map linearly (or in log10) from [min, max] onto
// [0, 65535]; a constant grid maps to all zeros.
inline void write_heatmap(const KernelGrid& grid, std::ostream& out, bool log_scale) {
  std::vector<double> mapped(grid.values.size());
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    double v = grid.values[i];
    if (log_scale) {
      if (!(v > 0.0)) {
        int iy = static_cast<int>(i) / grid.nx();
        int jx = static_cast<int>(i) % grid.nx();
        throw std::invalid_argument(
            "write_heatmap: log scale requires positive values, but cell (iy = " +
            std::to_string(iy) + ", jx = " + std::to_string(jx) + ") at (x, y) = (" +
            format_shortest(grid.xs[static_cast<std::size_t>(jx)]) + ", " +
            format_shortest(grid.ys[static_cast<std::size_t>(iy)]) + ") holds " +
            format_shortest(v));
      }
      v = std::log10(v);
    }
    mapped[i] = v;
  }
  auto [lo_it, hi_it] = std::minmax_element(mapped.begin(), mapped.end());
  double lo = *lo_it, hi = *hi_it;
  double span = hi - lo;
  out << "P2\n" << grid.nx() << ' ' << grid.ny() << "\n65535\n";
  for (int iy = grid.ny() - 1; iy >= 0; --iy) {
    for (int jx = 0; jx < grid.nx(); ++jx) {
      double v = mapped[static_cast<std::size_t>(iy) * grid.nx() + jx];
      long pixel = span > 0.0 ? std::lround((v - lo) / span * 65535.0) : 0;
      out << pixel << (jx + 1 == grid.nx() ? '\n' : ' ');
    }
  }
  if (!out) throw io_error("write_heatmap: stream failure");
}

inline void write_heatmap(const KernelGrid& grid, const std::string& path, bool log_scale) {
  std::ofstream out(path);
  if (!out) throw io_error("write_heatmap: cannot open " + path);
  write_heatmap(grid, out, log_scale);
}

}  // namespace scatkern
