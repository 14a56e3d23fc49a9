// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

#include "scatkern/kahan.hpp"

namespace scatkern {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double err = 0.0;
  double resabs = 0.0;
};

// One Kronrod-15 application with the quadpack error estimate: the raw
// Gauss/Kronrod difference is scaled against resasc (the L1 deviation of f
// from its panel mean) so the estimate stays meaningful for large-amplitude
// integrands, and floored at the panel's roundoff level.
template <class F>
inline Panel gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  fv[7] = f(c);
  double gauss = kGaussWeights[3] * fv[7];
  double kronrod = kKronrodWeights[7] * fv[7];
  double resabs = kKronrodWeights[7] * std::abs(fv[7]);
  for (int i = 0; i < 7; ++i) {
    double x = h * kGk15Nodes[i];
    fv[i] = f(c - x);
    fv[14 - i] = f(c + x);
    double pair = fv[i] + fv[14 - i];
    kronrod += kKronrodWeights[i] * pair;
    resabs += kKronrodWeights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  double mean = 0.5 * kronrod;
  double resasc = kKronrodWeights[7] * std::abs(fv[7] - mean);
  for (int i = 0; i < 7; ++i) {
    resasc += kKronrodWeights[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = kronrod * h;
  p.resabs = resabs * std::abs(h);
  resasc *= std::abs(h);
  double d = std::abs(p.value - gauss * h);
  p.err = d;
  if (resasc != 0.0 && d != 0.0) {
    p.err = resasc * std::min(1.0, std::pow(200.0 * d / resasc, 1.5));
  }
  p.err = std::max(p.err, 50.0 * std::numeric_limits<double>::epsilon() * p.resabs);
  return p;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of f over [a, b]: the panel
// with the largest error estimate is bisected until the total estimate drops
// under max(abs_tol, roundoff floor) or the panel budget runs out.
// Breakpoints force the initial subdivision; list narrow interior features
// there or the first coarse pass may miss them entirely.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    std::span<const double> breakpoints = {},
                                    int max_panels = 4096) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  QuadratureResult out;
  auto by_err = [](const detail::Panel& lhs, const detail::Panel& rhs) {
    return lhs.err < rhs.err;
  };
  std::vector<detail::Panel> heap;
  double total_err = 0.0, total_resabs = 0.0;
  int panels_made = 0;
  auto push = [&](double lo, double hi) {
    detail::Panel p = detail::gk15(f, lo, hi);
    out.evaluations += 15;
    ++panels_made;
    total_err += p.err;
    total_resabs += p.resabs;
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end(), by_err);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) push(pts[i], pts[i + 1]);

  std::vector<detail::Panel> done;  // panels too narrow to split further
  const double eps = std::numeric_limits<double>::epsilon();
  while (!heap.empty() && panels_made < max_panels) {
    if (total_err <= std::max(abs_tol, 100.0 * eps * total_resabs)) break;
    std::pop_heap(heap.begin(), heap.end(), by_err);
    detail::Panel worst = heap.back();
    heap.pop_back();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      done.push_back(worst);  // interval already at the grid of doubles
      continue;
    }
    total_err -= worst.err;
    total_resabs -= worst.resabs;
    push(worst.a, mid);
    push(mid, worst.b);
  }

  CompensatedSum value, err;
  for (const detail::Panel& p : heap) {
    value.add(p.value);
    err.add(p.err);
  }
  for (const detail::Panel& p : done) {
    value.add(p.value);
    err.add(p.err);
  }
  out.value = value.value();
  out.error_estimate = err.value();
  double floor = std::max(abs_tol, 100.0 * eps * total_resabs);
  out.converged = out.error_estimate <= floor * (1.0 + 1e-12);
  return out;
}

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                    std::initializer_list<double> breakpoints,
                                    int max_panels = 4096) {
  return integrate_adaptive(static_cast<F&&>(f), a, b, abs_tol,
                            std::span<const double>(breakpoints.begin(), breakpoints.size()),
                            max_panels);
}

}  // namespace scatkern
