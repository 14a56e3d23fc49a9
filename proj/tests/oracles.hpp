// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference machinery: deterministic pseudo-random numbers, an
// adaptive Simpson integrator kept deliberately independent of the library's
// Gauss-Kronrod path, Gauss-Legendre rules, and brute-force Legendre series
// for the Henyey-Greenstein kernels.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "scatkern/kahan.hpp"
#include "scatkern/legendre.hpp"

namespace testutil {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

 private:
  std::uint64_t state_;
};

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 60) {
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, depth);
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], by Newton
// iteration on L_n.
inline std::vector<std::pair<double, double>> gauss_legendre(int n) {
  std::vector<std::pair<double, double>> rule(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      std::vector<double> l = scatkern::legendre_eval(x, n);
      double deriv = n * (x * l[n] - l[n - 1]) / (x * x - 1.0);
      double step = l[n] / deriv;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    std::vector<double> l = scatkern::legendre_eval(x, n);
    double deriv = n * (x * l[n] - l[n - 1]) / (x * x - 1.0);
    rule[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * deriv * deriv)};
  }
  return rule;
}

// sum_{l<terms} (2l+1)/2 g^l L_l(x) L_l(y)
inline double hg_series_kernel(double x, double y, double g, int terms) {
  scatkern::CompensatedSum sum;
  double lx0 = 1.0, lx1 = x, ly0 = 1.0, ly1 = y, gl = 1.0;
  sum.add(0.5);
  if (terms > 1) sum.add(1.5 * g * x * y);
  gl = g;
  for (int n = 1; n + 1 < terms; ++n) {
    double lx2 = ((2 * n + 1) * x * lx1 - n * lx0) / (n + 1);
    double ly2 = ((2 * n + 1) * y * ly1 - n * ly0) / (n + 1);
    gl *= g;
    sum.add(0.5 * (2 * n + 3) * gl * lx2 * ly2);
    lx0 = lx1; lx1 = lx2; ly0 = ly1; ly1 = ly2;
  }
  return sum.value();
}

// sum_{l<terms} g^l L_l(x) L_l(y)
inline double hg_series_kernel0(double x, double y, double g, int terms) {
  scatkern::CompensatedSum sum;
  double lx0 = 1.0, lx1 = x, ly0 = 1.0, ly1 = y, gl = 1.0;
  sum.add(1.0);
  if (terms > 1) sum.add(g * x * y);
  gl = g;
  for (int n = 1; n + 1 < terms; ++n) {
    double lx2 = ((2 * n + 1) * x * lx1 - n * lx0) / (n + 1);
    double ly2 = ((2 * n + 1) * y * ly1 - n * ly0) / (n + 1);
    gl *= g;
    sum.add(gl * lx2 * ly2);
    lx0 = lx1; lx1 = lx2; ly0 = ly1; ly1 = ly2;
  }
  return sum.value();
}

}  // namespace testutil
