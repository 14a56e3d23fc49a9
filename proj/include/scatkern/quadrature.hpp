// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Trapezoidal evaluation of the azimuthal scattering kernels
//
//   P_m(x, y) = c_m int_0^{2 pi} p(A + B cos s) cos(m s) ds,
//   A = x y,  B = sqrt(1-x^2) sqrt(1-y^2),
//   c_0 = 1/(2 pi),  c_m = 1/pi  (m > 0),
//
// together with the analyticity-strip geometry that makes the rule
// exponentially convergent and an a-priori bound on the error.  The map
// z -> A + B cos z sends the strip |Im z| < alpha to the ellipse with foci
// A +/- B and semi-axes B cosh(alpha), B sinh(alpha); alpha is the largest
// strip whose ellipse avoids every singularity of the phase function, and
// the N-node rule then errs by at most 4 pi M / (e^{alpha N} - 1) for any
// bound M on the integrand over the strip.  A cos(m z) factor grows like
// e^{m |Im z|}, which costs exactly m effective nodes.
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

#include "scatkern/errors.hpp"
#include "scatkern/kahan.hpp"
#include "scatkern/phase_function.hpp"

namespace scatkern {

// Largest strip half-width ever reported; entire integrands still need a
// finite alpha for the bound formula, and e^{-5 N} is already below double
// range for any admissible N.
inline constexpr double kAlphaCap = 5.0;

inline constexpr int kDefaultMaxNodes = 1 << 20;

struct IntegrandGeometry {
  double a = 0.0;  // xy
  double b = 0.0;  // sqrt(1-x^2) sqrt(1-y^2); zero iff |x| = 1 or |y| = 1
  int m = 0;

  static IntegrandGeometry from_xy(double x, double y, int m) {
    detail::check_unit_interval(x, "IntegrandGeometry");
    detail::check_unit_interval(y, "IntegrandGeometry");
    if (m < 0) throw std::invalid_argument("IntegrandGeometry: harmonic order must be >= 0");
    IntegrandGeometry g;
    g.a = x * y;
    g.b = std::sqrt(1.0 - x * x) * std::sqrt(1.0 - y * y);
    g.m = m;
    return g;
  }
};

inline double kernel_prefactor(int m) {
  return m == 0 ? 1.0 / (2.0 * std::numbers::pi) : 1.0 / std::numbers::pi;
}

namespace detail {

// |A| + B <= 1 holds exactly, but the composed roundings of A, B and
// B cos(s) can push the argument past 1 by a few ulp (worst case about
// 7 units of roundoff near x = y); anything beyond this slack is a bug.
inline constexpr double kClampSlack = 16.0 * kUnitRoundoff;

inline double clamp_argument(double t) {
  if (t > 1.0) {
    if (t - 1.0 > kClampSlack) {
      throw std::logic_error("integrand argument " + std::to_string(t) +
                             " exceeds [-1, 1] beyond roundoff");
    }
    return 1.0;
  }
  if (t < -1.0) {
    if (-1.0 - t > kClampSlack) {
      throw std::logic_error("integrand argument " + std::to_string(t) +
                             " exceeds [-1, 1] beyond roundoff");
    }
    return -1.0;
  }
  return t;
}

}  // namespace detail

// p(A + B cos s) cos(m s)
inline double integrand_h_m(const PhaseFunction& p, const IntegrandGeometry& geom, double s) {
  double t = detail::clamp_argument(geom.a + geom.b * std::cos(s));
  double v = p(t);
  return geom.m == 0 ? v : v * std::cos(geom.m * s);
}

// (2 pi / N) sum_{k=1..N} f(2 pi k / N); node phase and summation order are
// fixed so results are bit-reproducible.
template <class F>
double trapezoid_rule(F&& f, int n_nodes) {
  if (n_nodes < 1) throw std::invalid_argument("trapezoid_rule: need at least one node");
  const double two_pi = 2.0 * std::numbers::pi;
  CompensatedSum sum;
  for (int k = 1; k <= n_nodes; ++k) {
    sum.add(f(two_pi * k / n_nodes));
  }
  return two_pi / n_nodes * sum.value();
}

inline double trapezoid_kernel(const PhaseFunction& p, double x, double y, int m,
                               int n_nodes) {
  IntegrandGeometry geom = IntegrandGeometry::from_xy(x, y, m);
  if (n_nodes < std::max(4, m + 1)) {
    throw std::invalid_argument("trapezoid_kernel: need n_nodes >= max(4, m + 1)");
  }
  if (geom.b == 0.0) {
    // integrand degenerates to p(A) cos(m s)
    return m == 0 ? p(detail::clamp_argument(geom.a)) : 0.0;
  }
  double integral =
      trapezoid_rule([&](double s) { return integrand_h_m(p, geom, s); }, n_nodes);
  return kernel_prefactor(m) * integral;
}

namespace detail {

// Half-width of the strip whose ellipse passes through x0 + i h: with
// S = sinh(alpha), (A - x0)^2 / (S^2 + 1) + h^2 / S^2 = B^2.  The positive
// root of the resulting quadratic in S^2, written to avoid cancellation.
inline double vertical_point_alpha(double x0, double height, double a, double b) {
  double da = a - x0;
  double q = b * b - da * da - height * height;
  double disc = std::sqrt(q * q + 4.0 * b * b * height * height);
  double s2 = q > 0.0 ? 2.0 * height * height / (q + disc) : (disc - q) / (2.0 * b * b);
  return std::asinh(std::sqrt(s2));
}

}  // namespace detail

inline double strip_half_width(const SingularitySet& sing, const IntegrandGeometry& geom) {
  if (!(geom.b > 0.0)) {
    throw std::invalid_argument("strip_half_width: B = 0 is the caller's exact case");
  }
  double alpha = kAlphaCap;
  for (const SingularityItem& item : sing.items) {
    double a = std::visit(
        [&geom](const auto& s) -> double {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, RealRay>) {
            double reach = std::abs(s.x_s - geom.a) / geom.b;
            if (!(reach > 1.0)) {
              throw std::domain_error(
                  "strip_half_width: real-axis singularity at " + std::to_string(s.x_s) +
                  " lies within reach of the focal segment");
            }
            return std::acosh(reach);
          } else if constexpr (std::is_same_v<T, VerticalCut>) {
            return detail::vertical_point_alpha(s.x0, s.delta, geom.a, geom.b);
          } else if constexpr (std::is_same_v<T, PoleLadder>) {
            return detail::vertical_point_alpha(s.x0, s.first_height, geom.a, geom.b);
          } else {
            return kAlphaCap;
          }
        },
        item);
    alpha = std::min(alpha, a);
  }
  return alpha;
}

struct TrapezoidPlan {
  IntegrandGeometry geometry;
  double alpha = 0.0;
  double bound_m = 1.0;
  int n_nodes = 0;
  double predicted_error = 0.0;
  bool exact = false;  // B = 0 degenerate case, value computed without quadrature
};

struct ErrorBound {
  double analytic_bound = 0.0;      // 4 pi M / (e^{alpha (N - m)} - 1)
  double smooth_bound_scale = 0.0;  // 2 pi^3 / (3 N^2), multiplies a |f''| scale
};

namespace detail {

inline double analytic_bound(double alpha, double bound_m, int n_nodes, int m) {
  double x = alpha * (n_nodes - m);
  if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
  double four_pi_m = 4.0 * std::numbers::pi * bound_m;
  if (x <= 1.0) return four_pi_m / std::expm1(x);
  double e = std::exp(-x);
  return four_pi_m * e / (1.0 - e);
}

}  // namespace detail

inline ErrorBound error_bound(const TrapezoidPlan& plan) {
  ErrorBound b;
  if (plan.exact) {
    b.analytic_bound = 0.0;
  } else {
    b.analytic_bound =
        detail::analytic_bound(plan.alpha, plan.bound_m, plan.n_nodes, plan.geometry.m);
  }
  double n = plan.n_nodes;
  b.smooth_bound_scale = 2.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi /
                         (3.0 * n * n);
  return b;
}

// Smallest N with analytic bound <= tol: N = m + ceil(ln(4 pi M / tol + 1) / alpha),
// clamped to [8, max_nodes].
inline TrapezoidPlan choose_n(const SingularitySet& sing, const IntegrandGeometry& geom,
                              double tol, double bound_m = 1.0,
                              int max_nodes = kDefaultMaxNodes) {
  if (!(tol > 0.0)) throw std::invalid_argument("choose_n: tolerance must be positive");
  if (!(bound_m > 0.0)) throw std::invalid_argument("choose_n: bound M must be positive");
  TrapezoidPlan plan;
  plan.geometry = geom;
  plan.bound_m = bound_m;
  if (geom.b == 0.0) {
    plan.alpha = std::numeric_limits<double>::infinity();
    plan.n_nodes = std::max(8, geom.m + 1);
    plan.predicted_error = 0.0;
    plan.exact = true;
    return plan;
  }
  plan.alpha = strip_half_width(sing, geom);
  double need = std::log(4.0 * std::numbers::pi * bound_m / tol + 1.0) / plan.alpha;
  double n_real = geom.m + std::ceil(need);
  int n = n_real < 8.0 ? 8 : static_cast<int>(n_real > max_nodes ? max_nodes + 1 : n_real);
  if (n > max_nodes) {
    double achievable = detail::analytic_bound(plan.alpha, bound_m, max_nodes, geom.m);
    throw tolerance_error("choose_n: tolerance " + std::to_string(tol) +
                              " needs more than " + std::to_string(max_nodes) +
                              " nodes; achievable bound " + std::to_string(achievable),
                          achievable);
  }
  plan.n_nodes = std::max(n, geom.m + 1);
  plan.predicted_error =
      detail::analytic_bound(plan.alpha, bound_m, plan.n_nodes, geom.m);
  return plan;
}

}  // namespace scatkern
