// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Closed forms for the Henyey-Greenstein kernels
//
//   H0(x, y; g) = sum_l g^l L_l(x) L_l(y)
//   H (x, y; g) = sum_l (2l+1)/2 g^l L_l(x) L_l(y)
//
// in terms of complete elliptic integrals of the quantities
// w_{+/-} = 1 + g^2 - 2g (xy -/+ sqrt(1-x^2) sqrt(1-y^2)).  These are exact
// for every g in (-1, 1) and serve as the reference all quadrature paths are
// measured against.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "scatkern/elliptic.hpp"
#include "scatkern/legendre.hpp"

namespace scatkern {

// w_plus >= w_minus >= (1 - |g|)^2 > 0.  For g < 0 the two swap roles
// relative to their defining formula; storing them sorted keeps every
// downstream expression valid for either sign.
struct UPair {
  double u_plus = 1.0;
  double u_minus = 1.0;
};

namespace detail {

inline void check_hg_args(double x, double y, double g, const char* who) {
  check_unit_interval(x, who);
  check_unit_interval(y, who);
  if (!(std::abs(g) < 1.0)) {
    throw std::domain_error(std::string(who) + ": need |g| < 1, got " + std::to_string(g));
  }
}

// 1 - xy - sqrt(1-x^2) sqrt(1-y^2) via the identity
// 2 (1 - xy - cd) = (x - y)^2 + (c - d)^2, with c - d rewritten through the
// conjugate to kill the cancellation at x = y.
inline double one_minus_cos_diff(double x, double y) {
  double c = std::sqrt(1.0 - x * x);
  double d = std::sqrt(1.0 - y * y);
  if (c + d == 0.0) return 1.0 - x * y;  // both arguments at +/-1
  double q = (x - y) * (x + y) / (c + d);
  return 0.5 * ((x - y) * (x - y) + q * q);
}

inline double b_product(double x, double y) {
  return std::sqrt(1.0 - x * x) * std::sqrt(1.0 - y * y);
}

}  // namespace detail

inline UPair u_pair(double x, double y, double g) {
  detail::check_hg_args(x, y, g, "u_pair");
  double h = std::abs(g);
  double xe = g < 0.0 ? -x : x;  // g -> -g is x -> -x on the kernel arguments
  double d = detail::one_minus_cos_diff(xe, y);
  double b = detail::b_product(x, y);
  UPair u;
  u.u_minus = (1.0 - h) * (1.0 - h) + 2.0 * h * d;
  u.u_plus = u.u_minus + 4.0 * h * b;
  return u;
}

namespace detail {

// elliptic modulus (w_+ - w_-)/w_+ = 4|g| B / w_+, formed from the products
// directly so no subtraction is involved
inline double hg_modulus(double x, double y, double g, const UPair& u) {
  return 4.0 * std::abs(g) * b_product(x, y) / u.u_plus;
}

}  // namespace detail

inline double h0_closed(double x, double y, double g) {
  UPair u = u_pair(x, y, g);
  double m = detail::hg_modulus(x, y, g, u);
  if (!(m < 1.0)) {
    throw std::domain_error("h0_closed: near-singular arguments (elliptic modulus >= 1)");
  }
  return 2.0 / (std::numbers::pi * std::sqrt(u.u_plus)) * k0(m);
}

// Equivalent form built on the parameter convention K(k) = K0(k^2); the two
// routes share no algebra past the elliptic core, which makes them a useful
// cross-check pair.
inline double h0_prudnikov(double x, double y, double g) {
  UPair u = u_pair(x, y, g);
  double sp = std::sqrt(u.u_plus);
  double sm = std::sqrt(u.u_minus);
  double k = 4.0 * std::abs(g) * detail::b_product(x, y) / ((sp + sm) * (sp + sm));
  if (!(k < 1.0)) {
    throw std::domain_error("h0_prudnikov: near-singular arguments (elliptic modulus >= 1)");
  }
  return 4.0 / (std::numbers::pi * (sp + sm)) * k0(k * k);
}

inline double h_closed(double x, double y, double g) {
  detail::check_hg_args(x, y, g, "h_closed");
  if (std::abs(g) > 1.0 - 1e-14) {
    throw std::domain_error("h_closed: |g| > 1 - 1e-14 is outside the supported range");
  }
  UPair u = u_pair(x, y, g);
  double m = std::min(detail::hg_modulus(x, y, g, u), 1.0);
  return (1.0 - g) * (1.0 + g) / (std::numbers::pi * u.u_minus * std::sqrt(u.u_plus)) *
         e0(m);
}

}  // namespace scatkern
