// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Complete elliptic integrals K0, E0 in the modulus convention,
//
//   K0(m) = int_0^{pi/2} (1 - m sin^2 s)^{-1/2} ds,
//   E0(m) = int_0^{pi/2} (1 - m sin^2 s)^{1/2} ds,
//
// evaluated through Gauss's arithmetic-geometric mean.  The more common
// parameter convention is K(k) = K0(k^2), E(k) = E0(k^2).
#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scatkern {

inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

// Quadratic contraction makes this cap generous; it exists so a stalled
// iteration cannot spin.
inline constexpr int kAgmMaxIterations = 16;

// Terminal state of the AGM iteration
//   a_{n+1} = (a_n + g_n)/2,  g_{n+1} = sqrt(a_n g_n),  c_{n+1} = c_n^2/(4 a_{n+1})
// started from a_0 = 1, g_0 = sqrt(1-m), c_0 = sqrt(m).
struct AgmState {
  double a = 1.0;
  double g = 1.0;
  double c = 0.0;
  int iterations = 0;
  double c_sum = 0.0;     // running sum of 2^{n-1} c_n^2
  double final_gap = 0.0; // a_n - g_n at termination
};

inline AgmState agm_sequence(double m) {
  if (!(m >= 0.0 && m < 1.0)) {
    throw std::domain_error("agm_sequence: modulus must lie in [0, 1), got " +
                            std::to_string(m));
  }
  AgmState st;
  st.a = 1.0;
  st.g = std::sqrt(1.0 - m);
  st.c = std::sqrt(m);
  st.c_sum = 0.5 * m;  // 2^{-1} c_0^2
  double pow2 = 0.5;
  while (st.a - st.g > 4.0 * kUnitRoundoff * st.a &&
         st.iterations < kAgmMaxIterations) {
    double an = 0.5 * (st.a + st.g);
    double gn = std::sqrt(st.a * st.g);
    double cn = st.c * st.c / (4.0 * an);
    pow2 *= 2.0;
    st.c_sum += pow2 * cn * cn;
    st.a = an;
    st.g = gn;
    st.c = cn;
    ++st.iterations;
  }
  // the last mean pair can land an ulp out of order
  st.final_gap = std::abs(st.a - st.g);
  return st;
}

struct EllipticPair {
  double modulus_m = 0.0;
  double k0 = 0.0;
  double e0 = 0.0;
  int iterations = 0;
  double final_gap = 0.0;
};

// K0 and E0 for real m < 1.  K0(m) = pi/(2 AGM(1, sqrt(1-m))) and
// E0(m) = K0(m) (1 - sum 2^{n-1} c_n^2); negative m is reduced to [0, 1)
// with the imaginary-modulus transformation (DLMF 19.7.5).
inline EllipticPair elliptic_ke(double m) {
  if (!(m < 1.0)) {
    throw std::domain_error(
        "elliptic_ke: K0 has a branch cut along [1, inf), got m = " +
        std::to_string(m));
  }
  if (m < 0.0) {
    double mu = -m;
    EllipticPair p = elliptic_ke(mu / (1.0 + mu));
    double root = std::sqrt(1.0 + mu);
    return {m, p.k0 / root, p.e0 * root, p.iterations, p.final_gap};
  }
  AgmState st = agm_sequence(m);
  double agm = 0.5 * (st.a + st.g);
  EllipticPair pair;
  pair.modulus_m = m;
  pair.k0 = std::numbers::pi / (2.0 * agm);
  pair.e0 = pair.k0 * (1.0 - st.c_sum);
  pair.iterations = st.iterations;
  pair.final_gap = st.final_gap;
  return pair;
}

inline double k0(double m) { return elliptic_ke(m).k0; }

inline double e0(double m) {
  if (m == 1.0) return 1.0;
  if (m > 1.0) {
    throw std::domain_error("e0: modulus must satisfy m <= 1, got " +
                            std::to_string(m));
  }
  return elliptic_ke(m).e0;
}

struct HalfPeriodIntegrals {
  double first = 0.0;   // int_0^pi (alpha - beta cos s)^{-1/2} ds
  double second = 0.0;  // int_0^pi (alpha - beta cos s)^{1/2} ds
};

// Both integrals are even in beta (substitute s -> pi - s), so only the
// modulus 2|beta|/(alpha + |beta|) in [0, 1) is ever handed to the AGM.
inline HalfPeriodIntegrals half_period_integrals(double alpha, double beta) {
  double b = std::abs(beta);
  if (!(alpha > b)) {
    throw std::domain_error("half_period_integrals: need alpha > |beta|, got alpha = " +
                            std::to_string(alpha) + ", beta = " + std::to_string(beta));
  }
  EllipticPair p = elliptic_ke(2.0 * b / (alpha + b));
  double root = std::sqrt(alpha + b);
  return {2.0 / root * p.k0, 2.0 * root * p.e0};
}

}  // namespace scatkern
