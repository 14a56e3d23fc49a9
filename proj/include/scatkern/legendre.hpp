// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatkern/errors.hpp"

namespace scatkern {

namespace detail {
inline void check_unit_interval(double x, const char* who) {
  if (!(std::abs(x) <= 1.0)) {
    throw std::domain_error(std::string(who) + ": argument must lie in [-1, 1], got " +
                            std::to_string(x));
  }
}
}  // namespace detail

// L_0(x) .. L_{n_max}(x) by the three-term recurrence
// (n+1) L_{n+1} = (2n+1) x L_n - n L_{n-1}.
inline std::vector<double> legendre_eval(double x, int n_max) {
  detail::check_unit_interval(x, "legendre_eval");
  if (n_max < 0) throw std::invalid_argument("legendre_eval: n_max must be >= 0");
  std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
  values[0] = 1.0;
  if (n_max >= 1) values[1] = x;
  for (int n = 1; n < n_max; ++n) {
    values[n + 1] = ((2 * n + 1) * x * values[n] - n * values[n - 1]) / (n + 1);
  }
  return values;
}

// Coefficients alpha_0 .. alpha_{N-1} of sum alpha_n L_n.  For a unit-integral
// density alpha_0 = 1/2, since int_{-1}^{1} L_0 = 2 and the higher L_n drop out.
struct LegendreSeries {
  std::vector<double> coefficients;
};

// sum alpha_n L_n(x) L_n(y), recurrences advanced on the fly.
inline double p0_series(const LegendreSeries& series, double x, double y) {
  detail::check_unit_interval(x, "p0_series");
  detail::check_unit_interval(y, "p0_series");
  const std::vector<double>& a = series.coefficients;
  if (a.empty()) return 0.0;
  double sum = a[0];
  double lx0 = 1.0, lx1 = x;
  double ly0 = 1.0, ly1 = y;
  if (a.size() > 1) sum += a[1] * lx1 * ly1;
  for (std::size_t n = 1; n + 1 < a.size(); ++n) {
    double lx2 = ((2 * n + 1) * x * lx1 - n * lx0) / (n + 1);
    double ly2 = ((2 * n + 1) * y * ly1 - n * ly0) / (n + 1);
    sum += a[n + 1] * lx2 * ly2;
    lx0 = lx1;
    lx1 = lx2;
    ly0 = ly1;
    ly1 = ly2;
  }
  return sum;
}

// Henyey-Greenstein expansion coefficients alpha_l = (2l+1)/2 g^l.
inline LegendreSeries hg_legendre_coeffs(double g, int n_terms) {
  if (!(std::abs(g) < 1.0)) {
    throw std::domain_error("hg_legendre_coeffs: need |g| < 1, got " + std::to_string(g));
  }
  if (n_terms < 1) throw std::invalid_argument("hg_legendre_coeffs: need n_terms >= 1");
  LegendreSeries s;
  s.coefficients.resize(static_cast<std::size_t>(n_terms));
  double gl = 1.0;
  for (int l = 0; l < n_terms; ++l) {
    s.coefficients[static_cast<std::size_t>(l)] = 0.5 * (2 * l + 1) * gl;
    gl *= g;
  }
  return s;
}

// Coefficient file format: one alpha_n per line, index implicit from 0,
// '#' starts a comment.
inline LegendreSeries parse_legendre_coeffs(std::istream& in) {
  LegendreSeries s;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v;
    if (ls >> v) {
      std::string rest;
      if (ls >> rest) {
        throw std::invalid_argument("legendre coefficients, line " + std::to_string(line_no) +
                                    ": trailing content '" + rest + "'");
      }
      s.coefficients.push_back(v);
    } else {
      ls.clear();
      std::string word;
      if (ls >> word) {
        throw std::invalid_argument("legendre coefficients, line " + std::to_string(line_no) +
                                    ": expected a number, got '" + word + "'");
      }
    }
  }
  if (s.coefficients.empty()) {
    throw std::invalid_argument("legendre coefficients: no values found");
  }
  return s;
}

inline LegendreSeries load_legendre_coeffs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open legendre coefficient file: " + path);
  try {
    return parse_legendre_coeffs(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace scatkern
