// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0
//
// Catalog of scattering phase functions: densities p on [-1, 1] with unit
// integral, each carrying a machine-readable description of where its
// analytic continuation fails.  That description is what the quadrature
// module turns into an analyticity-strip half-width.
#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "scatkern/errors.hpp"
#include "scatkern/integrate.hpp"
#include "scatkern/legendre.hpp"

namespace scatkern {

// ---------------------------------------------------------------------------
// Singularity metadata

// Branch ray [x_s, +inf) or (-inf, x_s] on the real axis; |x_s| > 1 for any
// valid phase function.
struct RealRay {
  double x_s = 0.0;
  int direction = +1;
};

// Vertical branch cuts from x0 +/- i delta to x0 +/- i inf.
struct VerticalCut {
  double x0 = 0.0;
  double delta = 0.0;
};

// Poles at x0 +/- i delta (pi/2 + n pi), n = 0, 1, ...; only the first pair
// can constrain an ellipse that grows from the real axis.
struct PoleLadder {
  double x0 = 0.0;
  double delta = 0.0;
  double first_height = 0.0;  // delta * pi / 2
};

struct Entire {};

using SingularityItem = std::variant<RealRay, VerticalCut, PoleLadder, Entire>;

struct SingularitySet {
  std::vector<SingularityItem> items;
};

// ---------------------------------------------------------------------------
// Phase function kinds

struct HenyeyGreenstein {
  double g = 0.0;
};

// norm_const * (1 + ((t - x0)/delta)^2)^{-gamma}
struct RationalPeak {
  double x0 = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double norm_const = 0.0;
};

// norm_const * sech((t - x0)/delta)
struct SechPeak {
  double x0 = 0.0;
  double delta = 0.0;
  double norm_const = 0.0;
};

struct LegendreTabulated {
  LegendreSeries series;
};

class PhaseFunction;

struct Mixture {
  std::vector<std::pair<double, PhaseFunction>> components;
};

namespace detail {

inline double hg_denominator(double g, double t) {
  // 1 + g^2 - 2 g t without cancellation near the forward peak
  double h = std::abs(g);
  double u = g >= 0.0 ? 1.0 - t : 1.0 + t;
  return (1.0 - h) * (1.0 - h) + 2.0 * h * u;
}

inline double eval_hg(double g, double t) {
  double w = hg_denominator(g, t);
  return 0.5 * (1.0 - g) * (1.0 + g) / (w * std::sqrt(w));
}

inline double rational_shape(const RationalPeak& f, double t) {
  double u = (t - f.x0) / f.delta;
  return std::pow(1.0 + u * u, -f.gamma);
}

inline double sech_shape(const SechPeak& f, double t) {
  return 1.0 / std::cosh((t - f.x0) / f.delta);
}

template <class Shape>
double peak_norm_const(Shape&& shape, double x0, double delta) {
  double bp[2] = {x0 - delta, x0 + delta};
  QuadratureResult q = integrate_adaptive(shape, -1.0, 1.0, 1e-12,
                                          std::span<const double>(bp, 2));
  if (!q.converged || !(q.value > 0.0)) {
    throw std::runtime_error("normalization quadrature did not converge");
  }
  return 1.0 / q.value;
}

}  // namespace detail

inline double normalization_constant(const HenyeyGreenstein&) {
  return 1.0;  // density already carries its (1-g^2)/2 prefactor
}

inline double normalization_constant(const RationalPeak& f) {
  if (!(f.delta > 0.0) || !(f.gamma > 0.0)) {
    throw std::domain_error("rational peak: need delta > 0 and gamma > 0");
  }
  return detail::peak_norm_const([&](double t) { return detail::rational_shape(f, t); },
                                 f.x0, f.delta);
}

inline double normalization_constant(const SechPeak& f) {
  if (!(f.delta > 0.0)) throw std::domain_error("sech peak: need delta > 0");
  return detail::peak_norm_const([&](double t) { return detail::sech_shape(f, t); },
                                 f.x0, f.delta);
}

// Immutable once constructed; normalization constants are resolved in the
// factories, never at evaluation time.
class PhaseFunction {
 public:
  using Kind =
      std::variant<HenyeyGreenstein, RationalPeak, SechPeak, LegendreTabulated, Mixture>;

  static PhaseFunction henyey_greenstein(double g) {
    if (!(std::abs(g) < 1.0)) {
      throw std::domain_error("henyey_greenstein: need |g| < 1, got " + std::to_string(g));
    }
    return PhaseFunction(HenyeyGreenstein{g});
  }

  static PhaseFunction rational_peak(double x0, double delta, double gamma) {
    RationalPeak f{x0, delta, gamma, 0.0};
    f.norm_const = normalization_constant(f);
    return PhaseFunction(f);
  }

  static PhaseFunction sech_peak(double x0, double delta) {
    SechPeak f{x0, delta, 0.0};
    f.norm_const = normalization_constant(f);
    return PhaseFunction(f);
  }

  static PhaseFunction legendre_tabulated(LegendreSeries series) {
    if (series.coefficients.empty()) {
      throw std::invalid_argument("legendre_tabulated: empty series");
    }
    double integral = 2.0 * series.coefficients[0];
    if (std::abs(integral - 1.0) > 1e-9) {
      throw std::domain_error(
          "legendre_tabulated: series integrates to " + std::to_string(integral) +
          ", expected 1 (alpha_0 must be 1/2)");
    }
    for (double& c : series.coefficients) c /= integral;
    LegendreTabulated f{std::move(series)};
    // tabulated series are the one kind that can dip negative
    double low = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      double t = -1.0 + 2.0 * i / 2000.0;
      low = std::min(low, p0_series(f.series, t, 1.0));
    }
    if (low < -1e-10) {
      throw std::domain_error("legendre_tabulated: series is negative on [-1, 1] (min " +
                              std::to_string(low) + ")");
    }
    return PhaseFunction(std::move(f));
  }

  static PhaseFunction mixture(std::vector<std::pair<double, PhaseFunction>> parts) {
    if (parts.empty()) throw std::invalid_argument("mixture: no components");
    double wsum = 0.0;
    for (const auto& [w, p] : parts) {
      if (!(w > 0.0)) throw std::domain_error("mixture: weights must be positive");
      wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
      throw std::domain_error("mixture: weights sum to " + std::to_string(wsum) +
                              ", expected 1 within 1e-9");
    }
    for (auto& [w, p] : parts) w /= wsum;
    return PhaseFunction(Mixture{std::move(parts)});
  }

  double operator()(double t) const {
    detail::check_unit_interval(t, "PhaseFunction");
    return eval_unchecked(t);
  }

  const Kind& kind() const { return kind_; }

  bool is_henyey_greenstein() const {
    return std::holds_alternative<HenyeyGreenstein>(kind_);
  }

 private:
  explicit PhaseFunction(Kind kind) : kind_(std::move(kind)) {}

  double eval_unchecked(double t) const {
    return std::visit(
        [t](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, HenyeyGreenstein>) {
            return detail::eval_hg(f.g, t);
          } else if constexpr (std::is_same_v<T, RationalPeak>) {
            return f.norm_const * detail::rational_shape(f, t);
          } else if constexpr (std::is_same_v<T, SechPeak>) {
            return f.norm_const * detail::sech_shape(f, t);
          } else if constexpr (std::is_same_v<T, LegendreTabulated>) {
            return p0_series(f.series, t, 1.0);  // L_n(1) = 1
          } else {
            double sum = 0.0;
            for (const auto& [w, p] : f.components) sum += w * p.eval_unchecked(t);
            return sum;
          }
        },
        kind_);
  }

  Kind kind_;
};

inline double eval_phase(const PhaseFunction& p, double t) { return p(t); }

inline void append_singularities(const PhaseFunction& p, SingularitySet& out) {
  std::visit(
      [&out](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, HenyeyGreenstein>) {
          if (f.g == 0.0) {
            out.items.push_back(Entire{});
          } else {
            double x_s = (1.0 + f.g * f.g) / (2.0 * f.g);
            out.items.push_back(RealRay{x_s, f.g > 0.0 ? +1 : -1});
          }
        } else if constexpr (std::is_same_v<T, RationalPeak>) {
          out.items.push_back(VerticalCut{f.x0, f.delta});
        } else if constexpr (std::is_same_v<T, SechPeak>) {
          out.items.push_back(PoleLadder{f.x0, f.delta, f.delta * std::numbers::pi / 2.0});
        } else if constexpr (std::is_same_v<T, LegendreTabulated>) {
          out.items.push_back(Entire{});  // polynomials are entire
        } else {
          for (const auto& [w, comp] : f.components) append_singularities(comp, out);
        }
      },
      p.kind());
}

inline SingularitySet singularity_set(const PhaseFunction& p) {
  SingularitySet s;
  append_singularities(p, s);
  return s;
}

// ---------------------------------------------------------------------------
// Phase-spec files.  One component per non-comment line:
//   hg g=<real> w=<real>
//   f1 x0=<real> delta=<real> gamma=<real> w=<real>
//   f2 x0=<real> delta=<real> w=<real>
//   legendre file=<path> w=<real>
// Keys may appear in any order; '#' starts a comment; w defaults to 1 for
// single-component files.

namespace detail {

struct SpecLine {
  int line_no = 0;
  std::string kind;
  std::map<std::string, std::string> kv;
};

[[noreturn]] inline void spec_fail(int line_no, const std::string& msg) {
  throw std::invalid_argument("phase spec, line " + std::to_string(line_no) + ": " + msg);
}

inline double spec_number(const SpecLine& ln, const std::string& key) {
  auto it = ln.kv.find(key);
  if (it == ln.kv.end()) spec_fail(ln.line_no, "missing key '" + key + "'");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(it->second, &used);
  } catch (const std::exception&) {
    spec_fail(ln.line_no, "key '" + key + "': not a number: '" + it->second + "'");
  }
  if (used != it->second.size()) {
    spec_fail(ln.line_no, "key '" + key + "': not a number: '" + it->second + "'");
  }
  return v;
}

inline void spec_expect_keys(const SpecLine& ln, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : ln.kv) {
    bool known = (k == "w");
    for (const char* key : keys) known = known || (k == key);
    if (!known) spec_fail(ln.line_no, "unknown key '" + k + "' for kind '" + ln.kind + "'");
  }
}

}  // namespace detail

inline PhaseFunction parse_phase_spec(std::istream& in) {
  std::vector<detail::SpecLine> lines;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    detail::SpecLine ln;
    ln.line_no = line_no;
    if (!(ls >> ln.kind)) continue;  // blank line
    std::string tok;
    while (ls >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) {
        detail::spec_fail(line_no, "expected key=value, got '" + tok + "'");
      }
      std::string key = tok.substr(0, eq);
      if (ln.kv.count(key)) detail::spec_fail(line_no, "duplicate key '" + key + "'");
      ln.kv[key] = tok.substr(eq + 1);
    }
    lines.push_back(std::move(ln));
  }
  if (lines.empty()) throw std::invalid_argument("phase spec: no components found");

  std::vector<std::pair<double, PhaseFunction>> parts;
  double wsum = 0.0;
  for (const auto& ln : lines) {
    double w = 1.0;
    if (lines.size() > 1 || ln.kv.count("w")) {
      if (!ln.kv.count("w")) detail::spec_fail(ln.line_no, "multi-component spec requires w=");
      w = detail::spec_number(ln, "w");
      if (!(w > 0.0)) detail::spec_fail(ln.line_no, "weight must be positive");
    }
    try {
      if (ln.kind == "hg") {
        detail::spec_expect_keys(ln, {"g"});
        parts.emplace_back(w, PhaseFunction::henyey_greenstein(detail::spec_number(ln, "g")));
      } else if (ln.kind == "f1") {
        detail::spec_expect_keys(ln, {"x0", "delta", "gamma"});
        parts.emplace_back(w, PhaseFunction::rational_peak(detail::spec_number(ln, "x0"),
                                                           detail::spec_number(ln, "delta"),
                                                           detail::spec_number(ln, "gamma")));
      } else if (ln.kind == "f2") {
        detail::spec_expect_keys(ln, {"x0", "delta"});
        parts.emplace_back(w, PhaseFunction::sech_peak(detail::spec_number(ln, "x0"),
                                                       detail::spec_number(ln, "delta")));
      } else if (ln.kind == "legendre") {
        detail::spec_expect_keys(ln, {"file"});
        auto it = ln.kv.find("file");
        if (it == ln.kv.end()) detail::spec_fail(ln.line_no, "missing key 'file'");
        parts.emplace_back(w, PhaseFunction::legendre_tabulated(load_legendre_coeffs(it->second)));
      } else {
        detail::spec_fail(ln.line_no, "unknown kind '" + ln.kind + "'");
      }
    } catch (const std::domain_error& e) {
      detail::spec_fail(ln.line_no, e.what());
    }
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9) {
    throw std::invalid_argument("phase spec: weights sum to " + std::to_string(wsum) +
                                ", expected 1 within 1e-9");
  }
  if (parts.size() == 1) return std::move(parts.front().second);
  return PhaseFunction::mixture(std::move(parts));
}

inline PhaseFunction parse_phase_spec(const std::string& text) {
  std::istringstream in(text);
  return parse_phase_spec(in);
}

inline PhaseFunction load_phase_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open phase spec file: " + path);
  try {
    return parse_phase_spec(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace scatkern
