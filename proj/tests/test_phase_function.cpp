// Copyright (c) 2026 the scatkern developers.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>

#include "oracles.hpp"
#include "scatkern/phase_function.hpp"

using namespace scatkern;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// the Simpson refinement here is the check's independence from the library's
// Gauss-Kronrod normalization path
double integral_oracle(const PhaseFunction& p, double tol = 1e-11) {
  return testutil::adaptive_simpson([&](double t) { return p(t); }, -1.0, 1.0, tol);
}

PhaseFunction multimodal() {
  return PhaseFunction::mixture({{0.8, PhaseFunction::henyey_greenstein(0.9)},
                                 {0.1, PhaseFunction::henyey_greenstein(-0.6)},
                                 {0.04, PhaseFunction::rational_peak(0.2, 0.01, 3.0)},
                                 {0.06, PhaseFunction::sech_peak(0.6, 0.02)}});
}

}  // namespace

TEST_CASE("henyey-greenstein evaluation") {
  PhaseFunction iso = PhaseFunction::henyey_greenstein(0.0);
  CHECK(iso(0.7) == 0.5);
  CHECK(iso(-1.0) == 0.5);

  PhaseFunction sharp = PhaseFunction::henyey_greenstein(0.95);
  CHECK_THAT(sharp(1.0), WithinRel(390.0, 1e-13));
  CHECK_THAT(sharp(0.4), WithinRel(0.0399199792544300454, 1e-14));

  CHECK_THROWS_AS(PhaseFunction::henyey_greenstein(1.0), std::domain_error);
  CHECK_THROWS_AS(iso(1.5), std::domain_error);
}

TEST_CASE("normalization constants") {
  CHECK(normalization_constant(HenyeyGreenstein{0.37}) == 1.0);

  // wide sech: nearly flat over [-1, 1], so C is close to 1/2
  double c_wide = normalization_constant(SechPeak{0.0, 10.0});
  CHECK_THAT(c_wide, WithinRel(0.50083264030712343, 1e-12));

  PhaseFunction f1 = PhaseFunction::rational_peak(0.2, 0.01, 3.0);
  CHECK_THAT(integral_oracle(f1), WithinAbs(1.0, 1e-10));
  const auto& rp = std::get<RationalPeak>(f1.kind());
  CHECK_THAT(rp.norm_const, WithinRel(84.882636320652686, 1e-11));

  CHECK_THROWS_AS(normalization_constant(SechPeak{0.0, -1.0}), std::domain_error);
  CHECK_THROWS_AS(normalization_constant(RationalPeak{0.0, 0.1, 0.0, 0.0}),
                  std::domain_error);
}

TEST_CASE("sech peak attains its maximum at x0 and integrates to one") {
  PhaseFunction f2 = PhaseFunction::sech_peak(0.6, 0.02);
  const auto& sp = std::get<SechPeak>(f2.kind());
  CHECK(f2(0.6) == sp.norm_const);
  CHECK(f2(0.6) > f2(0.6 + 0.01));
  CHECK(f2(0.6) > f2(0.6 - 0.01));
  CHECK_THAT(integral_oracle(f2), WithinAbs(1.0, 1e-10));
}

TEST_CASE("every constructed phase function integrates to one") {
  CHECK_THAT(integral_oracle(PhaseFunction::henyey_greenstein(0.9)), WithinAbs(1.0, 1e-9));
  CHECK_THAT(integral_oracle(PhaseFunction::henyey_greenstein(-0.6)), WithinAbs(1.0, 1e-9));
  CHECK_THAT(integral_oracle(PhaseFunction::sech_peak(-0.4, 0.05)), WithinAbs(1.0, 1e-9));
  CHECK_THAT(integral_oracle(PhaseFunction::rational_peak(0.0, 0.02, 1.5)),
             WithinAbs(1.0, 1e-9));
  CHECK_THAT(integral_oracle(multimodal()), WithinAbs(1.0, 1e-9));
  LegendreSeries s = hg_legendre_coeffs(0.4, 60);
  CHECK_THAT(integral_oracle(PhaseFunction::legendre_tabulated(s)), WithinAbs(1.0, 1e-9));
}

TEST_CASE("mixture evaluation is the weighted sum of components") {
  PhaseFunction a = PhaseFunction::henyey_greenstein(0.8);
  PhaseFunction b = PhaseFunction::sech_peak(0.1, 0.3);
  PhaseFunction mix = PhaseFunction::mixture({{0.25, a}, {0.75, b}});
  testutil::SplitMix64 rng(5);
  for (int i = 0; i < 20; ++i) {
    double t = rng.uniform(-1.0, 1.0);
    CHECK_THAT(mix(t), WithinRel(0.25 * a(t) + 0.75 * b(t), 4e-16));
  }
}

TEST_CASE("henyey-greenstein matches its own legendre expansion") {
  for (double g : {0.7, -0.7, 0.3}) {
    PhaseFunction p = PhaseFunction::henyey_greenstein(g);
    // (2l+1)/2 |g|^l < 1e-18 past l ~ 140 for |g| = 0.7
    LegendreSeries s = hg_legendre_coeffs(g, 260);
    for (double t : {-1.0, -0.5, 0.0, 0.31, 0.99, 1.0}) {
      CHECK_THAT(p0_series(s, t, 1.0), WithinRel(p(t), 1e-13));
    }
  }
}

TEST_CASE("singularity sets") {
  SingularitySet hg = singularity_set(PhaseFunction::henyey_greenstein(0.9));
  REQUIRE(hg.items.size() == 1);
  const auto& ray = std::get<RealRay>(hg.items[0]);
  CHECK_THAT(ray.x_s, WithinRel(1.81 / 1.8, 1e-15));
  CHECK(ray.direction == +1);

  SingularitySet iso = singularity_set(PhaseFunction::henyey_greenstein(0.0));
  REQUIRE(iso.items.size() == 1);
  CHECK(std::holds_alternative<Entire>(iso.items[0]));

  SingularitySet sech = singularity_set(PhaseFunction::sech_peak(0.6, 0.02));
  const auto& ladder = std::get<PoleLadder>(sech.items.at(0));
  CHECK(ladder.x0 == 0.6);
  CHECK_THAT(ladder.first_height, WithinRel(0.02 * std::numbers::pi / 2, 1e-15));

  SingularitySet multi = singularity_set(multimodal());
  REQUIRE(multi.items.size() == 4);
  CHECK_THAT(std::get<RealRay>(multi.items[0]).x_s, WithinRel(1.81 / 1.8, 1e-15));
  const auto& back = std::get<RealRay>(multi.items[1]);
  CHECK_THAT(back.x_s, WithinRel(-1.36 / 1.2, 1e-15));
  CHECK(back.direction == -1);
  CHECK(std::holds_alternative<VerticalCut>(multi.items[2]));
  CHECK(std::holds_alternative<PoleLadder>(multi.items[3]));
}

TEST_CASE("phase spec parsing") {
  PhaseFunction iso = parse_phase_spec(std::string("hg g=0.0 w=1.0\n"));
  CHECK(iso(0.2) == 0.5);

  PhaseFunction one_line = parse_phase_spec(std::string("hg g=0.3\n"));
  CHECK(std::get<HenyeyGreenstein>(one_line.kind()).g == 0.3);

  const char* multi_text =
      "# four-component mixture\n"
      "hg g=0.9 w=0.8\n"
      "hg g=-0.6 w=0.1\n"
      "f1 x0=0.2 delta=0.01 gamma=3 w=0.04\n"
      "f2 x0=0.6 delta=0.02 w=0.06\n";
  PhaseFunction multi = parse_phase_spec(std::string(multi_text));
  const auto& mix = std::get<Mixture>(multi.kind());
  REQUIRE(mix.components.size() == 4);
  CHECK(mix.components[0].first == 0.8);
  CHECK(mix.components[1].first == 0.1);
  CHECK(mix.components[2].first == 0.04);
  CHECK(mix.components[3].first == 0.06);
  PhaseFunction reference = multimodal();
  for (double t : {-0.9, 0.0, 0.2, 0.6, 1.0}) CHECK(multi(t) == reference(t));

  // keys in any order
  PhaseFunction reordered = parse_phase_spec(std::string("f2 w=1 delta=0.02 x0=0.6\n"));
  CHECK(std::get<SechPeak>(reordered.kind()).x0 == 0.6);
}

TEST_CASE("phase spec rejections") {
  CHECK_THROWS_WITH(parse_phase_spec(std::string("hg g=1.2 w=1\n")),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_WITH(parse_phase_spec(std::string("hg g=0.2 w=0.5\nhg g=0.1 w=0.5oops\n")),
                    Catch::Matchers::ContainsSubstring("line 2"));
  CHECK_THROWS_WITH(parse_phase_spec(std::string("hg g=0.2 w=0.5\nhg g=0.1 w=0.4\n")),
                    Catch::Matchers::ContainsSubstring("weights sum"));
  CHECK_THROWS_WITH(parse_phase_spec(std::string("blob a=1\n")),
                    Catch::Matchers::ContainsSubstring("unknown kind"));
  CHECK_THROWS_WITH(parse_phase_spec(std::string("hg g=0.2 q=3\n")),
                    Catch::Matchers::ContainsSubstring("unknown key"));
  CHECK_THROWS_WITH(parse_phase_spec(std::string("hg g=0.1 w=0.5\nhg g=0.2\n")),
                    Catch::Matchers::ContainsSubstring("requires w="));
  CHECK_THROWS_AS(parse_phase_spec(std::string("# only comments\n")), std::invalid_argument);
  CHECK_THROWS_AS(parse_phase_spec(std::string("f1 x0=0 delta=-2 gamma=3 w=1\n")),
                  std::invalid_argument);
}

TEST_CASE("weights are renormalized when within tolerance of one") {
  // off by 5e-10, inside the 1e-9 acceptance window
  PhaseFunction p = parse_phase_spec(
      std::string("hg g=0.5 w=0.6\nhg g=-0.2 w=0.3999999995\n"));
  const auto& mix = std::get<Mixture>(p.kind());
  CHECK_THAT(mix.components[0].first + mix.components[1].first, WithinAbs(1.0, 1e-15));
}

TEST_CASE("tabulated series spec roundtrip through a file") {
  auto dir = std::filesystem::temp_directory_path();
  auto coeffs_path = dir / "scatkern_test_coeffs.txt";
  {
    std::ofstream out(coeffs_path);
    LegendreSeries s = hg_legendre_coeffs(0.4, 40);
    out << "# hg g=0.4 truncated\n" << std::setprecision(17);
    for (double c : s.coefficients) out << c << "\n";
  }
  PhaseFunction p = parse_phase_spec(std::string("legendre file=") + coeffs_path.string() +
                                     " w=1\n");
  CHECK(std::holds_alternative<LegendreTabulated>(p.kind()));
  SingularitySet s = singularity_set(p);
  CHECK(std::holds_alternative<Entire>(s.items.at(0)));
  std::filesystem::remove(coeffs_path);

  CHECK_THROWS_AS(load_phase_spec((dir / "scatkern_does_not_exist.spec").string()),
                  io_error);
}
