#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "muskat/finite_diff.hpp"
#include "muskat/profiles.hpp"

using namespace muskat;
constexpr double kPi = std::numbers::pi;

namespace {

InterfaceField smooth_random(const GridSpec& g, uint64_t seed,
                             double slope = 1.0) {
  return builtin_profile("random_bandlimited",
                         {{"kmax", 6.0}, {"target_slope", slope}}, g, seed);
}

}  // namespace

TEST_CASE("constants are annihilated by all six operators") {
  GridSpec g{32, 2 * kPi};
  InterfaceField f(g, 4.2);
  OffsetStencil y(0.3, -0.7);
  REQUIRE(linf_norm(delta(f, y)) < 1e-13);
  REQUIRE(linf_norm(delta_bar(f, y)) < 1e-13);
  REQUIRE(linf_norm(slope(f, y)) < 1e-13);
  REQUIRE(linf_norm(slope_bar(f, y)) < 1e-13);
  REQUIRE(linf_norm(second_diff(f, y, true)) < 1e-13);
  REQUIRE(linf_norm(centered_diff(f, y, true)) < 1e-13);
}

TEST_CASE("zero offset rejected for slope quotients") {
  GridSpec g{16, 2 * kPi};
  InterfaceField f(g);
  OffsetStencil y(0.0, 0.0);
  REQUIRE_THROWS_AS(slope(f, y), std::invalid_argument);
  REQUIRE_THROWS_AS(second_diff(f, y, true), std::invalid_argument);
  REQUIRE_THROWS_AS(centered_diff(f, y, true), std::invalid_argument);
  REQUIRE_NOTHROW(delta(f, y));  // plain difference is fine at y = 0
}

// Linear profiles are not periodic, so the linear-function example is checked
// on the operator formulas directly: with f(x) = a.x + c every shifted sample
// is available in closed form.
TEST_CASE("linear functions: closed-form operator values") {
  const double a1 = 0.8, a2 = -1.3, c = 0.4;
  auto f = [&](double x1, double x2) { return a1 * x1 + a2 * x2 + c; };
  const double y1 = 0.37, y2 = 0.91;
  const double ay = std::hypot(y1, y2);
  const double x1 = 1.1, x2 = 2.9;
  const double slope_val = (f(x1, x2) - f(x1 - y1, x2 - y2)) / ay;
  REQUIRE(slope_val == Catch::Approx((a1 * y1 + a2 * y2) / ay).margin(1e-14));
  const double sdiff =
      2 * f(x1, x2) - f(x1 - y1, x2 - y2) - f(x1 + y1, x2 + y2);
  REQUIRE(sdiff == Catch::Approx(0.0).margin(1e-14));
  const double cdiff = (f(x1 + y1, x2 + y2) - f(x1 - y1, x2 - y2)) / ay;
  REQUIRE(cdiff == Catch::Approx(2 * (a1 * y1 + a2 * y2) / ay).margin(1e-14));
}

TEST_CASE("S = slope + slope_bar and D = slope - slope_bar pointwise") {
  GridSpec g{64, 2 * kPi};
  InterfaceField f = smooth_random(g, 17, 2.0);
  Rng rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    OffsetStencil y(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
    if (y.abs < 1e-3) continue;
    InterfaceField s = slope(f, y), sb = slope_bar(f, y);
    InterfaceField S = second_diff(f, y, true), D = centered_diff(f, y, true);
    double worst_s = 0.0, worst_d = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k) {
      worst_s = std::max(worst_s,
                         std::abs(S.values[k] - (s.values[k] + sb.values[k])));
      worst_d = std::max(worst_d,
                         std::abs(D.values[k] - (s.values[k] - sb.values[k])));
    }
    REQUIRE(worst_s < 1e-13);
    REQUIRE(worst_d < 1e-13);
  }
}

TEST_CASE("lattice translation equivariance is exact") {
  GridSpec g{32, 2 * kPi};
  InterfaceField f = smooth_random(g, 23);
  OffsetStencil y(0.21, 0.13);
  InterfaceField op = second_diff(f, y, true);
  // shift f by one lattice cell, apply, shift back
  InterfaceField fs = sample_shifted(f, g.dx(), 0.0);
  InterfaceField ops = second_diff(fs, y, true);
  InterfaceField back = sample_shifted(ops, -g.dx(), 0.0);
  REQUIRE(l2_distance(op, back) < 1e-11 * (1.0 + l2_norm(op)));
}

TEST_CASE("y -> -y swaps") {
  GridSpec g{64, 2 * kPi};
  InterfaceField f = smooth_random(g, 29, 1.5);
  Rng rng(6);
  for (int trial = 0; trial < 4; ++trial) {
    OffsetStencil y(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    if (y.abs < 1e-3) continue;
    OffsetStencil ym(-y.y1, -y.y2);
    REQUIRE(linf_distance(slope(f, ym), slope_bar(f, y)) < 1e-13);
    InterfaceField d = centered_diff(f, y, true), dm = centered_diff(f, ym, true);
    double worst = 0.0;
    for (size_t k = 0; k < d.values.size(); ++k)
      worst = std::max(worst, std::abs(dm.values[k] + d.values[k]));
    REQUIRE(worst < 1e-13);
    REQUIRE(linf_distance(second_diff(f, y, true), second_diff(f, ym, true)) <
            1e-13);
  }
}

TEST_CASE("slope converges to the directional derivative as |y| -> 0") {
  GridSpec g{64, 2 * kPi};
  InterfaceField f = smooth_random(g, 31);
  auto [gx, gy] = gradient(f);
  const double e1 = std::cos(0.7), e2 = std::sin(0.7);
  double err_prev = 1e9;
  for (double h : {0.2, 0.1, 0.05}) {
    OffsetStencil y(h * e1, h * e2);
    InterfaceField s = slope(f, y);
    double worst = 0.0;
    for (size_t k = 0; k < s.values.size(); ++k)
      worst = std::max(worst, std::abs(s.values[k] - (e1 * gx.values[k] +
                                                      e2 * gy.values[k])));
    REQUIRE(worst < 0.65 * err_prev);  // at least first order
    err_prev = worst;
  }
}

TEST_CASE("arctan slope pair") {
  GridSpec g{32, 2 * kPi};
  SECTION("zero field maps to (0,0)") {
    InterfaceField f(g);
    auto [s, d] = arctan_slope_pair(f, OffsetStencil(0.4, 0.2));
    REQUIRE(linf_norm(s) == 0.0);
    REQUIRE(linf_norm(d) == 0.0);
  }
  SECTION("outputs bounded by pi on a random smooth field") {
    InterfaceField f = smooth_random(g, 37, 3.0);
    Rng rng(8);
    for (int trial = 0; trial < 6; ++trial) {
      OffsetStencil y(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
      if (y.abs < 1e-3) continue;
      auto [s, d] = arctan_slope_pair(f, y);
      REQUIRE(linf_norm(s) <= kPi);
      REQUIRE(linf_norm(d) <= kPi);
    }
  }
}
