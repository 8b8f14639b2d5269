#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "doctest.h"
#include "tripsim/opo.hpp"

using namespace tripsim;

TEST_CASE("critical pump") {
  CHECK(critical_pump({1.0, 1.0, 1e-2, 0.0}) == doctest::Approx(100.0));
  CHECK(critical_pump({2.0, 3.0, 6.0, 0.0}) == doctest::Approx(1.0));
  const double base = critical_pump({1.3, 0.7, 0.01, 0.0});
  CHECK(critical_pump({1.3, 0.7, 0.02, 0.0}) == doctest::Approx(base / 2.0));
  CHECK_THROWS_AS(critical_pump({0.0, 1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("below-threshold spectrum values") {
  const SpectrumPoint off = opo_spectrum({1.0, 1.0, 1e-2, 0.0}, 0.3, PumpBranch::below);
  CHECK(off.s_x == doctest::Approx(1.0));
  CHECK(off.s_y == doctest::Approx(1.0));

  // Half pump, zero offset, unit dampings: 9 and 1/9.
  const OpoParams half{1.0, 1.0, 1e-2, 50.0};
  const SpectrumPoint p0 = opo_spectrum(half, 0.0, PumpBranch::below);
  CHECK(p0.s_x == doctest::Approx(9.0).epsilon(1e-13));
  CHECK(p0.s_y == doctest::Approx(1.0 / 9.0).epsilon(1e-13));
  CHECK(p0.s_x * p0.s_y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(p0.near_threshold);
}

TEST_CASE("branch and pump must agree") {
  const OpoParams half{1.0, 1.0, 1e-2, 50.0};
  CHECK_THROWS_AS(opo_spectrum(half, 0.0, PumpBranch::above), std::invalid_argument);
  const OpoParams strong{1.0, 1.0, 1e-2, 150.0};
  CHECK_THROWS_AS(opo_spectrum(strong, 0.0, PumpBranch::below), std::invalid_argument);
  const OpoParams at{1.0, 1.0, 1e-2, 100.0};
  CHECK_THROWS_AS(opo_spectrum(at, 0.0, PumpBranch::below), std::invalid_argument);
  CHECK_THROWS_AS(opo_spectrum(at, 0.0, PumpBranch::above), std::invalid_argument);
}

TEST_CASE("spectra are even in the offset") {
  const OpoParams below{1.0, 2.0, 1e-2, 120.0};
  const OpoParams above{1.0, 2.0, 1e-2, 320.0};
  for (double w = 0.0; w <= 10.0; w += 0.37) {
    const auto b1 = opo_spectrum(below, w, PumpBranch::below);
    const auto b2 = opo_spectrum(below, -w, PumpBranch::below);
    CHECK(b1.s_x == b2.s_x);
    CHECK(b1.s_y == b2.s_y);
    const auto a1 = opo_spectrum(above, w, PumpBranch::above);
    const auto a2 = opo_spectrum(above, -w, PumpBranch::above);
    CHECK(a1.s_x == a2.s_x);
    CHECK(a1.s_y == a2.s_y);
  }
}

TEST_CASE("asymptotics and physicality") {
  const OpoParams below{1.0, 1.0, 1e-2, 70.0};
  const OpoParams above{1.0, 1.0, 1e-2, 180.0};
  const auto far_b = opo_spectrum(below, 1e5, PumpBranch::below);
  CHECK(far_b.s_x == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(far_b.s_y == doctest::Approx(1.0).epsilon(1e-6));
  const auto far_a = opo_spectrum(above, 1e5, PumpBranch::above);
  CHECK(far_a.s_x == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(far_a.s_y == doctest::Approx(1.0).epsilon(1e-4));

  // Squeezing below 1 on one axis only, positive everywhere.
  for (double frac : {0.1, 0.4, 0.8, 0.95}) {
    const OpoParams p{1.0, 1.0, 1e-2, 100.0 * frac};
    for (double w = 0.0; w <= 20.0; w += 0.05) {
      const auto pt = opo_spectrum(p, w, PumpBranch::below);
      CHECK(pt.s_y > 0.0);
      CHECK(pt.s_y < 1.0);
      CHECK(pt.s_x > 1.0);
    }
  }
  for (double frac : {1.1, 1.5, 3.0}) {
    const OpoParams p{1.0, 1.0, 1e-2, 100.0 * frac};
    for (double w = 0.0; w <= 30.0; w += 0.05) {
      const auto pt = opo_spectrum(p, w, PumpBranch::above);
      CHECK(pt.s_y > 0.0);
      CHECK(pt.s_x >= 1.0);
    }
  }
}

TEST_CASE("near-threshold warning band") {
  CHECK(opo_near_threshold({1.0, 1.0, 1e-2, 99.0}));
  CHECK(opo_near_threshold({1.0, 1.0, 1e-2, 101.5}));
  CHECK_FALSE(opo_near_threshold({1.0, 1.0, 1e-2, 97.0}));
  const auto pt = opo_spectrum({1.0, 1.0, 1e-2, 98.5}, 1.0, PumpBranch::below);
  CHECK(pt.near_threshold);
}
