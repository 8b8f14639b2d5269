#include <cmath>

#include "doctest.h"
#include "tripsim/rng.hpp"

using tripsim::Philox4x32;

TEST_CASE("philox known-answer vectors") {
  // Reference vectors for the 4x32-10 variant.
  const auto zero = Philox4x32::block({0u, 0u, 0u, 0u}, {0u, 0u});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  const auto ones = Philox4x32::block(
      {0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
      {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);

  const auto pi = Philox4x32::block(
      {0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
      {0xa4093822u, 0x299f31d0u});
  CHECK(pi[0] == 0xd16cfe09u);
  CHECK(pi[1] == 0x94fdccebu);
  CHECK(pi[2] == 0x5001e420u);
  CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("streams are reproducible and distinct") {
  Philox4x32 a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differ_c = false, differ_d = false;
  for (int i = 0; i < 100; ++i) {
    const double ua = a.u01();
    CHECK(ua == b.u01());
    differ_c = differ_c || (ua != c.u01());
    differ_d = differ_d || (ua != d.u01());
  }
  CHECK(differ_c);
  CHECK(differ_d);
}

TEST_CASE("uniform moments") {
  Philox4x32 rng(123, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.u01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.01));
  CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.02));
}

TEST_CASE("normal moments") {
  Philox4x32 rng(5, 1);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; i += 2) {
    double z0, z1;
    rng.normal_pair(z0, z1);
    for (double z : {z0, z1}) {
      s1 += z;
      s2 += z * z;
      s4 += z * z * z * z;
    }
  }
  CHECK(std::abs(s1 / n) < 0.02);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("wiener increment statistics") {
  Philox4x32 rng(9, 2);
  const double dt = 0.01;
  const int n = 100000;
  std::complex<double> sum_sq{0.0, 0.0};
  double sum_abs2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto w = rng.wiener(dt);
    sum_sq += w * w;
    sum_abs2 += std::norm(w);
  }
  CHECK(sum_abs2 / n == doctest::Approx(dt).epsilon(0.02));
  CHECK(std::abs(sum_sq) / n < 4.0 * dt / std::sqrt(static_cast<double>(n)));
}
