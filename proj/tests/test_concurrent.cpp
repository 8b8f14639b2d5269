#include <cmath>

#include "doctest.h"
#include "tripsim/concurrent.hpp"
#include "tripsim/criteria.hpp"

using namespace tripsim;

TEST_CASE("coefficients at the origin and a sample point") {
  const auto p0 = abcd(0.0);
  CHECK(p0.a == doctest::Approx(3.0));
  CHECK(p0.b == doctest::Approx(0.0));
  CHECK(p0.c == doctest::Approx(0.0));
  CHECK(p0.d == doctest::Approx(0.0));

  const auto p1 = abcd(1.0);
  CHECK(p1.a == doctest::Approx(std::cosh(2.0) + 2.0 * std::cosh(1.0)).epsilon(1e-14));
  CHECK(p1.b == doctest::Approx(std::sinh(2.0) - 2.0 * std::sinh(1.0)).epsilon(1e-14));
  CHECK(p1.c == doctest::Approx(std::cosh(2.0) - std::cosh(1.0)).epsilon(1e-14));
  CHECK(p1.d == doctest::Approx(std::sinh(1.0) + std::sinh(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(abcd(-0.5), std::invalid_argument);
}

TEST_CASE("commutator identities hold on a dense grid") {
  for (int k = 0; k <= 400; ++k) {
    const double tau = 5.0 * k / 400.0;
    const auto [t, a, b, c, d] = abcd(tau);
    (void)t;
    const double scale =
        std::max({9.0, a * a, b * b, 2.0 * c * c, 2.0 * d * d});
    const double id1 = a * a - b * b + 2.0 * (c * c - d * d);
    CHECK(std::abs(id1 - 9.0) <= 1e-9 * scale);
    const double id2 = 2.0 * (a * c - b * d) + c * c - d * d;
    CHECK(std::abs(id2) <= 1e-9 * scale);
  }
}

TEST_CASE("moment table at the origin is vacuum and stays physical") {
  const MomentTable vac = undepleted_moments(0.0);
  for (int i = 0; i < 3; ++i) {
    CHECK(vac.xx(i, i) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(vac.yy(i, i) == doctest::Approx(1.0).epsilon(1e-14));
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(vac.xx(i, j)) < 1e-14);
  }

  for (double tau = 0.0; tau <= 3.0; tau += 0.25) {
    const MomentTable t = undepleted_moments(tau);
    CHECK(t.xx(0, 0) * t.yy(0, 0) >= 1.0 - 1e-12);
    // All modes and all pairs identical.
    CHECK(t.xx(0, 0) == t.xx(1, 1));
    CHECK(t.xx(0, 1) == t.xx(1, 2));
    CHECK(t.yy(0, 2) == t.yy(0, 1));
  }
}

TEST_CASE("closed form equals the moment-table route") {
  CHECK(v3_closed(0.0) == doctest::Approx(5.0).epsilon(1e-14));
  for (int k = 0; k <= 100; ++k) {
    const double tau = 2.5 * k / 100.0;
    const auto vlf = vlf_triplet(undepleted_moments(tau));
    const double direct = v3_closed(tau);
    CHECK(vlf.v12 == doctest::Approx(direct).epsilon(1e-9));
    CHECK(vlf.v12 == doctest::Approx(vlf.v13).epsilon(1e-12));
    CHECK(vlf.v12 == doctest::Approx(vlf.v23).epsilon(1e-12));
  }
  // The combination also collapses to 2 exp(-2 tau) + 3 exp(-4 tau).
  for (double tau : {0.1, 0.7, 1.3, 2.0}) {
    const double simple = 2.0 * std::exp(-2.0 * tau) + 3.0 * std::exp(-4.0 * tau);
    CHECK(v3_closed(tau) == doctest::Approx(simple).epsilon(1e-9));
  }
}

TEST_CASE("the combination decays monotonically toward zero") {
  double prev = v3_closed(0.0);
  for (double tau = 0.1; tau <= 5.0; tau += 0.1) {
    const double cur = v3_closed(tau);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK(v3_closed(5.0) < 0.05);
  CHECK(v3_closed(1.0) < 4.0);
}

TEST_CASE("epr curves") {
  const auto at0 = epr_curves(0.0);
  CHECK(at0.one_mode == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(at0.two_mode == doctest::Approx(1.0).epsilon(1e-12));

  for (double tau = 0.05; tau <= 3.0; tau += 0.05) {
    const auto e = epr_curves(tau);
    CHECK(e.one_mode == doctest::Approx(4.0 * e.two_mode).epsilon(1e-10));
    CHECK(e.one_mode < 4.0);
    CHECK(e.two_mode < 1.0);
  }
}
