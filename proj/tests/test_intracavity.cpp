#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "tripsim/criteria.hpp"
#include "tripsim/intracavity.hpp"

using namespace tripsim;

namespace {

CavityParams with_pump(CavityParams p, double ratio) {
  p.epsilon = ratio * cavity_threshold(p);
  return p;
}

double s_ij(const CavityParams& p, double omega) {
  return vlf_triplet(cavity_spectrum_table(p, omega)).v12;
}

}  // namespace

TEST_CASE("threshold value") {
  CHECK(cavity_threshold({10.0, 1.0, 1e-2, 0.0}) == doctest::Approx(500.0));
  CHECK(cavity_threshold({1.0, 10.0, 1e-2, 0.0}) == doctest::Approx(500.0));
  const double base = cavity_threshold({2.0, 3.0, 0.01, 0.0});
  CHECK(cavity_threshold({2.0, 3.0, 0.02, 0.0}) == doctest::Approx(base / 2.0));
  CHECK_THROWS_AS(cavity_threshold({0.0, 1.0, 1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("steady states") {
  const CavityParams p{10.0, 1.0, 1e-2, 250.0};  // half threshold
  const SteadyState below = steady_state(p);
  CHECK(below.branch == CavityBranch::below);
  CHECK(below.alpha_ss == 0.0);
  CHECK(below.beta_ss == doctest::Approx(25.0));

  const CavityParams q{10.0, 1.0, 1e-2, 1000.0};  // twice threshold
  const SteadyState above = steady_state(q);
  CHECK(above.branch == CavityBranch::above);
  CHECK(above.beta_ss == doctest::Approx(50.0));
  CHECK(above.alpha_ss == doctest::Approx(std::sqrt(500.0 / 0.01)).epsilon(1e-12));
  // Macroscopic intensity (epsilon - epsilon_th)/chi.
  CHECK(above.alpha_ss * above.alpha_ss == doctest::Approx(50000.0).epsilon(1e-12));

  // The two branches meet at threshold.
  const CavityParams at{10.0, 1.0, 1e-2, 500.0};
  CHECK(steady_state(at).beta_ss == doctest::Approx(1.0 / (2.0 * 1e-2)));
  CHECK(at.epsilon / at.gamma == doctest::Approx(at.kappa / (2.0 * at.chi)));
}

TEST_CASE("zero-frequency closed forms") {
  SUBCASE("vacuum limit") {
    CHECK(zero_freq_closed_form({10.0, 1.0, 1e-2, 0.0}) == doctest::Approx(5.0));
    CHECK(zero_freq_closed_form({3.0, 2.0, 0.05, 1e-9}) ==
          doctest::Approx(5.0).epsilon(1e-6));
  }

  SUBCASE("both branches give 2/9 at threshold") {
    Philox4x32 rng(11, 0);
    for (int rep = 0; rep < 50; ++rep) {
      CavityParams p;
      p.gamma = test_helpers::uniform(rng, 0.2, 20.0);
      p.kappa = test_helpers::uniform(rng, 0.2, 20.0);
      p.chi = test_helpers::uniform(rng, 1e-3, 0.5);
      const double th = cavity_threshold(p);
      p.epsilon = th * (1.0 - 1e-14);  // below branch formula at threshold
      const double below = zero_freq_closed_form(p);
      p.epsilon = th;  // above branch formula at threshold
      const double above = zero_freq_closed_form(p);
      CHECK(std::abs(below - 2.0 / 9.0) < 1e-10);
      CHECK(std::abs(above - 2.0 / 9.0) < 1e-10);
    }
  }

  SUBCASE("entanglement is lost far above threshold") {
    const CavityParams p = with_pump({10.0, 1.0, 1e-2, 0.0}, 500.0);
    CHECK(zero_freq_closed_form(p) == doctest::Approx(5.0).epsilon(1e-2));
    CHECK(zero_freq_closed_form(p) < 5.0);
  }
}

TEST_CASE("spectral table matches the closed forms at zero frequency") {
  Philox4x32 rng(21, 0);
  for (int rep = 0; rep < 50; ++rep) {
    CavityParams p;
    p.gamma = test_helpers::uniform(rng, 0.5, 15.0);
    p.kappa = test_helpers::uniform(rng, 0.5, 15.0);
    p.chi = test_helpers::uniform(rng, 1e-3, 0.2);
    const double ratio = rep % 2 == 0 ? test_helpers::uniform(rng, 0.05, 0.95)
                                      : test_helpers::uniform(rng, 1.06, 3.0);
    p.epsilon = ratio * cavity_threshold(p);
    const double direct = zero_freq_closed_form(p);
    const auto vlf = vlf_triplet(cavity_spectrum_table(p, 0.0));
    CHECK(std::abs(vlf.v12 - direct) < 1e-8);
    CHECK(std::abs(vlf.v13 - direct) < 1e-8);
    CHECK(std::abs(vlf.v23 - direct) < 1e-8);
  }
}

TEST_CASE("spectral table properties") {
  const CavityParams below = with_pump({10.0, 1.0, 1e-2, 0.0}, 0.6);
  const CavityParams above = with_pump({10.0, 1.0, 1e-2, 0.0}, 1.8);

  SUBCASE("even in frequency") {
    for (const auto& p : {below, above}) {
      for (double w : {0.3, 1.0, 4.0}) {
        CHECK(s_ij(p, w) == doctest::Approx(s_ij(p, -w)).epsilon(1e-12));
      }
    }
  }

  SUBCASE("signal modes are permutation symmetric") {
    const MomentTable t = cavity_spectrum_table(above, 0.7);
    CHECK(t.xx(0, 0) == doctest::Approx(t.xx(1, 1)).epsilon(1e-10));
    CHECK(t.xx(0, 1) == doctest::Approx(t.xx(1, 2)).epsilon(1e-10));
    CHECK(t.yy(0, 0) == doctest::Approx(t.yy(2, 2)).epsilon(1e-10));
    CHECK(t.yy(0, 2) == doctest::Approx(t.yy(0, 1)).epsilon(1e-10));
  }

  SUBCASE("criteria are invariant under the steady-state sign flip") {
    for (double w : {0.0, 0.5, 2.0}) {
      const auto plus = vlf_triplet(cavity_spectrum_table(above, w, +1));
      const auto minus = vlf_triplet(cavity_spectrum_table(above, w, -1));
      CHECK(plus.v12 == doctest::Approx(minus.v12).epsilon(1e-10));
    }
  }

  SUBCASE("singular exactly at threshold") {
    const CavityParams at = with_pump({10.0, 1.0, 1e-2, 0.0}, 1.0);
    CHECK_THROWS_AS(cavity_spectrum_table(at, 0.0), std::domain_error);
  }

  SUBCASE("warning band flag") {
    CHECK(cavity_near_threshold(with_pump({10.0, 1.0, 1e-2, 0.0}, 0.99)));
    CHECK_FALSE(cavity_near_threshold(below));
  }
}

TEST_CASE("minimum location flips with the damping ratio") {
  // gamma/kappa = 10: the strongest violation sits at zero frequency.
  for (double ratio : {0.5, 0.9, 1.2, 2.0, 3.0}) {
    const CavityParams p = with_pump({10.0, 1.0, 1e-2, 0.0}, ratio);
    const double at0 = s_ij(p, 0.0);
    for (double w = 0.25; w <= 25.0; w += 0.25) {
      CHECK(s_ij(p, w) >= at0 - 1e-10);
    }
  }
  // kappa/gamma = 10, above threshold: the minimum moves off zero frequency.
  for (double ratio : {1.2, 1.5, 2.0}) {
    const CavityParams p = with_pump({1.0, 10.0, 1e-2, 0.0}, ratio);
    const double at0 = s_ij(p, 0.0);
    double best = at0;
    for (double w = 0.1; w <= 40.0; w += 0.1) best = std::min(best, s_ij(p, w));
    CHECK(best < at0 - 1e-6);
  }
  // Below threshold the zero-frequency minimum also holds for kappa > gamma.
  const CavityParams p = with_pump({1.0, 10.0, 1e-2, 0.0}, 0.7);
  const double at0 = s_ij(p, 0.0);
  for (double w = 0.25; w <= 30.0; w += 0.25) CHECK(s_ij(p, w) >= at0 - 1e-10);
}

TEST_CASE("epr spectra") {
  SUBCASE("vacuum limit") {
    const CavityParams p{10.0, 1.0, 1e-2, 1e-12};
    const auto e = cavity_epr_spectra(p, 0.0);
    CHECK(e.one_mode == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(e.two_mode == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("one-mode is four times two-mode below threshold at every frequency") {
    for (double ratio : {0.2, 0.4, 0.8, 0.95}) {
      const CavityParams p = with_pump({10.0, 1.0, 1e-2, 0.0}, ratio);
      for (double w : {0.0, 0.3, 1.0, 3.0, 10.0}) {
        const auto e = cavity_epr_spectra(p, w);
        CHECK(e.one_mode == doctest::Approx(4.0 * e.two_mode).epsilon(1e-8));
      }
    }
    // Above threshold the collective quadratures pick up excess noise from
    // the pump coupling and the exact factor-4 link no longer holds; the
    // products still obey their uncertainty floors.
    for (double ratio : {1.2, 1.5, 2.0}) {
      const CavityParams p = with_pump({10.0, 1.0, 1e-2, 0.0}, ratio);
      for (double w : {0.0, 1.0, 5.0}) {
        const auto e = cavity_epr_spectra(p, w);
        CHECK(e.one_mode > 0.0);
        CHECK(e.two_mode > 0.0);
        CHECK(e.one_mode >= e.two_mode);
      }
    }
  }

  SUBCASE("entanglement window between threshold floor and bound") {
    for (double ratio : {0.3, 0.6, 0.9, 1.1, 1.5, 2.0}) {
      const CavityParams p = with_pump({10.0, 1.0, 1e-2, 0.0}, ratio);
      const double s0 = s_ij(p, 0.0);
      CHECK(s0 < 4.0);
      CHECK(s0 > 2.0 / 9.0 - 1e-9);
    }
  }
}
