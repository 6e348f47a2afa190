// Reverse-reconciliation key rates: closed form, first-principles pipeline,
// repeaterless capacity bound, and the two derived solvers.
//
// The pipeline models Gaussian modulation of variance v_a explicitly, so its
// rate carries O(log(v_a)/v_a) finite-modulation corrections; the dedicated
// asymptotic extrapolation removes them to below 1e-6 bits.

#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "thzlink/qkd.hpp"
#include "thzlink/thermal.hpp"

using namespace thzlink;

TEST_CASE("closed-form rate at the 50 THz / 30 K / 200 km operating point") {
  // the sky is essentially empty at 50 THz / 30 K, so v0 is 1 to 35 digits
  double v0 = thermal_variance(thermal_occupancy(50e12, 30.0));
  RateResult r = rr_key_rate(v0, 1.37079511226e-3, 0.1);
  CHECK(r.raw_bits == doctest::Approx(9.901090316e-5).epsilon(1e-8));
  CHECK(r.bits() == r.raw_bits);

  // vacuum-limit sanity: v0 = 1 keeps every sub-term finite
  RateResult vac = rr_key_rate(1.0, 1.37e-3, 0.1);
  CHECK(vac.raw_bits == doctest::Approx(9.89533983e-5).epsilon(1e-8));

  // negative raw rates clamp to zero in bits()
  RateResult dead = rr_key_rate(12.0, 0.01, 0.1);
  CHECK(dead.raw_bits < 0.0);
  CHECK(dead.bits() == 0.0);
}

TEST_CASE("closed form and model limit coincide exactly where they should") {
  // at eta = 1 the detector adds nothing and the two expressions are equal
  CHECK(rr_key_rate(2.0, 0.5, 1.0).raw_bits ==
        doctest::Approx(rr_key_rate_model_limit(2.0, 0.5, 1.0)).epsilon(1e-14));
  CHECK(rr_key_rate(2.0, 0.5, 1.0).raw_bits ==
        doctest::Approx(-0.8774437510817).epsilon(1e-11));
  // at v0 = 1 both reduce to the pure-loss expression
  CHECK(rr_key_rate(1.0, 0.3, 0.4).raw_bits ==
        doctest::Approx(rr_key_rate_model_limit(1.0, 0.3, 0.4)).epsilon(1e-14));
  // away from those lines the closed form is the lower of the two
  CHECK(rr_key_rate(3.0, 0.4, 0.3).raw_bits < rr_key_rate_model_limit(3.0, 0.4, 0.3));
}

TEST_CASE("pipeline at v_a = 1e6 and its asymptotic extrapolation") {
  QkdScenario sc;
  sc.v0 = 1.0850334576712063;
  sc.trans = 0.5;
  sc.eta = 0.1;
  sc.v_a = 1e6;

  RateResult finite = rr_key_rate_from_model(sc);
  CHECK(finite.raw_bits == doctest::Approx(3.325824764363e-2).epsilon(1e-9));
  REQUIRE(finite.mutual_info_bits.has_value());
  REQUIRE(finite.holevo_bits.has_value());
  CHECK(*finite.mutual_info_bits > 0.0);
  CHECK(*finite.holevo_bits >= 0.0);
  CHECK(finite.raw_bits ==
        doctest::Approx(*finite.mutual_info_bits - *finite.holevo_bits)
            .epsilon(1e-12));

  RateResult limit = rr_key_rate_from_model_asymptotic(sc);
  CHECK(limit.raw_bits == doctest::Approx(3.325835092432e-2).epsilon(1e-9));
  CHECK(limit.raw_bits ==
        doctest::Approx(rr_key_rate_model_limit(sc.v0, sc.trans, sc.eta))
            .epsilon(1e-6));

  sc.v_a = 500.0;  // below the trust floor
  CHECK_THROWS_AS(rr_key_rate_from_model(sc), std::invalid_argument);
}

TEST_CASE("ideal-detector pipeline reproduces the closed form to 3e-11") {
  QkdScenario sc;
  sc.v0 = 2.0;
  sc.trans = 0.5;
  sc.eta = 1.0;
  RateResult limit = rr_key_rate_from_model_asymptotic(sc);
  CHECK(limit.raw_bits == doctest::Approx(-0.8774437510817).epsilon(3e-11));
}

TEST_CASE("extrapolated pipeline tracks its closed-form limit over 50 draws") {
  std::mt19937 gen(411);
  std::uniform_real_distribution<double> v0_draw(1.0, 6.0);
  std::uniform_real_distribution<double> t_draw(0.05, 0.95);
  std::uniform_real_distribution<double> eta_draw(0.1, 1.0);

  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    QkdScenario sc;
    sc.v0 = v0_draw(gen);
    sc.trans = t_draw(gen);
    sc.eta = eta_draw(gen);
    double got = rr_key_rate_from_model_asymptotic(sc).raw_bits;
    double want = rr_key_rate_model_limit(sc.v0, sc.trans, sc.eta);
    worst = std::max(worst, std::abs(got - want));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("repeaterless capacity bound") {
  CHECK(plob_bound(1.2, 0.5) == doctest::Approx(0.6165533144).epsilon(1e-9));
  // pure-loss limit: -log2(1 - T)
  CHECK(plob_bound(1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
  // at the thermal cutoff nbar = T/(1-T) the capacity reaches zero exactly
  CHECK(plob_bound(3.0, 0.5) == 0.0);
  // beyond it the channel is entanglement breaking
  CHECK(plob_bound(8.0, 0.5) == 0.0);

  // an ideal receiver can never beat the channel capacity
  for (double v0 : {1.0, 1.05, 1.3, 2.0}) {
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
      CHECK(rr_key_rate(v0, t, 1.0).bits() <= plob_bound(v0, t) + 1e-12);
    }
  }
}

TEST_CASE("frequency floor and accessible frequency") {
  CHECK(min_frequency_bound(0.5, 30.0) ==
        doctest::Approx(4.332853139e11).epsilon(1e-9));

  auto f1 = accessible_frequency(0.01, 30.0, 0.1);
  REQUIRE(f1.has_value());
  CHECK(*f1 == doctest::Approx(5.7862999e12).epsilon(1e-5));

  auto f2 = accessible_frequency(0.5, 30.0, 0.1);
  REQUIRE(f2.has_value());
  CHECK(*f2 == doctest::Approx(2.5145739e12).epsilon(1e-5));

  auto f3 = accessible_frequency(1e-4, 30.0, 0.1);
  REQUIRE(f3.has_value());
  CHECK(*f3 == doctest::Approx(8.933786e12).epsilon(1e-5));

  // the numeric threshold can never undercut the detector-free floor
  CHECK(*f1 >= min_frequency_bound(0.01, 30.0));
  CHECK(*f2 >= min_frequency_bound(0.5, 30.0));

  // a cold sky leaves the rate positive even at 10 GHz: no crossing to find
  CHECK_FALSE(accessible_frequency(0.5, 0.0, 0.1).has_value());

  // bracketing property: the rate really changes sign at the returned root
  double f = *f1;
  auto rate_at = [](double freq) {
    double v0 = thermal_variance(thermal_occupancy(freq, 30.0));
    return rr_key_rate(v0, 0.01, 0.1).raw_bits;
  };
  CHECK(rate_at(f * 1.001) > 0.0);
  CHECK(rate_at(f * 0.999) < 0.0);
}

TEST_CASE("key rate over distance and the equivalent-distance solver inputs") {
  CHECK(key_rate_at_distance(50e12, 30.0, 0.1, 0.1, 0.1, 2e5).bits() ==
        doctest::Approx(9.901090316e-5).epsilon(1e-8));
  CHECK(key_rate_at_distance(50e12, 30.0, 0.1, 0.1, 0.1, 1e5).bits() ==
        doctest::Approx(3.9596117e-4).epsilon(1e-7));
  CHECK(key_rate_at_distance(50e12, 30.0, 0.1, 0.1, 0.1, 8e4).bits() ==
        doctest::Approx(6.1859162e-4).epsilon(1e-7));

  // monotone decay with distance
  double prev = 1.0;
  for (double d : {2e4, 5e4, 1e5, 2e5, 4e5}) {
    double rate = key_rate_at_distance(50e12, 30.0, 0.1, 0.1, 0.1, d).bits();
    CHECK(rate < prev);
    prev = rate;
  }
}

TEST_CASE("minimum aperture radius at the reference points") {
  auto r30 = min_aperture_radius(30e12, 296.0, 0.1, 0.1, 5e5, 1e-4);
  REQUIRE(r30.has_value());
  CHECK(*r30 == doctest::Approx(7.0266521).epsilon(1e-5));

  auto r50 = min_aperture_radius(50e12, 296.0, 0.1, 0.1, 5e5, 1e-4);
  REQUIRE(r50.has_value());
  CHECK(*r50 == doctest::Approx(1.1514905).epsilon(1e-5));

  auto cold = min_aperture_radius(30e12, 77.0, 0.1, 0.1, 5e5, 1e-4);
  REQUIRE(cold.has_value());
  CHECK(*cold == doctest::Approx(0.41884548).epsilon(1e-5));

  // the rate at the returned aperture meets the target
  double rate = key_rate_at_distance(30e12, 296.0, 0.1, 0.1, *r30, 5e5).bits();
  CHECK(rate == doctest::Approx(1e-4).epsilon(1e-4));

  // 1 THz through 5000 km of diffraction spread: unreachable at any aperture
  CHECK_FALSE(min_aperture_radius(1e12, 296.0, 0.1, 0.1, 5e6, 1e-4).has_value());
}
