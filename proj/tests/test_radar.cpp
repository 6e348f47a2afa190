// Quantum illumination discrimination exponents on truncated Fock spaces.
//
// Frozen targets come from the Gaussian closed form for the s-overlap of two
// zero-mean (or displaced) Gaussian states, evaluated independently at double
// precision; the Fock-space route here must land within its documented
// truncation tolerance of those values.

#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "thzlink/radar.hpp"

using namespace thzlink;

namespace {

IlluminationScenario reference(double nb) {
  IlluminationScenario sc;
  sc.kappa = 0.01;
  sc.signal_ns = 0.01;
  sc.background_nb = nb;
  return sc;
}

}  // namespace

TEST_CASE("dense exponent: identical states are indistinguishable") {
  std::vector<double> rho = {0.6, 0.0, 0.0, 0.4};
  ChernoffResult r = chernoff_exponent(rho, rho, 2);
  CHECK(r.exponent == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.q_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense exponent: commuting pair against a 1001-point scan") {
  std::vector<double> rho0 = {0.6, 0.0, 0.0, 0.4};
  std::vector<double> rho1 = {0.3, 0.0, 0.0, 0.7};
  ChernoffResult r = chernoff_exponent(rho0, rho1, 2);

  double qmin = 2.0;
  for (int i = 0; i <= 1000; ++i) {
    double s = i / 1000.0;
    double q = std::pow(0.6, s) * std::pow(0.3, 1.0 - s) +
               std::pow(0.4, s) * std::pow(0.7, 1.0 - s);
    qmin = std::min(qmin, q);
  }
  CHECK(r.q_value == doctest::Approx(qmin).epsilon(1e-5));
  CHECK(r.exponent == doctest::Approx(-std::log(qmin)).epsilon(1e-5));
  CHECK(r.s_star > 0.0);
  CHECK(r.s_star < 1.0);
}

TEST_CASE("dense exponent: orthogonal bases mix through the overlap matrix") {
  // |0><0| against |+><+|: Q(s) = |<0|+>|^2 = 1/2 for every s
  std::vector<double> rho0 = {1.0, 0.0, 0.0, 0.0};
  std::vector<double> rho1 = {0.5, 0.5, 0.5, 0.5};
  ChernoffResult r = chernoff_exponent(rho0, rho1, 2);
  CHECK(r.exponent == doctest::Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("dense exponent input validation") {
  std::vector<double> ok = {0.5, 0.0, 0.0, 0.5};
  std::vector<double> off_trace = {0.6, 0.0, 0.0, 0.5};
  CHECK_THROWS_AS(chernoff_exponent(ok, off_trace, 2), std::invalid_argument);

  // symmetric matrix with an eigenvalue -0.1: not a state
  std::vector<double> indefinite = {0.45, 0.5, 0.5, 0.55};
  CHECK_THROWS_AS(chernoff_exponent(indefinite, ok, 2), std::runtime_error);
}

TEST_CASE("truncated hypothesis states keep their mass") {
  for (double nb : {0.246305596804, 5.68114472689}) {
    FockStatePair pair = qi_states(reference(nb));
    REQUIRE(pair.dim_return > 0);
    REQUIRE(pair.dim_idler > 0);
    double tr0 = 0.0, tr1 = 0.0;
    int d = pair.dim_return * pair.dim_idler;
    for (int i = 0; i < d; ++i) {
      tr0 += pair.rho0[i * d + i];
      tr1 += pair.rho1[i * d + i];
    }
    CHECK(tr0 >= 1.0 - 1e-8);
    CHECK(tr0 <= 1.0 + 1e-12);
    CHECK(tr1 >= 1.0 - 1e-8);
    CHECK(tr1 <= 1.0 + 1e-12);
  }
}

TEST_CASE("structured and dense routes agree at moderate background") {
  IlluminationScenario sc = reference(0.2);
  ChernoffResult fast = qi_exponent(sc);
  FockStatePair pair = qi_states(sc);
  ChernoffResult dense =
      chernoff_exponent(pair.rho0, pair.rho1, pair.dim_return * pair.dim_idler);
  CHECK(fast.exponent == doctest::Approx(dense.exponent).epsilon(1e-5));
}

TEST_CASE("entangled and coherent exponents at the three reference baths") {
  // background occupancies of a 296 K sky at 10 THz and 1 THz, then a radio
  // band regime approached via occupancy directly
  struct Row {
    double nb, eq, ec, adv_db;
  };
  const Row rows[] = {
      {0.246305596804, 7.367457716e-5, 3.845100361e-5, 2.8241},
      {5.68114472689, 1.256077083e-5, 4.051196273e-6, 4.9143},
      {100.0, 8.197536735e-7, 2.487577582e-7, 5.1791},
  };
  for (const Row& row : rows) {
    IlluminationScenario sc = reference(row.nb);
    ChernoffResult eq = qi_exponent(sc);
    ChernoffResult ec = coherent_exponent(sc);
    CHECK(eq.exponent == doctest::Approx(row.eq).epsilon(5e-5));
    CHECK(ec.exponent == doctest::Approx(row.ec).epsilon(5e-5));
    CHECK(qr_advantage_db(sc) == doctest::Approx(row.adv_db).epsilon(3e-4));
    // the entangled probe never does worse
    CHECK(eq.exponent >= ec.exponent);
    CHECK(eq.s_star >= 0.0);
    CHECK(eq.s_star <= 1.0);
  }
}

TEST_CASE("exponent is converged at its working truncation") {
  IlluminationScenario sc = reference(5.68114472689);
  double working = resolved_tail_eps(sc);
  sc.tail_eps = working;
  double coarse = qi_exponent(sc).exponent;
  sc.tail_eps = working / 10.0;
  double fine = qi_exponent(sc).exponent;
  CHECK(std::abs(coarse - fine) / fine < 1e-4);
}

TEST_CASE("zero reflectivity yields no signal and no advantage") {
  IlluminationScenario sc = reference(1.0);
  sc.kappa = 0.0;
  CHECK(qi_exponent(sc).exponent == 0.0);
  CHECK(coherent_exponent(sc).exponent == 0.0);
  CHECK(std::isnan(qr_advantage_db(sc)));
}

TEST_CASE("adaptive tail mass: explicit value wins, formula applies otherwise") {
  IlluminationScenario sc = reference(0.246305596804);
  sc.tail_eps = 3e-7;
  CHECK(resolved_tail_eps(sc) == 3e-7);

  sc.tail_eps = 0.0;
  double root_gap = std::sqrt(sc.background_nb + 1.0) - std::sqrt(sc.background_nb);
  double expect = 5e-5 * sc.kappa * sc.signal_ns * root_gap * root_gap;
  CHECK(resolved_tail_eps(sc) == doctest::Approx(expect).epsilon(1e-12));

  // a nearly empty bath pushes the formula above the cap
  sc.background_nb = 1e-6;
  CHECK(resolved_tail_eps(sc) == 4e-9);
}

TEST_CASE("scenario validation") {
  IlluminationScenario sc = reference(1.0);
  sc.kappa = 1.0;
  CHECK_THROWS_AS(qi_exponent(sc), std::invalid_argument);
  sc = reference(1.0);
  sc.signal_ns = 0.0;
  CHECK_THROWS_AS(qi_exponent(sc), std::invalid_argument);
  sc = reference(1.0);
  sc.background_nb = -0.5;
  CHECK_THROWS_AS(qi_exponent(sc), std::invalid_argument);
  sc = reference(1.0);
  sc.pad = 0;
  CHECK_THROWS_AS(qi_exponent(sc), std::invalid_argument);

  // dense construction refuses Fock spaces past 4096 padded states
  sc = reference(1e5);
  CHECK_THROWS_AS(qi_states(sc), std::length_error);
}
