#pragma once

#include <optional>

namespace thzlink {

// One point of the reverse-reconciliation protocol: a source of thermal
// variance v0 = 2 nbar + 1, a channel of the given transmissivity, and a
// homodyne detector of efficiency eta.  v_s (detector thermal noise) and v_e
// (the variance of the entangling-cloner modes the eavesdropper injects,
// matched to the channel environment) default to v0 when left at 0.  v_a is
// the modulation variance used by the finite-energy model.
struct QkdScenario {
  double v0 = 1.0;
  double trans = 0.5;
  double eta = 1.0;
  double v_s = 0.0;   // 0 = use v0
  double v_e = 0.0;   // 0 = use v0
  double v_a = 1e6;
};

struct RateResult {
  double raw_bits = 0.0;  // can be negative; clamp only when reporting
  std::optional<double> mutual_info_bits;
  std::optional<double> holevo_bits;
  double bits() const { return raw_bits > 0.0 ? raw_bits : 0.0; }
};

// Closed-form asymptotic reverse-reconciliation key rate:
//   R = h(x) - h(v0) + (1/2) log2((w + eta)/(1 - T)),  w = (1-T)(1-eta),
//   x = sqrt((w v0 + eta)/(w + eta)).
// Requires v0 >= 1, T strictly inside (0, 1), eta in (0, 1].
RateResult rr_key_rate(double v0, double trans, double eta);

// Closed-form limit of the modeled pipeline below.  Identical to rr_key_rate
// except x = sqrt((w v0^2 + eta)/(w + eta)); the two coincide at eta = 1 or
// v0 = 1, and rr_key_rate is the lower (safe) rate otherwise.
double rr_key_rate_model_limit(double v0, double trans, double eta);

// First-principles finite-energy rate: Gaussian-modulated source of variance
// v_a on top of v0, an entangling-cloner environment of variance v_e holding
// both ancilla modes, a detector of efficiency eta and thermal noise v_s, and
// homodyne conditioning of the environment on the measured quadrature.
// R = I(a:b) - [S(E) - S(E|b)].  Throws if v_a < 1e3 (the conditional-state
// algebra is only trustworthy in the large-modulation regime).
RateResult rr_key_rate_from_model(const QkdScenario& sc);

// Infinite-modulation limit of the model, extrapolated as
// f(Va) - 4 f(2 Va) + 4 f(4 Va) with Va = max(sc.v_a, 1e8); this combination
// annihilates both the 1/Va and log(Va)/Va error terms.
RateResult rr_key_rate_from_model_asymptotic(const QkdScenario& sc);

// Repeaterless secret-key capacity upper bound of a thermal-loss channel with
// environment variance v0 = 2 nbar + 1:
//   C = -log2((1-T) T^nbar) - h(v0)  for nbar < T/(1-T), else 0.
double plob_bound(double v0, double trans);

// Frequency floor for a positive rate regardless of detection details:
// f_min = ln(1/T) k T_e / h.
double min_frequency_bound(double trans, double temp_k);

// Smallest carrier frequency with a positive key rate at (trans, temp, eta),
// bisected over [1e10, 1e14] Hz; nullopt when the bracket does not straddle
// the zero (in particular when the rate is already positive at 10 GHz).
std::optional<double> accessible_frequency(double trans, double temp_k, double eta);

// Key rate over a diffraction-limited link of length dist_m (transmissivity
// saturates at 1 - 1e-12 to keep the closed form finite).
RateResult key_rate_at_distance(double freq_hz, double temp_k, double eta,
                                double w0_m, double ra_m, double dist_m);

// Smallest receiver aperture radius reaching target_rate bits/use at the given
// carrier, with source, detector and environment variances all pinned to the
// detector temperature.  Bisects ra over [1e-3, 1e3] m; nullopt when even the
// largest aperture falls short.
std::optional<double> min_aperture_radius(double freq_hz, double temp_det_k,
                                          double eta, double w0_m, double dist_m,
                                          double target_rate);

}  // namespace thzlink
