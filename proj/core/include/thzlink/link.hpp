#pragma once

#include "thzlink/gaussian.hpp"

namespace thzlink {

// Gaussian beam radius after propagating dist_m from a waist w0_m:
// w(z) = w0 sqrt(1 + (lambda z / (pi w0^2))^2).
double beam_radius(double w0_m, double lambda_m, double dist_m);

// Fraction of a centered Gaussian beam of radius w_m passing a circular
// aperture of radius ra_m: T = 1 - exp(-2 ra^2 / w^2).
double aperture_transmissivity(double w_m, double ra_m);

// Diffraction-limited transmissivity of the full link at carrier freq_hz.
double link_transmissivity(double freq_hz, double w0_m, double ra_m, double dist_m);

// Loss and detection acting on mode 2 of a two-mode state: a beamsplitter of
// transmissivity trans mixing in variance v_inj, then a detector of efficiency
// eta adding thermal variance v_det:
//   b' = eta (T b + (1-T) v_inj) + (1-eta) v_det,   c' = sqrt(eta T) c
struct LinkNoise {
  double trans = 1.0;
  double eta = 1.0;
  double v_inj = 1.0;
  double v_det = 1.0;
};

TwoModeCM evolve_two_mode(const TwoModeCM& cm, const LinkNoise& noise);

// Negativity surviving distribution of one arm of the symmetric squeezed
// thermal state through a vacuum-filled channel of the given transmissivity
// into a detector of efficiency eta whose thermal noise sits at the same
// (freq, temp) as the source.
double entanglement_distributed_raw(double freq_hz, double temp_k, double squeeze_db,
                                    double trans, double eta);
double entanglement_distributed(double freq_hz, double temp_k, double squeeze_db,
                                double trans, double eta);

}  // namespace thzlink
