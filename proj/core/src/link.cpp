#include "thzlink/link.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "thzlink/constants.hpp"
#include "thzlink/thermal.hpp"

namespace thzlink {

double beam_radius(double w0_m, double lambda_m, double dist_m) {
  if (!(w0_m > 0.0)) throw std::invalid_argument("beam_radius: w0 must be > 0");
  if (!(lambda_m > 0.0)) throw std::invalid_argument("beam_radius: lambda must be > 0");
  if (!(dist_m >= 0.0)) throw std::invalid_argument("beam_radius: dist must be >= 0");
  double spread = lambda_m * dist_m / (std::numbers::pi * w0_m * w0_m);
  return w0_m * std::sqrt(1.0 + spread * spread);
}

double aperture_transmissivity(double w_m, double ra_m) {
  if (!(w_m > 0.0)) throw std::invalid_argument("aperture_transmissivity: w must be > 0");
  if (!(ra_m >= 0.0)) throw std::invalid_argument("aperture_transmissivity: ra must be >= 0");
  double u = ra_m / w_m;
  return -std::expm1(-2.0 * u * u);
}

double link_transmissivity(double freq_hz, double w0_m, double ra_m, double dist_m) {
  double lambda = light_speed / freq_hz;
  return aperture_transmissivity(beam_radius(w0_m, lambda, dist_m), ra_m);
}

TwoModeCM evolve_two_mode(const TwoModeCM& cm, const LinkNoise& noise) {
  if (!(noise.trans >= 0.0 && noise.trans <= 1.0))
    throw std::invalid_argument("evolve_two_mode: trans must be in [0, 1]");
  if (!(noise.eta >= 0.0 && noise.eta <= 1.0))
    throw std::invalid_argument("evolve_two_mode: eta must be in [0, 1]");
  if (!(noise.v_inj >= 1.0) || !(noise.v_det >= 1.0))
    throw std::invalid_argument("evolve_two_mode: injected variances must be >= 1");
  TwoModeCM out;
  out.a = cm.a;
  out.b = noise.eta * (noise.trans * cm.b + (1.0 - noise.trans) * noise.v_inj) +
          (1.0 - noise.eta) * noise.v_det;
  out.c = std::sqrt(noise.eta * noise.trans) * cm.c;
  return out;
}

double entanglement_distributed_raw(double freq_hz, double temp_k, double squeeze_db,
                                    double trans, double eta) {
  double nbar = thermal_occupancy(freq_hz, temp_k);
  TwoModeCM cm = squeezed_thermal_cm(squeeze_db, nbar, nbar);
  LinkNoise noise;
  noise.trans = trans;
  noise.eta = eta;
  noise.v_inj = 1.0;                    // vacuum-filled channel
  noise.v_det = 2.0 * nbar + 1.0;       // detector thermal noise at the same band
  return log_negativity_raw(evolve_two_mode(cm, noise));
}

double entanglement_distributed(double freq_hz, double temp_k, double squeeze_db,
                                double trans, double eta) {
  double raw = entanglement_distributed_raw(freq_hz, temp_k, squeeze_db, trans, eta);
  return raw > 0.0 ? raw : 0.0;
}

}  // namespace thzlink
