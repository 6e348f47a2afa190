#include "thzlink/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "thzlink/constants.hpp"
#include "thzlink/roots.hpp"
#include "thzlink/thermal.hpp"

namespace thzlink {

std::pair<double, double> symplectic_spectrum(const TwoModeCM& cm,
                                              bool partial_transpose) {
  // det of the off-diagonal block c Z is -c^2; the partial transpose flips it
  double two_det_c = (partial_transpose ? 2.0 : -2.0) * cm.c * cm.c;
  double delta = cm.a * cm.a + cm.b * cm.b + two_det_c;
  double det_half = cm.a * cm.b - cm.c * cm.c;  // det of the full CM is its square
  double det_cm = det_half * det_half;
  double disc = delta * delta - 4.0 * det_cm;
  if (disc < 0.0) disc = 0.0;  // uncertainty-saturating states round to zero
  double root = std::sqrt(disc);
  double nu_plus = std::sqrt(0.5 * (delta + root));
  double nu_minus = delta + root > 0.0 ? std::sqrt(2.0 * det_cm / (delta + root)) : 0.0;
  return {nu_plus, nu_minus};
}

double log_negativity_raw(const TwoModeCM& cm) {
  return -std::log2(symplectic_spectrum(cm, true).second);
}

double log_negativity(const TwoModeCM& cm) {
  double raw = log_negativity_raw(cm);
  return raw > 0.0 ? raw : 0.0;
}

double bosonic_entropy(double x) {
  constexpr double e = std::numbers::e;
  constexpr double ln2 = std::numbers::ln2;
  if (!(x >= 1.0)) {
    if (x > 1.0 - 1e-9) return 0.0;  // symplectic eigenvalues can round just below 1
    throw std::invalid_argument("bosonic_entropy: eigenvalue below 1");
  }
  if (x > 3.0e4) {
    double inv2 = 1.0 / (x * x);
    return std::log2(0.5 * e * x) - inv2 * (1.0 / 6.0 + inv2 / 20.0) / ln2;
  }
  double u = x - 1.0;
  if (u <= 0.0) return 0.0;
  if (u < 1e-12) return 0.5 * u * std::log2(2.0 * e / u);
  return 0.5 * (x + 1.0) * std::log2(0.5 * (x + 1.0)) -
         0.5 * (x - 1.0) * std::log2(0.5 * (x - 1.0));
}

double squeeze_db_to_r(double squeeze_db) {
  return squeeze_db * std::numbers::ln10 / 20.0;
}

TwoModeCM squeezed_thermal_cm(double squeeze_db, double nbar1, double nbar2) {
  if (!(nbar1 >= 0.0) || !(nbar2 >= 0.0))
    throw std::invalid_argument("squeezed_thermal_cm: nbar must be >= 0");
  double r = squeeze_db_to_r(squeeze_db);
  double ch = std::cosh(r), sh = std::sinh(r);
  TwoModeCM cm;
  cm.a = 2.0 * nbar1 * ch * ch + 2.0 * nbar2 * sh * sh + std::cosh(2.0 * r);
  cm.b = 2.0 * nbar2 * ch * ch + 2.0 * nbar1 * sh * sh + std::cosh(2.0 * r);
  cm.c = (nbar1 + nbar2 + 1.0) * std::sinh(2.0 * r);
  return cm;
}

double entanglement_generated(double freq_hz, double temp_k, double squeeze_db) {
  double nbar = thermal_occupancy(freq_hz, temp_k);
  double r = squeeze_db_to_r(squeeze_db);
  double nu = (2.0 * nbar + 1.0) * std::exp(-2.0 * r);
  double raw = -std::log2(nu);
  return raw > 0.0 ? raw : 0.0;
}

double entanglement_breaking_temp_closed(double freq_hz, double squeeze_db) {
  if (squeeze_db <= 0.0) return 0.0;
  double r = squeeze_db_to_r(squeeze_db);
  double nbar_star = 0.5 * std::expm1(2.0 * r);  // (e^{2r} - 1)/2
  return planck_h * freq_hz / (boltzmann_k * std::log1p(1.0 / nbar_star));
}

std::optional<double> entanglement_breaking_temp(double freq_hz, double squeeze_db,
                                                 double tol_k) {
  double r = squeeze_db_to_r(squeeze_db);
  auto raw = [&](double temp) {
    double nu = (2.0 * thermal_occupancy(freq_hz, temp) + 1.0) * std::exp(-2.0 * r);
    return -std::log2(nu);
  };
  return bisect(raw, 1e-3, 1e4, tol_k);
}

double min_squeeze_db(double freq_hz, double temp_k) {
  double nbar = thermal_occupancy(freq_hz, temp_k);
  double r_min = 0.5 * std::log1p(2.0 * nbar);
  return 20.0 * r_min / std::numbers::ln10;
}

}  // namespace thzlink
