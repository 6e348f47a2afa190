#include "thzlink/thermal.hpp"

#include <cmath>
#include <stdexcept>

#include "thzlink/constants.hpp"

namespace thzlink {

double thermal_occupancy(double freq_hz, double temp_k) {
  if (!(freq_hz > 0.0)) throw std::invalid_argument("thermal_occupancy: freq_hz must be > 0");
  if (!(temp_k >= 0.0)) throw std::invalid_argument("thermal_occupancy: temp_k must be >= 0");
  if (temp_k == 0.0) return 0.0;
  double x = planck_h * freq_hz / (boltzmann_k * temp_k);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

double thermal_variance(double nbar) {
  if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_variance: nbar must be >= 0");
  return 2.0 * nbar + 1.0;
}

double occupancy_to_frequency(double nbar, double temp_k) {
  if (!(nbar > 0.0)) throw std::invalid_argument("occupancy_to_frequency: nbar must be > 0");
  if (!(temp_k > 0.0)) throw std::invalid_argument("occupancy_to_frequency: temp_k must be > 0");
  return boltzmann_k * temp_k / planck_h * std::log1p(1.0 / nbar);
}

}  // namespace thzlink
