#pragma once

namespace thzlink {

// Mean photon number of a mode at freq_hz coupled to a bath at temp_k.
// Exactly 0 for temp_k == 0 and for hf/kT > 700 (occupancy below 1e-300).
// Throws std::invalid_argument for freq_hz <= 0 or temp_k < 0.
double thermal_occupancy(double freq_hz, double temp_k);

// Quadrature variance 2 nbar + 1 in shot-noise units (vacuum variance = 1).
double thermal_variance(double nbar);

// Inverse of thermal_occupancy in the frequency argument:
// f = (k T / h) ln(1 + 1/nbar).  Requires nbar > 0 and temp_k > 0.
double occupancy_to_frequency(double nbar, double temp_k);

}  // namespace thzlink
