#pragma once

namespace thzlink {

// CODATA-2018 exact defined values, SI units
inline constexpr double planck_h = 6.62607015e-34;    // J s
inline constexpr double boltzmann_k = 1.380649e-23;   // J/K
inline constexpr double light_speed = 299792458.0;    // m/s

}  // namespace thzlink
