#pragma once

#include <optional>
#include <utility>

namespace thzlink {

// Two-mode Gaussian covariance matrix in the block form [[a I, c Z], [c Z, b I]]
// with Z = diag(1, -1), quadrature ordering (q1, p1, q2, p2), shot-noise units.
// Physicality (a, b >= 1, uncertainty relation) is the caller's responsibility;
// every constructor in this library produces valid states.
struct TwoModeCM {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
};

// Symplectic eigenvalues (nu_plus, nu_minus) of the CM, or of its partial
// transpose (which maps Delta = a^2 + b^2 - 2c^2 to a^2 + b^2 + 2c^2).
// Uses the cancellation-stable form nu-^2 = 2 det V / (Delta + sqrt(Delta^2 - 4 det V)).
std::pair<double, double> symplectic_spectrum(const TwoModeCM& cm,
                                              bool partial_transpose);

// -log2 of the smaller partial-transpose symplectic eigenvalue; negative values
// mean the state is separable by the PPT criterion.
double log_negativity_raw(const TwoModeCM& cm);

// Logarithmic negativity max(0, log_negativity_raw).
double log_negativity(const TwoModeCM& cm);

// von Neumann entropy (bits) of a Gaussian mode with symplectic eigenvalue x.
// Three branches keep full precision: series for x - 1 < 1e-12, the direct
// expression up to 3e4, and the asymptotic expansion
// log2(e x / 2) - 1/(6 ln2 x^2) - 1/(20 ln2 x^4) beyond.
double bosonic_entropy(double x);

// r = db ln(10) / 20, so 10 dB gives cosh(2r) = 5.05 exactly.
double squeeze_db_to_r(double squeeze_db);

// Two thermal modes (nbar1, nbar2) through a two-mode squeezer of parameter r:
//   a = 2 nbar1 cosh^2 r + 2 nbar2 sinh^2 r + cosh 2r   (b with 1 <-> 2)
//   c = (nbar1 + nbar2 + 1) sinh 2r
TwoModeCM squeezed_thermal_cm(double squeeze_db, double nbar1, double nbar2);

// E_LN of the symmetric squeezed thermal state at (freq, temp); the PT
// eigenvalue reduces to (2 nbar + 1) e^{-2r}.
double entanglement_generated(double freq_hz, double temp_k, double squeeze_db);

// Temperature at which entanglement_generated reaches zero, from the closed
// form T = h f / (k ln(1 + 1/nbar*)) with nbar* = (e^{2r} - 1)/2.
// Returns 0 for squeeze_db <= 0 (never entangled).
double entanglement_breaking_temp_closed(double freq_hz, double squeeze_db);

// Same threshold by bisecting the raw negativity over temperature; nullopt if
// the bracket [1e-3, 1e4] K does not straddle the zero.
std::optional<double> entanglement_breaking_temp(double freq_hz, double squeeze_db,
                                                 double tol_k = 1e-4);

// Minimum squeezing (dB) for positive entanglement at (freq, temp):
// r_min = ln(2 nbar + 1) / 2.
double min_squeeze_db(double freq_hz, double temp_k);

}  // namespace thzlink
