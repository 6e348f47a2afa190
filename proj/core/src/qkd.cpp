#include "thzlink/qkd.hpp"

#include <cmath>
#include <stdexcept>

#include "thzlink/constants.hpp"
#include "thzlink/gaussian.hpp"
#include "thzlink/link.hpp"
#include "thzlink/roots.hpp"
#include "thzlink/thermal.hpp"

namespace thzlink {

namespace {

void check_point(double v0, double trans, double eta) {
  if (!(v0 >= 1.0)) throw std::invalid_argument("key rate: v0 must be >= 1");
  if (!(trans > 0.0 && trans < 1.0))
    throw std::invalid_argument("key rate: trans must be strictly inside (0, 1)");
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("key rate: eta must be in (0, 1]");
}

double closed_form(double v0, double trans, double eta, bool square_v0) {
  double w = (1.0 - trans) * (1.0 - eta);
  double top = square_v0 ? w * v0 * v0 + eta : w * v0 + eta;
  double x = std::sqrt(top / (w + eta));
  return bosonic_entropy(x) - bosonic_entropy(v0) +
         0.5 * std::log2((w + eta) / (1.0 - trans));
}

// symplectic pair of a two-mode state from the invariants Delta and det,
// minus branch kept cancellation-free
std::pair<double, double> nu_from_invariants(double delta, double det) {
  double disc = delta * delta - 4.0 * det;
  if (disc < 0.0) disc = 0.0;
  double root = std::sqrt(disc);
  double nu_plus = std::sqrt(0.5 * (delta + root));
  double nu_minus = delta + root > 0.0 ? std::sqrt(2.0 * det / (delta + root)) : 0.0;
  return {nu_plus, nu_minus};
}

struct Resolved {
  double v0, trans, eta, v_s, v_e;
};

Resolved resolve(const QkdScenario& sc) {
  Resolved r{sc.v0, sc.trans, sc.eta, sc.v_s > 0.0 ? sc.v_s : sc.v0,
             sc.v_e > 0.0 ? sc.v_e : sc.v0};
  check_point(r.v0, r.trans, r.eta);
  if (!(r.v_s >= 1.0) || !(r.v_e >= 1.0))
    throw std::invalid_argument("key rate: v_s and v_e must be >= 1");
  return r;
}

RateResult pipeline(const Resolved& r, double va) {
  double VA = r.v0 + va;
  double T = r.trans, eta = r.eta, VE = r.v_e, Vs = r.v_s;
  double cE2 = (VE - 1.0) * (VE + 1.0);
  double cE = std::sqrt(cE2);
  double g = std::sqrt(T) * cE;

  // Bob's variance, and his variance were the source unmodulated
  double Vb = eta * (T * VA + (1.0 - T) * VE) + (1.0 - eta) * Vs;
  double Vba = eta * VE + (1.0 - eta) * Vs;
  double info = 0.5 * std::log2(Vb / Vba);

  // environment pair (e, E'): e keeps variance VE, E' holds the channel output
  double a_e = VE;
  double b_E = (1.0 - T) * VA + T * VE;
  double delta = a_e * a_e + b_E * b_E - 2.0 * g * g;
  double det = (a_e * b_E - g * g) * (a_e * b_E - g * g);
  auto [nu_p, nu_m] = nu_from_invariants(delta, det);
  double s_env = bosonic_entropy(nu_p) + bosonic_entropy(nu_m);

  // environment conditioned on Bob's q quadrature; the q-block numerators are
  // rearranged so no Va^2 cancellation occurs at large modulation
  double aq = a_e - eta * (1.0 - T) * cE2 / Vb;
  double bq_num = eta * T * (1.0 - T) * (VE * VE + 2.0 * VE * va) +
                  (1.0 - T) * VA * (eta * (1.0 - T) * VE + (1.0 - eta) * Vs) +
                  T * VE * Vb;
  double bq = bq_num / Vb;
  double cq = std::sqrt(T) * cE * (Vb + eta * (1.0 - T) * va) / Vb;
  double ap = a_e, bp = b_E, cp = -g;
  double det_q = aq * bq - cq * cq;
  double det_p = ap * bp - cp * cp;
  double delta_c = aq * ap + bq * bp + 2.0 * cq * cp;
  auto [nu_pc, nu_mc] = nu_from_invariants(delta_c, det_q * det_p);
  double s_cond = bosonic_entropy(nu_pc) + bosonic_entropy(nu_mc);

  RateResult out;
  out.mutual_info_bits = info;
  out.holevo_bits = s_env - s_cond;
  out.raw_bits = info - (s_env - s_cond);
  return out;
}

}  // namespace

RateResult rr_key_rate(double v0, double trans, double eta) {
  check_point(v0, trans, eta);
  RateResult out;
  out.raw_bits = closed_form(v0, trans, eta, false);
  return out;
}

double rr_key_rate_model_limit(double v0, double trans, double eta) {
  check_point(v0, trans, eta);
  return closed_form(v0, trans, eta, true);
}

RateResult rr_key_rate_from_model(const QkdScenario& sc) {
  Resolved r = resolve(sc);
  if (!(sc.v_a >= 1e3))
    throw std::invalid_argument("rr_key_rate_from_model: v_a below 1e3 does not converge");
  return pipeline(r, sc.v_a);
}

RateResult rr_key_rate_from_model_asymptotic(const QkdScenario& sc) {
  Resolved r = resolve(sc);
  double va = sc.v_a > 1e8 ? sc.v_a : 1e8;
  RateResult f1 = pipeline(r, va);
  RateResult f2 = pipeline(r, 2.0 * va);
  RateResult f4 = pipeline(r, 4.0 * va);
  RateResult out;
  out.raw_bits = f1.raw_bits - 4.0 * f2.raw_bits + 4.0 * f4.raw_bits;
  out.mutual_info_bits =
      *f1.mutual_info_bits - 4.0 * *f2.mutual_info_bits + 4.0 * *f4.mutual_info_bits;
  out.holevo_bits = *f1.holevo_bits - 4.0 * *f2.holevo_bits + 4.0 * *f4.holevo_bits;
  return out;
}

double plob_bound(double v0, double trans) {
  if (!(v0 >= 1.0)) throw std::invalid_argument("plob_bound: v0 must be >= 1");
  if (!(trans > 0.0 && trans < 1.0))
    throw std::invalid_argument("plob_bound: trans must be strictly inside (0, 1)");
  double nbar = 0.5 * (v0 - 1.0);
  if (nbar >= trans / (1.0 - trans)) return 0.0;
  double c = -std::log2((1.0 - trans) * std::pow(trans, nbar)) - bosonic_entropy(v0);
  return c > 0.0 ? c : 0.0;  // the expression crosses zero exactly at the cutoff
}

double min_frequency_bound(double trans, double temp_k) {
  if (!(trans > 0.0 && trans < 1.0))
    throw std::invalid_argument("min_frequency_bound: trans must be strictly inside (0, 1)");
  if (!(temp_k >= 0.0)) throw std::invalid_argument("min_frequency_bound: temp_k must be >= 0");
  return std::log(1.0 / trans) * boltzmann_k * temp_k / planck_h;
}

std::optional<double> accessible_frequency(double trans, double temp_k, double eta) {
  auto raw_rate = [&](double f) {
    double v0 = thermal_variance(thermal_occupancy(f, temp_k));
    return rr_key_rate(v0, trans, eta).raw_bits;
  };
  return bisect(raw_rate, 1e10, 1e14, 1e-6, true);
}

RateResult key_rate_at_distance(double freq_hz, double temp_k, double eta,
                                double w0_m, double ra_m, double dist_m) {
  double trans = link_transmissivity(freq_hz, w0_m, ra_m, dist_m);
  if (trans > 1.0 - 1e-12) trans = 1.0 - 1e-12;
  double v0 = thermal_variance(thermal_occupancy(freq_hz, temp_k));
  return rr_key_rate(v0, trans, eta);
}

std::optional<double> min_aperture_radius(double freq_hz, double temp_det_k,
                                          double eta, double w0_m, double dist_m,
                                          double target_rate) {
  double v0 = thermal_variance(thermal_occupancy(freq_hz, temp_det_k));
  auto excess = [&](double ra) {
    double trans = link_transmissivity(freq_hz, w0_m, ra, dist_m);
    if (trans > 1.0 - 1e-12) trans = 1.0 - 1e-12;
    return rr_key_rate(v0, trans, eta).raw_bits - target_rate;
  };
  return bisect(excess, 1e-3, 1e3, 1e-6, true);
}

}  // namespace thzlink
