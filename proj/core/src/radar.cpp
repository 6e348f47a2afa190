#include "thzlink/radar.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace thzlink {

namespace {

// ln of the thermal number distribution p(n) = nbar^n / (nbar+1)^{n+1},
// evaluated in log space so nbar ~ 100 cannot overflow
double ln_therm(double nbar, int n) {
  if (nbar <= 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return n * std::log(nbar) - (n + 1) * std::log1p(nbar);
}

// largest occupied Fock index keeping the per-mode tail mass below tail_eps
int cutoff_index(double nbar, double tail_eps, int pad) {
  if (nbar <= 0.0) return pad;
  double levels = std::log(1.0 / tail_eps) / std::log1p(1.0 / nbar);
  return static_cast<int>(std::ceil(levels)) + pad;
}

struct Williamson {
  double t;       // two-mode squeeze parameter
  double n1, n2;  // thermal occupancies of the normal modes
};

// decomposition of [[a I, c Z], [c Z, b I]] into S2(t) (th(n1) x th(n2)) S2(t)^T
Williamson williamson_two_mode(double a, double b, double c) {
  double s = std::sqrt((a + b) * (a + b) - 4.0 * c * c);
  double d1 = 0.5 * (s + (a - b));
  double d2 = 0.5 * (s - (a - b));
  return {0.5 * std::atanh(2.0 * c / (a + b)), 0.5 * (d1 - 1.0), 0.5 * (d2 - 1.0)};
}

// <m+delta, n+delta| S2(t) |m, n>, a finite alternating sum evaluated with a
// factorial table in log space; lg[n] = lgamma(n+1)
double s2_elem(int m, int n, int delta, double ln_tanh, double ln_sech,
               const std::vector<double>& lg) {
  int j = m + delta, k = n + delta;
  if (j < 0 || k < 0) return 0.0;
  double pref = 0.5 * (lg[m] + lg[n] + lg[j] + lg[k]);
  double total = 0.0;
  int q_lo = delta < 0 ? -delta : 0;
  int q_hi = m < n ? m : n;
  for (int q = q_lo; q <= q_hi; ++q) {
    int band = delta + 2 * q;
    double lt = (band == 0 ? 0.0 : band * ln_tanh) + (m + n - 2 * q + 1) * ln_sech +
                pref - lg[q] - lg[delta + q] - lg[m - q] - lg[n - q];
    total += (q % 2 == 0 ? 1.0 : -1.0) * std::exp(lt);
  }
  return total;
}

void check_scenario(const IlluminationScenario& sc) {
  if (!(sc.kappa >= 0.0 && sc.kappa < 1.0))
    throw std::invalid_argument("radar: kappa must be in [0, 1)");
  if (!(sc.signal_ns > 0.0)) throw std::invalid_argument("radar: signal_ns must be > 0");
  if (!(sc.background_nb >= 0.0))
    throw std::invalid_argument("radar: background_nb must be >= 0");
  if (sc.pad < 1 || sc.delta_max < 1)
    throw std::invalid_argument("radar: pad and delta_max must be >= 1");
}

// covariance blocks of the joint (return, idler) state under the
// target-present hypothesis
struct H1Blocks {
  double a, b, c;
};

H1Blocks h1_blocks(const IlluminationScenario& sc) {
  double a = 2.0 * (sc.kappa * sc.signal_ns + sc.background_nb) + 1.0;
  double b = 2.0 * sc.signal_ns + 1.0;
  double c = 2.0 * std::sqrt(sc.kappa) * std::sqrt(sc.signal_ns * (sc.signal_ns + 1.0));
  return {a, b, c};
}

// s-independent representation of Q(s) = sum_i exp(lw_i + s z_i)
struct TermCache {
  std::vector<double> z;
  std::vector<double> lw;
};

constexpr double prune_nats = -80.0;  // 1.8e-35 per term, far under any tail mass

void push_term(TermCache& cache, double x, double y, double ln_amp_sq) {
  double lw = y + ln_amp_sq;
  double z = x - y;
  if (!std::isfinite(lw) || !std::isfinite(z)) return;  // zero-weight hypothesis state
  if (lw + (z > 0.0 ? z : 0.0) < prune_nats) return;
  cache.z.push_back(z);
  cache.lw.push_back(lw);
}

TermCache qi_term_cache(const IlluminationScenario& sc, double tail_eps) {
  H1Blocks h1 = h1_blocks(sc);
  Williamson w = williamson_two_mode(h1.a, h1.b, h1.c);
  double ln_tanh = std::log(std::tanh(w.t));
  double ln_sech = -std::log(std::cosh(w.t));
  int c_ret = cutoff_index(std::max(sc.background_nb, w.n1), tail_eps, sc.pad);
  int c_idl = cutoff_index(std::max(sc.signal_ns, w.n2), tail_eps, sc.pad);
  std::vector<double> lg(static_cast<size_t>(std::max(c_ret, c_idl) + sc.delta_max + 2));
  for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(static_cast<double>(i) + 1.0);

  TermCache cache;
  for (int n = 0; n <= c_idl; ++n) {
    for (int d = -sc.delta_max; d <= sc.delta_max; ++d) {
      if (n + d < 0) continue;
      for (int m = d < 0 ? -d : 0; m <= c_ret; ++m) {
        double amp = s2_elem(m, n, d, ln_tanh, ln_sech, lg);
        if (amp == 0.0) continue;
        double y = ln_therm(w.n1, m) + ln_therm(w.n2, n);
        double x = ln_therm(sc.background_nb, m + d) + ln_therm(sc.signal_ns, n + d);
        push_term(cache, x, y, 2.0 * std::log(std::abs(amp)));
      }
    }
  }
  return cache;
}

TermCache coherent_term_cache(const IlluminationScenario& sc, double tail_eps) {
  double a2 = sc.kappa * sc.signal_ns;  // displacement squared
  double nb = sc.background_nb;
  int c_max = cutoff_index(nb, tail_eps, sc.pad);
  std::vector<double> lg(static_cast<size_t>(c_max + 2));
  for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(static_cast<double>(i) + 1.0);

  TermCache cache;
  for (int m = 0; m <= c_max; ++m) {
    int n_lo = m - sc.delta_max < 0 ? 0 : m - sc.delta_max;
    int n_hi = m + sc.delta_max > c_max ? c_max : m + sc.delta_max;
    for (int n = n_lo; n <= n_hi; ++n) {
      int hi = m > n ? m : n;
      int lo = m > n ? n : m;
      int d = hi - lo;
      // |<hi| D(alpha) |lo>|^2 via the associated Laguerre series in -a2
      double series = 1.0, term = 1.0;
      for (int i = 0; i < lo; ++i) {
        term *= -a2 * (lo - i) / ((i + 1.0) * (d + 1.0 + i));
        series += term;
        if (std::abs(term) < 1e-18 * std::abs(series)) break;
      }
      double ln_ov = -a2 + d * std::log(a2) + lg[hi] - lg[lo] - 2.0 * lg[d];
      double ov2 = std::exp(ln_ov) * series * series;
      if (ov2 <= 0.0) continue;
      push_term(cache, ln_therm(nb, m), ln_therm(nb, n), std::log(ov2));
    }
  }
  return cache;
}

template <typename F>
std::pair<double, double> golden_min(F&& f, double lo, double hi, double tol) {
  constexpr double gr = 0.6180339887498949;
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = f(c), fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = f(d);
    }
  }
  double mid = 0.5 * (lo + hi);
  return {mid, f(mid)};
}

ChernoffResult minimize_cache(const TermCache& cache) {
  auto q_of_s = [&](double s) {
    double total = 0.0;
    for (size_t i = 0; i < cache.z.size(); ++i) total += std::exp(cache.lw[i] + s * cache.z[i]);
    return total;
  };
  auto [s_star, q] = golden_min(q_of_s, 0.0, 1.0, 1e-6);
  return {-std::log(q), s_star, q};
}

}  // namespace

double resolved_tail_eps(const IlluminationScenario& sc) {
  if (sc.tail_eps > 0.0) return sc.tail_eps;
  double nb = sc.background_nb;
  double e_coh = sc.kappa * sc.signal_ns *
                 std::pow(std::sqrt(nb + 1.0) - std::sqrt(nb), 2.0);
  double scaled = 5e-5 * e_coh;
  return scaled < 4e-9 ? scaled : 4e-9;
}

ChernoffResult qi_exponent(const IlluminationScenario& sc) {
  check_scenario(sc);
  if (sc.kappa == 0.0) return {0.0, 0.5, 1.0};  // hypotheses coincide
  TermCache cache = qi_term_cache(sc, resolved_tail_eps(sc));
  return minimize_cache(cache);
}

ChernoffResult coherent_exponent(const IlluminationScenario& sc) {
  check_scenario(sc);
  if (sc.kappa == 0.0) return {0.0, 0.5, 1.0};
  TermCache cache = coherent_term_cache(sc, resolved_tail_eps(sc));
  return minimize_cache(cache);
}

double qr_advantage_db(const IlluminationScenario& sc) {
  double eq = qi_exponent(sc).exponent;
  double ec = coherent_exponent(sc).exponent;
  if (!(eq > 0.0) || !(ec > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return 10.0 * std::log10(eq / ec);
}

FockStatePair qi_states(const IlluminationScenario& sc) {
  check_scenario(sc);
  double tail = resolved_tail_eps(sc);
  H1Blocks h1 = h1_blocks(sc);
  Williamson w = williamson_two_mode(h1.a, h1.b, h1.c);
  int dim_ret = cutoff_index(std::max(sc.background_nb, w.n1), tail, sc.pad) + 1;
  int dim_idl = cutoff_index(std::max(sc.signal_ns, w.n2), tail, sc.pad) + 1;
  int pad_ret = dim_ret + sc.pad;
  int pad_idl = dim_idl + sc.pad;
  int n_full = pad_ret * pad_idl;
  if (n_full > 4096)
    throw std::length_error("qi_states: padded Fock space too large for the dense path");

  double ln_tanh =
      w.t > 0.0 ? std::log(std::tanh(w.t)) : -std::numeric_limits<double>::infinity();
  double ln_sech = w.t > 0.0 ? -std::log(std::cosh(w.t)) : 0.0;
  std::vector<double> lg(static_cast<size_t>(pad_ret + pad_idl + 2));
  for (size_t i = 0; i < lg.size(); ++i) lg[i] = std::lgamma(static_cast<double>(i) + 1.0);

  Eigen::MatrixXd squeezer = Eigen::MatrixXd::Zero(n_full, n_full);
  for (int m = 0; m < pad_ret; ++m) {
    for (int n = 0; n < pad_idl; ++n) {
      int d_lo = -(m < n ? m : n);
      int d_hi = std::min(pad_ret - 1 - m, pad_idl - 1 - n);
      for (int d = d_lo; d <= d_hi; ++d) {
        double amp = s2_elem(m, n, d, ln_tanh, ln_sech, lg);
        if (amp != 0.0) squeezer((m + d) * pad_idl + (n + d), m * pad_idl + n) = amp;
      }
    }
  }
  Eigen::VectorXd diag(n_full);
  for (int m = 0; m < pad_ret; ++m)
    for (int n = 0; n < pad_idl; ++n)
      diag(m * pad_idl + n) = std::exp(ln_therm(w.n1, m) + ln_therm(w.n2, n));
  Eigen::MatrixXd rho1_full = squeezer * diag.asDiagonal() * squeezer.transpose();

  FockStatePair out;
  out.dim_return = dim_ret;
  out.dim_idler = dim_idl;
  int dim = dim_ret * dim_idl;
  out.rho0.assign(static_cast<size_t>(dim) * dim, 0.0);
  out.rho1.assign(static_cast<size_t>(dim) * dim, 0.0);
  for (int m = 0; m < dim_ret; ++m) {
    for (int n = 0; n < dim_idl; ++n) {
      int row = m * dim_idl + n;
      out.rho0[static_cast<size_t>(row) * dim + row] =
          std::exp(ln_therm(sc.background_nb, m) + ln_therm(sc.signal_ns, n));
      for (int mm = 0; mm < dim_ret; ++mm)
        for (int nn = 0; nn < dim_idl; ++nn)
          out.rho1[static_cast<size_t>(row) * dim + (mm * dim_idl + nn)] =
              rho1_full(m * pad_idl + n, mm * pad_idl + nn);
    }
  }
  return out;
}

ChernoffResult chernoff_exponent(const std::vector<double>& rho0,
                                 const std::vector<double>& rho1, int dim) {
  if (dim <= 0 || rho0.size() != static_cast<size_t>(dim) * dim ||
      rho1.size() != static_cast<size_t>(dim) * dim)
    throw std::invalid_argument("chernoff_exponent: dimension mismatch");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> m0(rho0.data(), dim, dim);
  Eigen::Map<const RowMajor> m1(rho1.data(), dim, dim);

  auto spectrum = [dim](const Eigen::Ref<const Eigen::MatrixXd>& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
    Eigen::VectorXd vals = es.eigenvalues();
    double trace = vals.sum();
    if (std::abs(trace - 1.0) > 1e-6)
      throw std::invalid_argument("chernoff_exponent: trace deviates from 1");
    for (int i = 0; i < dim; ++i) {
      if (vals(i) < -1e-10)
        throw std::runtime_error("chernoff_exponent: negative eigenvalue, enlarge the cutoff");
      if (vals(i) < 0.0) vals(i) = 0.0;
    }
    return std::make_pair(vals, es.eigenvectors());
  };
  auto [vals0, vecs0] = spectrum(m0);
  auto [vals1, vecs1] = spectrum(m1);
  Eigen::MatrixXd overlap_sq = (vecs0.transpose() * vecs1).array().square();

  auto powers = [dim](const Eigen::VectorXd& vals, double p) {
    Eigen::VectorXd out(dim);
    for (int i = 0; i < dim; ++i) out(i) = vals(i) > 0.0 ? std::pow(vals(i), p) : 0.0;
    return out;
  };
  auto q_of_s = [&](double s) {
    return powers(vals0, s).dot(overlap_sq * powers(vals1, 1.0 - s));
  };
  auto [s_star, q] = golden_min(q_of_s, 0.0, 1.0, 1e-6);
  return {-std::log(q), s_star, q};
}

}  // namespace thzlink
