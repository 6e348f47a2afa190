#pragma once

#include <cmath>
#include <optional>

namespace thzlink {

// Bisection on [lo, hi].  Returns nullopt unless f changes sign across the
// bracket (endpoints hitting zero exactly count as roots).  log_scale bisects
// geometrically (requires lo > 0) and interprets xtol as a relative width;
// otherwise xtol is the absolute bracket width.
template <typename F>
std::optional<double> bisect(F&& f, double lo, double hi, double xtol,
                             bool log_scale = false, int max_iter = 200) {
  if (!(lo < hi) || (log_scale && !(lo > 0.0))) return std::nullopt;
  double flo = f(lo);
  if (flo == 0.0) return lo;
  double fhi = f(hi);
  if (fhi == 0.0) return hi;
  if (std::isnan(flo) || std::isnan(fhi)) return std::nullopt;
  if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
  for (int i = 0; i < max_iter; ++i) {
    double mid = log_scale ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    double width = hi - lo;
    if (width <= (log_scale ? xtol * mid : xtol)) return mid;
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return log_scale ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
}

}  // namespace thzlink
