#include "oncolattice/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oncolattice {

double bisect(const ScalarFn& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw std::invalid_argument("bisect: root not bracketed");
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> scan_roots(const ScalarFn& f, double lo, double hi, std::size_t intervals,
                               double tol) {
  std::vector<double> roots;
  if (intervals == 0 || !(hi > lo)) return roots;
  const double step = (hi - lo) / static_cast<double>(intervals);
  double a = lo;
  double fa = f(a);
  if (fa == 0.0) roots.push_back(a);
  for (std::size_t i = 1; i <= intervals; ++i) {
    const double b = i == intervals ? hi : lo + step * static_cast<double>(i);
    const double fb = f(b);
    if (fb == 0.0) {
      roots.push_back(b);
    } else if (fa != 0.0 && std::isfinite(fa) && std::isfinite(fb) && (fa > 0.0) != (fb > 0.0)) {
      roots.push_back(bisect(f, a, b, tol));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace oncolattice
