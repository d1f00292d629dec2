#ifndef ONCOLATTICE_ROOTS_HPP
#define ONCOLATTICE_ROOTS_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace oncolattice {

using ScalarFn = std::function<double(double)>;

/// Bisection on [lo, hi]; f(lo) and f(hi) must differ in sign (or one be zero).
/// Stops when the bracket is narrower than tol * max(1, |x|).
double bisect(const ScalarFn& f, double lo, double hi, double tol = 1e-12);

/// Uniform scan of [lo, hi] with `intervals` sub-intervals, then bisection on every sign change.
std::vector<double> scan_roots(const ScalarFn& f, double lo, double hi, std::size_t intervals,
                               double tol = 1e-12);

}  // namespace oncolattice

#endif  // ONCOLATTICE_ROOTS_HPP
