#pragma once

#include <functional>

namespace fdecay {

/// Adaptive Gauss-Kronrod (7,15) integration of g over [lo, hi].
/// Stops once the accumulated error estimate drops below
/// tol·(1 + |result|); throws when the subdivision cap is exceeded.
double integrate_adaptive(const std::function<double(double)>& g, double lo, double hi,
                          double tol = 1e-10, int max_intervals = 20000);

}  // namespace fdecay
