#pragma once

#include <functional>

namespace lgqho {

struct Integral {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15-point) on [a, b]; either end may be infinite.
/// Throws NumericError when the error estimate stays above max(abs_tol, rel_tol·L1).
Integral integrate(const std::function<double(double)>& f, double a, double b,
                   double abs_tol = 1e-12, double rel_tol = 1e-12, int max_depth = 30);

/// Composite fixed-order Gauss-Legendre over [a, b] with `panels` equal panels.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace lgqho
