#pragma once

#include <functional>
#include <vector>

namespace lgqho {

struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

/// Nelder-Mead downhill simplex. Stops when the spread of simplex values falls below ftol
/// and the simplex diameter below xtol, or after max_evals evaluations (converged = false).
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const std::vector<double>& step, double ftol = 1e-12, double xtol = 1e-8,
                          int max_evals = 20000);

}  // namespace lgqho
