#include "lgqho/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lgqho/errors.hpp"

namespace lgqho {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
                          const std::vector<double>& step, double ftol, double xtol, int max_evals) {
    const std::size_t dim = start.size();
    if (dim == 0 || step.size() != dim) throw ValidationError("simplex start and step sizes must match");
    std::vector<std::vector<double>> pts(dim + 1, start);
    for (std::size_t k = 0; k < dim; ++k) pts[k + 1][k] += step[k];
    std::vector<double> vals(dim + 1);
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        const double v = f(x);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };
    for (std::size_t k = 0; k <= dim; ++k) vals[k] = eval(pts[k]);

    std::vector<std::size_t> order(dim + 1);
    SimplexResult out;
    for (;;) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[dim - 1];

        double diameter = 0.0;
        for (std::size_t k = 0; k <= dim; ++k)
            for (std::size_t d = 0; d < dim; ++d) diameter = std::max(diameter, std::abs(pts[k][d] - pts[best][d]));
        if (std::abs(vals[worst] - vals[best]) <= ftol && diameter <= xtol) {
            out.converged = true;
            break;
        }
        if (evals >= max_evals) break;

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t k = 0; k <= dim; ++k)
            if (k != worst)
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[k][d] / dim;
        auto along = [&](double t) {
            std::vector<double> x(dim);
            for (std::size_t d = 0; d < dim; ++d) x[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
            return x;
        };
        std::vector<double> xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < vals[best]) {
            std::vector<double> xe = along(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            std::vector<double> xc = along(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 0; k <= dim; ++k) {
                    if (k == best) continue;
                    for (std::size_t d = 0; d < dim; ++d) pts[k][d] = pts[best][d] + 0.5 * (pts[k][d] - pts[best][d]);
                    vals[k] = eval(pts[k]);
                }
            }
        }
    }
    const std::size_t best = std::min_element(vals.begin(), vals.end()) - vals.begin();
    out.x = pts[best];
    out.value = vals[best];
    out.evaluations = evals;
    return out;
}

}  // namespace lgqho
