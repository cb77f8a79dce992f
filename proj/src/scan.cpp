#include "lgqho/scan.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "lgqho/errors.hpp"
#include "lgqho/optimize.hpp"

namespace lgqho {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> axis(double lo, double hi, double step) {
    std::vector<double> out;
    const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(count);
    for (long k = 0; k < count; ++k) out.push_back(lo + k * step);
    return out;
}

double score_at(const CoherentState& s, int order, double dtheta, const SeriesOptions& options, std::string* label) {
    const LGReport r = lg_report(s, order, dtheta, 0.0, options);
    if (label) *label = r.extremal.label;
    return violation_score(order, r.extremal.value);
}

}  // namespace

void ScanGrid::validate() const {
    for (double v : {x_min, x_max, x_step, p_min, p_max, p_step})
        if (!std::isfinite(v)) throw ValidationError("scan grid bounds must be finite");
    if (!(x_step > 0.0) || !(p_step > 0.0)) throw ValidationError("scan steps must be positive");
    if (x_max < x_min || p_max < p_min) throw ValidationError("scan grid is empty");
    if (tau_samples < 8) throw ValidationError("need at least 8 spacing samples");
}

std::vector<double> ScanGrid::xs() const { return axis(x_min, x_max, x_step); }
std::vector<double> ScanGrid::ps() const { return axis(p_min, p_max, p_step); }

double violation_score(int order, double extremal_value) { return order == 4 ? extremal_value : -extremal_value; }

double fold_dtheta(double dtheta) {
    // Δθ -> π - Δθ flips the sign of alternate measurements (x(π - θ) = -x(-θ) after time reversal),
    // which permutes the inequality labels of every order
    const double d = std::fmod(dtheta, std::numbers::pi);
    return std::min(d, std::numbers::pi - d);
}

TauOptimum tau_extremize(const CoherentState& state, int order, const SeriesOptions& options, int samples) {
    if (order < 2 || order > 4) throw ValidationError("LG order must be 2, 3 or 4");
    if (samples < 8) throw ValidationError("need at least 8 spacing samples");
    const double h = kTwoPi / samples;
    int best_k = 1;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= samples; ++k) {
        const double v = score_at(state, order, k * h, options, nullptr);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    // refine inside the bracket around the best sample
    const double lo = std::max((best_k - 1) * h, 1e-9), hi = std::min((best_k + 1) * h, kTwoPi);
    auto f = [&](double d) { return -score_at(state, order, d, options, nullptr); };
    const auto [d_ref, v_ref] = boost::math::tools::brent_find_minima(f, lo, hi, 24);
    TauOptimum out;
    out.dtheta = -v_ref > best ? d_ref : best_k * h;
    out.value = lg_report(state, order, out.dtheta, 0.0, options).extremal.value;
    score_at(state, order, out.dtheta, options, &out.label);
    return out;
}

ScanResult quadrant_scan(const ScanGrid& grid, int order, const SeriesOptions& options, Execution exec) {
    grid.validate();
    if (order < 2 || order > 4) throw ValidationError("LG order must be 2, 3 or 4");
    const std::vector<double> xs = grid.xs(), ps = grid.ps();
    ScanResult out;
    out.order = order;
    out.grid = grid;
    out.cells.resize(xs.size() * ps.size());
    const long total = static_cast<long>(out.cells.size());
    auto work = [&](long idx) {
        ScanCell& c = out.cells[idx];
        c.x0 = xs[idx / ps.size()];
        c.p0 = ps[idx % ps.size()];
        const TauOptimum t = tau_extremize({c.x0, c.p0}, order, options, grid.tau_samples);
        c.value = t.value;
        c.dtheta_star = t.dtheta;
        c.label = t.label;
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(parallelism())
        for (long idx = 0; idx < total; ++idx) work(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) work(idx);
    }
    // gather in cell order: ties go to the first cell
    out.best = out.cells.front();
    for (const ScanCell& c : out.cells)
        if (violation_score(order, c.value) > violation_score(order, out.best.value)) out.best = c;
    return out;
}

TableRow refine_optimum(int order, const ScanCell& start, const SeriesOptions& options) {
    auto f = [&](const std::vector<double>& v) {
        if (!(v[2] > 0.0)) return std::numeric_limits<double>::infinity();
        return -score_at({v[0], v[1]}, order, v[2], options, nullptr);
    };
    const SimplexResult s =
        nelder_mead(f, {start.x0, start.p0, start.dtheta_star}, {0.025, 0.025, 0.01}, 1e-12, 1e-7, 4000);
    TableRow row;
    row.order = order;
    row.coarse = start;
    const bool improved = -s.value >= violation_score(order, start.value);
    row.x0 = improved ? s.x[0] : start.x0;
    row.p0 = improved ? s.x[1] : start.p0;
    row.dtheta = improved ? s.x[2] : start.dtheta_star;
    row.converged = s.converged;
    const CoherentState state{row.x0, row.p0};
    row.value = lg_report(state, order, row.dtheta, 0.0, options).extremal.value;
    const LGReport full = lg_report(state, order, row.dtheta, 0.0, SeriesOptions::converged());
    row.value_converged = full.extremal.value;
    row.converged = row.converged && full.converged;
    row.dtheta_folded = fold_dtheta(row.dtheta);
    row.percent = percent_of_bound(order, row.value);
    return row;
}

std::vector<TableRow> reproduce_table(const ScanGrid& grid, Execution exec) {
    std::vector<TableRow> rows;
    for (int order : {2, 3, 4}) {
        const ScanResult scan = quadrant_scan(grid, order, SeriesOptions::truncated(), exec);
        rows.push_back(refine_optimum(order, scan.best));
    }
    return rows;
}

}  // namespace lgqho
