#pragma once

#include <string>
#include <vector>

#include "lgqho/core.hpp"
#include "lgqho/lg.hpp"

namespace lgqho {

/// Rectangular (x0, p0) lattice; endpoints included.
struct ScanGrid {
    double x_min = 0.0, x_max = 4.0, x_step = 0.05;
    double p_min = 0.0, p_max = 4.0, p_step = 0.05;
    int tau_samples = 720;

    void validate() const;
    std::vector<double> xs() const;
    std::vector<double> ps() const;
};

/// Most violating equal spacing for one state.
struct TauOptimum {
    double dtheta = 0.0;
    double value = 0.0;
    std::string label;
};

/// Larger is more violating: -value for LG2/LG3, value for LG4.
double violation_score(int order, double extremal_value);

/// Representative of Δθ on [0, π/2] under the aliases 2π - Δθ and π ± Δθ.
double fold_dtheta(double dtheta);

TauOptimum tau_extremize(const CoherentState& state, int order,
                         const SeriesOptions& options = SeriesOptions::truncated(), int samples = 720);

struct ScanCell {
    double x0 = 0.0, p0 = 0.0;
    double value = 0.0;
    double dtheta_star = 0.0;
    std::string label;
};

struct ScanResult {
    int order = 2;
    ScanGrid grid;
    std::vector<ScanCell> cells;  // x-major: cells[i * ps.size() + j]
    ScanCell best;
};

ScanResult quadrant_scan(const ScanGrid& grid, int order, const SeriesOptions& options = SeriesOptions::truncated(),
                         Execution exec = Execution::parallel);

struct TableRow {
    int order = 2;
    ScanCell coarse;
    double x0 = 0.0, p0 = 0.0;
    double dtheta = 0.0;         // as found, in (0, 2π]
    double dtheta_folded = 0.0;
    double value = 0.0;          // at the refined point, same series mode as the scan
    double value_converged = 0.0;
    double percent = 0.0;
    bool converged = true;
};

/// Simplex refinement of a coarse cell over (x0, p0, Δθ). Never returns a point worse than the cell.
TableRow refine_optimum(int order, const ScanCell& start, const SeriesOptions& options = SeriesOptions::truncated());

std::vector<TableRow> reproduce_table(const ScanGrid& grid = {}, Execution exec = Execution::parallel);

}  // namespace lgqho
