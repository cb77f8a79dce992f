#pragma once

#include <string>
#include <vector>

#include "lgqho/core.hpp"

namespace lgqho {

enum class SeriesMode {
    truncated,  // plain partial sum to exactly n_max terms (early stop on a negligible envelope)
    converged,  // windowed partial sums, doubled until successive estimates agree to tol
};

struct SeriesOptions {
    SeriesMode mode = SeriesMode::converged;
    int n_max = 16384;
    double tol = 1e-8;

    static SeriesOptions truncated(int n_max = 200);
    static SeriesOptions converged(double tol = 1e-8, int n_cap = 16384);
};

/// A series-evaluated quantity with its convergence metadata.
struct QpValue {
    double value = 0.0;
    int terms_used = 0;
    double residual = 0.0;
    bool converged = true;
};

/// Equally spaced measurement phases with optional sign pattern.
struct Schedule {
    std::vector<double> phases;

    static Schedule equal_spacing(double theta1, double dtheta, int count);
    void validate() const;
};

struct LGEntry {
    std::string label;
    double value = 0.0;
};

struct LGReport {
    int order = 2;
    double theta1 = 0.0;
    double dtheta = 0.0;
    std::vector<LGEntry> entries;
    LGEntry extremal;
    double residual = 0.0;
    bool converged = true;

    double at(const std::string& label) const;
};

/// ⟨sgn x̂(θ)⟩ = erf(x_θ)
double single_time_avg(const CoherentState& state, double theta);

/// Symmetrised two-time correlator of sgn x̂ at θ1 < θ2.
QpValue correlator(const CoherentState& state, double theta1, double theta2,
                   const SeriesOptions& options = {});

/// Same, in terms of the classical positions x1, x2 at the two times and their phase gap.
QpValue correlator_from_positions(double x1, double x2, double dtheta, const SeriesOptions& options = {});

QpValue quasiprob(const CoherentState& state, int s1, int s2, double theta1, double theta2,
                  const SeriesOptions& options = {});

LGReport lg_report(const CoherentState& state, int order, double dtheta, double theta1 = 0.0,
                   const SeriesOptions& options = {});

/// Three pairs (12, 23, 13) over three equally spaced times, four sign patterns each.
LGReport lg2_all_pairs(const CoherentState& state, double dtheta, double theta1 = 0.0,
                       const SeriesOptions& options = {});

/// Assembles the order-k entries from single-time averages and the needed correlators.
/// corr is indexed [i][j] for i < j; only the pairs used by that order are read.
LGReport assemble_report(int order, const std::vector<double>& avgs,
                         const std::vector<std::vector<double>>& corr);

/// Distance beyond the macrorealist bound (0 when satisfied).
double violation(const LGReport& report);

/// Violation as a percentage of the largest quantum violation for that order.
double percent_of_bound(int order, double extremal_value);

/// Windowed sum of terms[0..count): the last half is tapered by a raised cosine.
double windowed_sum(const double* terms, int count);

}  // namespace lgqho
