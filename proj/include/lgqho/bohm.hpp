#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "lgqho/core.hpp"
#include "lgqho/currents.hpp"

namespace lgqho {

/// ⟨x| exp(-iHt) θ(x̂) |p⟩ for a free particle (ħ = m = 1).
std::complex<double> moshinsky(double x, double p, double t);

/// ∂M/∂x at the same point; t > 0.
std::complex<double> moshinsky_dx(double x, double p, double t);

struct MoshinskySource {
    double p = -1.0;
};

using BohmSource = std::variant<MoshinskySource, ChoppedState>;

struct TrajectoryBundle {
    std::vector<double> seeds;      // initial positions
    std::vector<double> quantiles;  // seed quantiles of the initial density (empty for Moshinsky)
    std::vector<double> times;
    std::vector<std::vector<double>> paths;            // [seed][time]
    std::vector<std::vector<double>> classical_paths;  // [seed][time]
    std::vector<int> halted_at;                        // first time index not reached, -1 if complete
};

/// Seed positions at the given quantiles of the chopped initial density.
std::vector<double> quantile_seeds(const ChoppedState& cs, const std::vector<double>& quantiles);

/// Guidance velocity J/|ψ|² of the source at (x, t).
double bohm_velocity(const BohmSource& source, double x, double t);

/// For a chopped source `seeds` are quantiles in (0, 1); for a Moshinsky source they are positions.
/// The time grid is increasing; for a chopped source it must stay inside [0, π).
TrajectoryBundle bohm_trajectories(const BohmSource& source, const std::vector<double>& seeds,
                                   const std::vector<double>& times, Execution exec = Execution::parallel);

/// First time at which a path reaches x ≤ 0, by linear interpolation; NaN if it never does.
double first_crossing_time(const std::vector<double>& path, const std::vector<double>& times);

}  // namespace lgqho
