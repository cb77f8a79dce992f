#pragma once

#include <complex>
#include <vector>

#include "lgqho/core.hpp"
#include "lgqho/lg.hpp"

namespace lgqho {

struct GridSpec {
    int n = 801;              // nodes per axis, odd so the half-resolution grid nests
    double half_width = 6.0;  // grid spans center ± half_width on both axes
    double tol = 1e-3;        // allowed Richardson error estimate
};

/// Sampled phase-space density on an (X, p) lattice.
struct PhaseField {
    double x_min = 0.0, p_min = 0.0, dx = 0.0, dp = 0.0;
    int nx = 0, np = 0;
    std::vector<double> values;      // row-major, values[i * np + j] at (x_min + i dx, p_min + j dp)
    std::vector<double> marginal_X;  // nx - 1 cell-centred densities ∫ f dp
    std::vector<double> marginal_p;  // np - 1 cell-centred densities ∫ f dX
    double total = 0.0;

    double x_at(int i) const { return x_min + i * dx; }
    double p_at(int j) const { return p_min + j * dp; }
    double value(int i, int j) const { return values[static_cast<std::size_t>(i) * np + j]; }
};

double wigner_coherent(const CoherentState& state, double X, double p);

/// Wigner function of ½(P_s ρ + ρ P_s), P_s = θ(s x̂).
double chopped_wigner(const CoherentState& state, int s1, double X, double p);

/// q(s1, s2) at phases 0 and θ2 as the phase-space integral of the chopped Wigner function
/// over the half-plane s2 (X cos θ2 + p sin θ2) > 0.
std::pair<QpValue, PhaseField> qp_via_wigner(const CoherentState& state, int s1, int s2, double theta2,
                                             const GridSpec& grid = {}, Execution exec = Execution::parallel);

/// Average ⟨θ(s x̂(θ))⟩ = ½(1 + s erf x_θ).
double projector_avg(const CoherentState& state, int s, double theta);

/// Wigner-type LG2 combination built from the sequential measurement probability.
double wigner_lg2(const CoherentState& state, int s1, int s2, double theta2);

struct PhaseOptimum {
    double theta = 0.0;
    double value = 0.0;
};

/// Minimises wigner_lg2 over θ2 ∈ (0, π).
PhaseOptimum wigner_lg2_optimize(const CoherentState& state, int s1, int s2, int samples = 360);

/// 1 - |a|² - |b|² + |a|²|c|² for unit |A⟩, |B⟩ with ⟨A|B⟩ = c, a = ⟨ψ|A⟩, b = ⟨ψ|B⟩.
/// Throws ValidationError unless the Gram matrix of (ψ, A, B) is positive semidefinite.
double projector_qw_bound(std::complex<double> overlap, std::complex<double> a, std::complex<double> b);

}  // namespace lgqho
