#pragma once

#include <complex>
#include <vector>

#include "lgqho/core.hpp"
#include "lgqho/lg.hpp"

namespace lgqho {

/// Coherent state after the projection θ(±x̂) at θ = 0 (not renormalised).
struct ChoppedState {
    CoherentState parent;
    int chop_sign = 1;

    /// ½(1 + s·erf x0)
    double norm() const;
};

struct CurrentSample {
    double theta = 0.0;
    double value = 0.0;  // in units of ω
};

/// ∫ over the half-line sign·r > 0 of exp(-(r-a)²/2 + i b r + i c r²).
std::complex<double> chopped_gaussian_integral(int sign, double a, double b, double c);

/// Evolved chopped wavefunction; throws SingularityError where sin θ = 0.
std::complex<double> chopped_wavefunction(const ChoppedState& cs, double x, double theta);

/// Wavefunction and its x-derivative together.
std::pair<std::complex<double>, std::complex<double>> chopped_wavefunction_with_derivative(
    const ChoppedState& cs, double x, double theta);

CurrentSample chopped_current(const ChoppedState& cs, double x, double theta);

/// Current at the origin of the classical ensemble started from θ(±X)·W.
CurrentSample classical_chopped_current(const ChoppedState& cs, double theta);

/// Current of the unmeasured coherent state, J/ω = p_θ exp(-(x - x_θ)²)/sqrt(pi).
CurrentSample free_current(const CoherentState& state, double x, double theta);

/// Probability of s1 at θ = 0 followed by s2 at θ2 under two projective measurements.
double sequential_prob(const CoherentState& state, int s1, int s2, double theta2);

/// Same quantity from the time-integrated chopped current at the origin.
double sequential_prob_from_current(const CoherentState& state, int s1, int s2, double theta2);

/// ∫_0^θ2 J_s(0, θ) dθ with the θ^(-1/2) endpoint handled by θ = atan(u²).
QpValue integrated_chopped_current(const ChoppedState& cs, double theta2);

/// ½∫_0^θ2 (𝕁_- - J_- + 𝕁_+ - J_+) dθ, the interference part of q(-,+).
QpValue interference_term(const CoherentState& state, double theta2);

/// q(-,+) with measurements at 0 and θ2, assembled from currents at the origin.
QpValue qp_via_currents(const CoherentState& state, double theta2);

/// ψ^(n)(0) for n = 0..count-1 of the coherent-state wavefunction.
std::vector<std::complex<double>> coherent_derivatives(const CoherentState& state, int count);

/// Fourier-type half-line moments of exp(-z²/2i) used by the small-time series.
std::complex<double> smalltime_k(int sign, int n);

/// Small-θ double series for q(-,+); includes all n ≥ 1, l ≥ 0 with n + l ≤ order + 1.
/// With free_particle the expansion variable tan θ is replaced by θ.
double smalltime_qp(const std::vector<std::complex<double>>& derivs, double theta, int order,
                    bool free_particle = false);

}  // namespace lgqho
