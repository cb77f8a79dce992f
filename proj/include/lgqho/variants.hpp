#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lgqho/core.hpp"
#include "lgqho/lg.hpp"

namespace lgqho {

// ---------------------------------------------------------------- coherent-state projectors

/// Projector centres with the time evolution and the initial displacement absorbed.
struct GammaPair {
    std::complex<double> g1;
    std::complex<double> g2;
};

enum class ProjectorBranch { pp, pm, mp, mm };

ProjectorBranch parse_branch(const std::string& label);
std::string branch_label(ProjectorBranch b);

/// ⟨β|α⟩ for coherent states
std::complex<double> coherent_overlap(std::complex<double> beta, std::complex<double> alpha);

/// q for P+ = |γ⟩⟨γ|, P- = 1 - P+, measured on the vacuum.
double coherent_projector_qp(const GammaPair& g, ProjectorBranch branch);

struct ProjectorOptimum {
    GammaPair gammas;
    double value = 0.0;
    bool converged = false;
};

/// Multistart simplex search over (|γ1|, |γ2|, arg γ2 - arg γ1), γ1 taken real.
ProjectorOptimum coherent_projector_optimize(ProjectorBranch branch, bool gamma2_zero = false);

struct SuperpositionCheck {
    double value = 0.0;  // the projector quasi-probability
    double norm = 0.0;   // ⟨ψ|ψ⟩
    std::complex<double> beta_overlap;
};

/// Builds the two-coherent-state superposition that saturates the Lüders bound for the branch
/// (pp or pm) and evaluates q from coherent overlaps.
SuperpositionCheck superposition_max_check(ProjectorBranch branch);

// ---------------------------------------------------------------- thermal coherent states

struct ThermalParams {
    double temperature = 0.0;  // k_B T / ħω
    int max_levels = 2000;     // hard cap on retained number states
};

/// Boltzmann weights of the retained levels, renormalised over them.
std::vector<double> thermal_weights(const ThermalParams& tp);

/// q(s1, s2) for the displaced number state |l, α⟩ with translated projective measurements.
QpValue number_state_qp(const CoherentState& state, int level, int s1, int s2, double theta1, double theta2,
                        const SeriesOptions& options = {});

QpValue thermal_qp(const CoherentState& state, const ThermalParams& tp, int s1, int s2, double theta1,
                   double theta2, const SeriesOptions& options = {});

/// LG report for the thermal mixture (same labels as lg_report).
LGReport thermal_lg_report(const CoherentState& state, const ThermalParams& tp, int order, double dtheta,
                           double theta1 = 0.0, const SeriesOptions& options = {});

struct ThermalPoint {
    double temperature = 0.0;
    double violation = 0.0;
    double ratio = 0.0;
};

/// Violation relative to its zero-temperature value, at the reference optimum for each order.
std::vector<ThermalPoint> thermal_violation_curve(int order, const std::vector<double>& temperatures,
                                                  const SeriesOptions& options = {});

/// Reference optimal state and spacing used for the thermal curves.
struct ReferencePoint {
    CoherentState state;
    double dtheta = 0.0;
};
ReferencePoint reference_optimum(int order);

// ---------------------------------------------------------------- squeezed coherent states

struct SqueezeResult {
    std::complex<double> beta;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double scale1 = 1.0;  // λ with S†x̂(θ)S = λ x̂(θ')
    double scale2 = 1.0;
};

/// For D(α)S(ζ)|0⟩ returns β with D(α)S(ζ) = S(ζ)D(β) and the phases θ' with
/// S†x̂(θ)S ∝ x̂(θ'); θ2' is taken in (θ1', θ1' + 2π).
SqueezeResult squeeze_map(std::complex<double> alpha, std::complex<double> zeta, double theta1, double theta2);

CoherentState state_from_alpha(std::complex<double> alpha);

}  // namespace lgqho
