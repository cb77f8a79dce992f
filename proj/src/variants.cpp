#include "lgqho/variants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lgqho/errors.hpp"
#include "lgqho/optimize.hpp"

namespace lgqho {

namespace {

using std::numbers::pi;
using cplx = std::complex<double>;

constexpr double kThermalTail = 1e-10;

// Σ_n cos((n-l)Δ) m2(n) m1(n) with m_i(n) = scale_i J_ln(a_i) + shift_i δ_ln.
QpValue number_state_series(int level, double a1, double a2, double dtheta, double scale1, double shift1,
                            double scale2, double shift2, const SeriesOptions& options) {
    const Eigenbasis& basis = Eigenbasis::shared();
    auto evaluate = [&](int count, std::vector<double>& terms) {
        std::vector<double> r1(count), r2(count);
        basis.overlap_row(level, a1, count, r1.data());
        basis.overlap_row(level, a2, count, r2.data());
        terms.resize(count);
        for (int n = 0; n < count; ++n) {
            const double m1 = scale1 * r1[n] + (n == level ? shift1 : 0.0);
            const double m2 = scale2 * r2[n] + (n == level ? shift2 : 0.0);
            terms[n] = std::cos((n - level) * dtheta) * m1 * m2;
        }
    };
    std::vector<double> terms;
    QpValue out;
    const int cap = std::min(options.n_max, basis.n_max());
    if (options.mode == SeriesMode::truncated) {
        const int count = std::min(std::max(options.n_max, level + 2), basis.n_max());
        evaluate(count, terms);
        double full = 0.0, half = 0.0;
        for (int n = 0; n < count; ++n) {
            full += terms[n];
            if (n < count / 2) half += terms[n];
        }
        return {full, count, std::abs(full - half), true};
    }
    int count = 128;
    while (count < 4 * (level + 1)) count *= 2;
    double previous = std::nan("");
    for (;;) {
        count = std::min(count, cap);
        evaluate(count, terms);
        const double w = windowed_sum(terms.data(), count);
        if (std::isnan(previous)) previous = windowed_sum(terms.data(), count / 2);
        out.value = w;
        out.terms_used = count;
        out.residual = std::abs(w - previous);
        if (out.residual < options.tol) {
            out.converged = true;
            return out;
        }
        if (count >= cap) {
            out.converged = false;
            return out;
        }
        previous = w;
        count *= 2;
    }
}

void require_level(int level) {
    if (level < 0) throw ValidationError("number-state level must be non-negative");
    if (4 * (level + 1) > Eigenbasis::shared().n_max())
        throw ValidationError("number-state level too large for the eigenbasis cache");
}

}  // namespace

// ---------------------------------------------------------------- projectors

ProjectorBranch parse_branch(const std::string& label) {
    if (label == "++" || label == "pp") return ProjectorBranch::pp;
    if (label == "+-" || label == "pm") return ProjectorBranch::pm;
    if (label == "-+" || label == "mp") return ProjectorBranch::mp;
    if (label == "--" || label == "mm") return ProjectorBranch::mm;
    throw ValidationError("unknown projector branch '" + label + "'");
}

std::string branch_label(ProjectorBranch b) {
    switch (b) {
        case ProjectorBranch::pp: return "++";
        case ProjectorBranch::pm: return "+-";
        case ProjectorBranch::mp: return "-+";
        case ProjectorBranch::mm: return "--";
    }
    return "?";
}

cplx coherent_overlap(cplx beta, cplx alpha) {
    return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta) - 2.0 * alpha * std::conj(beta)));
}

double coherent_projector_qp(const GammaPair& g, ProjectorBranch branch) {
    const double n1 = std::norm(g.g1), n2 = std::norm(g.g2);
    const double pp = std::exp(-n1 - n2) * std::real(std::exp(g.g1 * std::conj(g.g2)));
    switch (branch) {
        case ProjectorBranch::pp: return pp;
        case ProjectorBranch::pm: return std::exp(-n1) * (1.0 - std::real(std::exp(g.g1 * std::conj(g.g2) - n2)));
        case ProjectorBranch::mp: return std::exp(-n2) * (1.0 - std::real(std::exp(g.g2 * std::conj(g.g1) - n1)));
        case ProjectorBranch::mm: return 1.0 - std::exp(-n1) - std::exp(-n2) + pp;
    }
    return 0.0;
}

ProjectorOptimum coherent_projector_optimize(ProjectorBranch branch, bool gamma2_zero) {
    ProjectorOptimum best;
    best.value = std::numeric_limits<double>::infinity();
    const double radii[4] = {0.3, 0.6, 1.2, 2.4};

    if (gamma2_zero) {
        auto f = [&](const std::vector<double>& v) { return coherent_projector_qp({v[0], 0.0}, branch); };
        for (double r : radii) {
            const SimplexResult s = nelder_mead(f, {r}, {0.25}, 1e-12, 1e-8, 4000);
            if (s.value < best.value) best = {{std::abs(s.x[0]), 0.0}, s.value, s.converged};
        }
        return best;
    }

    auto f = [&](const std::vector<double>& v) {
        return coherent_projector_qp({std::abs(v[0]), std::polar(std::abs(v[1]), v[2])}, branch);
    };
    std::vector<std::vector<double>> starts;
    if (branch == ProjectorBranch::pp) {
        // |γ1| and |γ2| enter symmetrically: start on the diagonal
        for (double r : radii)
            for (double phase : {-pi / 6, -pi / 3, -pi / 2, -2 * pi / 3}) starts.push_back({r, r, phase});
    } else {
        for (double r1 : radii)
            for (double r2 : radii) starts.push_back({r1, r2, 0.3});
    }
    for (const auto& x0 : starts) {
        const SimplexResult s = nelder_mead(f, x0, {0.2, 0.2, 0.3}, 1e-12, 1e-8, 20000);
        if (s.value < best.value) {
            best.gammas = {std::abs(s.x[0]), std::polar(std::abs(s.x[1]), std::remainder(s.x[2], 2 * pi))};
            best.value = s.value;
            best.converged = s.converged;
        }
    }
    return best;
}

SuperpositionCheck superposition_max_check(ProjectorBranch branch) {
    cplx b1, b2, c1, c2;  // |ψ⟩ = c1|β1⟩ + c2|β2⟩
    if (branch == ProjectorBranch::pp) {
        // ⟨β1|β2⟩ = -1/2: separation sqrt(2 ln 2) with a relative phase of π
        const double d = std::sqrt(2.0 * std::log(2.0));
        b1 = pi / d;
        b2 = cplx(pi / d, d);
        c1 = -1.0;
        c2 = -1.0;
    } else if (branch == ProjectorBranch::pm) {
        // ⟨β1|β2⟩ = sqrt(3)/2, real
        b1 = 0.0;
        b2 = std::sqrt(-2.0 * std::log(std::sqrt(3.0) / 2.0));
        c1 = 1.0;
        c2 = -std::sqrt(3.0);
    } else {
        throw ValidationError("superposition check is defined for the ++ and +- branches");
    }
    const cplx o12 = coherent_overlap(b1, b2);  // ⟨β1|β2⟩
    const cplx o21 = std::conj(o12);
    // ⟨β_k|ψ⟩
    const cplx a1 = c1 + c2 * o12;
    const cplx a2 = c1 * o21 + c2;
    const double norm = std::real(std::conj(c1) * a1 + std::conj(c2) * a2);
    // Re⟨ψ|P2 P1|ψ⟩ with P1 = |β1⟩⟨β1| and P2 = |β2⟩⟨β2| or its complement
    const cplx p2p1 = std::conj(a2) * o21 * a1;
    const double value = branch == ProjectorBranch::pp ? std::real(p2p1) : std::norm(a1) - std::real(p2p1);
    return {value, norm, o12};
}

// ---------------------------------------------------------------- thermal

std::vector<double> thermal_weights(const ThermalParams& tp) {
    if (!(tp.temperature >= 0.0) || !std::isfinite(tp.temperature))
        throw ValidationError("temperature must be finite and non-negative");
    if (tp.temperature == 0.0) return {1.0};
    const double q = std::exp(-1.0 / tp.temperature);
    // retained mass after L+1 levels is 1 - q^(L+1)
    const int levels = static_cast<int>(std::ceil(std::log(kThermalTail) / std::log(q)));
    if (levels > tp.max_levels)
        throw NumericError("thermal truncation needs " + std::to_string(levels) + " levels, above the cap of " +
                           std::to_string(tp.max_levels));
    std::vector<double> w(std::max(levels, 1));
    double sum = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        w[l] = std::pow(q, static_cast<double>(l));
        sum += w[l];
    }
    for (double& v : w) v /= sum;
    return w;
}

QpValue number_state_qp(const CoherentState& state, int level, int s1, int s2, double theta1, double theta2,
                        const SeriesOptions& options) {
    require_finite(state);
    require_sign(s1);
    require_sign(s2);
    require_level(level);
    if (!(theta2 > theta1)) throw ValidationError("requires theta1 < theta2");
    const double x1 = classical_trajectory(state, theta1).x, x2 = classical_trajectory(state, theta2).x;
    // ⟨l|θ(s(x̂ + x))|n⟩ = s J_ln(-x) + (1-s)/2 δ_ln
    return number_state_series(level, -x1, -x2, theta2 - theta1, s1, 0.5 * (1 - s1), s2, 0.5 * (1 - s2), options);
}

QpValue thermal_qp(const CoherentState& state, const ThermalParams& tp, int s1, int s2, double theta1,
                   double theta2, const SeriesOptions& options) {
    const std::vector<double> w = thermal_weights(tp);
    QpValue out;
    out.converged = true;
    for (std::size_t l = 0; l < w.size(); ++l) {
        const QpValue q = number_state_qp(state, static_cast<int>(l), s1, s2, theta1, theta2, options);
        out.value += w[l] * q.value;
        out.residual += w[l] * q.residual;
        out.terms_used = std::max(out.terms_used, q.terms_used);
        out.converged = out.converged && q.converged;
    }
    return out;
}

LGReport thermal_lg_report(const CoherentState& state, const ThermalParams& tp, int order, double dtheta,
                           double theta1, const SeriesOptions& options) {
    require_finite(state);
    if (order < 2 || order > 4) throw ValidationError("LG order must be 2, 3 or 4");
    if (!(dtheta > 0.0)) throw ValidationError("time spacing must be positive");
    const std::vector<double> w = thermal_weights(tp);
    std::vector<double> x(order);
    for (int i = 0; i < order; ++i) x[i] = classical_trajectory(state, theta1 + i * dtheta).x;

    std::vector<std::pair<int, int>> pairs;
    if (order == 2) pairs = {{0, 1}};
    if (order == 3) pairs = {{0, 1}, {1, 2}, {0, 2}};
    if (order == 4) pairs = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};

    std::vector<double> avg(order, 0.0);
    std::vector<std::vector<double>> corr(order, std::vector<double>(order, 1.0));
    for (auto [i, j] : pairs) corr[i][j] = corr[j][i] = 0.0;
    double residual = 0.0;
    bool ok = true;
    const Eigenbasis& basis = Eigenbasis::shared();
    for (std::size_t l = 0; l < w.size(); ++l) {
        const int level = static_cast<int>(l);
        require_level(level);
        for (int i = 0; i < order; ++i) avg[i] += w[l] * (2.0 * basis.overlap_halfline(level, level, -x[i]) - 1.0);
        // ⟨l|sgn(x̂ + x)|n⟩ = 2 J_ln(-x) - δ_ln
        for (auto [i, j] : pairs) {
            const QpValue c = number_state_series(level, -x[i], -x[j], (j - i) * dtheta, 2.0, -1.0, 2.0, -1.0, options);
            corr[i][j] += w[l] * c.value;
            corr[j][i] = corr[i][j];
            residual = std::max(residual, c.residual);
            ok = ok && c.converged;
        }
    }
    LGReport r = assemble_report(order, avg, corr);
    r.theta1 = theta1;
    r.dtheta = dtheta;
    r.residual = residual;
    r.converged = ok;
    return r;
}

ReferencePoint reference_optimum(int order) {
    switch (order) {
        case 2: return {{0.55, -1.925}, 0.555};
        case 3: return {{0.859, -3.317}, 0.254};
        case 4: return {{0.929, -3.666}, 0.166};
        default: throw ValidationError("LG order must be 2, 3 or 4");
    }
}

std::vector<ThermalPoint> thermal_violation_curve(int order, const std::vector<double>& temperatures,
                                                  const SeriesOptions& options) {
    const ReferencePoint ref = reference_optimum(order);
    const double v0 = violation(thermal_lg_report(ref.state, {0.0}, order, ref.dtheta, 0.0, options));
    if (!(v0 > 0.0)) throw NumericError("reference point shows no violation at zero temperature");
    std::vector<ThermalPoint> out;
    for (double t : temperatures) {
        const double v = violation(thermal_lg_report(ref.state, {t}, order, ref.dtheta, 0.0, options));
        out.push_back({t, v, v / v0});
    }
    return out;
}

// ---------------------------------------------------------------- squeezing

CoherentState state_from_alpha(cplx alpha) {
    return {std::numbers::sqrt2 * alpha.real(), std::numbers::sqrt2 * alpha.imag()};
}

SqueezeResult squeeze_map(cplx alpha, cplx zeta, double theta1, double theta2) {
    if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(zeta)) || !std::isfinite(theta1) ||
        !std::isfinite(theta2))
        throw ValidationError("squeeze map arguments must be finite");
    const double r = std::abs(zeta), phi = std::arg(zeta);
    const double mu = std::cosh(r), s = std::sinh(r), c = std::cos(phi), d = std::sin(phi);
    SqueezeResult out;
    out.beta = alpha * mu + std::conj(alpha) * std::polar(s, phi);
    // S†x̂S = (μ - s c) x̂ - s d p̂,  S†p̂S = -s d x̂ + (μ + s c) p̂
    auto rotate = [&](double t, double& scale) {
        const double a = (mu - s * c) * std::cos(t) - s * d * std::sin(t);
        const double b = (mu + s * c) * std::sin(t) - s * d * std::cos(t);
        scale = std::hypot(a, b);
        return std::atan2(b, a);
    };
    out.theta1 = rotate(theta1, out.scale1);
    out.theta2 = rotate(theta2, out.scale2);
    // keep the phases on the same sheet as the inputs
    out.theta1 += 2 * pi * std::round((theta1 - out.theta1) / (2 * pi));
    while (out.theta2 <= out.theta1) out.theta2 += 2 * pi;
    while (out.theta2 > out.theta1 + 2 * pi) out.theta2 -= 2 * pi;
    return out;
}

}  // namespace lgqho
