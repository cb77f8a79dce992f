#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lgqho/errors.hpp"
#include "lgqho/lg.hpp"
#include "lgqho/variants.hpp"
#include "oracles/propagator.hpp"

using namespace lgqho;
using std::numbers::pi;
using cplx = std::complex<double>;

TEST(CoherentProjector, CoincidentStates) {
    EXPECT_NEAR(coherent_projector_qp({0.0, 0.0}, ProjectorBranch::pp), 1.0, 1e-15);
}

TEST(CoherentProjector, QuotedValues) {
    EXPECT_NEAR(coherent_projector_qp({1.55, std::polar(1.55, -1.047)}, ProjectorBranch::pp), -0.0133, 0.0005);
    EXPECT_NEAR(coherent_projector_qp({1.072, 0.536}, ProjectorBranch::pm), -0.1054, 0.0005);
}

TEST(CoherentProjector, BranchesSumToOne) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const GammaPair g{{u(rng), u(rng)}, {u(rng), u(rng)}};
        double sum = 0.0;
        for (auto b : {ProjectorBranch::pp, ProjectorBranch::pm, ProjectorBranch::mp, ProjectorBranch::mm})
            sum += coherent_projector_qp(g, b);
        EXPECT_NEAR(sum, 1.0, 1e-13);
    }
}

// q = Re⟨ψ|P2 P1|ψ⟩ with ψ the vacuum and P_i = |γ_i⟩⟨γ_i| or its complement, from overlaps alone
TEST(CoherentProjector, MatchesOverlapAlgebra) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int k = 0; k < 100; ++k) {
        const GammaPair g{{u(rng), u(rng)}, {u(rng), u(rng)}};
        const cplx o1 = coherent_overlap(g.g1, 0.0), o2 = coherent_overlap(g.g2, 0.0), o21 = coherent_overlap(g.g2, g.g1);
        // ⟨0|P2 P1|0⟩ = ⟨0|γ2⟩⟨γ2|γ1⟩⟨γ1|0⟩
        const double pp = std::real(std::conj(o2) * o21 * o1);
        EXPECT_NEAR(coherent_projector_qp(g, ProjectorBranch::pp), pp, 1e-14);
        // P2 = 1 - |γ2⟩⟨γ2|
        EXPECT_NEAR(coherent_projector_qp(g, ProjectorBranch::pm), std::norm(o1) - pp, 1e-14);
        EXPECT_NEAR(coherent_projector_qp(g, ProjectorBranch::mp), std::norm(o2) - pp, 1e-14);
    }
}

TEST(CoherentProjector, JointPhaseInvariance) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 200; ++k) {
        const GammaPair g{{u(rng), u(rng)}, {u(rng), u(rng)}};
        const cplx r = std::polar(1.0, 3 * u(rng));
        EXPECT_NEAR(coherent_projector_qp(g, ProjectorBranch::pp), coherent_projector_qp({g.g1 * r, g.g2 * r}, ProjectorBranch::pp),
                    1e-12);
    }
}

TEST(CoherentProjector, LudersBound) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double lowest = 1.0;
    for (int k = 0; k < 10000; ++k) {
        const GammaPair g{{u(rng), u(rng)}, {u(rng), u(rng)}};
        for (auto b : {ProjectorBranch::pp, ProjectorBranch::pm, ProjectorBranch::mp, ProjectorBranch::mm})
            lowest = std::min(lowest, coherent_projector_qp(g, b));
    }
    EXPECT_GE(lowest, -0.125 - 1e-9);
}

TEST(CoherentProjector, OptimiserRecoversQuotedOptima) {
    const ProjectorOptimum pp = coherent_projector_optimize(ProjectorBranch::pp);
    EXPECT_TRUE(pp.converged);
    EXPECT_NEAR(pp.value, -0.0133, 0.0005);
    EXPECT_NEAR(std::abs(pp.gammas.g1), 1.55, 0.01);
    EXPECT_NEAR(std::abs(std::arg(pp.gammas.g2) - std::arg(pp.gammas.g1)), 1.047, 0.01);

    const ProjectorOptimum pm = coherent_projector_optimize(ProjectorBranch::pm);
    EXPECT_NEAR(pm.value, -0.1054, 0.0005);
    EXPECT_NEAR(std::abs(pm.gammas.g2), 0.536, 0.005);
    EXPECT_NEAR(std::abs(pm.gammas.g1), 2 * std::abs(pm.gammas.g2), 0.005);
    EXPECT_NEAR(std::sin(std::arg(pm.gammas.g2 / pm.gammas.g1)), 0.0, 1e-4);
}

TEST(CoherentProjector, NoViolationWithSecondCentreAtOrigin) {
    EXPECT_NEAR(coherent_projector_optimize(ProjectorBranch::pp, true).value, 0.0, 1e-12);
}

TEST(CoherentProjector, BranchParsing) {
    EXPECT_EQ(parse_branch("+-"), ProjectorBranch::pm);
    EXPECT_EQ(branch_label(ProjectorBranch::mp), "-+");
    EXPECT_THROW(parse_branch("+0"), ValidationError);
}

TEST(Superposition, ReachesLudersBound) {
    for (auto b : {ProjectorBranch::pp, ProjectorBranch::pm}) {
        const SuperpositionCheck c = superposition_max_check(b);
        EXPECT_NEAR(c.value, -0.125, 1e-10);
        EXPECT_NEAR(c.norm, 1.0, 1e-12);
    }
    EXPECT_NEAR(std::real(superposition_max_check(ProjectorBranch::pp).beta_overlap), -0.5, 1e-12);
    EXPECT_NEAR(std::abs(superposition_max_check(ProjectorBranch::pm).beta_overlap - std::sqrt(3.0) / 2), 0.0, 1e-12);
}

TEST(Thermal, WeightsAndTruncation) {
    const auto w = thermal_weights({0.5});
    double sum = 0.0;
    for (double v : w) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-14);
    EXPECT_LT(std::exp(-static_cast<double>(w.size()) / 0.5), 1e-10);
    EXPECT_EQ(thermal_weights({0.0}).size(), 1u);
    EXPECT_THROW(thermal_weights({-0.1}), ValidationError);
    EXPECT_THROW(thermal_weights({50.0, 100}), NumericError);
}

TEST(Thermal, ZeroTemperatureIsPureState) {
    const CoherentState s{0.55, -1.925};
    for (int a : {1, -1})
        for (int b : {1, -1})
            EXPECT_NEAR(thermal_qp(s, {0.0}, a, b, 0.0, 0.555).value, quasiprob(s, a, b, 0.0, 0.555).value, 1e-8);
}

TEST(Thermal, SumsToOne) {
    const CoherentState s{0.3, 1.2};
    double sum = 0.0;
    for (int a : {1, -1})
        for (int b : {1, -1}) sum += thermal_qp(s, {0.8}, a, b, 0.2, 1.1).value;
    EXPECT_NEAR(sum, 1.0, 1e-8);
}

TEST(Thermal, NumberStateMatchesPropagationOracle) {
    for (int level : {1, 3})
        for (int a : {1, -1})
            for (int b : {1, -1}) {
                oracle::Wave w = [=](double x) { return oracle::displaced_number_wave(level, 0.55, -1.925, x); };
                const double ref = oracle::quasiprob(w, 0.55, 0.55, 0.55 * std::cos(0.555) - 1.925 * std::sin(0.555), a,
                                                     b, 0.0, 0.555, 9.0);
                EXPECT_NEAR(number_state_qp({0.55, -1.925}, level, a, b, 0.0, 0.555).value, ref, 1e-6)
                    << level << " " << a << b;
            }
}

TEST(Thermal, MixtureMatchesDensityMatrixOracle) {
    const CoherentState s{0.55, -1.925};
    const ThermalParams tp{0.5};
    const auto w = thermal_weights(tp);
    const double c2 = s.x0 * std::cos(0.555) + s.p0 * std::sin(0.555);
    double ref = 0.0;
    for (std::size_t l = 0; l < w.size(); ++l) {
        if (w[l] < 1e-12) break;
        oracle::Wave f = [=](double x) { return oracle::displaced_number_wave(static_cast<int>(l), s.x0, s.p0, x); };
        ref += w[l] * oracle::quasiprob(f, s.x0, s.x0, c2, -1, 1, 0.0, 0.555, 10.0);
    }
    EXPECT_NEAR(thermal_qp(s, tp, -1, 1, 0.0, 0.555).value, ref, 1e-4);
}

TEST(Thermal, ConvexMixture) {
    const CoherentState s{0.55, -1.925};
    const ThermalParams tp{0.7};
    const auto w = thermal_weights(tp);
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t l = 0; l < w.size(); ++l) {
        const double q = number_state_qp(s, static_cast<int>(l), -1, 1, 0.0, 0.555).value;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    const double t = thermal_qp(s, tp, -1, 1, 0.0, 0.555).value;
    EXPECT_GE(t, lo - 1e-12);
    EXPECT_LE(t, hi + 1e-12);
}

TEST(Thermal, ReportAtZeroTemperatureMatchesPureReport) {
    for (int order : {2, 3, 4}) {
        const ReferencePoint r = reference_optimum(order);
        EXPECT_NEAR(thermal_lg_report(r.state, {0.0}, order, r.dtheta).extremal.value,
                    lg_report(r.state, order, r.dtheta).extremal.value, 1e-7);
    }
}

TEST(Thermal, ViolationCurveShape) {
    std::vector<double> temps;
    for (int k = 0; k < 20; ++k) temps.push_back(2.0 * k / 19);
    for (int order : {2, 3, 4}) {
        const auto c = thermal_violation_curve(order, temps);
        EXPECT_NEAR(c.front().ratio, 1.0, 1e-12);
        for (std::size_t k = 1; k < c.size(); ++k) EXPECT_LE(c[k].ratio, c[k - 1].ratio + 1e-12) << order << " " << k;
    }
}

TEST(Squeeze, ZeroSqueezingIsIdentity) {
    const SqueezeResult r = squeeze_map({0.4, -1.3}, 0.0, 0.2, 0.9);
    EXPECT_NEAR(std::abs(r.beta - cplx(0.4, -1.3)), 0.0, 1e-15);
    EXPECT_NEAR(r.theta1, 0.2, 1e-15);
    EXPECT_NEAR(r.theta2, 0.9, 1e-15);
}

TEST(Squeeze, RealSqueezingKeepsZeroPhase) {
    const SqueezeResult r = squeeze_map({0.4, -1.3}, 0.6, 0.0, 0.9);
    EXPECT_NEAR(r.theta1, 0.0, 1e-15);
    EXPECT_NEAR(r.scale1, std::exp(-0.6), 1e-14);
}

TEST(Squeeze, InverseComposition) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const cplx alpha(u(rng), u(rng)), zeta(0.8 * u(rng), 0.8 * u(rng));
        const double t1 = 0.5 + u(rng) * 0.4, t2 = t1 + 1.0 + u(rng) * 0.5;
        const SqueezeResult a = squeeze_map(alpha, zeta, t1, t2);
        const SqueezeResult b = squeeze_map(a.beta, -zeta, a.theta1, a.theta2);
        EXPECT_LT(std::abs(b.beta - alpha), 1e-10);
        EXPECT_NEAR(b.theta1, t1, 1e-10);
        EXPECT_NEAR(b.theta2, t2, 1e-10);
    }
}

// D(α)S(ζ)|0⟩ in the position basis: gaussian with complex width κ = (1 + t)/(1 - t), t = e^{iφ} tanh r
TEST(Squeeze, EquivalentToSqueezedStateOnGrid) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 5; ++k) {
        const cplx alpha(u(rng) - 0.5, 1.4 * (u(rng) - 0.5));
        const cplx zeta = std::polar(0.5 * u(rng), 2 * pi * u(rng));
        const double t1 = 0.2 + 0.5 * u(rng), t2 = t1 + 0.3 + 0.9 * u(rng);
        const SqueezeResult m = squeeze_map(alpha, zeta, t1, t2);
        const cplx t = std::polar(std::tanh(std::abs(zeta)), std::arg(zeta));
        const cplx kappa = (1.0 + t) / (1.0 - t);
        const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
        const double norm = std::pow(kappa.real() / pi, 0.25);
        oracle::Wave w = [=](double x) {
            return norm * std::exp(-0.5 * kappa * (x - x0) * (x - x0) + cplx(0.0, p0 * x));
        };
        const CoherentState a = state_from_alpha(m.beta);
        auto centre = [&](double th) { return x0 * std::cos(th) + p0 * std::sin(th); };
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                const double ref = oracle::quasiprob(w, x0, centre(t1), centre(t2), s1, s2, t1, t2, 11.0);
                EXPECT_NEAR(quasiprob(a, s1, s2, m.theta1, m.theta2).value, ref, 1e-4) << k << " " << s1 << s2;
            }
    }
}
