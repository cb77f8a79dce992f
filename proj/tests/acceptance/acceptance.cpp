// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "lgqho/bohm.hpp"
#include "lgqho/currents.hpp"
#include "lgqho/io.hpp"
#include "lgqho/lg.hpp"
#include "lgqho/quadrature.hpp"
#include "lgqho/scan.hpp"
#include "lgqho/variants.hpp"
#include "lgqho/wigner.hpp"
#include "oracles/propagator.hpp"

using namespace lgqho;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

// tolerances
constexpr double kTolLG23 = 0.003, kTolLG4 = 0.005, kTolLoc = 0.02, kTolTiming = 0.01;
constexpr double kTolCurrents = 1e-4, kTolWigner = 1e-3;
constexpr double kTolWignerLG2 = 0.002, kTolIdentity = 1e-6;
constexpr double kTolProjector = 0.0005, kTolSuperposition = 1e-10, kTolQwBound = 1e-6;
constexpr double kTolSmallTime = 0.05;
constexpr double kTolSum = 1e-8, kTolSumRule = 1e-10, kTolQuantile = 0.02, kTolSqueeze = 1e-4;

int failures = 0;

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what + (cond ? "" : " [miss]");
        ok = ok && cond;
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

void report(int n, const std::string& name, const Check& c, double seconds) {
    std::printf("criterion %d %-22s %s  (%.1fs) %s\n", n, name.c_str(), c.ok ? "PASS" : "FAIL", seconds, c.detail.c_str());
    std::fflush(stdout);
    failures += !c.ok;
}

template <class F>
void run(int n, const std::string& name, F body) {
    const auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    report(n, name, c, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

struct Quoted {
    double value, x0, p0, dtheta, tol;
};
const Quoted kQuoted[3] = {{-0.113, 0.550, 1.925, 0.555, kTolLG23},
                          {-0.141, 0.859, 3.317, 0.254, kTolLG23},
                          {2.216, 0.929, 3.666, 0.166, kTolLG4}};

std::vector<TableRow> optimum_rows() {
    static const std::vector<TableRow> rows = reproduce_table();
    return rows;
}

}  // namespace

int main() {
    run(1, "global-optima", [](Check& c) {
        const auto rows = optimum_rows();
        for (int k = 0; k < 3; ++k) {
            const TableRow& r = rows[k];
            const Quoted& q = kQuoted[k];
            c.expect(std::abs(r.value - q.value) <= q.tol && std::abs(std::abs(r.x0) - q.x0) <= kTolLoc &&
                         std::abs(std::abs(r.p0) - q.p0) <= kTolLoc,
                     fmt("LG%.0f %.5f at (%.3f, %.3f)", r.order, r.value, r.x0, r.p0));
        }
    });

    run(2, "optimal-timings", [](Check& c) {
        const auto rows = optimum_rows();
        for (int k = 0; k < 3; ++k)
            c.expect(std::abs(rows[k].dtheta_folded - kQuoted[k].dtheta) <= kTolTiming,
                     fmt("LG%.0f dtheta* %.4f", rows[k].order, rows[k].dtheta_folded));
    });

    run(3, "route-agreement", [](Check& c) {
        double worst_j = 0.0, worst_w = 0.0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                for (int k = 0; k < 5; ++k) {
                    const CoherentState s{1.5 * i / 4, -3.0 * j / 4};
                    const double th = 0.1 + 1.4 * k / 4;
                    const double ref = quasiprob(s, -1, 1, 0.0, th).value;
                    worst_j = std::max(worst_j, std::abs(qp_via_currents(s, th).value - ref));
                    worst_w = std::max(worst_w, std::abs(qp_via_wigner(s, -1, 1, th).first.value - ref));
                }
        c.expect(worst_j <= kTolCurrents, fmt("currents max dev %.2e", worst_j));
        c.expect(worst_w <= kTolWigner, fmt("wigner max dev %.2e", worst_w));
    });

    run(4, "wigner-lg2", [](Check& c) {
        const CoherentState s{0.55, -1.925};
        const PhaseOptimum o = wigner_lg2_optimize(s, -1, 1);
        c.expect(std::abs(o.value - (-0.0881)) <= kTolWignerLG2, fmt("qW(-,+) %.5f at theta %.4f", o.value, o.theta));
        double worst = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const double th = 0.05 + 3.0 * k / 40;
            // qW(s1,s2) - q(s1,s2) equals p12(-s1,-s2) - q(-s1,-s2): twice the interference term
            const double lhs = wigner_lg2(s, -1, 1, th) - quasiprob(s, -1, 1, 0.0, th).value;
            const double rhs = sequential_prob(s, 1, -1, th) - quasiprob(s, 1, -1, 0.0, th).value;
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        c.expect(worst <= kTolIdentity, fmt("identity max dev %.2e", worst));
    });

    run(5, "coherent-projectors", [](Check& c) {
        const ProjectorOptimum pp = coherent_projector_optimize(ProjectorBranch::pp);
        const double dphase = std::remainder(std::arg(pp.gammas.g2) - std::arg(pp.gammas.g1), 2 * pi);
        c.expect(std::abs(pp.value + 0.0133) <= kTolProjector,
                 fmt("++ %.5f |g1| %.3f |g2| %.3f phase %.3f", pp.value, std::abs(pp.gammas.g1), std::abs(pp.gammas.g2),
                     dphase));
        const ProjectorOptimum pm = coherent_projector_optimize(ProjectorBranch::pm);
        c.expect(std::abs(pm.value + 0.1054) <= kTolProjector,
                 fmt("+- %.5f g1 %.3f g2 %.3f", pm.value, std::abs(pm.gammas.g1), std::abs(pm.gammas.g2)));
        for (auto b : {ProjectorBranch::pp, ProjectorBranch::pm}) {
            const SuperpositionCheck s = superposition_max_check(b);
            c.expect(std::abs(s.value + 0.125) <= kTolSuperposition,
                     "superposition " + branch_label(b) + fmt(" %.12f", s.value));
        }
        // real-plane search over (γ, φ): A = e1, B = (cos γ, sin γ), ψ = (cos φ, sin φ)
        auto q = [](double g, double f) { return projector_qw_bound(std::cos(g), std::cos(f), std::cos(f - g)); };
        double best = 1.0, bg = 0.0, bf = 0.0;
        const int n = 400;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                const double g = pi * i / n, f = 2 * pi * j / n, v = q(g, f);
                if (v < best) best = v, bg = g, bf = f;
            }
        for (double span = pi / n; span > 1e-9; span /= 4) {
            const double g0 = bg, f0 = bf;
            for (int i = -8; i <= 8; ++i)
                for (int j = -8; j <= 8; ++j) {
                    const double g = g0 + span * i / 8, f = f0 + span * j / 8, v = q(g, f);
                    if (v < best) best = v, bg = g, bf = f;
                }
        }
        c.expect(std::abs(best + 1.0 / 3.0) <= kTolQwBound, fmt("qW bound min %.9f", best));
    });

    run(6, "thermal-robustness", [](Check& c) {
        std::vector<double> temps;
        for (int k = 0; k < 20; ++k) temps.push_back(2.0 * k / 19);
        for (int order : {2, 3, 4}) {
            const auto curve = thermal_violation_curve(order, temps);
            bool monotone = true;
            for (std::size_t k = 1; k < curve.size(); ++k) monotone = monotone && curve[k].ratio <= curve[k - 1].ratio + 1e-9;
            double zero_at = NAN;
            for (const auto& p : curve)
                if (p.ratio <= 0.0) {
                    zero_at = p.temperature;
                    break;
                }
            c.expect(std::abs(curve[0].ratio - 1.0) <= 1e-12 && monotone,
                     fmt("LG%.0f ratio(T=2) %.3f zero at %.3f", order, curve.back().ratio, zero_at));
            if (order == 2) c.expect(zero_at >= 0.5 && zero_at <= 1.5, "LG2 violation vanishes within [0.5, 1.5]");
        }
    });

    run(7, "small-time-series", [](Check& c) {
        const CoherentState s{0.55, -1.925};
        const auto d = coherent_derivatives(s, 8);
        double worst = 0.0, worst_at = 0.0;
        for (int k = 1; k <= 40; ++k) {
            const double th = 0.2 * k / 40;
            const double full = quasiprob(s, -1, 1, 0.0, th).value;
            const double err = std::abs(smalltime_qp(d, th, 2) - full) / std::abs(full);
            if (err > worst) worst = err, worst_at = th;
        }
        const double err01 = std::abs(smalltime_qp(d, 0.01, 2) - quasiprob(s, -1, 1, 0.0, 0.01).value) /
                             std::abs(quasiprob(s, -1, 1, 0.0, 0.01).value);
        c.expect(worst <= kTolSmallTime, fmt("max rel err %.3g at theta %.3f (%.2g at 0.01)", worst, worst_at, err01));
    });

    run(8, "property-suites", [](Check& c) {
        std::mt19937_64 rng(20240611);
        std::uniform_real_distribution<double> u(-3.0, 3.0), t(0.0, 2 * pi), d(0.05, pi - 0.05), unit(0.0, 1.0);

        double sum_dev = 0.0, moment_dev = 0.0;
        for (int k = 0; k < 200; ++k) {
            const CoherentState s{u(rng), u(rng)};
            const double a = t(rng), b = a + d(rng);
            double total = 0.0;
            for (int s1 : {1, -1}) {
                const double m = quasiprob(s, s1, 1, a, b).value + quasiprob(s, s1, -1, a, b).value;
                moment_dev = std::max(moment_dev, std::abs(m - 0.5 * (1.0 + s1 * single_time_avg(s, a))));
                total += m;
            }
            sum_dev = std::max(sum_dev, std::abs(total - 1.0));
        }
        c.expect(sum_dev <= kTolSum && moment_dev <= kTolSum, fmt("sum %.1e moments %.1e", sum_dev, moment_dev));

        double lowest = 1.0;
        for (int k = 0; k < 10000; ++k) {
            const CoherentState s{4.0 / 3.0 * u(rng), 4.0 / 3.0 * u(rng)};
            const double a = t(rng), b = a + d(rng);
            const double q1 = single_time_avg(s, a), q2 = single_time_avg(s, b), cc = correlator(s, a, b).value;
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) lowest = std::min(lowest, 0.25 * (1 + s1 * q1 + s2 * q2 + s1 * s2 * cc));
        }
        c.expect(lowest >= -0.125 - 1e-8, fmt("Luders min %.6f", lowest));

        double rule = 0.0;
        for (int k = 0; k < 2000; ++k) {
            const CoherentState s{u(rng), u(rng)};
            const double th = 2 * u(rng);
            const double sum = classical_chopped_current({s, 1}, th).value + classical_chopped_current({s, -1}, th).value;
            rule = std::max(rule, std::abs(sum - free_current(s, 0.0, th).value));
        }
        c.expect(rule <= kTolSumRule, fmt("current sum rule %.1e", rule));

        const ChoppedState cs{{0.55, -1.925}, 1};
        std::vector<double> qs, times;
        for (int k = 1; k <= 9; ++k) qs.push_back(0.1 * k);
        for (int k = 0; k <= 60; ++k) times.push_back(1.5 * k / 60);
        const TrajectoryBundle b = bohm_trajectories(cs, qs, times);
        bool ordered = true;
        double qdev = 0.0;
        for (std::size_t k = 0; k < qs.size(); ++k) {
            ordered = ordered && b.halted_at[k] == -1;
            for (std::size_t i = 0; i < times.size(); ++i) {
                if (k > 0) ordered = ordered && b.paths[k - 1][i] < b.paths[k][i] + 1e-6;
                if (i % 10 == 0 && i > 0) {
                    auto rho = [&](double x) { return std::norm(chopped_wavefunction(cs, x, times[i])); };
                    const double below = integrate(rho, -INFINITY, b.paths[k][i], 1e-10, 1e-10).value / cs.norm();
                    qdev = std::max(qdev, std::abs(below - qs[k]));
                }
            }
        }
        c.expect(ordered, "Bohm non-crossing");
        c.expect(qdev <= kTolQuantile, fmt("quantile dev %.2e", qdev));

        double sq = 0.0;
        for (int k = 0; k < 5; ++k) {
            const cplx alpha(unit(rng) - 0.5, 1.4 * (unit(rng) - 0.5));
            const cplx zeta = std::polar(0.5 * unit(rng), 2 * pi * unit(rng));
            const double t1 = 0.2 + 0.5 * unit(rng), t2 = t1 + 0.3 + 0.9 * unit(rng);
            const SqueezeResult m = squeeze_map(alpha, zeta, t1, t2);
            const cplx tz = std::polar(std::tanh(std::abs(zeta)), std::arg(zeta));
            const cplx kappa = (1.0 + tz) / (1.0 - tz);
            const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
            const double norm = std::pow(kappa.real() / pi, 0.25);
            oracle::Wave w = [=](double x) { return norm * std::exp(-0.5 * kappa * (x - x0) * (x - x0) + cplx(0.0, p0 * x)); };
            auto centre = [&](double th) { return x0 * std::cos(th) + p0 * std::sin(th); };
            const CoherentState a = state_from_alpha(m.beta);
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    const double ref = oracle::quasiprob(w, x0, centre(t1), centre(t2), s1, s2, t1, t2, 11.0);
                    sq = std::max(sq, std::abs(quasiprob(a, s1, s2, m.theta1, m.theta2).value - ref));
                }
        }
        c.expect(sq <= kTolSqueeze, fmt("squeeze map dev %.1e", sq));

        const ScanGrid g{0.0, 1.0, 0.25, 1.0, 2.0, 0.25, 360};
        const std::string p1 = to_csv(heatmap_table(quadrant_scan(g, 2, SeriesOptions::truncated(), Execution::parallel)));
        const std::string p2 = to_csv(heatmap_table(quadrant_scan(g, 2, SeriesOptions::truncated(), Execution::parallel)));
        const std::string s1 = to_csv(heatmap_table(quadrant_scan(g, 2, SeriesOptions::truncated(), Execution::serial)));
        c.expect(p1 == p2 && p1 == s1, "scan byte-exact");
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
