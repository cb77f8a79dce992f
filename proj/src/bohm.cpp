#include "lgqho/bohm.hpp"

#include <array>
#include <boost/math/special_functions/erf.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "lgqho/errors.hpp"
#include "lgqho/special.hpp"

namespace lgqho {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 1>;

constexpr double kDensityFloor = 1e-12;
constexpr double kRelTol = 1e-8;
constexpr double kAbsTol = 1e-10;
constexpr double kStartOffset = 1e-9;

struct DensityFloorHit {};

const std::complex<double> kRot = std::polar(1.0, -0.25 * std::numbers::pi);  // e^{-iπ/4}

// |ψ|² and Im(ψ* ∂ψ) for the source at (x, t)
std::pair<double, double> density_and_current(const BohmSource& source, double x, double t) {
    if (const auto* m = std::get_if<MoshinskySource>(&source)) {
        const auto v = moshinsky(x, m->p, t);
        const auto d = moshinsky_dx(x, m->p, t);
        return {std::norm(v), std::imag(std::conj(v) * d)};
    }
    const auto& cs = std::get<ChoppedState>(source);
    const auto [phi, dphi] = chopped_wavefunction_with_derivative(cs, x, t);
    return {std::norm(phi), std::imag(std::conj(phi) * dphi)};
}

}  // namespace

std::complex<double> moshinsky(double x, double p, double t) {
    if (!(t >= 0.0) || !std::isfinite(x) || !std::isfinite(p)) throw ValidationError("moshinsky needs finite x, p and t >= 0");
    if (t == 0.0) {
        if (x > 0.0) return std::polar(1.0, p * x);
        if (x < 0.0) return 0.0;
        return 0.5;
    }
    const std::complex<double> u = -kRot * (x - p * t) / std::sqrt(2.0 * t);
    return 0.5 * std::polar(1.0, p * x - 0.5 * p * p * t) * complex_erfc(u);
}

std::complex<double> moshinsky_dx(double x, double p, double t) {
    if (!(t > 0.0)) throw ValidationError("moshinsky derivative needs t > 0");
    const std::complex<double> u = -kRot * (x - p * t) / std::sqrt(2.0 * t);
    const std::complex<double> du = -kRot / std::sqrt(2.0 * t);
    const std::complex<double> phase = std::polar(1.0, p * x - 0.5 * p * p * t);
    const std::complex<double> i(0.0, 1.0);
    return i * p * moshinsky(x, p, t) - phase * std::exp(-u * u) * du / std::sqrt(std::numbers::pi);
}

std::vector<double> quantile_seeds(const ChoppedState& cs, const std::vector<double>& quantiles) {
    require_finite(cs.parent);
    require_sign(cs.chop_sign);
    const double x0 = cs.parent.x0;
    const double e0 = std::erf(-x0);
    std::vector<double> out;
    out.reserve(quantiles.size());
    for (double q : quantiles) {
        if (!(q > 0.0 && q < 1.0)) throw ValidationError("seed quantiles must lie in (0, 1)");
        // cumulative of exp(-(x-x0)²) restricted to the kept half-line, normalised, then inverted
        const double target = cs.chop_sign > 0 ? e0 + q * (1.0 - e0) : -1.0 + q * (1.0 + e0);
        out.push_back(x0 + boost::math::erf_inv(target));
    }
    return out;
}

double bohm_velocity(const BohmSource& source, double x, double t) {
    const auto [rho, j] = density_and_current(source, x, t);
    if (!(rho > kDensityFloor)) throw NumericError("density below floor at x = " + std::to_string(x));
    return j / rho;
}

TrajectoryBundle bohm_trajectories(const BohmSource& source, const std::vector<double>& seeds,
                                   const std::vector<double>& times, Execution exec) {
    if (times.empty()) throw ValidationError("time grid is empty");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) throw ValidationError("times must be finite and >= 0");
        if (i > 0 && !(times[i] > times[i - 1])) throw ValidationError("time grid must increase strictly");
    }
    const bool chopped = std::holds_alternative<ChoppedState>(source);
    if (chopped && times.back() >= std::numbers::pi)
        throw ValidationError("chopped-state trajectories need times below pi (propagator caustic)");

    TrajectoryBundle b;
    b.times = times;
    if (chopped) {
        b.quantiles = seeds;
        b.seeds = quantile_seeds(std::get<ChoppedState>(source), seeds);
    } else {
        b.seeds = seeds;
    }
    const std::size_t ns = b.seeds.size(), nt = times.size();
    b.paths.assign(ns, std::vector<double>(nt, std::nan("")));
    b.classical_paths.assign(ns, std::vector<double>(nt));
    b.halted_at.assign(ns, -1);

    const double t_start = std::max(times.front(), kStartOffset);
    for (std::size_t k = 0; k < ns; ++k) {
        const double t_probe = chopped ? t_start : std::max(t_start, 1e-6);
        const double rho = density_and_current(source, b.seeds[k], t_probe).first;
        if (!(rho > kDensityFloor)) throw ValidationError("seed lies where the density is below the floor");
    }

    auto run = [&](std::size_t k) {
        const double x_seed = b.seeds[k];
        for (std::size_t i = 0; i < nt; ++i) {
            if (chopped) {
                const double p0 = std::get<ChoppedState>(source).parent.p0;
                b.classical_paths[k][i] = x_seed * std::cos(times[i]) + p0 * std::sin(times[i]);
            } else {
                b.classical_paths[k][i] = x_seed + std::get<MoshinskySource>(source).p * times[i];
            }
        }
        auto rhs = [&](const State& x, State& dxdt, double t) {
            const auto [rho, j] = density_and_current(source, x[0], t);
            if (!(rho > kDensityFloor)) throw DensityFloorHit{};
            dxdt[0] = j / rho;
        };
        std::vector<double> grid;
        grid.push_back(t_start);
        for (double t : times)
            if (t > t_start) grid.push_back(t);
        const std::size_t lead = nt - (grid.size() - 1);  // grid points at or before t_start
        for (std::size_t i = 0; i < lead; ++i) b.paths[k][i] = x_seed;
        if (grid.size() == 1) return;
        State x{x_seed};
        std::size_t recorded = 0;
        auto observer = [&](const State& s, double) {
            if (recorded > 0) b.paths[k][lead + recorded - 1] = s[0];
            ++recorded;
        };
        try {
            auto stepper = odeint::make_dense_output(kAbsTol, kRelTol, odeint::runge_kutta_dopri5<State>());
            odeint::integrate_times(stepper, rhs, x, grid.begin(), grid.end(), 1e-4, observer);
        } catch (const DensityFloorHit&) {
            b.halted_at[k] = static_cast<int>(lead + (recorded > 0 ? recorded - 1 : 0));
        }
    };

    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(parallelism())
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(ns); ++k) run(static_cast<std::size_t>(k));
    } else {
        for (std::size_t k = 0; k < ns; ++k) run(k);
    }
    return b;
}

double first_crossing_time(const std::vector<double>& path, const std::vector<double>& times) {
    if (path.size() != times.size()) throw ValidationError("path and time grid differ in length");
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (std::isnan(path[i])) break;
        if (path[i] <= 0.0 && path[i - 1] > 0.0) {
            const double f = path[i - 1] / (path[i - 1] - path[i]);
            return times[i - 1] + f * (times[i] - times[i - 1]);
        }
    }
    return std::nan("");
}

}  // namespace lgqho
