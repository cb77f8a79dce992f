#include "lgqho/currents.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lgqho/errors.hpp"
#include "lgqho/quadrature.hpp"
#include "lgqho/special.hpp"

namespace lgqho {

namespace {

using std::numbers::pi;
constexpr double kPiQuarterInv = 0.75112554446494248286;
constexpr double kCausticGuard = 1e-10;
constexpr double kThetaSwitch = 0.05;
constexpr double kCurrentTol = 1e-9;

void require_chop(const ChoppedState& cs) {
    require_finite(cs.parent);
    require_sign(cs.chop_sign);
}

void require_noncaustic(double theta) {
    if (!std::isfinite(theta)) throw ValidationError("phase must be finite");
    if (std::abs(std::sin(theta)) < kCausticGuard)
        throw SingularityError("propagator is singular at theta = " + std::to_string(theta) + " (sin theta = 0)");
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// ∫_0^θ2 f(θ) dθ for f ~ θ^(-1/2) at the origin: θ = atan(u²) on the first stretch.
Integral integrate_from_zero(const std::function<double(double)>& f, double theta2) {
    const double ts = std::min(kThetaSwitch, theta2);
    const double us = std::sqrt(std::tan(ts));
    // g tends to a finite limit at u = 0; below kUFloor it is frozen at its value there
    // (error ~ g'·kUFloor²) so the propagator is never evaluated at its caustic
    constexpr double kUFloor = 1e-4;
    auto g = [&](double u) {
        u = std::max(u, kUFloor);
        const double u2 = u * u;
        return f(std::atan(u2)) * 2.0 * u / (1.0 + u2 * u2);
    };
    Integral head = integrate(g, 0.0, us, kCurrentTol, 1e-12);
    if (theta2 <= ts) return head;
    Integral tail = integrate(f, ts, theta2, kCurrentTol, 1e-12);
    return {head.value + tail.value, head.error + tail.error};
}

void require_window(double theta2) {
    if (!(theta2 > 0.0 && theta2 < pi)) throw ValidationError("theta2 must lie in (0, pi)");
}

}  // namespace

double ChoppedState::norm() const { return 0.5 * (1.0 + chop_sign * std::erf(parent.x0)); }

std::complex<double> chopped_gaussian_integral(int sign, double a, double b, double c) {
    require_sign(sign);
    using C = std::complex<double>;
    const C root = std::sqrt(C(2.0, -4.0 * c));
    const C u = C(a, b) / root;
    const C expo = -(2.0 * a * a * c + 2.0 * a * b + C(0.0, b * b)) / C(4.0 * c, 2.0);
    // 1 ± erf(u) = erfc(∓u)
    return std::sqrt(pi) * exp_times_erfc(expo, -static_cast<double>(sign) * u) / root;
}

std::pair<std::complex<double>, std::complex<double>> chopped_wavefunction_with_derivative(
    const ChoppedState& cs, double x, double theta) {
    require_chop(cs);
    require_noncaustic(theta);
    using C = std::complex<double>;
    const double x0 = cs.parent.x0, p0 = cs.parent.p0;
    const double s = std::sin(theta), cot = std::cos(theta) / s;
    const C root_a = std::sqrt(C(0.5, -0.5 * cot));
    const C b(x0, p0 - x / s);
    const double sign = cs.chop_sign;
    const C z = -sign * C(0.0, 1.0) * b / (2.0 * root_a);
    const C c0(-0.5 * x0 * x0, 0.5 * x * x * cot);
    const C dc0(0.0, x * cot);
    const C dz = -sign / (2.0 * root_a * s);
    const C pref = kPiQuarterInv * 0.5 * std::polar(1.0, -0.5 * theta);
    const C ew = exp_times_w(c0, z);
    // d/dz w = -2 z w + 2i/sqrt(pi)
    const C dew = (dc0 - 2.0 * z * dz) * ew + C(0.0, 2.0 / std::sqrt(pi)) * std::exp(c0) * dz;
    return {pref * ew, pref * dew};
}

std::complex<double> chopped_wavefunction(const ChoppedState& cs, double x, double theta) {
    return chopped_wavefunction_with_derivative(cs, x, theta).first;
}

CurrentSample chopped_current(const ChoppedState& cs, double x, double theta) {
    const auto [phi, dphi] = chopped_wavefunction_with_derivative(cs, x, theta);
    return {theta, std::imag(std::conj(phi) * dphi)};
}

CurrentSample classical_chopped_current(const ChoppedState& cs, double theta) {
    require_chop(cs);
    const double x0 = cs.parent.x0, p0 = cs.parent.p0;
    const double g = p0 * std::cos(theta) - x0 * std::sin(theta);
    const double sg = sgn(std::sin(theta)) * cs.chop_sign;
    const double r2 = x0 * x0 + p0 * p0;
    const double value = (-sg * std::exp(-r2) + std::sqrt(pi) * std::exp(g * g - r2) * g * (1.0 - sg * std::erf(g))) /
                         (2.0 * pi);
    return {theta, value};
}

CurrentSample free_current(const CoherentState& state, double x, double theta) {
    require_finite(state);
    const PhasePoint c = classical_trajectory(state, theta);
    const double d = x - c.x;
    return {theta, c.p * std::exp(-d * d) / std::sqrt(pi)};
}

double sequential_prob(const CoherentState& state, int s1, int s2, double theta2) {
    require_sign(s2);
    const ChoppedState cs{state, s1};
    require_chop(cs);
    require_noncaustic(theta2);
    auto density = [&](double x) { return std::norm(chopped_wavefunction(cs, x, theta2)); };
    const double lo = s2 > 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    const double hi = s2 > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    return integrate(density, lo, hi, 1e-13, 1e-12).value;
}

QpValue integrated_chopped_current(const ChoppedState& cs, double theta2) {
    require_chop(cs);
    require_window(theta2);
    auto f = [&](double t) { return chopped_current(cs, 0.0, t).value; };
    const Integral r = integrate_from_zero(f, theta2);
    return {r.value, 0, r.error, true};
}

double sequential_prob_from_current(const CoherentState& state, int s1, int s2, double theta2) {
    require_sign(s2);
    const ChoppedState cs{state, s1};
    // probability on the right at θ2 = initial right occupancy + net flux through the origin
    const double right = (s1 > 0 ? cs.norm() : 0.0) + integrated_chopped_current(cs, theta2).value;
    return s2 > 0 ? right : cs.norm() - right;
}

QpValue interference_term(const CoherentState& state, double theta2) {
    require_finite(state);
    require_window(theta2);
    const ChoppedState plus{state, 1}, minus{state, -1};
    auto f = [&](double t) {
        return 0.5 * (classical_chopped_current(minus, t).value - chopped_current(minus, 0.0, t).value +
                      classical_chopped_current(plus, t).value - chopped_current(plus, 0.0, t).value);
    };
    const Integral r = integrate_from_zero(f, theta2);
    return {r.value, 0, r.error, true};
}

QpValue qp_via_currents(const CoherentState& state, double theta2) {
    require_finite(state);
    require_window(theta2);
    const ChoppedState plus{state, 1}, minus{state, -1};
    // J_- + ½(𝕁_- - J_- + 𝕁_+ - J_+), integrated as one function so the θ^(-1/2) parts meet in one quadrature
    auto f = [&](double t) {
        const double jm = chopped_current(minus, 0.0, t).value;
        const double jp = chopped_current(plus, 0.0, t).value;
        const double cm = classical_chopped_current(minus, t).value;
        const double cp = classical_chopped_current(plus, t).value;
        return jm + 0.5 * (cm - jm + cp - jp);
    };
    const Integral r = integrate_from_zero(f, theta2);
    return {r.value, 0, r.error, r.error < 1e-6};
}

std::vector<std::complex<double>> coherent_derivatives(const CoherentState& state, int count) {
    require_finite(state);
    std::vector<std::complex<double>> d(std::max(count, 0));
    if (count <= 0) return d;
    const std::complex<double> a(state.x0, state.p0);
    d[0] = kPiQuarterInv * std::exp(-0.5 * state.x0 * state.x0);
    if (count > 1) d[1] = a * d[0];
    for (int n = 1; n + 1 < count; ++n) d[n + 1] = a * d[n] - static_cast<double>(n) * d[n - 1];
    return d;
}

std::complex<double> smalltime_k(int sign, int n) {
    require_sign(sign);
    if (n < 0) throw ValidationError("moment index must be non-negative");
    const double parity = (sign < 0 && n % 2 == 1) ? -1.0 : 1.0;
    return parity * std::pow(2.0, 0.5 * (n - 1)) * std::tgamma(0.5 * (n + 1)) * std::polar(1.0, 0.25 * pi * (n + 1));
}

double smalltime_qp(const std::vector<std::complex<double>>& derivs, double theta, int order, bool free_particle) {
    if (order < 0) throw ValidationError("series order must be non-negative");
    if (static_cast<int>(derivs.size()) < order + 1)
        throw ValidationError("small-time series of order N needs derivatives up to index N");
    const double t = free_particle ? theta : std::tan(theta);
    if (!(t >= 0.0)) throw ValidationError("small-time series needs 0 <= tan(theta)");
    using C = std::complex<double>;
    auto lsum = [](int n) { return smalltime_k(1, n) + smalltime_k(-1, n); };
    C total = 0.0;
    const int top = order + 1;
    for (int n = 1; n <= top; ++n) {
        for (int l = 0; n + l <= top; ++l) {
            const C q = smalltime_k(-1, n) * std::conj(smalltime_k(-1, l)) -
                        smalltime_k(1, n) * std::conj(smalltime_k(1, l)) + lsum(n) * std::conj(lsum(l));
            const double denom = (n + l) * std::tgamma(n + 1.0) * std::tgamma(l + 1.0);
            total += q * (static_cast<double>(n) * derivs[n - 1] * std::conj(derivs[l])) / denom *
                     std::pow(t, 0.5 * (n + l));
        }
    }
    return -std::imag(C(0.0, 1.0) * total) / (2.0 * pi);
}

}  // namespace lgqho
