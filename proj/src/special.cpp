#include "lgqho/special.hpp"

#include <cmath>
#include <numbers>

namespace lgqho {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

// Laplace continued fraction; accurate outside the ellipse (x/6.3)^2 + (y/4.4)^2 = 1.
cplx w_continued_fraction(cplx z) {
    cplx r = 0.0;
    for (int k = 40; k >= 1; --k) r = (0.5 * k) / (z - r);
    return cplx(0.0, kInvSqrtPi) / (z - r);
}

// Trapezoidal rule for (i/pi) ∫ exp(-t^2)/(z-t) dt on nodes placed symmetrically about Re z,
// plus the pole term. Discretisation error is exp(-pi^2/h^2) ~ 1e-17.
cplx w_trapezoid(cplx z) {
    constexpr double h = 0.5;
    constexpr double t_cut = 7.0;
    const double x = z.real(), y = z.imag();
    cplx sum = 0.0;
    const int k_lo = static_cast<int>(std::floor((-t_cut - x) / h - 0.5));
    const int k_hi = static_cast<int>(std::ceil((t_cut - x) / h - 0.5));
    for (int k = k_lo; k <= k_hi; ++k) {
        const double t = x + (k + 0.5) * h;
        sum += std::exp(-t * t) / (z - t);
    }
    const cplx pole = 2.0 * std::exp(-z * z) / (1.0 + std::exp(2.0 * std::numbers::pi * y / h));
    return cplx(0.0, h / std::numbers::pi) * sum + pole;
}

cplx w_upper(cplx z) {
    const double xs = z.real() / 6.3, ys = z.imag() / 4.4;
    if (xs * xs + ys * ys > 1.0) return w_continued_fraction(z);
    return w_trapezoid(z);
}

cplx erf_taylor(cplx z) {
    // erf z = 2/sqrt(pi) * sum (-1)^n z^(2n+1) / (n! (2n+1)); used for |z| < 2.
    const cplx z2 = z * z;
    cplx term = z, sum = z;
    for (int n = 1; n < 80; ++n) {
        term *= -z2 / static_cast<double>(n);
        const cplx add = term / static_cast<double>(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 * kInvSqrtPi * sum;
}

}  // namespace

cplx faddeeva_w(cplx z) {
    if (z.imag() >= 0.0) return w_upper(z);
    return 2.0 * std::exp(-z * z) - w_upper(-z);
}

cplx exp_times_w(cplx c, cplx z) {
    if (z.imag() >= 0.0) return std::exp(c) * w_upper(z);
    return 2.0 * std::exp(c - z * z) - std::exp(c) * w_upper(-z);
}

cplx exp_times_erfc(cplx c, cplx z) {
    // erfc(z) = exp(-z^2) w(iz)
    return exp_times_w(c - z * z, cplx(-z.imag(), z.real()));
}

cplx complex_erfc(cplx z) { return exp_times_erfc(0.0, z); }

cplx complex_erf(cplx z) {
    if (std::abs(z) < 2.0) return erf_taylor(z);
    if (z.real() >= 0.0) return 1.0 - exp_times_erfc(0.0, z);
    return exp_times_erfc(0.0, -z) - 1.0;
}

}  // namespace lgqho
