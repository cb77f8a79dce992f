#include "lgqho/core.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lgqho/errors.hpp"
#include "lgqho/quadrature.hpp"

namespace lgqho {

namespace {
constexpr double kPiQuarterInv = 0.75112554446494248286;  // pi^(-1/4)
constexpr int kSharedOrder = 1 << 15;
}  // namespace

namespace {
int g_threads = 0;
}

void set_parallelism(int threads) {
    if (threads < 0) throw ValidationError("thread count must be non-negative");
    g_threads = threads;
}

int parallelism() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

std::complex<double> CoherentState::alpha() const {
    return std::complex<double>(x0, p0) / std::numbers::sqrt2;
}

PhasePoint classical_trajectory(const CoherentState& state, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {state.x0 * c + state.p0 * s, state.p0 * c - state.x0 * s};
}

void require_finite(const CoherentState& state) {
    if (!std::isfinite(state.x0) || !std::isfinite(state.p0))
        throw ValidationError("coherent state center must be finite");
}

void require_sign(int s) {
    if (s != 1 && s != -1) throw ValidationError("sign choice must be +1 or -1, got " + std::to_string(s));
}

Eigenbasis::Eigenbasis(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw ValidationError("eigenbasis truncation must be at least 1");
    up_.resize(n_max + 1);
    down_.resize(n_max + 1);
    for (int k = 0; k <= n_max; ++k) {
        up_[k] = std::sqrt(2.0 / (k + 1));
        down_[k] = std::sqrt(static_cast<double>(k) / (k + 1));
    }
}

const Eigenbasis& Eigenbasis::shared() {
    static const Eigenbasis basis(kSharedOrder);
    return basis;
}

void Eigenbasis::check_index(int n) const {
    if (n < 0 || n > n_max_)
        throw ValidationError("eigenfunction index " + std::to_string(n) + " outside cache of order " +
                              std::to_string(n_max_));
}

void Eigenbasis::values(double x, int count, double* out) const {
    if (count <= 0) return;
    check_index(count - 1);
    out[0] = kPiQuarterInv * std::exp(-0.5 * x * x);
    if (count == 1) return;
    out[1] = std::numbers::sqrt2 * x * out[0];
    for (int k = 1; k + 1 < count; ++k) out[k + 1] = up_[k] * x * out[k] - down_[k] * out[k - 1];
}

std::vector<double> Eigenbasis::values(double x, int count) const {
    std::vector<double> out(count);
    values(x, count, out.data());
    return out;
}

std::pair<double, double> Eigenbasis::eigenfunction(int n, double x) const {
    check_index(n);
    double buf[2];
    if (n == 0) {
        values(x, 1, buf);
        return {buf[0], -x * buf[0]};
    }
    std::vector<double> psi = values(x, n + 1);
    // ψ_n' = sqrt(2n) ψ_{n-1} - x ψ_n
    return {psi[n], std::sqrt(2.0 * n) * psi[n - 1] - x * psi[n]};
}

void Eigenbasis::overlap_row(int n, double a, int count, double* out) const {
    check_index(n);
    check_index(count - 1);
    const int top = std::max(n, count - 1);
    std::vector<double> psi = values(a, top + 1);
    auto deriv = [&](int k) { return k == 0 ? -a * psi[0] : std::sqrt(2.0 * k) * psi[k - 1] - a * psi[k]; };
    const double dn = deriv(n);
    // diagonal by the ladder identity ∫_a ψ_k² = ∫_a ψ_{k-1}² + ψ_k(a) ψ_{k-1}(a) / sqrt(2k)
    double diag = 0.5 * std::erfc(a);
    for (int k = 1; k <= n; ++k) diag += psi[k] * psi[k - 1] / std::sqrt(2.0 * k);
    for (int k = 0; k < count; ++k) {
        if (k == n)
            out[k] = diag;
        else
            out[k] = (psi[k] * dn - psi[n] * deriv(k)) / (2.0 * (n - k));
    }
}

double Eigenbasis::overlap_halfline(int m, int n, double a) const {
    check_index(m);
    check_index(n);
    if (std::isinf(a)) {
        if (a > 0) return 0.0;
        return m == n ? 1.0 : 0.0;
    }
    if (m > n) std::swap(m, n);
    std::vector<double> row(n + 1);
    overlap_row(n, a, n + 1, row.data());
    return row[m];
}

HermiteStream::HermiteStream(double x) : x_(x), cur_(kPiQuarterInv * std::exp(-0.5 * x * x)) {}

double HermiteStream::next() {
    const double out = cur_;
    const double nxt = std::sqrt(2.0 / (n_ + 1)) * x_ * cur_ - std::sqrt(static_cast<double>(n_) / (n_ + 1)) * prev_;
    prev_ = cur_;
    cur_ = nxt;
    ++n_;
    return out;
}

// ---------------------------------------------------------------- quadrature

namespace {

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
using G7 = boost::math::quadrature::gauss<double, 7>;

Segment gk_segment(const std::function<double(double)>& f, double a, double b, int depth) {
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = G7::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wk[0] * fc;
    double gauss = wg[0] * fc;  // 7-point Gauss shares the centre and the even Kronrod nodes
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double s = f(c - h * xk[i]) + f(c + h * xk[i]);
        kron += wk[i] * s;
        if (i % 2 == 0) gauss += wg[i / 2] * s;
    }
    return {a, b, kron * h, std::abs((kron - gauss) * h), depth};
}

Integral integrate_finite(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          double rel_tol, int max_depth) {
    std::priority_queue<Segment> heap;
    Segment first = gk_segment(f, a, b, 0);
    heap.push(first);
    double total = first.value, err = first.error;
    int evaluations = 0;
    while (err > std::max(abs_tol, rel_tol * std::abs(total))) {
        Segment s = heap.top();
        if (s.depth >= max_depth || ++evaluations > 20000) {
            throw NumericError("adaptive quadrature did not reach tolerance (error estimate " +
                               std::to_string(err) + ")");
        }
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        Segment l = gk_segment(f, s.a, m, s.depth + 1);
        Segment r = gk_segment(f, m, s.b, s.depth + 1);
        total += l.value + r.value - s.value;
        err += l.error + r.error - s.error;
        heap.push(l);
        heap.push(r);
    }
    // re-sum to shed the drift of incremental updates
    double sum = 0.0, esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    return {sum, esum};
}

}  // namespace

Integral integrate(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol,
                   int max_depth) {
    if (a == b) return {};
    if (a > b) {
        Integral r = integrate(f, b, a, abs_tol, rel_tol, max_depth);
        return {-r.value, r.error};
    }
    const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
    if (lo_inf && hi_inf) {
        Integral l = integrate(f, a, 0.0, 0.5 * abs_tol, rel_tol, max_depth);
        Integral r = integrate(f, 0.0, b, 0.5 * abs_tol, rel_tol, max_depth);
        return {l.value + r.value, l.error + r.error};
    }
    if (hi_inf) {
        auto g = [&](double t) {
            if (t >= 1.0) return 0.0;
            const double u = 1.0 - t;
            return f(a + t / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0, abs_tol, rel_tol, max_depth);
    }
    if (lo_inf) {
        auto g = [&](double t) {
            if (t >= 1.0) return 0.0;
            const double u = 1.0 - t;
            return f(b - t / u) / (u * u);
        };
        return integrate_finite(g, 0.0, 1.0, abs_tol, rel_tol, max_depth);
    }
    return integrate_finite(f, a, b, abs_tol, rel_tol, max_depth);
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels) {
    using GL = boost::math::quadrature::gauss<double, 10>;
    const auto& x = GL::abscissa();
    const auto& w = GL::weights();
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * width, h = 0.5 * width;
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0.0)
                s += w[i] * f(c);
            else
                s += w[i] * (f(c - h * x[i]) + f(c + h * x[i]));
        }
        total += s * h;
    }
    return total;
}

}  // namespace lgqho
