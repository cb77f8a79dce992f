#include "lgqho/wigner.hpp"

#include <array>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

#include "lgqho/currents.hpp"
#include "lgqho/errors.hpp"
#include "lgqho/special.hpp"

namespace lgqho {

namespace {

using std::numbers::pi;

struct Vertex {
    double xi, eta;
};

double bilinear(const std::array<double, 4>& f, double xi, double eta) {
    // corner order: (0,0), (1,0), (0,1), (1,1)
    return f[0] * (1 - xi) * (1 - eta) + f[1] * xi * (1 - eta) + f[2] * (1 - xi) * eta + f[3] * xi * eta;
}

// ∫ of the bilinear interpolant of f over the part of the unit square with u ≥ 0 (u linear).
double clipped_cell(const std::array<double, 4>& f, const std::array<double, 4>& u) {
    const bool in0 = u[0] >= 0, in1 = u[1] >= 0, in2 = u[2] >= 0, in3 = u[3] >= 0;
    if (in0 && in1 && in2 && in3) return 0.25 * (f[0] + f[1] + f[2] + f[3]);
    if (!in0 && !in1 && !in2 && !in3) return 0.0;

    // square traversed counter-clockwise: (0,0) (1,0) (1,1) (0,1)
    const Vertex corner[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const double uc[4] = {u[0], u[1], u[3], u[2]};
    Vertex poly[8];
    int count = 0;
    for (int k = 0; k < 4; ++k) {
        const int l = (k + 1) % 4;
        const bool a_in = uc[k] >= 0, b_in = uc[l] >= 0;
        if (a_in) poly[count++] = corner[k];
        if (a_in != b_in) {
            const double t = uc[k] / (uc[k] - uc[l]);
            poly[count++] = {corner[k].xi + t * (corner[l].xi - corner[k].xi),
                             corner[k].eta + t * (corner[l].eta - corner[k].eta)};
        }
    }
    double total = 0.0;
    for (int k = 1; k + 1 < count; ++k) {
        const Vertex& a = poly[0];
        const Vertex& b = poly[k];
        const Vertex& c = poly[k + 1];
        const double area = 0.5 * std::abs((b.xi - a.xi) * (c.eta - a.eta) - (c.xi - a.xi) * (b.eta - a.eta));
        // edge-midpoint rule, exact for quadratics
        const double s = bilinear(f, 0.5 * (a.xi + b.xi), 0.5 * (a.eta + b.eta)) +
                         bilinear(f, 0.5 * (b.xi + c.xi), 0.5 * (b.eta + c.eta)) +
                         bilinear(f, 0.5 * (c.xi + a.xi), 0.5 * (c.eta + a.eta));
        total += area * s / 3.0;
    }
    return total;
}

struct CellSums {
    std::vector<double> row;     // Σ_j I_ij for each cell row i
    std::vector<double> column;  // Σ_i I_ij for each cell column j
    double total = 0.0;
};

// Cell integrals over the lattice using every `stride`-th node of the sampled g and u.
CellSums integrate_cells(const std::vector<double>& g, const std::vector<double>& u, int n, int stride, double h_x,
                         double h_p, Execution exec) {
    const int cells = (n - 1) / stride;
    CellSums out;
    out.row.assign(cells, 0.0);
    std::vector<double> by_cell(static_cast<std::size_t>(cells) * cells);
    auto row_job = [&](int ci) {
        const int i0 = ci * stride, i1 = i0 + stride;
        double acc = 0.0;
        for (int cj = 0; cj < cells; ++cj) {
            const int j0 = cj * stride, j1 = j0 + stride;
            const std::array<double, 4> fv = {g[i0 * n + j0], g[i1 * n + j0], g[i0 * n + j1], g[i1 * n + j1]};
            const std::array<double, 4> uv = {u[i0 * n + j0], u[i1 * n + j0], u[i0 * n + j1], u[i1 * n + j1]};
            const double v = clipped_cell(fv, uv) * h_x * h_p;
            by_cell[static_cast<std::size_t>(ci) * cells + cj] = v;
            acc += v;
        }
        out.row[ci] = acc;
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) num_threads(parallelism())
        for (int ci = 0; ci < cells; ++ci) row_job(ci);
    } else {
        for (int ci = 0; ci < cells; ++ci) row_job(ci);
    }
    out.column.assign(cells, 0.0);
    for (int ci = 0; ci < cells; ++ci)
        for (int cj = 0; cj < cells; ++cj) out.column[cj] += by_cell[static_cast<std::size_t>(ci) * cells + cj];
    for (double r : out.row) out.total += r;
    return out;
}

}  // namespace

double wigner_coherent(const CoherentState& state, double X, double p) {
    const double dx = X - state.x0, dp = p - state.p0;
    return std::exp(-dx * dx - dp * dp) / pi;
}

double chopped_wigner(const CoherentState& state, int s1, double X, double p) {
    require_sign(s1);
    const double k = p - state.p0;
    const double y = s1 * X;
    const double ay = std::abs(y);
    // e^{-k²} Re erf(|y| + ik) = e^{-k²} - Re[e^{-y² - 2i|y|k} w(i|y| - k)]
    const double ek = std::exp(-k * k);
    const double scaled =
        ek - std::real(exp_times_w(std::complex<double>(-ay * ay, -2.0 * ay * k), std::complex<double>(-k, ay)));
    const double re_erf = y >= 0.0 ? scaled : -scaled;
    const double dx = X - state.x0;
    return 0.5 * std::exp(-dx * dx) / pi * (ek + re_erf);
}

std::pair<QpValue, PhaseField> qp_via_wigner(const CoherentState& state, int s1, int s2, double theta2,
                                             const GridSpec& grid, Execution exec) {
    require_finite(state);
    require_sign(s1);
    require_sign(s2);
    if (!std::isfinite(theta2)) throw ValidationError("theta2 must be finite");
    if (grid.n < 5 || grid.n % 2 == 0) throw ValidationError("grid needs an odd node count of at least 5");
    if (!(grid.half_width > 0.0)) throw ValidationError("grid half-width must be positive");

    const int n = grid.n;
    PhaseField field;
    field.nx = field.np = n;
    field.x_min = state.x0 - grid.half_width;
    field.p_min = state.p0 - grid.half_width;
    field.dx = field.dp = 2.0 * grid.half_width / (n - 1);

    const double c = std::cos(theta2), s = std::sin(theta2);
    std::vector<double> g(static_cast<std::size_t>(n) * n), u(g.size());
    field.values.resize(g.size());
    auto sample_row = [&](int i) {
        const double X = field.x_at(i);
        for (int j = 0; j < n; ++j) {
            const double p = field.p_at(j);
            const std::size_t idx = static_cast<std::size_t>(i) * n + j;
            g[idx] = chopped_wigner(state, s1, X, p);
            u[idx] = s2 * (X * c + p * s);
            const double step = u[idx] > 0.0 ? 1.0 : (u[idx] < 0.0 ? 0.0 : 0.5);
            field.values[idx] = g[idx] * step;
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static) num_threads(parallelism())
        for (int i = 0; i < n; ++i) sample_row(i);
    } else {
        for (int i = 0; i < n; ++i) sample_row(i);
    }

    const CellSums fine = integrate_cells(g, u, n, 1, field.dx, field.dp, exec);
    const CellSums coarse = integrate_cells(g, u, n, 2, 2.0 * field.dx, 2.0 * field.dp, exec);
    field.total = fine.total;
    field.marginal_X.resize(n - 1);
    field.marginal_p.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) field.marginal_X[i] = fine.row[i] / field.dx;
    for (int j = 0; j < n - 1; ++j) field.marginal_p[j] = fine.column[j] / field.dp;

    QpValue q;
    q.value = fine.total;
    q.terms_used = n;
    q.residual = std::abs(fine.total - coarse.total) / 3.0;
    q.converged = q.residual <= grid.tol;
    return {q, field};
}

double projector_avg(const CoherentState& state, int s, double theta) {
    require_sign(s);
    return 0.5 * (1.0 + s * single_time_avg(state, theta));
}

double wigner_lg2(const CoherentState& state, int s1, int s2, double theta2) {
    require_sign(s1);
    require_sign(s2);
    return 1.0 - projector_avg(state, -s1, 0.0) - projector_avg(state, -s2, theta2) +
           sequential_prob(state, -s1, -s2, theta2);
}

PhaseOptimum wigner_lg2_optimize(const CoherentState& state, int s1, int s2, int samples) {
    if (samples < 4) throw ValidationError("need at least four samples");
    PhaseOptimum best{0.0, std::numeric_limits<double>::infinity()};
    int best_k = 1;
    const double h = pi / samples;
    for (int k = 1; k < samples; ++k) {
        const double v = wigner_lg2(state, s1, s2, k * h);
        if (v < best.value) {
            best = {k * h, v};
            best_k = k;
        }
    }
    const double lo = std::max(best_k - 1, 1) * h;
    const double hi = std::min(best_k + 1, samples - 1) * h;
    auto f = [&](double t) { return wigner_lg2(state, s1, s2, t); };
    const auto r = boost::math::tools::brent_find_minima(f, lo, hi, 40);
    if (r.second < best.value) best = {r.first, r.second};
    return best;
}

double projector_qw_bound(std::complex<double> c, std::complex<double> a, std::complex<double> b) {
    constexpr double tol = 1e-12;
    const double na = std::norm(a), nb = std::norm(b), nc = std::norm(c);
    // Gram matrix of (ψ, A, B): [[1, a, b], [a*, 1, c], [b*, c*, 1]]
    const double det = 1.0 - na - nb - nc + 2.0 * std::real(std::conj(a) * b * std::conj(c));
    if (na > 1.0 + tol || nb > 1.0 + tol || nc > 1.0 + tol || det < -tol)
        throw ValidationError("overlaps are not realisable by unit vectors (Gram matrix not positive semidefinite)");
    return 1.0 - na - nb + na * nc;
}

}  // namespace lgqho
