#include "lgqho/lg.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lgqho/errors.hpp"

namespace lgqho {

namespace {

constexpr double kEarlyStop = 1e-12;
// Cramér's inequality: |ψ_n(x)| ≤ 1.0865 π^(-1/4), hence |ψ_n ψ_n'| ≤ kPsiBound² / sqrt(pi).
constexpr double kPsiBound2 = 1.0865 * 1.0865;
constexpr int kFirstWindow = 128;

bool near_multiple_of(double dtheta, double period) {
    const double r = std::remainder(dtheta, period);
    return std::abs(r) < 1e-14;
}

// Incrementally generated terms (2/n) ψ_0(x1)ψ_0(x2) cos(nΔ) ψ_{n-1}(x1) ψ_{n-1}(x2), n ≥ 1.
class CorrelatorTerms {
public:
    CorrelatorTerms(double x1, double x2, double dtheta)
        : s1_(x1), s2_(x2), step_(std::polar(1.0, dtheta)), dtheta_(dtheta),
          g_(std::exp(-0.5 * (x1 * x1 + x2 * x2)) / std::sqrt(std::numbers::pi)) {}

    void extend(int count) {
        terms_.reserve(count);
        while (static_cast<int>(terms_.size()) < count) {
            const int n = static_cast<int>(terms_.size()) + 1;
            if (n % 64 == 0)
                rot_ = std::polar(1.0, n * dtheta_);
            else
                rot_ *= step_;
            const double a = s1_.next(), b = s2_.next();
            terms_.push_back(2.0 * g_ / n * rot_.real() * a * b);
        }
    }

    const std::vector<double>& terms() const { return terms_; }

private:
    HermiteStream s1_, s2_;
    std::complex<double> step_;
    std::complex<double> rot_{1.0, 0.0};
    double dtheta_;
    double g_;
    std::vector<double> terms_;
};

double plain_sum(const std::vector<double>& t, int count) {
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += t[i];
    return s;
}

}  // namespace

SeriesOptions SeriesOptions::truncated(int n_max) { return {SeriesMode::truncated, n_max, 1e-8}; }

SeriesOptions SeriesOptions::converged(double tol, int n_cap) { return {SeriesMode::converged, n_cap, tol}; }

Schedule Schedule::equal_spacing(double theta1, double dtheta, int count) {
    Schedule s;
    for (int i = 0; i < count; ++i) s.phases.push_back(theta1 + i * dtheta);
    return s;
}

void Schedule::validate() const {
    if (phases.size() < 2 || phases.size() > 4) throw ValidationError("schedule needs 2, 3 or 4 phases");
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (!std::isfinite(phases[i])) throw ValidationError("schedule phases must be finite");
        if (i > 0 && !(phases[i] > phases[i - 1])) throw ValidationError("schedule phases must increase strictly");
    }
}

double LGReport::at(const std::string& label) const {
    for (const auto& e : entries)
        if (e.label == label) return e.value;
    throw ValidationError("no entry labelled " + label);
}

double windowed_sum(const double* terms, int count) {
    const int m = count / 2;
    const int flat = count - m;
    double s = 0.0;
    for (int k = 0; k < flat; ++k) s += terms[k];
    for (int j = 0; j < m; ++j) {
        const double w = 0.5 * (1.0 + std::cos(std::numbers::pi * (j + 1) / (m + 1)));
        s += w * terms[flat + j];
    }
    return s;
}

double single_time_avg(const CoherentState& state, double theta) {
    return std::erf(classical_trajectory(state, theta).x);
}

QpValue correlator_from_positions(double x1, double x2, double dtheta, const SeriesOptions& options) {
    if (!std::isfinite(x1) || !std::isfinite(x2) || !std::isfinite(dtheta))
        throw ValidationError("correlator arguments must be finite");
    if (options.n_max < 2) throw ValidationError("series needs at least two terms");
    const double base = std::erf(x1) * std::erf(x2);
    if (near_multiple_of(dtheta, 2.0 * std::numbers::pi)) return {1.0, 0, 0.0, true};
    if (near_multiple_of(dtheta - std::numbers::pi, 2.0 * std::numbers::pi)) return {-1.0, 0, 0.0, true};

    const double envelope0 = 2.0 * kPsiBound2 * std::exp(-0.5 * (x1 * x1 + x2 * x2)) / std::sqrt(std::numbers::pi);

    CorrelatorTerms gen(x1, x2, dtheta);
    QpValue out;

    if (options.mode == SeriesMode::truncated) {
        int count = options.n_max;
        // stop where the envelope bound on the n-th term drops below the threshold
        const double cut = std::ceil(envelope0 / kEarlyStop);
        if (cut < count) count = std::max(static_cast<int>(cut), 2);
        gen.extend(count);
        const double full = plain_sum(gen.terms(), count);
        out.value = base + full;
        out.terms_used = count;
        out.residual = std::abs(full - plain_sum(gen.terms(), count / 2));
        out.converged = true;
        return out;
    }

    const double tol = options.tol;
    int n = std::min(kFirstWindow, options.n_max);
    double previous = 0.0;
    bool have_previous = false;
    for (;;) {
        gen.extend(n);
        const double w = windowed_sum(gen.terms().data(), n);
        if (!have_previous) {
            previous = windowed_sum(gen.terms().data(), n / 2);
            have_previous = true;
        }
        const double residual = std::abs(w - previous);
        const double envelope_total = envelope0 * (1.0 + std::log(static_cast<double>(options.n_max)));
        out.value = base + w;
        out.terms_used = n;
        out.residual = std::min(residual, envelope_total);
        if (out.residual < tol) {
            out.converged = true;
            break;
        }
        if (2 * n > options.n_max) {
            out.converged = false;
            break;
        }
        previous = w;
        n *= 2;
    }
    if (std::abs(out.value) > 1.0 + 10.0 * std::max(tol, out.residual)) out.converged = false;
    return out;
}

QpValue correlator(const CoherentState& state, double theta1, double theta2, const SeriesOptions& options) {
    require_finite(state);
    if (!(theta2 >= theta1)) throw ValidationError("correlator requires theta1 <= theta2");
    const double x1 = classical_trajectory(state, theta1).x;
    const double x2 = classical_trajectory(state, theta2).x;
    return correlator_from_positions(x1, x2, theta2 - theta1, options);
}

QpValue quasiprob(const CoherentState& state, int s1, int s2, double theta1, double theta2,
                  const SeriesOptions& options) {
    require_sign(s1);
    require_sign(s2);
    if (!(theta2 > theta1)) throw ValidationError("quasiprob requires theta1 < theta2");
    const QpValue c = correlator(state, theta1, theta2, options);
    QpValue q = c;
    q.value = 0.25 * (1.0 + s1 * single_time_avg(state, theta1) + s2 * single_time_avg(state, theta2) +
                      s1 * s2 * c.value);
    q.residual = 0.25 * c.residual;
    return q;
}

LGReport assemble_report(int order, const std::vector<double>& q, const std::vector<std::vector<double>>& c) {
    LGReport r;
    r.order = order;
    if (order == 2) {
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                std::string label{s1 > 0 ? '+' : '-', s2 > 0 ? '+' : '-'};
                r.entries.push_back({label, 1.0 + s1 * q[0] + s2 * q[1] + s1 * s2 * c[0][1]});
            }
    } else if (order == 3) {
        const double c12 = c[0][1], c23 = c[1][2], c13 = c[0][2];
        r.entries = {{"L1", 1.0 + c12 + c23 + c13},
                     {"L2", 1.0 - c12 - c23 + c13},
                     {"L3", 1.0 + c12 - c23 - c13},
                     {"L4", 1.0 - c12 + c23 - c13}};
    } else if (order == 4) {
        const double cyc[4] = {c[0][1], c[1][2], c[2][3], c[0][3]};
        const char* names[4] = {"12", "23", "34", "14"};
        const double total = cyc[0] + cyc[1] + cyc[2] + cyc[3];
        for (int k = 0; k < 4; ++k) {
            const double s = total - 2.0 * cyc[k];
            r.entries.push_back({std::string("-C") + names[k] + ":upper", s});
            r.entries.push_back({std::string("-C") + names[k] + ":lower", -s});
        }
    } else {
        throw ValidationError("LG order must be 2, 3 or 4");
    }
    auto cmp = [](const LGEntry& a, const LGEntry& b) { return a.value < b.value; };
    r.extremal = order == 4 ? *std::max_element(r.entries.begin(), r.entries.end(), cmp)
                            : *std::min_element(r.entries.begin(), r.entries.end(), cmp);
    return r;
}

LGReport lg_report(const CoherentState& state, int order, double dtheta, double theta1,
                   const SeriesOptions& options) {
    require_finite(state);
    if (order < 2 || order > 4) throw ValidationError("LG order must be 2, 3 or 4");
    if (!(dtheta > 0.0) || !std::isfinite(dtheta)) throw ValidationError("time spacing must be positive");
    std::vector<double> x(order), q(order);
    for (int i = 0; i < order; ++i) {
        x[i] = classical_trajectory(state, theta1 + i * dtheta).x;
        q[i] = std::erf(x[i]);
    }
    std::vector<std::vector<double>> c(order, std::vector<double>(order, 1.0));
    double residual = 0.0;
    bool ok = true;
    auto fill = [&](int i, int j) {
        const QpValue v = correlator_from_positions(x[i], x[j], (j - i) * dtheta, options);
        c[i][j] = c[j][i] = v.value;
        residual = std::max(residual, v.residual);
        ok = ok && v.converged;
    };
    if (order == 2) fill(0, 1);
    if (order == 3) {
        fill(0, 1);
        fill(1, 2);
        fill(0, 2);
    }
    if (order == 4) {
        fill(0, 1);
        fill(1, 2);
        fill(2, 3);
        fill(0, 3);
    }
    LGReport r = assemble_report(order, q, c);
    r.theta1 = theta1;
    r.dtheta = dtheta;
    r.residual = residual;
    r.converged = ok;
    return r;
}

LGReport lg2_all_pairs(const CoherentState& state, double dtheta, double theta1, const SeriesOptions& options) {
    require_finite(state);
    if (!(dtheta > 0.0)) throw ValidationError("time spacing must be positive");
    LGReport r;
    r.order = 2;
    r.theta1 = theta1;
    r.dtheta = dtheta;
    const int pairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (const auto& pr : pairs) {
        const double ta = theta1 + pr[0] * dtheta, tb = theta1 + pr[1] * dtheta;
        const LGReport sub = lg_report(state, 2, tb - ta, ta, options);
        for (const auto& e : sub.entries)
            r.entries.push_back({std::to_string(pr[0] + 1) + std::to_string(pr[1] + 1) + ":" + e.label, e.value});
        r.residual = std::max(r.residual, sub.residual);
        r.converged = r.converged && sub.converged;
    }
    r.extremal = *std::min_element(r.entries.begin(), r.entries.end(),
                                   [](const LGEntry& a, const LGEntry& b) { return a.value < b.value; });
    return r;
}

double violation(const LGReport& report) {
    if (report.order == 4) return std::max(0.0, report.extremal.value - 2.0);
    return std::max(0.0, -report.extremal.value);
}

double percent_of_bound(int order, double extremal_value) {
    if (order == 4) return 100.0 * (extremal_value - 2.0) / (2.0 * std::numbers::sqrt2 - 2.0);
    return 100.0 * (-extremal_value) / 0.5;
}

}  // namespace lgqho
