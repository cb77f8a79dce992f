// lg: command-line front end writing CSV/JSON datasets.
//
// Exit status: 0 ok, 2 bad input or unwritable output, 3 numerical non-convergence.
// Errors go to stderr as a single line "lg: <code>: <message>".

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "lgqho/bohm.hpp"
#include "lgqho/currents.hpp"
#include "lgqho/errors.hpp"
#include "lgqho/io.hpp"
#include "lgqho/lg.hpp"
#include "lgqho/scan.hpp"
#include "lgqho/variants.hpp"
#include "lgqho/wigner.hpp"

using namespace lgqho;

namespace {

struct NonConvergence : NumericError {
    using NumericError::NumericError;
};

std::vector<double> split_numbers(const std::string& text, char sep) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ValidationError("malformed number '" + item + "'");
        }
        if (used != item.size() || !std::isfinite(v)) throw ValidationError("malformed number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

CoherentState parse_state(const std::string& text) {
    const auto v = split_numbers(text, ',');
    if (v.size() != 2) throw ValidationError("state must be x0,p0");
    return {v[0], v[1]};
}

std::complex<double> parse_complex(const std::string& text) {
    const auto v = split_numbers(text, ',');
    if (v.size() == 1) return {v[0], 0.0};
    if (v.size() != 2) throw ValidationError("complex value must be re or re,im");
    return {v[0], v[1]};
}

/// lo:hi:step (endpoints included) or lo:hi with the default step.
std::vector<double> parse_range(const std::string& text, double default_step) {
    const auto v = split_numbers(text, ':');
    if (v.size() != 2 && v.size() != 3) throw ValidationError("range must be lo:hi or lo:hi:step");
    const double step = v.size() == 3 ? v[2] : default_step;
    if (!(step > 0.0) || v[1] < v[0]) throw ValidationError("range '" + text + "' is empty or has a bad step");
    const long count = std::lround(std::floor((v[1] - v[0]) / step + 1e-9)) + 1;
    if (count > 10000000) throw ValidationError("range '" + text + "' has too many points");
    std::vector<double> out;
    for (long k = 0; k < count; ++k) out.push_back(v[0] + k * step);
    return out;
}

void check_order(int order) {
    if (order < 2 || order > 4) throw ValidationError("order must be 2, 3 or 4");
}

void check_sign(int s) {
    if (s != 1 && s != -1) throw ValidationError("signs must be +1 or -1");
}

/// Common output and numerics settings shared by every subcommand.
struct Common {
    std::string output;
    std::string format;
    std::string mode = "converged";
    double tol = 1e-8;
    int n_max = 0;  // 0: the mode's default
    int seed = 0;

    Format resolved_format() const { return format.empty() ? format_for_path(output) : parse_format(format); }

    SeriesOptions series() const {
        if (!(tol > 0.0) || !std::isfinite(tol)) throw ValidationError("tol must be positive");
        if (n_max != 0 && n_max < 2) throw ValidationError("n-max must be at least 2");
        if (mode == "converged") return SeriesOptions::converged(tol, n_max ? n_max : 16384);
        if (mode == "truncated") return SeriesOptions::truncated(n_max ? n_max : 200);
        throw ValidationError("mode must be converged or truncated");
    }

    void emit(const Table& t, const nlohmann::json& extra = nullptr) const {
        if (resolved_format() == Format::csv) {
            write_dataset(t, Format::csv, output);
            return;
        }
        nlohmann::json j = to_json(t);
        if (!extra.is_null()) j["summary"] = extra;
        write_json(j, output);
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("-o,--output", c.output, "output file")->required();
    sub->add_option("--format", c.format, "csv or json (default from extension)");
    sub->add_option("--mode", c.mode, "series mode: converged or truncated");
    sub->add_option("--tol", c.tol, "series convergence tolerance");
    sub->add_option("--n-max", c.n_max, "series term cap");
    sub->add_option("--seed", c.seed, "recorded for reproducibility; no command draws random numbers");
}

/// Prepends key=value lines from the config file so that later command-line flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] != "--config") continue;
        if (k + 1 >= args.size()) throw ValidationError("--config needs a path");
        const std::string path = args[k + 1];
        args.erase(args.begin() + k, args.begin() + k + 2);
        std::ifstream in(path);
        if (!in) throw ValidationError("cannot read config '" + path + "'");
        std::vector<std::string> injected;
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            auto trim = [](std::string s) {
                const auto a = s.find_first_not_of(" \t\r");
                const auto b = s.find_last_not_of(" \t\r");
                return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
            };
            if (trim(line).empty()) continue;
            if (eq == std::string::npos) throw ValidationError("config line without '=': " + line);
            injected.push_back("--" + trim(line.substr(0, eq)));
            injected.push_back(trim(line.substr(eq + 1)));
        }
        // right after the subcommand name
        const std::size_t at = args.empty() ? 0 : 1;
        args.insert(args.begin() + static_cast<long>(std::min(at, args.size())), injected.begin(), injected.end());
        break;
    }
    return args;
}

void require_converged(bool ok, const std::string& what) {
    if (!ok) throw NonConvergence(what + " did not converge");
}

int run(int argc, char** argv) {
    if (const char* env = std::getenv("LG_NUM_THREADS")) {
        const auto v = split_numbers(env, ',');
        if (v.size() != 1 || v[0] < 1 || v[0] != std::floor(v[0]))
            throw ValidationError("LG_NUM_THREADS must be a positive integer");
        set_parallelism(static_cast<int>(v[0]));
    }

    CLI::App app{"Leggett-Garg tests for oscillator coherent states"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    Common common;

    // sweep
    std::string state = "0.55,-1.925", range, branch = "+-";
    int order = 2, s1 = -1, s2 = 1;
    double theta1 = 0.0;
    auto* sweep = app.add_subcommand("sweep", "LG values against the equal spacing");
    add_common(sweep, common);
    sweep->add_option("--state", state, "x0,p0");
    sweep->add_option("--order", order, "2, 3 or 4");
    sweep->add_option("--dtheta", range, "lo:hi:step")->required();
    sweep->add_option("--theta1", theta1, "first measurement phase");

    // scan
    std::string x_range = "0:4:0.05", p_range = "0:4:0.05", optimum_path;
    int tau_samples = 720;
    auto* scan = app.add_subcommand("scan", "largest violation over a quadrant of initial states");
    add_common(scan, common);
    scan->add_option("--order", order, "2, 3 or 4");
    scan->add_option("--x-range", x_range, "lo:hi:step over x0");
    scan->add_option("--p-range", p_range, "lo:hi:step over p0");
    scan->add_option("--tau-samples", tau_samples, "coarse spacing samples on (0, 2pi]");
    scan->add_option("--optimum", optimum_path, "also write the optimum record as JSON");

    auto* optima = app.add_subcommand("optima", "scan and refine the optima for orders 2, 3 and 4");
    add_common(optima, common);
    optima->add_option("--x-range", x_range, "lo:hi:step over x0");
    optima->add_option("--p-range", p_range, "lo:hi:step over p0");
    optima->add_option("--tau-samples", tau_samples, "coarse spacing samples on (0, 2pi]");

    // currents
    range = "";
    double x_point = 0.0;
    auto* currents = app.add_subcommand("currents", "chopped, classical and free currents against phase");
    add_common(currents, common);
    currents->add_option("--state", state, "x0,p0");
    currents->add_option("--range", range, "lo:hi[:step] phase range")->required();
    currents->add_option("--x", x_point, "position at which the currents are evaluated");

    // bohm
    std::string source = "chopped", times = "0:1.5:0.01", positions = "0.1,0.25,0.5,1,1.5,2,3,4";
    double momentum = -1.0;
    int chop_sign = 1, seed_count = 14;
    auto* bohm = app.add_subcommand("bohm", "Bohm trajectories for a chopped state or the Moshinsky problem");
    add_common(bohm, common);
    bohm->add_option("--source", source, "chopped or moshinsky");
    bohm->add_option("--state", state, "x0,p0 (chopped)");
    bohm->add_option("--chop-sign", chop_sign, "+1 or -1 (chopped)");
    bohm->add_option("--seeds", seed_count, "number of equal-probability seeds (chopped)");
    bohm->add_option("--p", momentum, "plane-wave momentum (moshinsky)");
    bohm->add_option("--positions", positions, "comma-separated start positions (moshinsky)");
    bohm->add_option("--times", times, "lo:hi:step");

    // wigner
    double theta2 = 0.555;
    int grid_n = 801;
    double half_width = 6.0, grid_tol = 1e-3;
    std::string marginals_path;
    auto* wig = app.add_subcommand("wigner", "phase-space integrand of the quasi-probability");
    add_common(wig, common);
    wig->add_option("--state", state, "x0,p0");
    wig->add_option("--s1", s1, "+1 or -1");
    wig->add_option("--s2", s2, "+1 or -1");
    wig->add_option("--theta2", theta2, "second measurement phase");
    wig->add_option("--grid-n", grid_n, "nodes per axis (odd)");
    wig->add_option("--half-width", half_width, "grid half width around (x0, p0)");
    wig->add_option("--grid-tol", grid_tol, "allowed Richardson estimate");
    wig->add_option("--marginals", marginals_path, "also write both marginals as CSV");

    // wigner-lg2
    range = "";
    auto* wlg2 = app.add_subcommand("wigner-lg2", "Wigner LG2 combination against the second phase");
    add_common(wlg2, common);
    wlg2->add_option("--state", state, "x0,p0");
    wlg2->add_option("--s1", s1, "+1 or -1");
    wlg2->add_option("--s2", s2, "+1 or -1");
    wlg2->add_option("--range", range, "lo:hi[:step] over theta2 inside (0, pi)");

    // coh-proj
    std::string g1_text, g2_text;
    auto* coh = app.add_subcommand("coh-proj", "quasi-probability for coherent-state projectors");
    add_common(coh, common);
    coh->add_option("--branch", branch, "++, +-, -+ or --");
    coh->add_option("--g1", g1_text, "re,im (evaluate instead of optimising)");
    coh->add_option("--g2", g2_text, "re,im");

    // thermal
    std::string temps = "0:2";
    int temp_points = 20;
    std::string orders = "2,3,4";
    auto* thermal = app.add_subcommand("thermal", "violation against temperature at the optimal states");
    add_common(thermal, common);
    thermal->add_option("--orders", orders, "comma-separated subset of 2,3,4");
    thermal->add_option("--temps", temps, "lo:hi temperature interval");
    thermal->add_option("--points", temp_points, "samples over the interval");

    // smalltime
    int series_order = 2;
    range = "";
    auto* small = app.add_subcommand("smalltime", "small-phase series for q(-,+) against the full value");
    add_common(small, common);
    small->add_option("--state", state, "x0,p0");
    small->add_option("--order", series_order, "series order N");
    small->add_option("--range", range, "lo:hi[:step] inside (0, pi/2)")->required();

    // squeeze-check
    std::string alpha_text = "0.4,-1.3", zeta_text = "0.3,0.2";
    double sq_theta2 = 0.555;
    theta1 = 0.0;
    auto* squeeze = app.add_subcommand("squeeze-check", "equivalent coherent state and phases for a squeezed state");
    add_common(squeeze, common);
    squeeze->add_option("--alpha", alpha_text, "re,im of the displacement");
    squeeze->add_option("--zeta", zeta_text, "re,im of the squeezing parameter");
    squeeze->add_option("--theta1", theta1, "first phase");
    squeeze->add_option("--theta2", sq_theta2, "second phase");

    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        throw ValidationError(e.what());
    }

    const SeriesOptions opts = common.series();

    if (*sweep) {
        check_order(order);
        const CoherentState s = parse_state(state);
        std::vector<LGReport> reports;
        bool ok = true;
        for (double d : parse_range(range, 0.01)) {
            if (!(d > 0.0)) continue;  // Δθ = 0 is the trivial limit
            reports.push_back(lg_report(s, order, d, theta1, opts));
            ok = ok && reports.back().converged;
        }
        if (reports.empty()) throw ValidationError("sweep range has no positive spacing");
        common.emit(sweep_table(reports));
        require_converged(ok, "series");
    } else if (*scan || *optima) {
        ScanGrid grid;
        const auto xr = split_numbers(x_range, ':'), pr = split_numbers(p_range, ':');
        if (xr.size() != 3 || pr.size() != 3) throw ValidationError("grid ranges must be lo:hi:step");
        grid = {xr[0], xr[1], xr[2], pr[0], pr[1], pr[2], tau_samples};
        grid.validate();
        if (*scan) {
            check_order(order);
            const ScanResult r = quadrant_scan(grid, order, SeriesOptions::truncated());
            const nlohmann::json best = {{"order", order}, {"optimum", to_json(r.best)},
                                         {"dtheta_folded", fold_dtheta(r.best.dtheta_star)}};
            common.emit(heatmap_table(r), best);
            if (!optimum_path.empty()) write_json(best, optimum_path);
        } else {
            const auto rows = reproduce_table(grid);
            Table t{{"order", "value", "value_converged", "x0", "p0", "dtheta", "dtheta_folded", "percent_of_bound"},
                    {}};
            nlohmann::json j = nlohmann::json::array();
            bool ok = true;
            for (const auto& r : rows) {
                t.add({static_cast<long>(r.order), r.value, r.value_converged, r.x0, r.p0, r.dtheta,
                       r.dtheta_folded, r.percent});
                j.push_back(to_json(r));
                ok = ok && r.converged;
            }
            nlohmann::json summary = {
                {"percent_convention",
                 "LG2/LG3: -value/0.5; LG4: (value-2)/(2*sqrt(2)-2), both as percent of the quantum maximum"},
                {"rows", j}};
            common.emit(t, summary);
            require_converged(ok, "table refinement");
        }
    } else if (*currents) {
        const CoherentState s = parse_state(state);
        const ChoppedState plus{s, 1}, minus{s, -1};
        Table t{{"theta", "J_plus", "J_minus", "Jcl_plus", "Jcl_minus", "J_free", "combination"}, {}};
        for (double th : parse_range(range, 0.01)) {
            const double cp = classical_chopped_current(plus, th).value;
            const double cm = classical_chopped_current(minus, th).value;
            double jp = std::nan(""), jm = std::nan("");
            if (std::abs(std::sin(th)) > 1e-10) {
                jp = chopped_current(plus, x_point, th).value;
                jm = chopped_current(minus, x_point, th).value;
            }
            // integrand of q(-,+): J_- + (𝕁_- - J_- + 𝕁_+ - J_+)/2
            t.add({th, jp, jm, cp, cm, free_current(s, x_point, th).value, jm + 0.5 * (cm - jm + cp - jp)});
        }
        common.emit(t);
    } else if (*bohm) {
        const std::vector<double> grid_t = parse_range(times, 0.01);
        TrajectoryBundle b;
        if (source == "chopped") {
            check_sign(chop_sign);
            if (seed_count < 1) throw ValidationError("need at least one seed");
            std::vector<double> q;
            for (int k = 1; k <= seed_count; ++k) q.push_back(static_cast<double>(k) / (seed_count + 1));
            b = bohm_trajectories(ChoppedState{parse_state(state), chop_sign}, q, grid_t);
        } else if (source == "moshinsky") {
            b = bohm_trajectories(MoshinskySource{momentum}, split_numbers(positions, ','), grid_t);
        } else {
            throw ValidationError("source must be chopped or moshinsky");
        }
        common.emit(trajectory_table(b));
    } else if (*wig) {
        check_sign(s1);
        check_sign(s2);
        const auto [q, field] = qp_via_wigner(parse_state(state), s1, s2, theta2, {grid_n, half_width, grid_tol});
        if (common.resolved_format() == Format::json) {
            nlohmann::json j = to_json(field);
            j["qp"] = {{"value", q.value}, {"residual", q.residual}, {"converged", q.converged}};
            write_json(j, common.output);
        } else {
            write_dataset(phase_field_table(field), Format::csv, common.output);
        }
        if (!marginals_path.empty()) {
            Table m{{"axis", "coordinate", "density"}, {}};
            for (int i = 0; i + 1 < field.nx; ++i)
                m.add({std::string("X"), field.x_min + (i + 0.5) * field.dx, field.marginal_X[i]});
            for (int j = 0; j + 1 < field.np; ++j)
                m.add({std::string("p"), field.p_min + (j + 0.5) * field.dp, field.marginal_p[j]});
            write_dataset(m, Format::csv, marginals_path);
        }
        require_converged(q.converged, "phase-space integral");
    } else if (*wlg2) {
        check_sign(s1);
        check_sign(s2);
        const CoherentState s = parse_state(state);
        const PhaseOptimum o = wigner_lg2_optimize(s, s1, s2);
        Table t{{"theta2", "qW", "p12", "q"}, {}};
        if (range.empty()) {
            t = Table{{"theta_star", "value"}, {{o.theta, o.value}}};
        } else {
            for (double th : parse_range(range, 0.01)) {
                if (!(th > 0.0 && th < std::numbers::pi)) throw ValidationError("theta2 must lie in (0, pi)");
                t.add({th, wigner_lg2(s, s1, s2, th), sequential_prob(s, -s1, -s2, th),
                       quasiprob(s, s1, s2, 0.0, th, opts).value});
            }
        }
        common.emit(t, {{"theta_star", o.theta}, {"value", o.value}});
    } else if (*coh) {
        const ProjectorBranch b = parse_branch(branch);
        Table t{{"branch", "g1_re", "g1_im", "g2_re", "g2_im", "value"}, {}};
        bool ok = true;
        if (!g1_text.empty() || !g2_text.empty()) {
            const GammaPair g{parse_complex(g1_text.empty() ? "0" : g1_text),
                              parse_complex(g2_text.empty() ? "0" : g2_text)};
            t.add({branch_label(b), g.g1.real(), g.g1.imag(), g.g2.real(), g.g2.imag(), coherent_projector_qp(g, b)});
        } else {
            const ProjectorOptimum o = coherent_projector_optimize(b);
            t.add({branch_label(b), o.gammas.g1.real(), o.gammas.g1.imag(), o.gammas.g2.real(), o.gammas.g2.imag(),
                   o.value});
            ok = o.converged;
        }
        common.emit(t);
        require_converged(ok, "projector optimisation");
    } else if (*thermal) {
        const auto tr = split_numbers(temps, ':');
        if (tr.size() != 2 || tr[0] < 0 || tr[1] < tr[0]) throw ValidationError("temps must be lo:hi with 0 <= lo <= hi");
        if (temp_points < 2) throw ValidationError("need at least two temperature points");
        std::vector<double> grid_t;
        for (int k = 0; k < temp_points; ++k) grid_t.push_back(tr[0] + (tr[1] - tr[0]) * k / (temp_points - 1));
        Table t{{"order", "temperature", "violation", "ratio"}, {}};
        for (double od : split_numbers(orders, ',')) {
            const int o = static_cast<int>(od);
            if (o != od) throw ValidationError("orders must be integers");
            check_order(o);
            for (const auto& p : thermal_violation_curve(o, grid_t, opts))
                t.add({static_cast<long>(o), p.temperature, p.violation, p.ratio});
        }
        common.emit(t);
    } else if (*small) {
        if (series_order < 0 || series_order > 40) throw ValidationError("series order must be in [0, 40]");
        const CoherentState s = parse_state(state);
        const auto derivs = coherent_derivatives(s, series_order + 2);
        Table t{{"theta", "series", "full", "relative_error"}, {}};
        for (double th : parse_range(range, 0.01)) {
            if (!(th > 0.0 && th < 0.5 * std::numbers::pi)) throw ValidationError("phases must lie in (0, pi/2)");
            const double ser = smalltime_qp(derivs, th, series_order);
            const double full = quasiprob(s, -1, 1, 0.0, th, opts).value;
            t.add({th, ser, full, std::abs(ser - full) / std::abs(full)});
        }
        common.emit(t);
    } else if (*squeeze) {
        const std::complex<double> alpha = parse_complex(alpha_text), zeta = parse_complex(zeta_text);
        if (!(sq_theta2 > theta1)) throw ValidationError("requires theta1 < theta2");
        const SqueezeResult m = squeeze_map(alpha, zeta, theta1, sq_theta2);
        const CoherentState beta = state_from_alpha(m.beta);
        Table t{{"s1", "s2", "q_mapped"}, {}};
        for (int a : {1, -1})
            for (int c : {1, -1})
                t.add({static_cast<long>(a), static_cast<long>(c), quasiprob(beta, a, c, m.theta1, m.theta2, opts).value});
        common.emit(t, {{"beta", {m.beta.real(), m.beta.imag()}},
                        {"theta1_mapped", m.theta1},
                        {"theta2_mapped", m.theta2},
                        {"scale1", m.scale1},
                        {"scale2", m.scale2}});
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ValidationError& e) {
        std::cerr << "lg: validation_error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "lg: io_error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "lg: nonconvergence: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "lg: internal_error: " << e.what() << "\n";
        return 1;
    }
}
