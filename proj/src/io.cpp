#include "lgqho/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lgqho/errors.hpp"

namespace lgqho {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw ValidationError("unknown format '" + name + "' (csv|json)");
}

Format format_for_path(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0 ? Format::json : Format::csv;
}

void Table::add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ValidationError("row width does not match the table header");
    rows.push_back(std::move(row));
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    if (const long* l = std::get_if<long>(&c)) return std::to_string(*l);
    return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return format_double(*d);
        return *d;
    }
    if (const long* l = std::get_if<long>(&c)) return *l;
    return std::get<std::string>(c);
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_double(v)); }

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t k = 0; k < t.columns.size(); ++k) {
        if (k) out += ',';
        out += t.columns[k];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            out += cell_text(row[k]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell& c : row) r.push_back(cell_json(c));
        rows.push_back(std::move(r));
    }
    return {{"columns", t.columns}, {"rows", std::move(rows)}};
}

nlohmann::json to_json(const LGReport& r) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& e : r.entries) entries[e.label] = number(e.value);
    return {{"order", r.order},
            {"theta1", number(r.theta1)},
            {"dtheta", number(r.dtheta)},
            {"entries", std::move(entries)},
            {"extremal", {{"label", r.extremal.label}, {"value", number(r.extremal.value)}}},
            {"violation", number(violation(r))},
            {"residual", number(r.residual)},
            {"converged", r.converged}};
}

nlohmann::json to_json(const PhaseField& f) {
    nlohmann::json values = nlohmann::json::array();
    for (double v : f.values) values.push_back(number(v));
    return {{"x_min", f.x_min}, {"p_min", f.p_min}, {"dx", f.dx},   {"dp", f.dp},
            {"nx", f.nx},       {"np", f.np},       {"total", f.total}, {"layout", "row-major, X outer"},
            {"values", std::move(values)}};
}

nlohmann::json to_json(const ScanCell& c) {
    return {{"x0", c.x0}, {"p0", c.p0}, {"value", number(c.value)}, {"dtheta_star", c.dtheta_star}, {"label", c.label}};
}

nlohmann::json to_json(const TableRow& r) {
    return {{"order", r.order},
            {"coarse", to_json(r.coarse)},
            {"x0", r.x0},
            {"p0", r.p0},
            {"dtheta", r.dtheta},
            {"dtheta_folded", r.dtheta_folded},
            {"value", number(r.value)},
            {"value_converged", number(r.value_converged)},
            {"percent_of_bound", number(r.percent)},
            {"converged", r.converged}};
}

Table sweep_table(const std::vector<LGReport>& reports) {
    Table t;
    t.columns.push_back("dtheta");
    if (!reports.empty())
        for (const auto& e : reports.front().entries) t.columns.push_back(e.label);
    t.columns.push_back("extremal");
    t.columns.push_back("converged");
    for (const auto& r : reports) {
        std::vector<Cell> row{r.dtheta};
        for (const auto& e : r.entries) row.push_back(e.value);
        row.push_back(r.extremal.value);
        row.push_back(static_cast<long>(r.converged));
        t.add(std::move(row));
    }
    return t;
}

Table heatmap_table(const ScanResult& scan) {
    Table t{{"x0", "p0", "value", "dtheta_star", "label"}, {}};
    for (const auto& c : scan.cells) t.add({c.x0, c.p0, c.value, c.dtheta_star, c.label});
    return t;
}

Table phase_field_table(const PhaseField& f) {
    Table t{{"X", "p", "f"}, {}};
    t.rows.reserve(f.values.size());
    for (int i = 0; i < f.nx; ++i)
        for (int j = 0; j < f.np; ++j) t.rows.push_back({f.x_at(i), f.p_at(j), f.value(i, j)});
    return t;
}

Table trajectory_table(const TrajectoryBundle& b) {
    Table t{{"seed", "theta", "x", "x_classical"}, {}};
    for (std::size_t k = 0; k < b.paths.size(); ++k) {
        const std::size_t reached =
            b.halted_at[k] < 0 ? b.times.size() : static_cast<std::size_t>(b.halted_at[k]);
        for (std::size_t n = 0; n < reached; ++n)
            t.rows.push_back({static_cast<long>(k), b.times[n], b.paths[k][n], b.classical_paths[k][n]});
    }
    return t;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("write to '" + path + "' failed");
}

void write_json(const nlohmann::json& j, const std::string& path) { write_text(path, j.dump(2) + "\n"); }

void write_dataset(const Table& t, Format format, const std::string& path) {
    if (format == Format::csv)
        write_text(path, to_csv(t));
    else
        write_json(to_json(t), path);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace lgqho
