#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lgqho/bohm.hpp"
#include "lgqho/lg.hpp"
#include "lgqho/scan.hpp"
#include "lgqho/wigner.hpp"

namespace lgqho {

enum class Format { csv, json };

Format parse_format(const std::string& name);
/// Format implied by the file extension, csv unless it ends in .json.
Format format_for_path(const std::string& path);

using Cell = std::variant<double, long, std::string>;

/// Column-named rows; the common shape of every CSV dataset.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// %.17g, with nan/inf spelled out.
std::string format_double(double v);

std::string to_csv(const Table& t);
nlohmann::json to_json(const Table& t);
nlohmann::json to_json(const LGReport& r);
nlohmann::json to_json(const PhaseField& f);
nlohmann::json to_json(const ScanCell& c);
nlohmann::json to_json(const TableRow& r);

Table sweep_table(const std::vector<LGReport>& reports);
Table heatmap_table(const ScanResult& scan);
Table phase_field_table(const PhaseField& f);
Table trajectory_table(const TrajectoryBundle& b);

/// Writes text with LF endings; throws IoError naming the path.
void write_text(const std::string& path, const std::string& content);
void write_dataset(const Table& t, Format format, const std::string& path);
void write_json(const nlohmann::json& j, const std::string& path);

/// Parses CSV produced by to_csv (no quoting needed: fields never contain commas).
std::vector<std::vector<std::string>> parse_csv(const std::string& text);
std::string read_text(const std::string& path);

}  // namespace lgqho
