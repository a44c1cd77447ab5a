#pragma once

#include "vmw/precession.hpp"
#include "vmw/wavepacket.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace vmw {

/// Shortest form with at most 12 significant digits, '.' separator, locale independent.
std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string to_csv(const CsvTable& table);
void write_text(const std::filesystem::path& path, const std::string& text);
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::filesystem::path& path);

CsvTable density_table(const AngularDensity& density);
CsvTable trace_table(const RotationTrace& trace);

nlohmann::json width_report_json(const WidthReport& report);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> outputs;
    std::string tool_version;
    double wall_time_s = 0;
};

nlohmann::json to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// out.csv -> out.manifest.json
std::filesystem::path manifest_path(const std::filesystem::path& output);

const char* tool_version();

} // namespace vmw
