#include "vmw/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef VMW_VERSION
#define VMW_VERSION "0.0.0"
#endif

namespace vmw {

std::string format_number(double v) {
    if (v == 0) return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    if (res.ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
    return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) {
        if (r.size() != table.header.size()) throw std::logic_error("to_csv: row width differs from header");
        line(r);
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("write failed: " + path.string());
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != t.header.size()) throw std::runtime_error("parse_csv: ragged row: " + line);
            t.rows.push_back(std::move(cells));
        }
    }
    if (first) throw std::runtime_error("parse_csv: empty input");
    return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_csv(ss.str());
}

CsvTable density_table(const AngularDensity& density) {
    CsvTable t{{"theta", "phi", "value"}, {}};
    const auto& g = density.grid;
    t.rows.reserve(g.theta.size() * g.phi.size());
    for (size_t i = 0; i < g.theta.size(); ++i)
        for (size_t k = 0; k < g.phi.size(); ++k)
            t.rows.push_back({format_number(g.theta[i]), format_number(g.phi[k]), format_number(density.at(i, k))});
    return t;
}

CsvTable trace_table(const RotationTrace& trace) {
    CsvTable t{{"t", "j_azimuth", "particle_azimuth"}, {}};
    for (size_t i = 0; i < trace.times.size(); ++i)
        t.rows.push_back({format_number(trace.times[i]), format_number(trace.j_azimuth[i]),
                          format_number(trace.particle_azimuth[i])});
    return t;
}

nlohmann::json width_report_json(const WidthReport& r) {
    nlohmann::json j;
    j["d_phi"] = r.d_phi;
    j["d_theta"] = r.d_theta;
    j["d_chi"] = r.d_chi;
    j["products"] = {{"dm_dphi", r.dm_dphi}, {"dj_dchi", r.dj_dchi}, {"jsin_dtheta_dphi", r.jsin_dtheta_dphi}};
    j["flags"] = r.flags;
    j["fit_r2"] = {{"theta", r.theta_r2}, {"chi", r.chi_r2}};
    j["q_lobe"] = {{"theta", r.q_lobe.theta}, {"phi", r.q_lobe.phi}};
    return j;
}

nlohmann::json to_json(const RunManifest& m) {
    return {{"command", m.command},
            {"parameters", m.parameters},
            {"outputs", m.outputs},
            {"tool_version", m.tool_version},
            {"wall_time_s", m.wall_time_s}};
}

RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.wall_time_s = j.at("wall_time_s").get<double>();
    return m;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
    std::filesystem::path p = output;
    p.replace_extension(".manifest.json");
    return p;
}

const char* tool_version() { return VMW_VERSION; }

} // namespace vmw
