#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/io.hpp"

#include <filesystem>

using namespace vmw;

TEST_CASE("numbers print with twelve significant digits") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("CSV round trip keeps empty cells") {
    const CsvTable t{{"a", "b", "c"}, {{"1", "", "3"}, {"4", "5", ""}}};
    const std::string text = to_csv(t);
    CHECK(text == "a,b,c\n1,,3\n4,5,\n");
    const CsvTable back = parse_csv(text);
    CHECK(back.header == t.header);
    CHECK(back.rows == t.rows);
    CHECK_THROWS(to_csv({{"a"}, {{"1", "2"}}}));
    CHECK_THROWS(parse_csv("a,b\n1\n"));
    CHECK_THROWS(parse_csv(""));
}

TEST_CASE("table headers") {
    AngularDensity d;
    d.grid = make_grid(2, 3);
    d.values.assign(6, 0.5);
    const CsvTable dt = density_table(d);
    CHECK(dt.header == std::vector<std::string>{"theta", "phi", "value"});
    CHECK(dt.rows.size() == 6);
    RotationTrace tr;
    tr.times = {0, 1};
    tr.j_azimuth = {0.1, 1.1};
    tr.particle_azimuth = {0.2, 1.2};
    const CsvTable tt = trace_table(tr);
    CHECK(tt.header == std::vector<std::string>{"t", "j_azimuth", "particle_azimuth"});
    CHECK(tt.rows[1] == std::vector<std::string>{"1", "1.1", "1.2"});
}

TEST_CASE("width report keys") {
    WidthReport r;
    r.flags["dm_dphi"] = "equality";
    const nlohmann::json j = width_report_json(r);
    for (const char* k : {"d_phi", "d_theta", "d_chi", "products", "flags", "fit_r2", "q_lobe"}) CHECK(j.contains(k));
    CHECK(j["products"].contains("dj_dchi"));
}

TEST_CASE("manifest round trip and sibling path") {
    RunManifest m{"cg", {{"j1", "1/2"}}, {"out.csv"}, tool_version(), 0.5};
    const RunManifest back = manifest_from_json(nlohmann::json::parse(to_json(m).dump()));
    CHECK(back.command == "cg");
    CHECK(back.parameters.at("j1") == "1/2");
    CHECK(back.outputs == m.outputs);
    CHECK(back.tool_version == tool_version());
    CHECK(back.wall_time_s == 0.5);
    CHECK(manifest_path("dir/out.csv") == std::filesystem::path("dir/out.manifest.json"));
}

TEST_CASE("files are written and read back") {
    const auto dir = std::filesystem::temp_directory_path() / "vmw_test_io";
    std::filesystem::remove_all(dir);
    const CsvTable t{{"x"}, {{"1"}, {"2"}}};
    write_text(dir / "sub" / "t.csv", to_csv(t));
    CHECK(read_csv(dir / "sub" / "t.csv").rows == t.rows);
    CHECK_THROWS(read_csv(dir / "missing.csv"));
    std::filesystem::remove_all(dir);
}
