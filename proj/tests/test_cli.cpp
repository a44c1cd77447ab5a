#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
    int status = -1;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(VMW_CLI_PATH) + " " + args + " 2>&1";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

} // namespace

TEST_CASE("two spin-1/2 sweep has one row per allowed j3") {
    const Result r = run("cg --j1 1/2 --m1 1/2 --j2 1/2 --m2 -1/2 --methods exact");
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("j3,region,exact\n", 0) == 0);
    std::istringstream in(r.out);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 2);
    const auto first = r.out.find(",0.707106781187\n");
    REQUIRE(first != std::string::npos);
    CHECK(r.out.find(",0.707106781187\n", first + 1) != std::string::npos);
}

TEST_CASE("non half-integer input is a usage error naming the flag") {
    const Result r = run("cg --j1 0.3 --m1 1/2 --j2 1/2 --m2 1/2");
    CHECK(r.status == 2);
    CHECK(r.out.find("--j1") != std::string::npos);
}

TEST_CASE("correlate prints JSON") {
    const Result r = run("correlate --j1 1/2 --j2 1/2 --j3 1 --m3 0");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["vm"].get<double>() == doctest::Approx(0.25));
    CHECK(j["closed"].get<double>() == doctest::Approx(0.25));
    CHECK(j["exact"].get<double>() == doctest::Approx(0.25));
}

TEST_CASE("verify runs the operator suite") {
    const Result r = run("verify appendix-a");
    CHECK(r.status == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("unknown suite is a usage error") {
    CHECK(run("verify nonsense").status == 2);
    CHECK(run("frobnicate").status == 2);
}

TEST_CASE("file outputs get a manifest and are reproducible") {
    const auto dir = std::filesystem::temp_directory_path() / "vmw_test_cli";
    std::filesystem::remove_all(dir);
    const std::string args = "wigd --j 5 --mp 1 --m 2 --theta-points 9 --methods exact,wkb --out ";
    REQUIRE(run(args + (dir / "a.csv").string()).status == 0);
    REQUIRE(run(args + (dir / "b.csv").string()).status == 0);
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    REQUIRE(std::filesystem::exists(dir / "a.manifest.json"));
    const auto m = nlohmann::json::parse(slurp(dir / "a.manifest.json"));
    CHECK(m["command"] == "wigd");
    CHECK(m["parameters"]["j"] == "5");
    CHECK(m.contains("tool_version"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("degrees flag converts angle inputs") {
    const Result a = run("wigd --j 1 --mp 0 --m 0 --theta 60 --degrees --methods exact");
    REQUIRE(a.status == 0);
    CHECK(a.out.find("0.5") != std::string::npos);
}
