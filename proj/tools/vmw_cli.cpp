#include "vmw/acceptance.hpp"
#include "vmw/correlations.hpp"
#include "vmw/exact.hpp"
#include "vmw/io.hpp"
#include "vmw/precession.hpp"
#include "vmw/semicg.hpp"
#include "vmw/semiwigd.hpp"
#include "vmw/wavepacket.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace {

using namespace vmw;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

HalfInt parse_half(const std::string& flag, const std::string& text) {
    try {
        return HalfInt::parse(text);
    } catch (const std::exception&) {
        throw UsageError(flag + ": invalid half-integer '" + text + "' (use forms like 7/2, 3.5 or 3)");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        if (!item.empty()) out.push_back(item);
    return out;
}

struct Run {
    RunManifest manifest;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Run(std::string command) {
        manifest.command = std::move(command);
        manifest.tool_version = tool_version();
    }
    void param(const std::string& k, const std::string& v) { manifest.parameters[k] = v; }
    void param(const std::string& k, double v) { manifest.parameters[k] = format_number(v); }
    void param(const std::string& k, HalfInt v) { manifest.parameters[k] = v.str(); }

    // Writes text to path (with a sibling manifest) or to stdout when path is empty.
    void emit(const std::string& path, const std::string& text) {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        write_text(path, text);
        manifest.outputs.push_back(path);
        finish(path);
    }

    void finish(const std::string& path) {
        manifest.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_text(manifest_path(path), to_json(manifest).dump(2) + "\n");
    }
};

struct Globals {
    bool degrees = false;
    double angle(double v) const { return degrees ? v * kPi / 180 : v; }
};

// cg

struct CgArgs {
    std::string j1, m1, j2, m2, m3, sweep = "j3", methods = "exact", out;
};

std::string region_name(const CGKey& k) {
    try {
        switch (classify_region(coupling_geometry(k))) {
        case Region::Allowed: return "allowed";
        case Region::Forbidden: return "forbidden";
        case Region::Turning: return "turning";
        }
    } catch (const DomainError&) {
    }
    return "degenerate";
}

template <class F> std::string cell(F&& f) {
    try {
        return format_number(f());
    } catch (const DomainError&) {
        return "";
    }
}

int cmd_cg(const CgArgs& a) {
    Run run("cg");
    const HalfInt j1 = parse_half("--j1", a.j1), m1 = parse_half("--m1", a.m1);
    const HalfInt j2 = parse_half("--j2", a.j2), m2 = parse_half("--m2", a.m2);
    const HalfInt m3 = m1 + m2;
    if (!a.m3.empty() && parse_half("--m3", a.m3) != m3) throw UsageError("--m3: must equal m1 + m2 = " + m3.str());
    if (a.sweep != "j3") throw UsageError("--sweep: only 'j3' is supported");
    if (std::abs(m1.twice()) > j1.twice() || ((j1 - m1).twice() & 1)) throw UsageError("--m1: invalid projection for j1");
    if (std::abs(m2.twice()) > j2.twice() || ((j2 - m2).twice() & 1)) throw UsageError("--m2: invalid projection for j2");
    const std::vector<std::string> methods = split(a.methods, ',');
    for (const auto& m : methods)
        if (m != "exact" && m != "avg" && m != "allowed" && m != "forbidden" && m != "wkb" && m != "semiclassical")
            throw UsageError("--methods: unknown method '" + m + "'");
    run.param("j1", j1);
    run.param("m1", m1);
    run.param("j2", j2);
    run.param("m2", m2);
    run.param("sweep", a.sweep);
    run.param("methods", a.methods);

    CsvTable t;
    t.header = {"j3", "region"};
    for (const auto& m : methods) t.header.push_back(m);
    HalfInt j3 = j1 > j2 ? j1 - j2 : j2 - j1;
    while (std::abs(m3.twice()) > j3.twice()) j3 += HalfInt(1);
    for (; j3 <= j1 + j2; j3 += HalfInt(1)) {
        const CGKey key{j1, m1, j2, m2, j3, m3};
        std::vector<std::string> row = {j3.str(), region_name(key)};
        for (const auto& m : methods) {
            if (m == "exact") row.push_back(format_number(cg_exact(key)));
            else if (m == "avg") row.push_back(cell([&] { return cg_sq_avg(j1, m1, j2, m2, j3); }));
            else if (m == "allowed") row.push_back(cell([&] { return cg_allowed(coupling_geometry(key), j3); }));
            else if (m == "forbidden") row.push_back(cell([&] { return cg_forbidden(coupling_geometry(key), j3); }));
            else if (m == "wkb") row.push_back(cell([&] { return cg_wkb(key); }));
            else row.push_back(cell([&] { return cg_semiclassical(key); }));
        }
        t.rows.push_back(std::move(row));
    }
    run.emit(a.out, to_csv(t));
    return 0;
}

// wigd

struct WigdArgs {
    std::string j, mp, m, methods = "exact,wkb", out, j2 = "200";
    std::vector<double> theta;
    int theta_points = 0;
};

int cmd_wigd(const WigdArgs& a, const Globals& g) {
    Run run("wigd");
    const HalfInt j = parse_half("--j", a.j), mp = parse_half("--mp", a.mp), m = parse_half("--m", a.m);
    const HalfInt j2 = parse_half("--j2", a.j2);
    for (auto [flag, v] : {std::pair{"--mp", mp}, std::pair{"--m", m}})
        if (std::abs(v.twice()) > j.twice() || ((j - v).twice() & 1))
            throw UsageError(std::string(flag) + ": invalid projection for j");
    std::vector<double> thetas;
    for (double v : a.theta) thetas.push_back(g.angle(v));
    if (a.theta_points > 0)
        for (int k = 1; k <= a.theta_points; ++k) thetas.push_back(kPi * k / (a.theta_points + 1));
    if (thetas.empty()) throw UsageError("--theta or --theta-points is required");
    for (double th : thetas)
        if (!(th >= 0 && th <= kPi)) throw UsageError("--theta: angle outside [0, pi]");
    const std::vector<std::string> methods = split(a.methods, ',');
    for (const auto& mt : methods)
        if (mt != "exact" && mt != "asymptotic" && mt != "wkb" && mt != "cglimit")
            throw UsageError("--methods: unknown method '" + mt + "'");
    run.param("j", j);
    run.param("mp", mp);
    run.param("m", m);
    run.param("methods", a.methods);
    run.param("j2", j2);
    run.param("degrees", g.degrees ? "true" : "false");

    CsvTable t;
    t.header = {"theta", "r"};
    for (const auto& mt : methods) t.header.push_back(mt);
    for (double th : thetas) {
        const WigdQuery q{j, mp, m, th};
        std::vector<std::string> row = {format_number(th), format_number(r_classifier(q))};
        for (const auto& mt : methods) {
            if (mt == "exact") row.push_back(format_number(wigner_d_exact(j, mp, m, th)));
            else if (mt == "asymptotic") row.push_back(cell([&] { return wigd_asymptotic(q); }));
            else if (mt == "wkb") row.push_back(cell([&] { return wigd_wkb(q); }));
            else row.push_back(cell([&] { return wigd_from_cg_limit(j, mp, m, th, j2).value; }));
        }
        t.rows.push_back(std::move(row));
    }
    run.emit(a.out, to_csv(t));
    return 0;
}

// wavepacket

struct PacketArgs {
    std::string j, m, report = "widths", out_dir;
    double dj = 5, dm = 5;
    int j_cut = 5;
};

WavepacketSpec packet_spec(const PacketArgs& a, Run& run) {
    WavepacketSpec s{parse_half("--j", a.j), parse_half("--m", a.m), a.dj, a.dm, a.j_cut};
    if (!(a.dj > 0)) throw UsageError("--dj: must be positive");
    if (!(a.dm > 0)) throw UsageError("--dm: must be positive");
    run.param("j", s.j_center);
    run.param("m", s.m_center);
    run.param("dj", a.dj);
    run.param("dm", a.dm);
    run.param("j_cut", std::to_string(a.j_cut));
    return s;
}

std::string out_file(const std::string& dir, const std::string& name) {
    return dir.empty() ? std::string() : (fs::path(dir) / name).string();
}

int cmd_wavepacket(const PacketArgs& a) {
    Run run("wavepacket");
    const WavepacketSpec spec = packet_spec(a, run);
    const std::vector<std::string> reports = split(a.report, ',');
    for (const auto& r : reports)
        if (r != "widths" && r != "density" && r != "q" && r != "rectified")
            throw UsageError("--report: unknown report '" + r + "'");
    if (a.out_dir.empty() && reports.size() > 1) throw UsageError("--out-dir: required when several reports are requested");
    run.param("report", a.report);
    const AngularGrid grid = default_grid();
    run.param("grid", std::to_string(grid.theta.size()) + "x" + std::to_string(grid.phi.size()));
    const PacketBlocks blocks = to_blocks(build_j_wavepacket(spec));
    for (const auto& r : reports) {
        if (r == "widths") {
            run.emit(out_file(a.out_dir, "widths.json"), width_report_json(uncertainty_report(spec, grid)).dump(2) + "\n");
        } else if (r == "density") {
            run.emit(out_file(a.out_dir, "density.csv"), to_csv(density_table(particle_density(blocks, grid))));
        } else if (r == "q") {
            run.emit(out_file(a.out_dir, "q.csv"), to_csv(density_table(q_distribution(blocks, grid))));
        } else {
            const RectifiedStats s = rectified_stats(spec.j_center, spec.m_center, spec.dm);
            nlohmann::json j = {{"mu", s.mu},         {"sigma", s.sigma},       {"m_bar", s.m_bar},
                                {"dm_bar", s.dm_bar}, {"theta_bar", s.theta_bar}, {"q_lobe_theta", q_lobe_polar_angle(blocks)}};
            run.emit(out_file(a.out_dir, "rectified.json"), j.dump(2) + "\n");
        }
    }
    return 0;
}

// precess

struct PrecessArgs {
    PacketArgs packet;
    double omega = 1, periods = 1;
    int samples = 8;
    std::optional<double> field_theta, field_phi;
    bool frames = false;
};

int cmd_precess(const PrecessArgs& a, const Globals& g) {
    Run run("precess");
    PrecessionConfig c;
    c.spec = packet_spec(a.packet, run);
    if (!(a.omega > 0)) throw UsageError("--omega: must be positive");
    if (a.samples < 2) throw UsageError("--samples: need at least 2");
    if (!(a.periods > 0)) throw UsageError("--periods: must be positive");
    c.omega_L = a.omega;
    const double total = a.periods * 2 * kPi / a.omega;
    for (int k = 0; k <= a.samples; ++k) c.t_samples.push_back(total * k / a.samples);
    if (a.field_theta || a.field_phi) c.field_axis = Direction{g.angle(a.field_theta.value_or(0)), g.angle(a.field_phi.value_or(0))};
    const Direction axis = resolve_field_axis(c);
    run.param("omega", a.omega);
    run.param("periods", a.periods);
    run.param("samples", std::to_string(a.samples));
    run.param("field_theta", axis.theta);
    run.param("field_phi", axis.phi);
    run.param("frames", a.frames ? "true" : "false");

    const RotationTrace tr = track_rotation(c);
    run.emit(out_file(a.packet.out_dir, "trace.csv"), to_csv(trace_table(tr)));
    if (a.frames) {
        if (a.packet.out_dir.empty()) throw UsageError("--frames: requires --out-dir");
        const AngularGrid grid = default_grid();
        const std::vector<PacketBlocks> frames = evolve(c);
        for (size_t i = 0; i < frames.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "frame_%03zu.csv", i);
            run.emit(out_file(a.packet.out_dir, name),
                     to_csv(density_table(particle_density(from_field_frame(frames[i], axis), grid))));
        }
    }
    return 0;
}

// correlate

struct CorrelateArgs {
    std::string j1, j2, j3, m3, out;
    int quadrature = 256;
};

int cmd_correlate(const CorrelateArgs& a) {
    Run run("correlate");
    const CorrelationInput in{parse_half("--j1", a.j1), parse_half("--j2", a.j2), parse_half("--j3", a.j3),
                              parse_half("--m3", a.m3)};
    if (!triangle_ok(in.j1, in.j2, in.j3)) throw UsageError("--j3: violates the triangle rule with j1, j2");
    if (std::abs(in.m3.twice()) > in.j3.twice() || ((in.j3 - in.m3).twice() & 1))
        throw UsageError("--m3: invalid projection for j3");
    if (a.quadrature < 64) throw UsageError("--quadrature: must be at least 64");
    run.param("j1", in.j1);
    run.param("j2", in.j2);
    run.param("j3", in.j3);
    run.param("m3", in.m3);
    run.param("quadrature", std::to_string(a.quadrature));
    nlohmann::json j;
    j["vm"] = mstate_correlation_vm(in, a.quadrature);
    j["closed"] = mstate_correlation_closed(in);
    j["exact"] = pairwise_xx_expectation(in.j1, in.j2, in.j3, in.m3);
    j["exact_yy"] = pairwise_expectation(in.j1, in.j2, in.j3, in.m3, Axis::Y);
    run.emit(a.out, j.dump(2) + "\n");
    return 0;
}

// verify

int cmd_verify(const std::string& suite) {
    std::vector<CheckResult> results;
    try {
        results = run_suite(suite);
    } catch (const std::invalid_argument&) {
        throw UsageError("verify: unknown suite '" + suite + "' (A1..A12, appendix-a, all)");
    }
    bool ok = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.detail << "\n";
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}

void add_packet_flags(CLI::App* s, PacketArgs& p) {
    s->add_option("--j", p.j, "central j")->required();
    s->add_option("--m", p.m, "central m")->required();
    s->add_option("--dj", p.dj, "Gaussian width in j")->capture_default_str();
    s->add_option("--dm", p.dm, "Gaussian width in m")->capture_default_str();
    s->add_option("--j-cut", p.j_cut, "window half-width in units of the widths")->capture_default_str();
    s->add_option("--out-dir", p.out_dir, "directory for CSV/JSON outputs (stdout when omitted)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vector-Model wavefunction toolkit"};
    app.set_version_flag("--version", std::string(vmw::tool_version()));
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--degrees", g.degrees, "interpret angle flags in degrees");

    CgArgs cg;
    auto* s_cg = app.add_subcommand("cg", "Clebsch-Gordan sweep over j3");
    s_cg->add_option("--j1", cg.j1)->required();
    s_cg->add_option("--m1", cg.m1)->required();
    s_cg->add_option("--j2", cg.j2)->required();
    s_cg->add_option("--m2", cg.m2)->required();
    s_cg->add_option("--m3", cg.m3, "optional; must equal m1 + m2");
    s_cg->add_option("--sweep", cg.sweep, "sweep variable (j3)")->capture_default_str();
    s_cg->add_option("--methods", cg.methods, "exact,avg,allowed,forbidden,wkb,semiclassical")->capture_default_str();
    s_cg->add_option("--out", cg.out, "CSV path (stdout when omitted)");

    WigdArgs wd;
    auto* s_wd = app.add_subcommand("wigd", "Wigner d-function versus theta");
    s_wd->add_option("--j", wd.j)->required();
    s_wd->add_option("--mp", wd.mp)->required();
    s_wd->add_option("--m", wd.m)->required();
    s_wd->add_option("--theta", wd.theta, "explicit angles");
    s_wd->add_option("--theta-points", wd.theta_points, "N interior points k pi / (N + 1)");
    s_wd->add_option("--methods", wd.methods, "exact,asymptotic,wkb,cglimit")->capture_default_str();
    s_wd->add_option("--j2", wd.j2, "j2 for the cglimit method")->capture_default_str();
    s_wd->add_option("--out", wd.out, "CSV path (stdout when omitted)");

    PacketArgs wp;
    auto* s_wp = app.add_subcommand("wavepacket", "j/particle wavepacket densities and widths");
    add_packet_flags(s_wp, wp);
    s_wp->add_option("--report", wp.report, "widths,density,q,rectified")->capture_default_str();

    PrecessArgs pr;
    auto* s_pr = app.add_subcommand("precess", "Larmor precession trace");
    add_packet_flags(s_pr, pr.packet);
    s_pr->add_option("--omega", pr.omega, "Larmor rate")->capture_default_str();
    s_pr->add_option("--periods", pr.periods, "number of Larmor periods")->capture_default_str();
    s_pr->add_option("--samples", pr.samples, "time steps per run")->capture_default_str();
    s_pr->add_option("--field-theta", pr.field_theta, "field polar angle (default: rectified VM angle)");
    s_pr->add_option("--field-phi", pr.field_phi, "field azimuth");
    s_pr->add_flag("--frames", pr.frames, "write one lab-frame density CSV per sample");

    CorrelateArgs co;
    auto* s_co = app.add_subcommand("correlate", "m-state correlation <j1X j2X>");
    s_co->add_option("--j1", co.j1)->required();
    s_co->add_option("--j2", co.j2)->required();
    s_co->add_option("--j3", co.j3)->required();
    s_co->add_option("--m3", co.m3)->required();
    s_co->add_option("--quadrature", co.quadrature)->capture_default_str();
    s_co->add_option("--out", co.out, "JSON path (stdout when omitted)");

    std::string suite;
    auto* s_vf = app.add_subcommand("verify", "run an acceptance suite");
    s_vf->add_option("suite", suite, "A1..A12, appendix-a or all")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*s_cg) return cmd_cg(cg);
        if (*s_wd) return cmd_wigd(wd, g);
        if (*s_wp) return cmd_wavepacket(wp);
        if (*s_pr) return cmd_precess(pr, g);
        if (*s_co) return cmd_correlate(co);
        if (*s_vf) return cmd_verify(suite);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const vmw::DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
