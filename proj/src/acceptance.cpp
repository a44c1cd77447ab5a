#include "vmw/acceptance.hpp"

#include "vmw/correlations.hpp"
#include "vmw/exact.hpp"
#include "vmw/io.hpp"
#include "vmw/precession.hpp"
#include "vmw/semicg.hpp"
#include "vmw/semiwigd.hpp"
#include "vmw/special.hpp"
#include "vmw/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace vmw {

namespace {

constexpr double kPi = std::numbers::pi;

// A1
constexpr double kTolOrthonormal = 1e-12;
// A2
constexpr double kTolWignerAverage = 0.10;
constexpr double kA2Inset = 3.0;
// A3
constexpr double kTolCgAbs = 0.05;
constexpr double kTolSignFloor = 0.01;
constexpr double kA3AllowedInset = 5.0;
// A4
constexpr double kTolWigdAll = 0.05;
constexpr double kTolWigdDeep = 0.01;
// A6
constexpr double kTolUncertainty = 0.10;
constexpr double kThetaRatioLo = 0.9, kThetaRatioHi = 1.1;
// A7
constexpr double kTolRectified = 1e-6;
constexpr double kTolLobeDeg = 2.0;
// A8
constexpr double kRatioLo = 3.5, kRatioHi = 4.5;
constexpr double kOperatorStep = 0.02;
// A9
constexpr double kTolCorrelation = 1e-10;
constexpr double kTolXxYy = 1e-12;
// A11
constexpr double kTolSlope = 0.05;
constexpr double kTolAzimuthSpread = 2 * kPi / 720;
constexpr double kTolNorm = 1e-12;
constexpr double kTolChiDrift = 0.02;
// A12
constexpr double kTolWronskian = 1e-9;
constexpr double kTolAiryOrigin = 1e-9;
constexpr double kTolCdfSymmetry = 1e-14;

std::string fmt(double v) { return format_number(v); }

std::vector<HalfInt> half_steps(int64_t twice_lo, int64_t twice_hi) {
    std::vector<HalfInt> v;
    for (int64_t t = twice_lo; t <= twice_hi; ++t) v.push_back(half(t));
    return v;
}

std::vector<HalfInt> projections(HalfInt j) {
    std::vector<HalfInt> v;
    for (int64_t t = -j.twice(); t <= j.twice(); t += 2) v.push_back(half(t));
    return v;
}

CheckResult a1() {
    double worst_cg = 0, worst_unit = 0, worst_sym = 0;
    for (HalfInt j1 : half_steps(0, 12))
        for (HalfInt j2 : half_steps(0, 12))
            for (HalfInt j3 = j1 > j2 ? j1 - j2 : j2 - j1; j3 <= j1 + j2; j3 += HalfInt(1))
                for (HalfInt m3 : projections(j3)) {
                    double s = 0;
                    for (HalfInt m1 : projections(j1)) {
                        const HalfInt m2 = m3 - m1;
                        if (std::abs(m2.twice()) > j2.twice()) continue;
                        const double c = cg_exact(j1, m1, j2, m2, j3, m3);
                        s += c * c;
                    }
                    worst_cg = std::max(worst_cg, std::abs(s - 1));
                }
    for (HalfInt j : half_steps(0, 12))
        for (int k = 0; k < 25; ++k) {
            const double th = kPi * k / 24;
            const Eigen::Index n = Eigen::Index(j.twice() + 1);
            Eigen::MatrixXd d(n, n);
            for (Eigen::Index a = 0; a < n; ++a)
                for (Eigen::Index b = 0; b < n; ++b) {
                    const HalfInt mp = half(2 * a - j.twice()), m = half(2 * b - j.twice());
                    d(a, b) = wigner_d_exact(j, mp, m, th);
                    const double v = d(a, b);
                    const double rel[] = {
                        wigner_d_exact(j, -m, -mp, th),
                        parity_sign(mp - m) * wigner_d_exact(j, m, mp, th),
                        parity_sign(mp - m) * wigner_d_exact(j, mp, m, -th),
                        parity_sign(j - m) * wigner_d_exact(j, -mp, m, kPi - th),
                    };
                    for (double r : rel) worst_sym = std::max(worst_sym, std::abs(v - r));
                }
            worst_unit = std::max(worst_unit, (d * d.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
        }
    const bool pass = worst_cg <= kTolOrthonormal && worst_unit <= kTolOrthonormal && worst_sym <= kTolOrthonormal;
    return {"A1", pass,
            "max |sum C^2 - 1| = " + fmt(worst_cg) + ", max unitarity defect = " + fmt(worst_unit) +
                ", max symmetry defect = " + fmt(worst_sym)};
}

struct Fig4b {
    HalfInt j1 = 40, m1 = 10, j2 = 30, m2 = -15;
};

CheckResult a2() {
    const Fig4b f;
    const HalfInt m3 = f.m1 + f.m2;
    const auto [lo, hi] = turning_points(f.j1, f.m1, f.j2, f.m2);
    double worst = 0, worst_alt = 0;
    int count = 0;
    std::string at;
    for (HalfInt j3 = f.j1 - f.j2; j3 <= f.j1 + f.j2; j3 += HalfInt(1)) {
        const double jv = j3.value();
        if (jv - lo < kA2Inset || hi - jv < kA2Inset) continue;
        double mean = 0;
        for (int w = -2; w <= 2; ++w) {
            const double c = cg_exact(f.j1, f.m1, f.j2, f.m2, j3 + HalfInt(w), m3);
            mean += c * c / 5;
        }
        const double avg = cg_sq_avg(f.j1, f.m1, f.j2, f.m2, j3, SqAvgVariant::JPlusOne);
        const double alt = cg_sq_avg(f.j1, f.m1, f.j2, f.m2, j3, SqAvgVariant::TwoJPlusOneHalf);
        const double rel = std::abs(mean - avg) / avg;
        if (rel > worst) {
            worst = rel;
            at = j3.str();
        }
        worst_alt = std::max(worst_alt, std::abs(mean - alt) / alt);
        ++count;
    }
    return {"A2", count > 0 && worst <= kTolWignerAverage,
            "max relative deviation over " + std::to_string(count) + " points = " + fmt(worst) + " (j3 = " + at +
                "); (2j3+1) variant: " + fmt(worst_alt)};
}

struct CgSweep {
    double worst_wkb = 0, worst_allowed = 0;
    int sign_flips = 0, allowed_points = 0, points = 0;
};

CgSweep sweep_cg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2) {
    CgSweep s;
    const HalfInt m3 = m1 + m2;
    const auto [lo, hi] = turning_points(j1, m1, j2, m2);
    HalfInt j3 = j1 > j2 ? j1 - j2 : j2 - j1;
    while (std::abs(m3.twice()) > j3.twice()) j3 += HalfInt(1);
    for (; j3 <= j1 + j2; j3 += HalfInt(1)) {
        const CGKey key{j1, m1, j2, m2, j3, m3};
        const double ex = cg_exact(key);
        const double wkb = cg_wkb(key);
        ++s.points;
        s.worst_wkb = std::max(s.worst_wkb, std::abs(wkb - ex));
        if (std::abs(ex) > kTolSignFloor && (wkb > 0) != (ex > 0)) ++s.sign_flips;
        const double jv = j3.value();
        if (jv - lo >= kA3AllowedInset && hi - jv >= kA3AllowedInset) {
            const CouplingGeometry g = coupling_geometry(key);
            if (classify_region(g) == Region::Allowed) {
                s.worst_allowed = std::max(s.worst_allowed, std::abs(cg_allowed(g, j3) - ex));
                ++s.allowed_points;
            }
        }
    }
    return s;
}

CheckResult a3() {
    const Fig4b f;
    struct Case {
        HalfInt j1, m1, j2, m2;
    };
    const std::vector<Case> cases = {
        {f.j1, f.m1, f.j2, f.m2},
        {HalfInt(2), HalfInt(1), HalfInt(2), HalfInt(0)},
        {half(5), half(1), HalfInt(2), HalfInt(-1)},
        {HalfInt(5), HalfInt(2), HalfInt(4), HalfInt(-1)},
    };
    bool pass = true;
    std::ostringstream os;
    for (const auto& c : cases) {
        const CgSweep s = sweep_cg(c.j1, c.m1, c.j2, c.m2);
        const bool ok = s.sign_flips == 0 && s.worst_wkb <= kTolCgAbs && s.worst_allowed <= kTolCgAbs;
        pass = pass && ok;
        os << "(" << c.j1.str() << " " << c.m1.str() << ", " << c.j2.str() << " " << c.m2.str() << "): wkb err "
           << fmt(s.worst_wkb) << ", sign flips " << s.sign_flips << ", allowed err " << fmt(s.worst_allowed) << " ("
           << s.allowed_points << " pts); ";
    }
    return {"A3", pass, os.str()};
}

CheckResult a4() {
    double worst = 0, worst_deep = 0;
    std::string at, at_deep;
    for (HalfInt j : half_steps(1, 20))
        for (HalfInt mp : projections(j))
            for (HalfInt m : projections(j))
                for (int k = 1; k <= 19; ++k) {
                    const WigdQuery q{j, mp, m, kPi * k / 20};
                    const double e = std::abs(wigd_wkb(q) - wigner_d_exact(j, mp, m, q.theta));
                    const std::string where = "(" + j.str() + "," + mp.str() + "," + m.str() + ",k=" + std::to_string(k) + ")";
                    if (e > worst) {
                        worst = e;
                        at = where;
                    }
                    if (r_classifier(q) > j.value() + 0.5 && e > worst_deep) {
                        worst_deep = e;
                        at_deep = where;
                    }
                }
    return {"A4", worst <= kTolWigdAll && worst_deep <= kTolWigdDeep,
            "max error " + fmt(worst) + " at " + at + "; deep allowed (R > J) max " + fmt(worst_deep) + " at " + at_deep};
}

CheckResult a5() {
    std::mt19937_64 rng(20240917);
    const HalfInt j2s[] = {HalfInt(50), HalfInt(100), HalfInt(200), HalfInt(400)};
    int failures = 0;
    double first_max = 0, last_max = 0;
    std::string bad;
    for (int t = 0; t < 20; ++t) {
        const HalfInt j1 = half(std::uniform_int_distribution<int64_t>(1, 8)(rng));
        auto pick = [&] { return half(-j1.twice() + 2 * std::uniform_int_distribution<int64_t>(0, j1.twice())(rng)); };
        const HalfInt mp = pick(), m = pick();
        const double th = std::uniform_real_distribution<double>(0.2, kPi - 0.2)(rng);
        std::vector<double> errs;
        for (HalfInt j2 : j2s) {
            const CgLimitResult r = wigd_from_cg_limit(j1, mp, m, th, j2);
            errs.push_back(std::abs(r.value - wigner_d_exact(j1, mp, m, r.theta_eff)));
        }
        bool dec = true;
        for (size_t i = 1; i < errs.size(); ++i) dec = dec && errs[i] < errs[i - 1];
        if (!dec) {
            ++failures;
            bad += " (" + j1.str() + "," + mp.str() + "," + m.str() + "," + fmt(th) + ")";
        }
        first_max = std::max(first_max, errs.front());
        last_max = std::max(last_max, errs.back());
    }
    return {"A5", failures == 0,
            "max error j2=50: " + fmt(first_max) + ", j2=400: " + fmt(last_max) + "; non-monotone tuples: " +
                std::to_string(failures) + bad};
}

CheckResult a6() {
    const WavepacketSpec spec{HalfInt(80), HalfInt(40), 5, 5};
    const AngularGrid grid = default_grid();
    const WidthReport r = uncertainty_report(spec, grid);
    auto near_half = [](double v) { return std::abs(v - 0.5) <= kTolUncertainty * 0.5; };
    bool pass = near_half(r.dm_dphi) && near_half(r.dj_dchi) && near_half(r.jsin_dtheta_dphi);
    std::ostringstream os;
    os << "dm*dphi " << fmt(r.dm_dphi) << ", dj*dchi " << fmt(r.dj_dchi) << ", Jsin*dtheta*dphi "
       << fmt(r.jsin_dtheta_dphi) << "; Jsin*dtheta/dm:";
    const double J = modulus(spec.j_center), st = std::sin(theta_m(spec.j_center, spec.m_center));
    for (double dm : {1.0, 2.0, 3.0, 5.0}) {
        WavepacketSpec s = spec;
        s.dm = dm;
        const GaussianFit ft = width_fit_theta(particle_density(to_blocks(build_j_wavepacket(s)), grid));
        const double ratio = J * st * ft.sigma / dm;
        pass = pass && ratio >= kThetaRatioLo && ratio <= kThetaRatioHi;
        os << " dm=" << fmt(dm) << ":" << fmt(ratio);
    }
    return {"A6", pass, os.str()};
}

// Brute-force moments of clamp(X, a, b), X ~ N(0, 1).
std::pair<double, double> clamped_gaussian_oracle(double a, double b) {
    constexpr int n = 1000000;
    constexpr double lo = -12, hi = 12;
    const double h = (hi - lo) / n;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + (i + 0.5) * h;
        const double w = std::exp(-0.5 * x * x) / std::sqrt(2 * kPi) * h;
        const double c = std::clamp(x, a, b);
        s1 += c * w;
        s2 += c * c * w;
    }
    return {s1, std::sqrt(std::max(0.0, s2 - s1 * s1))};
}

CheckResult a7() {
    double worst = 0;
    for (int tj : {1, 10, 20, 40})
        for (HalfInt m : projections(half(tj))) {
            for (double dm : {0.5, 1.0, 3.0, 6.0}) {
                const HalfInt j = half(tj);
                const RectifiedStats r = rectified_stats(j, m, dm);
                const auto [mu, sigma] =
                    clamped_gaussian_oracle((-j.value() - m.value()) / dm, (j.value() - m.value()) / dm);
                worst = std::max({worst, std::abs(r.m_bar - (m.value() + mu * dm)), std::abs(r.dm_bar - sigma * dm)});
            }
        }
    double worst_deg = 0;
    std::string at;
    for (int j : {5, 10, 20, 40})
        for (int m : {0, j / 2, j - 1, j})
            for (double dm : {3.0, 5.0}) {
                const WavepacketSpec spec{HalfInt(j), HalfInt(m), 0.1, dm};
                const double lobe = q_lobe_polar_angle(to_blocks(build_j_wavepacket(spec)));
                const double pred = rectified_stats(HalfInt(j), HalfInt(m), dm).theta_bar;
                const double deg = std::abs(lobe - pred) * 180 / kPi;
                if (deg > worst_deg) {
                    worst_deg = deg;
                    at = "(j=" + std::to_string(j) + ", m=" + std::to_string(m) + ", dm=" + fmt(dm) + ")";
                }
            }
    return {"A7", worst <= kTolRectified && worst_deg <= kTolLobeDeg,
            "rectified vs quadrature max " + fmt(worst) + "; max |theta_bar - Q lobe| = " + fmt(worst_deg) + " deg at " +
                at};
}

std::vector<CheckResult> operator_checks(HalfInt j, HalfInt m) {
    std::vector<CheckResult> out;
    for (const OperatorCheck& c : vmw_operator_check(j, m, kOperatorStep)) {
        const bool ok = c.ratio >= kRatioLo && c.ratio <= kRatioHi;
        out.push_back({c.name + " (j=" + j.str() + ", m=" + m.str() + ")", ok,
                       "expected " + fmt(c.expected) + ", measured " + fmt(c.measured) + ", error " + fmt(c.error) +
                           " -> " + fmt(c.error_half) + ", ratio " + fmt(c.ratio)});
    }
    return out;
}

CheckResult a8() {
    bool pass = true;
    std::ostringstream os;
    for (auto [j, m] : {std::pair{HalfInt(10), HalfInt(3)}, std::pair{HalfInt(10), HalfInt(10)}, std::pair{half(1), half(1)}})
        for (const CheckResult& c : operator_checks(j, m)) {
            pass = pass && c.pass;
            if (!c.pass) os << c.id << ": " << c.detail << "; ";
        }
    std::string d = os.str();
    return {"A8", pass, d.empty() ? "15 relations with error ratio in [3.5, 4.5]" : d};
}

CheckResult a9() {
    double worst = 0, worst_yy = 0;
    int cases = 0;
    for (HalfInt j1 : half_steps(1, 8))
        for (HalfInt j2 : half_steps(1, 8))
            for (HalfInt j3 = j1 > j2 ? j1 - j2 : j2 - j1; j3 <= j1 + j2; j3 += HalfInt(1))
                for (HalfInt m3 : projections(j3)) {
                    const CorrelationInput in{j1, j2, j3, m3};
                    const double vm = mstate_correlation_vm(in);
                    const double closed = mstate_correlation_closed(in);
                    const double xx = pairwise_xx_expectation(j1, j2, j3, m3);
                    const double yy = pairwise_expectation(j1, j2, j3, m3, Axis::Y);
                    worst = std::max({worst, std::abs(vm - closed), std::abs(vm - xx), std::abs(closed - xx)});
                    worst_yy = std::max(worst_yy, std::abs(xx - yy));
                    ++cases;
                }
    return {"A9", worst <= kTolCorrelation && worst_yy <= kTolXxYy,
            std::to_string(cases) + " cases; max three-way spread " + fmt(worst) + ", max |XX - YY| " + fmt(worst_yy)};
}

CheckResult a10() {
    int bad = 0, total = 0;
    for (HalfInt S : half_steps(1, 20))
        for (HalfInt M : projections(S)) {
            if (M.twice() == 0) continue;
            ++total;
            if (g_factor(S, M) != 2.0) ++bad;
        }
    return {"A10", bad == 0, std::to_string(total) + " (S, M) pairs, " + std::to_string(bad) + " differ from 2.0"};
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

CheckResult a11() {
    PrecessionConfig c;
    c.spec = {HalfInt(80), HalfInt(40), 5, 5};
    c.omega_L = 1;
    for (int k = 0; k <= 8; ++k) c.t_samples.push_back(k * 2 * kPi / (8 * c.omega_L));
    const RotationTrace tr = track_rotation(c);
    const double sj = regression_slope(tr.times, tr.j_azimuth);
    const double sp = regression_slope(tr.times, tr.particle_azimuth);
    double dmin = 1e300, dmax = -1e300, norm_drift = 0, chi_drift = 0;
    for (size_t i = 0; i < tr.times.size(); ++i) {
        const double d = tr.j_azimuth[i] - tr.particle_azimuth[i];
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        norm_drift = std::max(norm_drift, std::abs(tr.norm[i] - tr.norm[0]));
        chi_drift = std::max(chi_drift, std::abs(tr.d_chi[i] / tr.d_chi[0] - 1));
    }
    const bool pass = std::abs(sj / c.omega_L - 1) <= kTolSlope && std::abs(sp / c.omega_L - 1) <= kTolSlope &&
                      dmax - dmin <= kTolAzimuthSpread && norm_drift < kTolNorm && chi_drift < kTolChiDrift;
    return {"A11", pass,
            "slopes " + fmt(sj) + " / " + fmt(sp) + ", azimuth difference spread " + fmt(dmax - dmin) +
                ", norm drift " + fmt(norm_drift) + ", dchi drift " + fmt(chi_drift)};
}

CheckResult a12() {
    double wr = 0;
    for (int i = 0; i <= 1500; ++i) {
        const double x = -10 + 15.0 * i / 1500;
        const AiryValues a = airy(x);
        wr = std::max(wr, std::abs(a.ai * a.bip - a.aip * a.bi - 1 / kPi));
    }
    const double g23 = std::tgamma(2.0 / 3.0);
    const double ai0 = 1 / (std::cbrt(9.0) * g23), bi0 = 1 / (std::pow(3.0, 1.0 / 6.0) * g23);
    const double origin = std::max(std::abs(airy_ai(0) - ai0), std::abs(airy_bi(0) - bi0));
    double sym = 0;
    for (int i = 0; i <= 1600; ++i) {
        const double x = -8 + 16.0 * i / 1600;
        sym = std::max(sym, std::abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1));
    }
    return {"A12", wr <= kTolWronskian && origin <= kTolAiryOrigin && sym <= kTolCdfSymmetry,
            "Wronskian defect " + fmt(wr) + ", Ai(0)/Bi(0) error " + fmt(origin) + ", cdf symmetry " + fmt(sym)};
}

const std::map<std::string, std::function<CheckResult()>>& registry() {
    static const std::map<std::string, std::function<CheckResult()>> r = {
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},   {"A5", a5},   {"A6", a6},
        {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}, {"A11", a11}, {"A12", a12},
    };
    return r;
}

} // namespace

const std::vector<std::string>& acceptance_ids() {
    static const std::vector<std::string> ids = {"A1", "A2", "A3", "A4",  "A5",  "A6",
                                                 "A7", "A8", "A9", "A10", "A11", "A12"};
    return ids;
}

CheckResult run_acceptance(const std::string& id) {
    auto it = registry().find(id);
    if (it == registry().end()) throw std::invalid_argument("unknown acceptance criterion: " + id);
    try {
        return it->second();
    } catch (const std::exception& e) {
        return {id, false, std::string("exception: ") + e.what()};
    }
}

std::vector<CheckResult> appendix_a_suite() { return operator_checks(HalfInt(10), HalfInt(3)); }

std::vector<CheckResult> run_suite(const std::string& name) {
    if (name == "appendix-a") return appendix_a_suite();
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const auto& id : acceptance_ids()) out.push_back(run_acceptance(id));
        return out;
    }
    if (registry().count(name)) return {run_acceptance(name)};
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace vmw
