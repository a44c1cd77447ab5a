#include "vmw/wavepacket.hpp"

#include "vmw/exact.hpp"
#include "vmw/special.hpp"

#include <boost/math/tools/minima.hpp>
#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

namespace vmw {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

double wrap_pi(double a) {
    a = std::fmod(a + kPi, 2 * kPi);
    if (a < 0) a += 2 * kPi;
    return a - kPi;
}

// Pbar_mm for m = 0..mmax at sin(theta) = s.
std::vector<double> sectoral(int mmax, double s) {
    std::vector<double> p(size_t(mmax) + 1);
    p[0] = 1 / std::sqrt(4 * kPi);
    for (int k = 1; k <= mmax; ++k) p[size_t(k)] = -std::sqrt((2.0 * k + 1) / (2.0 * k)) * s * p[size_t(k) - 1];
    return p;
}

// Calls f(l, Pbar_lm) for l = |m|..lmax.
template <class F> void legendre_column(int am, int lmax, double x, double pmm, F&& f) {
    if (am > lmax) return;
    double p0 = pmm;
    f(am, p0);
    if (am + 1 > lmax) return;
    double p1 = std::sqrt(2.0 * am + 3) * x * pmm;
    f(am + 1, p1);
    double a_prev = std::sqrt((4.0 * (am + 1) * (am + 1) - 1) / (double(am + 1) * (am + 1) - double(am) * am));
    for (int l = am + 2; l <= lmax; ++l) {
        double a = std::sqrt((4.0 * l * l - 1) / (double(l) * l - double(am) * am));
        double p2 = a * (x * p1 - p0 / a_prev);
        f(l, p2);
        p0 = p1;
        p1 = p2;
        a_prev = a;
    }
}

struct GaussFunctor {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    const std::vector<double>& x;
    const std::vector<double>& y;
    int inputs() const { return 3; }
    int values() const { return int(x.size()); }

    int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& fvec) const {
        for (size_t i = 0; i < x.size(); ++i) {
            double u = (x[i] - p[1]) / p[2];
            fvec[Eigen::Index(i)] = p[0] * std::exp(-0.5 * u * u) - y[i];
        }
        return 0;
    }
    int df(const Eigen::VectorXd& p, Eigen::MatrixXd& J) const {
        for (size_t i = 0; i < x.size(); ++i) {
            double u = (x[i] - p[1]) / p[2];
            double e = std::exp(-0.5 * u * u);
            auto r = Eigen::Index(i);
            J(r, 0) = e;
            J(r, 1) = p[0] * e * u / p[2];
            J(r, 2) = p[0] * e * u * u / p[2];
        }
        return 0;
    }
};

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 2 || n > 100000) throw std::invalid_argument(std::string("invalid ") + name + ": " + v);
    return int(n);
}

} // namespace

JWavepacket build_j_wavepacket(const WavepacketSpec& spec) {
    if (!(spec.dj > 0) || !(spec.dm > 0)) throw DomainError("wavepacket: widths must be positive");
    if (spec.j_cut < 4) throw DomainError("wavepacket: j_cut must be >= 4");
    if (spec.j_center.twice() < 0 || std::abs(spec.m_center.twice()) > spec.j_center.twice() ||
        ((spec.j_center - spec.m_center).twice() & 1))
        throw DomainError("wavepacket: invalid (j, m) center");
    const int64_t kj = int64_t(std::floor(spec.j_cut * spec.dj));
    const int64_t km = int64_t(std::floor(spec.j_cut * spec.dm));
    JWavepacket p;
    double sum2 = 0;
    for (int64_t a = -kj; a <= kj; ++a) {
        HalfInt j = spec.j_center + HalfInt(int(a));
        if (j.twice() < 0) continue;
        const double wj = std::exp(-std::pow(double(a) / (2 * spec.dj), 2));
        for (int64_t b = -km; b <= km; ++b) {
            HalfInt m = spec.m_center + HalfInt(int(b));
            if (std::abs(m.twice()) > j.twice()) continue;
            const double w = wj * std::exp(-std::pow(double(b) / (2 * spec.dm), 2));
            if (w <= 0) continue;
            p.terms.push_back({j, m, w});
            sum2 += w * w;
        }
    }
    if (p.terms.empty()) throw DomainError("wavepacket: all weights clamp to zero");
    p.norm = std::sqrt(sum2);
    return p;
}

PacketBlocks to_blocks(const JWavepacket& packet) {
    PacketBlocks out;
    for (const auto& t : packet.terms) {
        if (out.empty() || out.back().j != t.j)
            out.push_back({t.j, Eigen::VectorXcd::Zero(Eigen::Index(t.j.twice() + 1))});
        out.back().amp[Eigen::Index((t.m + t.j).twice() / 2)] = t.weight / packet.norm;
    }
    return out;
}

double blocks_norm(const PacketBlocks& blocks) {
    double s = 0;
    for (const auto& b : blocks) s += b.amp.squaredNorm();
    return std::sqrt(s);
}

Eigen::Vector3d to_vector(const Direction& d) {
    return {std::sin(d.theta) * std::cos(d.phi), std::sin(d.theta) * std::sin(d.phi), std::cos(d.theta)};
}

Direction to_direction(const Eigen::Vector3d& v) {
    Eigen::Vector3d u = v.normalized();
    return {std::acos(std::clamp(u.z(), -1.0, 1.0)), std::atan2(u.y(), u.x())};
}

AngularGrid make_grid(int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 2) throw DomainError("grid needs at least 2 x 2 nodes");
    AngularGrid g;
    const double dth = kPi / n_theta, dph = 2 * kPi / n_phi;
    for (int i = 0; i < n_theta; ++i) {
        double th = (i + 0.5) * dth;
        g.theta.push_back(th);
        g.weight.push_back(std::sin(th) * dth * dph);
    }
    for (int k = 0; k < n_phi; ++k) g.phi.push_back(k * dph);
    return g;
}

AngularGrid default_grid() {
    return make_grid(env_int("VMW_GRID_THETA", kDefaultGridTheta), env_int("VMW_GRID_PHI", kDefaultGridPhi));
}

double AngularDensity::integral() const {
    double s = 0;
    const size_t np = grid.phi.size();
    for (size_t i = 0; i < grid.theta.size(); ++i)
        for (size_t k = 0; k < np; ++k) s += values[i * np + k] * grid.weight[i];
    return s;
}

std::complex<double> spherical_harmonic(int l, int m, double theta, double phi) {
    const int am = std::abs(m);
    if (l < 0 || am > l) throw DomainError("spherical_harmonic: invalid (l, m)");
    double pmm = sectoral(am, std::sin(theta))[size_t(am)];
    double plm = 0;
    legendre_column(am, l, std::cos(theta), pmm, [&](int ll, double p) {
        if (ll == l) plm = p;
    });
    if (m < 0 && (am % 2)) plm = -plm;
    return std::polar(plm, m * phi);
}

ParticleField::ParticleField(const PacketBlocks& blocks) {
    for (const auto& b : blocks) {
        if (!b.j.is_integer()) throw DomainError("particle density requires integer j");
        const int l = int(b.j.as_int());
        lmax_ = std::max(lmax_, l);
        for (int i = 0; i <= 2 * l; ++i) {
            cd a = b.amp[i];
            if (a == cd(0)) continue;
            const int m = i - l;
            auto& v = coeff_[m];
            if (int(v.size()) <= l) v.resize(size_t(l) + 1, cd(0));
            v[size_t(l)] += a;
            mmax_ = std::max(mmax_, std::abs(m));
        }
    }
}

std::vector<std::pair<int, std::complex<double>>> ParticleField::row_coefficients(double theta) const {
    const double x = std::cos(theta), s = std::sin(theta);
    const std::vector<double> pmm = sectoral(mmax_, s);
    std::vector<std::pair<int, cd>> out;
    out.reserve(coeff_.size());
    for (const auto& [m, a] : coeff_) {
        const int am = std::abs(m);
        cd sum = 0;
        legendre_column(am, int(a.size()) - 1, x, pmm[size_t(am)], [&](int l, double p) { sum += a[size_t(l)] * p; });
        if (m < 0 && (am % 2)) sum = -sum;
        out.emplace_back(m, sum);
    }
    return out;
}

std::complex<double> ParticleField::amplitude(double theta, double phi) const {
    cd psi = 0;
    for (const auto& [m, c] : row_coefficients(theta)) psi += c * std::polar(1.0, m * phi);
    return psi;
}

AngularDensity particle_density(const PacketBlocks& blocks, const AngularGrid& grid) {
    ParticleField field(blocks);
    AngularDensity d;
    d.grid = grid;
    const size_t nt = grid.theta.size(), np = grid.phi.size();
    d.values.assign(nt * np, 0.0);
    for (size_t i = 0; i < nt; ++i) {
        const auto coeffs = field.row_coefficients(grid.theta[i]);
        for (size_t k = 0; k < np; ++k) {
            cd psi = 0;
            for (const auto& [m, c] : coeffs) psi += c * std::polar(1.0, m * grid.phi[k]);
            d.values[i * np + k] = std::norm(psi);
        }
    }
    d.raw_integral = d.integral();
    if (!(d.raw_integral > 0)) throw DomainError("particle density vanishes on the grid");
    for (double& v : d.values) v /= d.raw_integral;
    return d;
}

QEvaluator::QEvaluator(const PacketBlocks& blocks) {
    for (const auto& b : blocks) {
        const int n = int(b.amp.size());
        int first = 0, last = n - 1;
        while (first < n && b.amp[first] == cd(0)) ++first;
        while (last >= first && b.amp[last] == cd(0)) --last;
        if (first > last) continue;
        Block blk;
        blk.twice_j = b.j.twice();
        blk.first = first;
        const double lg = std::lgamma(double(blk.twice_j) + 1);
        for (int i = first; i <= last; ++i) {
            blk.amp.push_back(b.amp[i]);
            blk.log_binom.push_back(0.5 * (lg - std::lgamma(double(i) + 1) - std::lgamma(double(blk.twice_j - i) + 1)));
        }
        blocks_.push_back(std::move(blk));
    }
}

double QEvaluator::operator()(double theta, double phi) const {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const double lc = std::log(std::abs(c)), ls = std::log(std::abs(s));
    double q = 0;
    for (const auto& b : blocks_) {
        cd sum = 0;
        for (size_t t = 0; t < b.amp.size(); ++t) {
            const int64_t jpm = b.first + int64_t(t), jmm = b.twice_j - jpm; // j + m, j - m
            if ((jpm && c == 0) || (jmm && s == 0)) continue;
            const double e = b.log_binom[t] + (jpm ? jpm * lc : 0.0) + (jmm ? jmm * ls : 0.0);
            const double m = 0.5 * double(2 * jpm - b.twice_j);
            sum += std::exp(e) * std::polar(1.0, m * phi) * b.amp[t];
        }
        q += (double(b.twice_j) + 1) / (4 * kPi) * std::norm(sum);
    }
    return q;
}

AngularDensity q_distribution(const PacketBlocks& blocks, const AngularGrid& grid) {
    QEvaluator q(blocks);
    AngularDensity d;
    d.grid = grid;
    const size_t nt = grid.theta.size(), np = grid.phi.size();
    d.values.resize(nt * np);
    for (size_t i = 0; i < nt; ++i)
        for (size_t k = 0; k < np; ++k) d.values[i * np + k] = q(grid.theta[i], grid.phi[k]);
    d.raw_integral = d.integral();
    return d;
}

double q_from_moments(const PacketBlock& block, double theta, double phi) {
    const HalfInt j = block.j;
    const int64_t tj = j.twice();
    const int n = int(tj + 1);
    auto amp = [&](HalfInt m) { return block.amp[Eigen::Index((m + j).twice() / 2)]; };
    cd q = 0;
    for (int k = 0; k <= int(tj); ++k) {
        const double cg_jj = cg_exact(j, j, HalfInt(k), HalfInt(0), j, j);
        if (cg_jj == 0) continue;
        const double pre = std::sqrt(double(tj + 1) / (2.0 * k + 1)) * parity_sign(HalfInt(int(tj)) + HalfInt(k));
        for (int qq = -k; qq <= k; ++qq) {
            cd a = 0;
            for (int i = 0; i < n; ++i) {
                const HalfInt m = half(2 * i - tj), mp = m + HalfInt(qq);
                if (std::abs(mp.twice()) > tj) continue;
                const double c = cg_exact(j, -m, j, mp, HalfInt(k), HalfInt(qq));
                if (c == 0) continue;
                a += double(parity_sign(m - j)) * c * amp(m) * std::conj(amp(mp));
            }
            a *= pre;
            const cd ckq = std::sqrt(4 * kPi / (2.0 * k + 1)) * spherical_harmonic(k, qq, theta, phi);
            q += (2.0 * k + 1) / (4 * kPi) * a * cg_jj * std::conj(ckq);
        }
    }
    return q.real();
}

Direction maximize_q_near(const QEvaluator& q, const Direction& start, double radius) {
    const Eigen::Vector3d n = to_vector(start);
    const Eigen::Vector3d e1(std::cos(start.theta) * std::cos(start.phi), std::cos(start.theta) * std::sin(start.phi),
                             -std::sin(start.theta));
    const Eigen::Vector3d e2 = n.cross(e1);
    auto dir = [&](double x, double y) { return to_direction(n + x * e1 + y * e2); };
    auto value = [&](double x, double y) {
        Direction d = dir(x, y);
        return -q(d.theta, d.phi);
    };
    const int bits = std::numeric_limits<double>::digits / 2;
    double x = 0, y = 0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        const double x_new = boost::math::tools::brent_find_minima([&](double t) { return value(t, y); }, -radius, radius, bits).first;
        const double y_new = boost::math::tools::brent_find_minima([&](double t) { return value(x_new, t); }, -radius, radius, bits).first;
        const double moved = std::abs(x_new - x) + std::abs(y_new - y);
        x = x_new;
        y = y_new;
        if (moved < 1e-11) break;
    }
    return dir(x, y);
}

Direction q_lobe_direction(const PacketBlocks& blocks) {
    QEvaluator q(blocks);
    constexpr int nt = 60, np = 120;
    Direction best;
    double best_v = -1;
    for (int i = 0; i < nt; ++i)
        for (int k = 0; k < np; ++k) {
            const double th = (i + 0.5) * kPi / nt, ph = 2 * kPi * k / np;
            const double v = q(th, ph);
            if (v > best_v) {
                best_v = v;
                best = {th, ph};
            }
        }
    return maximize_q_near(q, best, 2 * kPi / nt);
}

double q_lobe_polar_angle(const PacketBlocks& blocks) {
    QEvaluator q(blocks);
    constexpr int n = 2001;
    int best = 0;
    double best_v = -1;
    for (int i = 0; i < n; ++i) {
        const double v = q(kPi * i / (n - 1), 0.0);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    const double lo = kPi * std::max(0, best - 1) / (n - 1), hi = kPi * std::min(n - 1, best + 1) / (n - 1);
    const int bits = std::numeric_limits<double>::digits / 2;
    return boost::math::tools::brent_find_minima([&](double t) { return -q(t, 0.0); }, lo, hi, bits).first;
}

Direction density_plane_normal(const AngularDensity& density) {
    const auto& g = density.grid;
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (size_t i = 0; i < g.theta.size(); ++i)
        for (size_t k = 0; k < g.phi.size(); ++k) {
            const Eigen::Vector3d n = to_vector({g.theta[i], g.phi[k]});
            m += density.at(i, k) * g.weight[i] * n * n.transpose();
        }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    Eigen::Vector3d v = es.eigenvectors().col(0);
    if (v.z() < 0) v = -v;
    return to_direction(v);
}

double width_phi(const PacketBlocks& blocks) {
    int64_t kmax = 0;
    for (const auto& b : blocks) kmax = std::max<int64_t>(kmax, b.amp.size() - 1);
    // r[k + kmax] = sum over m - m' = k of rho_{m m'}
    std::vector<cd> r(size_t(2 * kmax + 1), cd(0));
    for (const auto& b : blocks) {
        const Eigen::Index n = b.amp.size();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (b.amp[i] == cd(0)) continue;
            for (Eigen::Index ip = 0; ip < n; ++ip) r[size_t(i - ip + kmax)] += b.amp[i] * std::conj(b.amp[ip]);
        }
    }
    const cd e1 = r[size_t(kmax - 1 >= 0 ? kmax - 1 : kmax)];
    const double mean = (kmax > 0 && std::abs(e1) > 0) ? std::arg(e1) : 0.0;
    cd m1 = 0, m2 = r[size_t(kmax)] * (kPi * kPi / 3);
    for (int64_t k = -kmax; k <= kmax; ++k) {
        if (k == 0) continue;
        const double sign = (k % 2) ? -1.0 : 1.0;
        const cd rk = r[size_t(k + kmax)] * std::polar(1.0, double(k) * mean);
        m1 += rk * sign / cd(0, double(k));
        m2 += rk * 2.0 * sign / (double(k) * double(k));
    }
    const double var = m2.real() - m1.real() * m1.real();
    return std::sqrt(std::max(0.0, var));
}

GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 4) throw FitError("fit_gaussian: need at least 4 matching samples");
    const size_t imax = size_t(std::max_element(y.begin(), y.end()) - y.begin());
    const double ymax = y[imax];
    if (!(ymax > 0)) throw FitError("fit_gaussian: no positive samples");
    size_t lo = imax, hi = imax;
    while (lo > 0 && y[lo] > ymax / 2) --lo;
    while (hi + 1 < y.size() && y[hi] > ymax / 2) ++hi;
    double sigma0 = std::max(std::abs(x[hi] - x[lo]) / 2.3548, 1e-6);

    GaussFunctor f{x, y};
    Eigen::VectorXd p(3);
    p << ymax, x[imax], sigma0;
    Eigen::LevenbergMarquardt<GaussFunctor> lm(f);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.parameters.maxfev = 2000;
    lm.minimize(p);

    Eigen::VectorXd resid(Eigen::Index(x.size()));
    f(p, resid);
    double mean = 0;
    for (double v : y) mean += v;
    mean /= double(y.size());
    double tot = 0;
    for (double v : y) tot += (v - mean) * (v - mean);
    GaussianFit g{p[0], p[1], std::abs(p[2]), tot > 0 ? 1 - resid.squaredNorm() / tot : 0.0};
    if (!(g.r2 >= kMinFitR2)) throw FitError("fit_gaussian: R^2 = " + std::to_string(g.r2) + " below 0.9");
    return g;
}

GaussianFit width_fit_theta(const AngularDensity& density) {
    const auto& g = density.grid;
    const size_t np = g.phi.size();
    const double dph = 2 * kPi / double(np);
    std::vector<double> marg(g.theta.size(), 0.0);
    for (size_t i = 0; i < g.theta.size(); ++i) {
        double s = 0;
        for (size_t k = 0; k < np; ++k) s += density.at(i, k);
        marg[i] = s * dph * std::sin(g.theta[i]);
    }
    return fit_gaussian(g.theta, marg);
}

GaussianFit width_fit_chi(const ParticleField& field, const Direction& axis, int nodes) {
    const Eigen::Vector3d n = to_vector(axis);
    const Eigen::Vector3d e1(std::cos(axis.theta) * std::cos(axis.phi), std::cos(axis.theta) * std::sin(axis.phi),
                             -std::sin(axis.theta));
    const Eigen::Vector3d e2 = n.cross(e1);
    std::vector<double> chi(static_cast<size_t>(nodes)), rho(chi.size());
    for (int k = 0; k < nodes; ++k) {
        chi[size_t(k)] = 2 * kPi * k / nodes;
        Direction d = to_direction(std::cos(chi[size_t(k)]) * e1 + std::sin(chi[size_t(k)]) * e2);
        rho[size_t(k)] = field.density(d.theta, d.phi);
    }
    const size_t imax = size_t(std::max_element(rho.begin(), rho.end()) - rho.begin());
    std::vector<std::pair<double, double>> pts;
    for (int k = 0; k < nodes; ++k) pts.emplace_back(wrap_pi(chi[size_t(k)] - chi[imax]), rho[size_t(k)]);
    std::sort(pts.begin(), pts.end());
    std::vector<double> x, y;
    for (auto& [a, b] : pts) {
        x.push_back(a);
        y.push_back(b);
    }
    return fit_gaussian(x, y);
}

WidthReport uncertainty_report(const WavepacketSpec& spec, const AngularGrid& grid) {
    const PacketBlocks blocks = to_blocks(build_j_wavepacket(spec));
    const AngularDensity dens = particle_density(blocks, grid);
    WidthReport r;
    r.d_phi = width_phi(blocks);
    GaussianFit ft = width_fit_theta(dens);
    r.d_theta = ft.sigma;
    r.theta_r2 = ft.r2;
    r.q_lobe = q_lobe_direction(blocks);
    GaussianFit fc = width_fit_chi(ParticleField(blocks), r.q_lobe);
    r.d_chi = fc.sigma;
    r.chi_r2 = fc.r2;
    const double J = modulus(spec.j_center);
    const double th = theta_m(spec.j_center, spec.m_center);
    r.dm_dphi = spec.dm * r.d_phi;
    r.dj_dchi = spec.dj * r.d_chi;
    r.jsin_dtheta_dphi = J * std::sin(th) * r.d_theta * r.d_phi;
    r.flags["dm_dphi"] = spec.dm >= 0.5 ? "equality" : "inequality";
    r.flags["dj_dchi"] = spec.dj >= 2 ? "equality" : "inequality";
    r.flags["jsin_dtheta_dphi"] = spec.dm >= 1 ? "equality" : "inequality";
    return r;
}

RectifiedStats rectified_stats(HalfInt j, HalfInt m, double dm, NormConvention conv) {
    if (!(dm > 0)) throw DomainError("rectified_stats: dm must be positive");
    const double jv = j.value(), mv = m.value();
    const double a = (-jv - mv) / dm, b = (jv - mv) / dm;
    auto g = std_normal_pdf;
    auto P = std_normal_cdf;
    RectifiedStats r;
    r.mu = g(a) - g(b) + a * P(a) + b * P(-b);
    const double mu = r.mu;
    const double s2 = (mu * mu + 1) * (P(b) - P(a)) - (b - 2 * mu) * g(b) + (a - 2 * mu) * g(a) +
                      (a - mu) * (a - mu) * P(a) + (b - mu) * (b - mu) * P(-b);
    r.sigma = std::sqrt(std::max(0.0, s2));
    r.m_bar = mv + mu * dm;
    r.dm_bar = r.sigma * dm;
    const double mod = modulus(j, conv);
    r.theta_bar = mod > 0 ? std::acos(std::clamp(r.m_bar / mod, -1.0, 1.0)) : kPi / 2;
    return r;
}

std::vector<OperatorCheck> vmw_operator_check(HalfInt j, HalfInt m, double h) {
    if (!(h > 1e-4 && h < 0.1)) throw DomainError("vmw_operator_check: h must lie in (1e-4, 0.1)");
    if (j.twice() < 0 || std::abs(m.twice()) > j.twice() || ((j - m).twice() & 1))
        throw DomainError("vmw_operator_check: invalid (j, m)");
    const double J = modulus(j), mv = m.value();
    const double th = std::acos(mv / J), st = std::sin(th), ct = std::cos(th);
    auto f = [&](double phi, double chi) { return std::polar(1.0, mv * phi + J * chi); };
    const double pts[] = {0.3, 1.1, 2.4};

    struct Measured {
        double j2, jz, jzp, jplus, jminus, lower_plus, lower_minus;
    };
    auto measure = [&](double step) {
        Measured worst{0, 0, 0, 0, 0, 0, 0};
        Measured sum{0, 0, 0, 0, 0, 0, 0};
        int count = 0;
        for (double p : pts)
            for (double c : pts) {
                const cd f0 = f(p, c);
                const cd dp = (f(p + step, c) - f(p - step, c)) / (2 * step);
                const cd dc = (f(p, c + step) - f(p, c - step)) / (2 * step);
                const cd dpp = (f(p + step, c) - 2.0 * f0 + f(p - step, c)) / (step * step);
                const cd dcc = (f(p, c + step) - 2.0 * f0 + f(p, c - step)) / (step * step);
                const cd dpc =
                    (f(p + step, c + step) - f(p + step, c - step) - f(p - step, c + step) + f(p - step, c - step)) /
                    (4 * step * step);
                const cd i(0, 1);
                const cd j2 = -(dpp + dcc - 2 * ct * dpc) / (st * st);
                const cd jz = -i * dp;
                const cd jzp = -i * dc;
                const cd bracket_big = ct / st * dp - dc / st;
                const cd jplus = i * std::polar(1.0, p) * bracket_big;
                const cd jminus = i * std::polar(1.0, -p) * bracket_big;
                const cd bracket_small = ct / st * dc - dp / st;
                const cd low_p = -i * std::polar(1.0, c) * bracket_small;
                const cd low_m = -i * std::polar(1.0, -c) * bracket_small;
                sum.j2 += (j2 / f0).real();
                sum.jz += (jz / f0).real();
                sum.jzp += (jzp / f0).real();
                sum.jplus += std::abs(jplus / f0);
                sum.jminus += std::abs(jminus / f0);
                sum.lower_plus += std::abs(low_p / f0);
                sum.lower_minus += std::abs(low_m / f0);
                ++count;
            }
        worst = {sum.j2 / count,     sum.jz / count,         sum.jzp / count,        sum.jplus / count,
                 sum.jminus / count, sum.lower_plus / count, sum.lower_minus / count};
        return worst;
    };
    const Measured a = measure(h), b = measure(h / 2);
    const double raise = std::sqrt(J * J - mv * mv);
    auto make = [](std::string name, double expected, double ma, double mb) {
        OperatorCheck c;
        c.name = std::move(name);
        c.expected = expected;
        c.measured = ma;
        c.error = std::abs(ma - expected);
        c.error_half = std::abs(mb - expected);
        c.ratio = c.error_half > 0 ? c.error / c.error_half : std::numeric_limits<double>::infinity();
        return c;
    };
    return {
        make("J^2", J * J, a.j2, b.j2),
        make("J_Z", mv, a.jz, b.jz),
        make("j_z'", J, a.jzp, b.jzp),
        make("J_+", raise, a.jplus, b.jplus),
        make("j_-/+", 0.0, std::max(a.lower_plus, a.lower_minus), std::max(b.lower_plus, b.lower_minus)),
    };
}

} // namespace vmw
