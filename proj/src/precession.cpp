#include "vmw/precession.hpp"

#include "vmw/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vmw {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

Eigen::VectorXcd azimuth_phases(HalfInt j, double phi) {
    const Eigen::Index n = Eigen::Index(j.twice() + 1);
    Eigen::VectorXcd e(n);
    for (Eigen::Index i = 0; i < n; ++i) e[i] = std::polar(1.0, (double(i) - j.value()) * phi);
    return e;
}

} // namespace

Direction resolve_field_axis(const PrecessionConfig& config) {
    if (config.field_axis) return *config.field_axis;
    const RectifiedStats r = rectified_stats(config.spec.j_center, config.spec.m_center, config.spec.dm);
    return {r.theta_bar, 0.0};
}

PacketBlocks to_field_frame(const PacketBlocks& lab, const Direction& axis) {
    PacketBlocks out;
    out.reserve(lab.size());
    for (const auto& b : lab) {
        const Eigen::MatrixXd d = wigner_d_matrix(b.j, axis.theta);
        Eigen::VectorXcd amp = d.transpose().cast<cd>() * azimuth_phases(b.j, axis.phi).cwiseProduct(b.amp);
        out.push_back({b.j, std::move(amp)});
    }
    return out;
}

PacketBlocks from_field_frame(const PacketBlocks& field, const Direction& axis) {
    PacketBlocks out;
    out.reserve(field.size());
    for (const auto& b : field) {
        const Eigen::MatrixXd d = wigner_d_matrix(b.j, axis.theta);
        Eigen::VectorXcd amp = azimuth_phases(b.j, -axis.phi).cwiseProduct(d.cast<cd>() * b.amp);
        out.push_back({b.j, std::move(amp)});
    }
    return out;
}

PacketBlocks evolve_field_frame(const PacketBlocks& field, double omega_t) {
    PacketBlocks out = field;
    for (auto& b : out) b.amp = b.amp.cwiseProduct(azimuth_phases(b.j, -omega_t));
    return out;
}

std::vector<PacketBlocks> evolve(const PrecessionConfig& config) {
    if (!(config.omega_L >= 0)) throw DomainError("precession: omega_L must be non-negative");
    if (!std::is_sorted(config.t_samples.begin(), config.t_samples.end()))
        throw DomainError("precession: t_samples must be sorted ascending");
    const PacketBlocks field = to_field_frame(to_blocks(build_j_wavepacket(config.spec)), resolve_field_axis(config));
    std::vector<PacketBlocks> out;
    out.reserve(config.t_samples.size());
    for (double t : config.t_samples) out.push_back(evolve_field_frame(field, config.omega_L * t));
    return out;
}

Direction field_lobe(const PacketBlocks& field) {
    const QEvaluator q(field);
    constexpr double radius = 0.05;
    constexpr int n = 21;
    double best_v = -1, bx = 0, by = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double x = radius * (2.0 * a / (n - 1) - 1), y = radius * (2.0 * b / (n - 1) - 1);
            const Direction d = to_direction(Eigen::Vector3d(x, y, 1));
            const double v = q(d.theta, d.phi);
            if (v > best_v) {
                best_v = v;
                bx = x;
                by = y;
            }
        }
    double ring_lo = best_v, ring_hi = 0;
    for (int k = 0; k < 36; ++k) {
        const double v = q(radius / 2, 2 * kPi * k / 36);
        ring_lo = std::min(ring_lo, v);
        ring_hi = std::max(ring_hi, v);
    }
    if (ring_hi - ring_lo <= 1e-10 * ring_hi)
        throw TrackingError("field_lobe: Q is azimuthally flat about the field axis");
    const Direction start = to_direction(Eigen::Vector3d(bx, by, 1));
    return maximize_q_near(q, start, radius);
}

namespace {

double lobe_azimuth(const Direction& lobe) {
    const Eigen::Vector3d v = to_vector(lobe);
    if (std::hypot(v.x(), v.y()) < 1e-9) throw TrackingError("j_azimuth: Q lobe sits on the field axis");
    return std::atan2(v.y(), v.x());
}

} // namespace

double j_azimuth(const PacketBlocks& field) { return lobe_azimuth(field_lobe(field)); }

double particle_azimuth(const PacketBlocks& field, int nodes) {
    const ParticleField pf(field);
    std::vector<double> rho(static_cast<size_t>(nodes));
    for (int k = 0; k < nodes; ++k) rho[size_t(k)] = pf.density(kPi / 2, 2 * kPi * k / nodes);
    const auto [lo, hi] = std::minmax_element(rho.begin(), rho.end());
    if (!(*hi > 0) || (*hi - *lo) < 1e-6 * *hi)
        throw TrackingError("particle_azimuth: density is azimuthally flat in the orbital plane");
    const int k = int(hi - rho.begin());
    const double ym = rho[size_t((k + nodes - 1) % nodes)], y0 = *hi, yp = rho[size_t((k + 1) % nodes)];
    const double denom = ym - 2 * y0 + yp;
    const double shift = denom != 0 ? 0.5 * (ym - yp) / denom : 0.0;
    return 2 * kPi * (k + shift) / nodes;
}

std::vector<double> unwrap(std::vector<double> angles) {
    for (size_t i = 1; i < angles.size(); ++i) {
        const double d = angles[i] - angles[i - 1];
        angles[i] -= 2 * kPi * std::round(d / (2 * kPi));
    }
    return angles;
}

RotationTrace track_rotation(const PrecessionConfig& config) {
    const std::vector<PacketBlocks> frames = evolve(config);
    RotationTrace tr;
    tr.times = config.t_samples;
    std::vector<double> ja, pa;
    for (const auto& f : frames) {
        const Direction lobe = field_lobe(f);
        ja.push_back(lobe_azimuth(lobe));
        pa.push_back(particle_azimuth(f));
        tr.norm.push_back(blocks_norm(f));
        tr.d_chi.push_back(width_fit_chi(ParticleField(f), lobe).sigma);
    }
    tr.j_azimuth = unwrap(std::move(ja));
    tr.particle_azimuth = unwrap(std::move(pa));
    return tr;
}

} // namespace vmw
