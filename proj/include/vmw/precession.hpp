#pragma once

#include "vmw/wavepacket.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace vmw {

struct PrecessionConfig {
    WavepacketSpec spec;
    double omega_L = 1;
    std::vector<double> t_samples;
    /// Defaults to the rectified VM direction (theta_bar_m, 0).
    std::optional<Direction> field_axis;
};

class TrackingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Direction resolve_field_axis(const PrecessionConfig& config);

/// b = d(theta_B)^T diag(e^{i m phi_B}) a, block by block.
PacketBlocks to_field_frame(const PacketBlocks& lab, const Direction& axis);
PacketBlocks from_field_frame(const PacketBlocks& field, const Direction& axis);

/// Multiplies field-frame amplitudes by exp(-i m_B omega t).
PacketBlocks evolve_field_frame(const PacketBlocks& field, double omega_t);

/// Field-frame packets, one per t sample.
std::vector<PacketBlocks> evolve(const PrecessionConfig& config);

struct RotationTrace {
    std::vector<double> times;
    std::vector<double> j_azimuth;
    std::vector<double> particle_azimuth;
    std::vector<double> norm;    ///< packet norm per sample
    std::vector<double> d_chi;   ///< fitted chi width per sample
};

/// Q maximum within 0.05 rad of the field pole; TrackingError when Q has no azimuthal structure there.
Direction field_lobe(const PacketBlocks& field);
/// Azimuth of the Q maximum near the field pole, in field-frame coordinates.
double j_azimuth(const PacketBlocks& field);
/// Azimuth of the particle-density maximum on the circle theta_B = pi/2.
double particle_azimuth(const PacketBlocks& field, int nodes = 720);

/// Removes 2 pi jumps so consecutive samples differ by at most pi.
std::vector<double> unwrap(std::vector<double> angles);

RotationTrace track_rotation(const PrecessionConfig& config);

} // namespace vmw
