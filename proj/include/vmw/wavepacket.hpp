#pragma once

#include "vmw/qnum.hpp"

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vmw {

struct WavepacketSpec {
    HalfInt j_center, m_center;
    double dj = 1, dm = 1;
    int j_cut = 5; ///< window half-width in units of dj (and dm)
};

struct PacketTerm {
    HalfInt j, m;
    double weight = 0;
};

struct JWavepacket {
    std::vector<PacketTerm> terms;
    double norm = 0; ///< sqrt(sum of weight^2)
};

/// Gaussian weights in j' and m', clamped to |m'| <= j', j' >= 0.
JWavepacket build_j_wavepacket(const WavepacketSpec& spec);

/// Normalized amplitudes of one j' block, indexed m + j for m = -j..j.
struct PacketBlock {
    HalfInt j;
    Eigen::VectorXcd amp;
};
using PacketBlocks = std::vector<PacketBlock>;

PacketBlocks to_blocks(const JWavepacket& packet);
double blocks_norm(const PacketBlocks& blocks);

struct Direction {
    double theta = 0, phi = 0;
};
Eigen::Vector3d to_vector(const Direction& d);
Direction to_direction(const Eigen::Vector3d& v);

/// theta_i = (i + 1/2) pi / n_theta, phi_k = 2 pi k / n_phi.
struct AngularGrid {
    std::vector<double> theta, phi;
    std::vector<double> weight; ///< sin(theta_i) dtheta dphi, per theta row
};
AngularGrid make_grid(int n_theta, int n_phi);
inline constexpr int kDefaultGridTheta = 181;
inline constexpr int kDefaultGridPhi = 360;
/// Honors VMW_GRID_THETA / VMW_GRID_PHI.
AngularGrid default_grid();

struct AngularDensity {
    AngularGrid grid;
    std::vector<double> values; ///< row-major, theta outer
    double raw_integral = 0;    ///< quadrature integral before normalization

    double at(size_t i, size_t k) const { return values[i * grid.phi.size() + k]; }
    double integral() const;
};

/// Orthonormal Y_lm (Condon-Shortley phase) via the normalized associated-Legendre recurrence.
std::complex<double> spherical_harmonic(int l, int m, double theta, double phi);

/// Evaluates sum A w Y_{j'm'} at arbitrary directions; integer-j blocks only.
class ParticleField {
public:
    explicit ParticleField(const PacketBlocks& blocks);
    std::complex<double> amplitude(double theta, double phi) const;
    double density(double theta, double phi) const { return std::norm(amplitude(theta, phi)); }
    /// Per-m coefficients sum_l a_lm Pbar_lm(cos theta).
    std::vector<std::pair<int, std::complex<double>>> row_coefficients(double theta) const;

private:
    int lmax_ = 0, mmax_ = 0;
    std::map<int, std::vector<std::complex<double>>> coeff_; // m -> a_lm indexed by l
};

AngularDensity particle_density(const PacketBlocks& blocks, const AngularGrid& grid);

/// Stretched-state population summed over j' blocks.
class QEvaluator {
public:
    explicit QEvaluator(const PacketBlocks& blocks);
    double operator()(double theta, double phi) const;

private:
    struct Block {
        int64_t twice_j;
        int first; ///< index of the first nonzero amplitude
        std::vector<std::complex<double>> amp;
        std::vector<double> log_binom;
    };
    std::vector<Block> blocks_;
};

AngularDensity q_distribution(const PacketBlocks& blocks, const AngularGrid& grid);

/// Q from the polarization-moment expansion; single-j packets only.
double q_from_moments(const PacketBlock& block, double theta, double phi);

/// Global maximum of Q: coarse grid search followed by local refinement.
Direction q_lobe_direction(const PacketBlocks& blocks);
/// Local maximum of Q in the tangent plane of start, within radius.
Direction maximize_q_near(const QEvaluator& q, const Direction& start, double radius);
/// Polar angle of the Q maximum on the phi = 0 meridian.
double q_lobe_polar_angle(const PacketBlocks& blocks);

/// Normal of the plane the density concentrates in (least second-moment axis).
Direction density_plane_normal(const AngularDensity& density);

/// Angle-operator spread with the 2 pi window centered on the mean azimuth.
double width_phi(const PacketBlocks& blocks);

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GaussianFit {
    double amplitude = 0, center = 0, sigma = 0, r2 = 0;
};
inline constexpr double kMinFitR2 = 0.9;

/// Least-squares fit of a exp(-(x - x0)^2 / (2 sigma^2)); FitError when R^2 < kMinFitR2.
GaussianFit fit_gaussian(const std::vector<double>& x, const std::vector<double>& y);

enum class WidthAxis { Theta, ChiGreatCircle };

/// Theta marginal of the density (sin theta Jacobian included).
GaussianFit width_fit_theta(const AngularDensity& density);
/// Density sampled on the great circle perpendicular to axis.
GaussianFit width_fit_chi(const ParticleField& field, const Direction& axis, int nodes = 720);

struct WidthReport {
    double d_phi = 0, d_theta = 0, d_chi = 0;
    double dm_dphi = 0, dj_dchi = 0, jsin_dtheta_dphi = 0;
    double theta_r2 = 0, chi_r2 = 0;
    Direction q_lobe;
    /// "equality" when the width is above the regime threshold, "inequality" otherwise.
    std::map<std::string, std::string> flags;
};

WidthReport uncertainty_report(const WavepacketSpec& spec, const AngularGrid& grid);

struct RectifiedStats {
    double mu = 0, sigma = 1;
    double m_bar = 0, dm_bar = 0, theta_bar = 0;
};

RectifiedStats rectified_stats(HalfInt j, HalfInt m, double dm, NormConvention conv = NormConvention::JPlusHalf);

struct OperatorCheck {
    std::string name;
    double expected = 0;
    double measured = 0;
    double error = 0;      ///< at step h
    double error_half = 0; ///< at step h / 2
    double ratio = 0;      ///< error / error_half
};

/// Applies the reduced operators at theta = theta_m to exp(i(m phi + J chi)) by central differences.
std::vector<OperatorCheck> vmw_operator_check(HalfInt j, HalfInt m, double h);

} // namespace vmw
