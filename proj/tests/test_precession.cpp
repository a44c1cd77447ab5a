#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/precession.hpp"

#include <cmath>
#include <numbers>

using namespace vmw;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const PacketBlocks& a, const PacketBlocks& b) {
    double d = 0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, (a[i].amp - b[i].amp).cwiseAbs().maxCoeff());
    return d;
}

PacketBlocks lab_packet() { return to_blocks(build_j_wavepacket({HalfInt(20), HalfInt(10), 1, 3, 5})); }

} // namespace

TEST_CASE("field frame round trip is the identity") {
    const PacketBlocks lab = lab_packet();
    const Direction axis{0.7, 1.3};
    CHECK(max_diff(from_field_frame(to_field_frame(lab, axis), axis), lab) < 1e-12);
    CHECK(blocks_norm(to_field_frame(lab, axis)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("zero time and full periods leave the packet unchanged") {
    const PacketBlocks field = to_field_frame(lab_packet(), {0.9, 0});
    CHECK(max_diff(evolve_field_frame(field, 0), field) == 0);
    CHECK(max_diff(evolve_field_frame(field, 2 * kPi), field) < 1e-10);
    CHECK(max_diff(evolve_field_frame(field, 6 * kPi), field) < 1e-10);
}

TEST_CASE("a quarter period rotates both markers by pi/2") {
    PrecessionConfig cfg;
    cfg.spec = {HalfInt(20), HalfInt(10), 1, 3, 5};
    const PacketBlocks field = to_field_frame(to_blocks(build_j_wavepacket(cfg.spec)), resolve_field_axis(cfg));
    const PacketBlocks later = evolve_field_frame(field, kPi / 2);
    const auto wrap = [](double a) { return std::remainder(a, 2 * kPi); };
    CHECK(std::abs(wrap(j_azimuth(later) - j_azimuth(field) - kPi / 2)) < 1e-3);
    CHECK(std::abs(wrap(particle_azimuth(later) - particle_azimuth(field) - kPi / 2)) < 2 * kPi / 720);
}

TEST_CASE("no field means no motion") {
    PrecessionConfig cfg;
    cfg.spec = {HalfInt(20), HalfInt(10), 1, 3, 5};
    cfg.omega_L = 0;
    cfg.t_samples = {0, 1, 2, 3};
    const RotationTrace tr = track_rotation(cfg);
    for (size_t i = 1; i < tr.times.size(); ++i) {
        CHECK(tr.j_azimuth[i] == doctest::Approx(tr.j_azimuth[0]));
        CHECK(tr.particle_azimuth[i] == doctest::Approx(tr.particle_azimuth[0]));
        CHECK(tr.norm[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("configuration is validated") {
    PrecessionConfig cfg;
    cfg.spec = {HalfInt(20), HalfInt(10), 1, 3, 5};
    cfg.omega_L = -1;
    cfg.t_samples = {0};
    CHECK_THROWS(evolve(cfg));
    cfg.omega_L = 1;
    cfg.t_samples = {1, 0};
    CHECK_THROWS(evolve(cfg));
}

TEST_CASE("default field axis is the rectified direction on phi = 0") {
    PrecessionConfig cfg;
    cfg.spec = {HalfInt(20), HalfInt(10), 1, 3, 5};
    const Direction a = resolve_field_axis(cfg);
    CHECK(a.phi == 0);
    CHECK(a.theta == doctest::Approx(rectified_stats(HalfInt(20), HalfInt(10), 3).theta_bar));
    cfg.field_axis = Direction{0.2, 0.4};
    CHECK(resolve_field_axis(cfg).theta == 0.2);
}

TEST_CASE("unwrap removes 2 pi jumps") {
    const auto u = unwrap({3.0, -3.0, -0.5, 2.9, -3.1});
    for (size_t i = 1; i < u.size(); ++i) CHECK(std::abs(u[i] - u[i - 1]) <= kPi);
    CHECK(u[1] == doctest::Approx(-3.0 + 2 * kPi));
}

TEST_CASE("an axially symmetric density cannot be tracked") {
    PacketBlock b{HalfInt(4), Eigen::VectorXcd::Zero(9)};
    b.amp(4 + 2) = 1;
    CHECK_THROWS_AS(particle_azimuth({b}), TrackingError);
    CHECK_THROWS_AS(j_azimuth({b}), TrackingError);
}
