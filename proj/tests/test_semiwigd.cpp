#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/exact.hpp"
#include "vmw/semiwigd.hpp"

#include <cmath>
#include <numbers>

using namespace vmw;

constexpr double kPi = std::numbers::pi;

TEST_CASE("classifier sign separates oscillatory and damped regions") {
    CHECK(r_classifier({HalfInt(10), HalfInt(0), HalfInt(0), kPi / 2}) > 0);
    CHECK(r_classifier({HalfInt(10), HalfInt(10), HalfInt(-10), 0.3}) < 0);
}

TEST_CASE("canonical wedge mapping preserves the exact value") {
    for (int tj = 1; tj <= 12; ++tj)
        for (int tmp = -tj; tmp <= tj; tmp += 2)
            for (int tm = -tj; tm <= tj; tm += 2)
                for (double th : {0.2, 1.0, 1.9, 2.8}) {
                    const WigdQuery q{half(tj), half(tmp), half(tm), th};
                    const WigdCanonical c = wigd_symmetry(q);
                    CHECK(c.query.theta <= kPi / 2 + 1e-15);
                    CHECK(c.query.m.twice() >= 0);
                    CHECK(std::abs(c.query.mp.twice()) <= c.query.m.twice());
                    CHECK(std::abs(wigner_d_exact(q.j, q.mp, q.m, th) -
                                   c.sign * wigner_d_exact(c.query.j, c.query.mp, c.query.m, c.query.theta)) < 1e-12);
                }
}

TEST_CASE("documented swap example") {
    const WigdCanonical c = wigd_symmetry({HalfInt(3), HalfInt(2), HalfInt(1), 1.0});
    CHECK(c.query.mp == HalfInt(1));
    CHECK(c.query.m == HalfInt(2));
    CHECK(c.sign == -1);
}

TEST_CASE("uniform form within 0.05 of exact for j <= 10") {
    double worst = 0;
    for (int tj = 1; tj <= 20; ++tj)
        for (int tmp = -tj; tmp <= tj; tmp += 2)
            for (int tm = -tj; tm <= tj; tm += 2)
                for (int k = 1; k <= 19; ++k) {
                    const WigdQuery q{half(tj), half(tmp), half(tm), kPi * k / 20};
                    worst = std::max(worst, std::abs(wigd_wkb(q) - wigner_d_exact(q.j, q.mp, q.m, q.theta)));
                }
    CHECK(worst <= 0.05);
}

TEST_CASE("row normalization survives approximately at theta = pi/3") {
    for (int j : {5, 8, 10}) {
        for (int m = -j; m <= j; ++m) {
            double s = 0;
            for (int mp = -j; mp <= j; ++mp) {
                const double v = wigd_wkb({HalfInt(j), HalfInt(mp), HalfInt(m), kPi / 3});
                s += v * v;
            }
            CAPTURE(j);
            CAPTURE(m);
            CHECK(s >= 0.9);
            CHECK(s <= 1.1);
        }
    }
}

TEST_CASE("asymptotic form matches well inside the oscillatory region") {
    const WigdQuery q{HalfInt(30), HalfInt(3), HalfInt(5), 1.2};
    REQUIRE(r_classifier(q) > 30);
    CHECK(std::abs(wigd_asymptotic(q) - wigner_d_exact(q.j, q.mp, q.m, q.theta)) < 0.01);
}

TEST_CASE("asymptotic form rejects exact turning points and endpoints") {
    CHECK_THROWS_AS(wigd_phase({HalfInt(3), HalfInt(1), HalfInt(2), 0.0}), DomainError);
    CHECK_THROWS_AS(wigd_phase({HalfInt(3), HalfInt(1), HalfInt(4), 1.0}), DomainError);
}

TEST_CASE("Airy argument is negative in the allowed region and positive outside") {
    const WigdQuery allowed{HalfInt(10), HalfInt(1), HalfInt(2), 1.2};
    const WigdQuery forbidden{HalfInt(10), HalfInt(-8), HalfInt(9), 0.3};
    REQUIRE(r_classifier(allowed) > 0);
    REQUIRE(r_classifier(forbidden) < 0);
    CHECK(wigd_airy_argument(wigd_symmetry(allowed).query) < 0);
    CHECK(wigd_airy_argument(wigd_symmetry(forbidden).query) > 0);
}

TEST_CASE("limit relation converges to the exact d at the rounded angle") {
    double prev = 1;
    for (int j2 : {50, 100, 200, 400}) {
        const CgLimitResult r = wigd_from_cg_limit(HalfInt(1), HalfInt(0), HalfInt(0), kPi / 3, HalfInt(j2));
        const double err = std::abs(r.value - std::cos(r.theta_eff));
        CHECK(err < prev);
        prev = err;
    }
    double prev_half = 1;
    for (int j2 : {50, 100, 200, 400}) {
        const CgLimitResult r = wigd_from_cg_limit(half(1), half(1), half(1), 1.0, HalfInt(j2));
        const double err = std::abs(r.value - std::cos(r.theta_eff / 2));
        CHECK(err < prev_half);
        prev_half = err;
    }
    const CgLimitResult r = wigd_from_cg_limit(HalfInt(2), HalfInt(1), HalfInt(-1), 1.3, HalfInt(400));
    CHECK(r.value == doctest::Approx(wigner_d_exact(HalfInt(2), HalfInt(1), HalfInt(-1), r.theta_eff)).epsilon(0.02));
}

TEST_CASE("limit relation at theta = 0 is the stretched decoupling") {
    double prev = 0;
    for (int j2 : {25, 100, 400}) {
        const CgLimitResult r = wigd_from_cg_limit(HalfInt(2), HalfInt(1), HalfInt(1), 0.0, HalfInt(j2));
        CHECK(r.m2 == HalfInt(j2));
        CHECK(r.theta_eff == 0);
        CHECK(std::abs(r.value - 1) < 1.0 / j2);
        CHECK(r.value > prev);
        prev = r.value;
    }
}
