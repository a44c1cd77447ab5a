#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/semicg.hpp"

#include <cmath>
#include <numbers>

using namespace vmw;

TEST_CASE("beta is four times the triangle area, imaginary when no triangle exists") {
    const cplx b = beta_area(3, 4, 5);
    CHECK(b.imag() == 0);
    CHECK(b.real() == doctest::Approx(4 * 6));
    const cplx f = beta_area(1, 1, 5);
    CHECK(f.real() == 0);
    CHECK(f.imag() > 0);
    CHECK(beta_area(1, 2, 3) == cplx(0, 0));
    CHECK_THROWS_AS(beta_area(-1, 2, 2), DomainError);
}

TEST_CASE("Wigner average variants differ by (2 j3 + 2) / (2 j3 + 1)") {
    const double a = cg_sq_avg(HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(45), SqAvgVariant::JPlusOne);
    const double b = cg_sq_avg(HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(45), SqAvgVariant::TwoJPlusOneHalf);
    CHECK(a / b == doctest::Approx(92.0 / 91.0));
    CHECK_THROWS_AS(cg_sq_avg(HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(5)), DomainError);
}

TEST_CASE("turning points bracket the allowed region") {
    const auto [lo, hi] = turning_points(HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15));
    CHECK(lo < hi);
    for (int j3 = 11; j3 < 70; ++j3) {
        const double v = j3;
        if (v < lo + 1 || v > hi - 1) continue;
        const CouplingGeometry g = coupling_geometry({HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(j3), HalfInt(-5)});
        CHECK(g.beta.imag() == 0);
        CHECK(g.beta.real() > 0);
    }
}

TEST_CASE("allowed-region closed form tracks the exact coefficients on the 40/30 sweep") {
    const auto [lo, hi] = turning_points(HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15));
    int checked = 0;
    for (int j3 = 10; j3 <= 70; ++j3) {
        if (j3 - lo < 5 || hi - j3 < 5) continue;
        const CGKey k{HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(j3), HalfInt(-5)};
        const CouplingGeometry g = coupling_geometry(k);
        REQUIRE(classify_region(g) == Region::Allowed);
        CHECK(std::abs(cg_allowed(g, HalfInt(j3)) - cg_exact(k)) < 0.05);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("uniform WKB form matches exact values through the turning points") {
    double worst = 0;
    for (int j3 = 10; j3 <= 70; ++j3) {
        const CGKey k{HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(j3), HalfInt(-5)};
        worst = std::max(worst, std::abs(cg_wkb(k) - cg_exact(k)));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("WKB handles half-integer j3 through the symmetry relations") {
    const CGKey k{HalfInt(4), HalfInt(1), half(7), half(1), half(3), half(3)};
    CHECK(cg_wkb(k) == doctest::Approx(cg_exact(k)).epsilon(0.03));
    const CGKey k2{half(5), half(1), HalfInt(2), HalfInt(-1), half(3), half(-1)};
    CHECK(std::abs(cg_wkb(k2) - cg_exact(k2)) < 0.05);
}

TEST_CASE("forbidden region is exponentially small and sign-consistent") {
    const CGKey k{HalfInt(40), HalfInt(10), HalfInt(30), HalfInt(-15), HalfInt(12), HalfInt(-5)};
    const CouplingGeometry g = coupling_geometry(k);
    REQUIRE(classify_region(g) == Region::Forbidden);
    CHECK(std::abs(cg_forbidden(g, HalfInt(12)) - cg_exact(k)) < 0.05);
    CHECK_THROWS_AS(cg_allowed(g, HalfInt(12)), DomainError);
}

TEST_CASE("dispatcher returns zero outside the selection rules") {
    CHECK(cg_semiclassical({HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1), HalfInt(1)}) == 0.0);
    CHECK(cg_wkb({HalfInt(1), HalfInt(0), HalfInt(1), HalfInt(0), HalfInt(5), HalfInt(0)}) == 0.0);
}

TEST_CASE("stretched coupling stays close to one") {
    CHECK(cg_semiclassical({HalfInt(2), HalfInt(2), HalfInt(1), HalfInt(1), HalfInt(3), HalfInt(3)}) ==
          doctest::Approx(1.0).epsilon(0.2));
}
