#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/qnum.hpp"

#include <cmath>
#include <numbers>

using namespace vmw;

TEST_CASE("half-integer parsing accepts fraction, decimal and integer forms") {
    CHECK(HalfInt::parse("7/2").twice() == 7);
    CHECK(HalfInt::parse("3.5").twice() == 7);
    CHECK(HalfInt::parse("3").twice() == 6);
    CHECK(HalfInt::parse("-1/2").twice() == -1);
    CHECK(HalfInt::parse("-0.5").twice() == -1);
    CHECK(HalfInt::parse("2.50").twice() == 5);
    CHECK_THROWS_AS(HalfInt::parse("0.3"), std::invalid_argument);
    CHECK_THROWS_AS(HalfInt::parse("1/3"), std::invalid_argument);
    CHECK_THROWS_AS(HalfInt::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(HalfInt::parse("abc"), std::invalid_argument);
}

TEST_CASE("string form round-trips through parse") {
    for (int64_t t = -41; t <= 41; ++t) {
        const HalfInt h = half(t);
        CHECK(HalfInt::parse(h.str()) == h);
    }
}

TEST_CASE("arithmetic stays exact in doubled units") {
    const HalfInt a = half(3), b = half(5);
    CHECK((a + b).twice() == 8);
    CHECK((a - b).twice() == -2);
    CHECK((-a).twice() == -3);
    CHECK((a + b).is_integer());
    CHECK_FALSE(a.is_integer());
    CHECK((a + b).as_int() == 4);
    CHECK_THROWS_AS(a.as_int(), DomainError);
}

TEST_CASE("parity sign") {
    CHECK(parity_sign(HalfInt(0)) == 1);
    CHECK(parity_sign(HalfInt(3)) == -1);
    CHECK(parity_sign(HalfInt(-2)) == 1);
    CHECK_THROWS_AS(parity_sign(half(1)), DomainError);
}

TEST_CASE("JM validates projection and parity") {
    CHECK_NOTHROW(JM(half(3), half(-1)));
    CHECK_THROWS_AS(JM(HalfInt(1), HalfInt(2)), DomainError);
    CHECK_THROWS_AS(JM(HalfInt(1), half(1)), DomainError);
    CHECK_THROWS_AS(JM(HalfInt(-1), HalfInt(0)), DomainError);
}

TEST_CASE("Euler angles reduce azimuths and reject polar angles outside [0, pi]") {
    const EulerAngles e(-std::numbers::pi / 2, 1.0, 7.0);
    CHECK(e.phi == doctest::Approx(1.5 * std::numbers::pi));
    CHECK(e.chi == doctest::Approx(7.0 - 2 * std::numbers::pi));
    CHECK_THROWS_AS(EulerAngles(0, -0.1, 0), DomainError);
    CHECK_THROWS_AS(EulerAngles(0, 3.2, 0), DomainError);
}

TEST_CASE("modulus conventions and VM polar angle") {
    CHECK(modulus(HalfInt(80)) == 80.5);
    CHECK(modulus(half(1), NormConvention::SqrtJJPlus1) == doctest::Approx(std::sqrt(0.75)));
    CHECK(theta_m(HalfInt(1), HalfInt(0)) == doctest::Approx(std::numbers::pi / 2));
    CHECK(std::cos(theta_m(HalfInt(80), HalfInt(40))) == doctest::Approx(40 / 80.5));
    CHECK(theta_m(half(1), half(1)) == doctest::Approx(std::numbers::pi / 3));
    CHECK_THROWS_AS(theta_m(HalfInt(0), HalfInt(0)), DomainError);
}

TEST_CASE("triangle rule") {
    CHECK(triangle_ok(half(1), half(1), HalfInt(1)));
    CHECK(triangle_ok(half(1), half(1), HalfInt(0)));
    CHECK_FALSE(triangle_ok(half(1), half(1), half(1)));
    CHECK_FALSE(triangle_ok(HalfInt(1), HalfInt(1), HalfInt(3)));
    CHECK(triangle_ok(HalfInt(40), HalfInt(30), HalfInt(10)));
}

TEST_CASE("perpendicular projection is non-negative and vanishes only when |m| = J") {
    for (int64_t tj = 0; tj <= 20; ++tj)
        for (int64_t tm = -tj; tm <= tj; tm += 2) {
            const double l = lambda_perp(half(tj), half(tm));
            CHECK(l >= 0);
            CHECK(l * l + 0.25 * tm * tm == doctest::Approx(std::pow(0.5 * tj + 0.5, 2)));
        }
}

TEST_CASE("reduce_angle maps into [0, 2 pi)") {
    for (double a : {-20.0, -6.3, -1e-17, 0.0, 3.0, 6.283185307179586, 100.0}) {
        const double r = reduce_angle(a);
        CHECK(r >= 0);
        CHECK(r < 2 * std::numbers::pi);
    }
}
