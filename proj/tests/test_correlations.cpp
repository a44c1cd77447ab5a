#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/correlations.hpp"
#include "vmw/exact.hpp"

#include <cmath>

using namespace vmw;

TEST_CASE("cos phi12 follows the SqrtJJPlus1 perpendicular projections") {
    const CorrelationInput triplet{half(1), half(1), HalfInt(1), HalfInt(0)};
    const CosPhi12 c = cos_phi12(triplet, half(1));
    CHECK(c.value == doctest::Approx(1.0));
    CHECK_FALSE(c.out_of_range);
    const CosPhi12 s = cos_phi12({half(1), half(1), HalfInt(0), HalfInt(0)}, half(1));
    CHECK(s.value == doctest::Approx(-1.0));
    CHECK(cos_phi12(triplet, half(1), NormConvention::JPlusHalf).value == doctest::Approx(0.5));
    for (int t = -4; t <= 4; t += 2) {
        const CosPhi12 q = cos_phi12({HalfInt(2), HalfInt(3), HalfInt(4), HalfInt(0)}, half(t));
        CHECK(q.out_of_range == (std::abs(q.value) > 1));
    }
    CHECK_THROWS_AS(cos_phi12({HalfInt(0), HalfInt(1), HalfInt(1), HalfInt(0)}, HalfInt(0)), DomainError);
}

TEST_CASE("two spin-1/2 correlations") {
    CHECK(mstate_correlation_vm({half(1), half(1), HalfInt(1), HalfInt(0)}) == doctest::Approx(0.25));
    CHECK(mstate_correlation_vm({half(1), half(1), HalfInt(0), HalfInt(0)}) == doctest::Approx(-0.25));
    CHECK(mstate_correlation_vm({half(1), half(1), HalfInt(1), HalfInt(1)}) == doctest::Approx(0).scale(1));
    CHECK(mstate_correlation_closed({half(1), half(1), HalfInt(1), HalfInt(0)}) == doctest::Approx(0.25));
    CHECK(mstate_correlation_closed({half(1), half(1), HalfInt(0), HalfInt(0)}) == doctest::Approx(-0.25));
}

TEST_CASE("three-way agreement and XX = YY") {
    for (int t1 = 1; t1 <= 6; ++t1)
        for (int t2 = 1; t2 <= 6; ++t2)
            for (int t3 = std::abs(t1 - t2); t3 <= t1 + t2; t3 += 2)
                for (int tm3 = -t3; tm3 <= t3; tm3 += 2) {
                    const CorrelationInput in{half(t1), half(t2), half(t3), half(tm3)};
                    const double vm = mstate_correlation_vm(in), closed = mstate_correlation_closed(in);
                    const double xx = pairwise_xx_expectation(in.j1, in.j2, in.j3, in.m3);
                    CHECK(std::abs(vm - closed) < 1e-10);
                    CHECK(std::abs(vm - xx) < 1e-10);
                    CHECK(std::abs(xx - pairwise_expectation(in.j1, in.j2, in.j3, in.m3, Axis::Y)) < 1e-12);
                }
}

TEST_CASE("stretched states have a one-term closed form") {
    for (int t1 = 1; t1 <= 6; ++t1)
        for (int t2 = 1; t2 <= 6; ++t2) {
            const double j1 = 0.5 * t1, j2 = 0.5 * t2, j3 = j1 + j2;
            const double want = (j3 * (j3 + 1) - j1 * (j1 + 1) - j2 * (j2 + 1) - 2 * j1 * j2) / 4;
            CHECK(mstate_correlation_closed({half(t1), half(t2), half(t1 + t2), half(t1 + t2)}) == doctest::Approx(want).scale(1));
        }
}

TEST_CASE("XX + YY + ZZ sums to j1.j2 in each multiplet") {
    for (int t1 = 1; t1 <= 6; ++t1)
        for (int t2 = 1; t2 <= 6; ++t2)
            for (int t3 = std::abs(t1 - t2); t3 <= t1 + t2; t3 += 2)
                for (int tm3 = -t3; tm3 <= t3; tm3 += 2) {
                    const HalfInt j1 = half(t1), j2 = half(t2), j3 = half(t3), m3 = half(tm3);
                    const double sum = pairwise_expectation(j1, j2, j3, m3, Axis::X) +
                                       pairwise_expectation(j1, j2, j3, m3, Axis::Y) +
                                       pairwise_expectation(j1, j2, j3, m3, Axis::Z);
                    const double a = j1.value(), b = j2.value(), c = j3.value();
                    CHECK(std::abs(sum - (c * (c + 1) - a * (a + 1) - b * (b + 1)) / 2) < 1e-10);
                }
}

TEST_CASE("quadrature order must be at least 64") {
    CHECK_THROWS(mstate_correlation_vm({half(1), half(1), HalfInt(1), HalfInt(0)}, 32));
}

TEST_CASE("g factor is exactly 2") {
    for (int ts = 1; ts <= 20; ++ts)
        for (int tm = -ts; tm <= ts; tm += 2) {
            if (tm == 0) continue;
            CHECK(g_factor(half(ts), half(tm)) == 2.0);
        }
    CHECK(g_factor(half(1), half(1)) == 2.0);
    CHECK(g_factor(HalfInt(3), HalfInt(-2)) == 2.0);
    CHECK_THROWS_AS(g_factor(HalfInt(1), HalfInt(0)), DomainError);
    CHECK_THROWS_AS(g_factor(HalfInt(0), HalfInt(0)), DomainError);
    CHECK_THROWS_AS(g_factor(HalfInt(1), HalfInt(2)), DomainError);
}
