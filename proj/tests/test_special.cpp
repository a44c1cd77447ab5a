#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vmw/qnum.hpp"
#include "vmw/special.hpp"

#include <cmath>
#include <numbers>

using namespace vmw;

namespace {

struct AiryRef {
    double x, ai, aip, bi, bip;
};

// 30-digit reference values.
const AiryRef kAiryRefs[] = {
    {-30, -0.0879681884568421628, 1.22862060263748513, -0.224446942200566320, -0.483694725827681493},
    {-20, -0.176406127077984690, 0.892862856736471238, -0.200139309322651349, -0.791429033839536479},
    {-10, 0.0402412384864431907, 0.996265044132790056, -0.314679829643838633, 0.119414113399909238},
    {-5.5, 0.0177815412765749756, 0.864197217771398391, -0.367813453915711991, 0.0251115830736309260},
    {-1, 0.535560883292352119, -0.0101605671166452094, 0.103997389496944612, 0.592375626422792351},
    {0, 0.355028053887817239, -0.258819403792806798, 0.614926627446000735, 0.448288357353826358},
    {0.5, 0.231693606480833490, -0.224910532664683893, 0.854277043103155493, 0.544572564140592302},
    {2, 0.0349241304232743791, -0.0530903844336536317, 3.29809499997821471, 4.10068204993288989},
    {6.5, 2.79588234320491359e-06, -7.23193146660179256e-06, 22340.6077183969982, 56062.4958425228607},
    {10, 1.10475325528986859e-10, -3.52063367673892364e-10, 455641153.548225141, 1429236134.48286578},
};

bool close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

} // namespace

TEST_CASE("Airy values against high-precision references") {
    for (const auto& r : kAiryRefs) {
        CAPTURE(r.x);
        const AiryValues a = airy(r.x);
        CHECK(close(a.ai, r.ai, 1e-9));
        CHECK(close(a.aip, r.aip, 1e-9));
        CHECK(close(a.bi, r.bi, 1e-9));
        CHECK(close(a.bip, r.bip, 1e-9));
    }
}

TEST_CASE("series and asymptotic branches agree across the crossover") {
    for (double x : {-7.0, -6.5, 6.0}) {
        CAPTURE(x);
        const AiryValues s = detail::airy_series(x), a = detail::airy_asymptotic(x);
        CHECK(close(s.ai, a.ai, 1e-9));
        CHECK(close(s.bi, a.bi, 1e-9));
        CHECK(close(s.aip, a.aip, 1e-9));
        CHECK(close(s.bip, a.bip, 1e-9));
    }
}

TEST_CASE("Wronskian Ai Bi' - Ai' Bi = 1/pi on the validated domain") {
    for (int i = 0; i <= 400; ++i) {
        const double x = -30 + 40.0 * i / 400;
        const AiryValues a = airy(x);
        const double w = a.ai * a.bip - a.aip * a.bi;
        CAPTURE(x);
        CHECK(std::abs(w - 1 / std::numbers::pi) <= 1e-9 * std::max(1.0, std::abs(a.bi * a.aip)));
    }
}

TEST_CASE("Airy equation y'' = x y holds by central differences") {
    const double h = 1e-3;
    for (double x = -5; x <= 5; x += 0.5) {
        const double ypp = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / (h * h);
        CHECK(ypp == doctest::Approx(x * airy_ai(x)).epsilon(1e-5).scale(1));
    }
}

TEST_CASE("checked Airy rejects arguments outside the domain") {
    CHECK_THROWS_AS(airy(-30.5), DomainError);
    CHECK_THROWS_AS(airy(10.5), DomainError);
    CHECK_NOTHROW(airy_unchecked(-40));
    CHECK(airy_unchecked(50).ai > 0);
}

TEST_CASE("normal pdf and cdf") {
    CHECK(std_normal_cdf(-3) == doctest::Approx(0.00134989803163009453).epsilon(1e-13));
    CHECK(std_normal_cdf(1.5) == doctest::Approx(0.933192798731141934).epsilon(1e-13));
    CHECK(std_normal_pdf(0.7) == doctest::Approx(0.312253933366761267).epsilon(1e-13));
    for (double x = -8; x <= 8; x += 0.25) CHECK(std::abs(std_normal_cdf(x) + std_normal_cdf(-x) - 1) <= 1e-14);
}

TEST_CASE("complex arccos matches the principal branch") {
    using C = std::complex<double>;
    for (double x : {-0.9, -0.2, 0.0, 0.4, 1.0}) CHECK(acos_complex(C(x, 0)).real() == doctest::Approx(std::acos(x)));
    const C big = acos_complex(C(2.0, 0));
    CHECK(big.real() == doctest::Approx(0).scale(1));
    CHECK(std::abs(big.imag()) == doctest::Approx(std::acosh(2.0)));
    const C z(0.3, 0.7);
    CHECK(std::abs(std::cos(acos_complex(z)) - z) < 1e-14);
    CHECK(acosh_real_branch(1.0) == 0.0);
    CHECK(acosh_real_branch(3.0) == doctest::Approx(std::acosh(3.0)));
}
