#pragma once

#include <complex>

namespace vmw {

struct RealInterval {
    double lo, hi;
};

/// Domain on which the Airy evaluations are validated to 1e-9.
inline constexpr RealInterval kAiryDomain{-30.0, 10.0};

/// Maclaurin series on [kAirySeriesLow, kAirySeriesHigh], asymptotic expansions outside.
inline constexpr double kAirySeriesLow = -7.0;
inline constexpr double kAirySeriesHigh = 6.0;

struct AiryValues {
    double ai, aip, bi, bip;
};

AiryValues airy(double x);
/// Same evaluation without the domain check; the asymptotic branches stay
/// accurate for large |x| until Bi overflows near x = 104.
AiryValues airy_unchecked(double x);
double airy_ai(double x);
double airy_bi(double x);

namespace detail {
AiryValues airy_series(double x);
AiryValues airy_asymptotic(double x);
} // namespace detail

double std_normal_pdf(double x);
double std_normal_cdf(double x);

/// Principal acos via -i log(z + i sqrt(1 - z^2)); on the real axis outside
/// [-1, 1] the imaginary part of 1 - z^2 is taken as +0.
std::complex<double> acos_complex(std::complex<double> z);
double acosh_real_branch(double x);

} // namespace vmw
