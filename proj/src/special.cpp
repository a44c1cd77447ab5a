#include "vmw/special.hpp"

#include "vmw/qnum.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vmw {

namespace {

constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAip0 = 0.258819403792806798405183560189203963L; // -Ai'(0)
constexpr long double kSqrt3 = 1.732050807568877293527446341505872367L;

// u_k of the Airy asymptotic series and v_k = -(6k+1)/(6k-1) u_k of its derivative.
struct AsymCoefficients {
    static constexpr int N = 40;
    std::array<double, N> u{}, v{};
    AsymCoefficients() {
        u[0] = 1;
        v[0] = 1;
        for (int k = 1; k < N; ++k) {
            u[k] = u[k - 1] * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
            v[k] = -(6.0 * k + 1) / (6.0 * k - 1) * u[k];
        }
    }
};

const AsymCoefficients& coeffs() {
    static const AsymCoefficients c;
    return c;
}

// Sums c[k] / z^k from k = first in strides of step, stopping at the smallest term.
double truncated_sum(const std::array<double, AsymCoefficients::N>& c, double z, int first, int step, bool alternate) {
    double sum = 0, prev = INFINITY;
    double sign = 1;
    for (int k = first; k < AsymCoefficients::N; k += step) {
        double t = c[k] / std::pow(z, k);
        if (std::abs(t) >= prev) break;
        sum += sign * t;
        prev = std::abs(t);
        if (alternate) sign = -sign;
    }
    return sum;
}

} // namespace

namespace detail {

AiryValues airy_series(double xd) {
    const long double x = xd, x3 = x * x * x;
    long double f = 1, g = x, fp = 0.5L * x * x, gp = 1;
    long double tf = 1, tg = x, tfp = fp, tgp = 1;
    for (int k = 1; k < 200; ++k) {
        tf *= x3 / ((3.0L * k) * (3.0L * k - 1));
        tg *= x3 / ((3.0L * k) * (3.0L * k + 1));
        tgp *= x3 / ((3.0L * k) * (3.0L * k - 2));
        tfp *= x3 / ((3.0L * k + 2) * (3.0L * k));
        f += tf;
        g += tg;
        fp += tfp;
        gp += tgp;
        long double mag = std::fabs(tf) + std::fabs(tg) + std::fabs(tfp) + std::fabs(tgp);
        if (mag < 1e-22L * (std::fabs(f) + std::fabs(g) + 1)) break;
    }
    AiryValues r;
    r.ai = double(kAi0 * f - kAip0 * g);
    r.bi = double(kSqrt3 * (kAi0 * f + kAip0 * g));
    r.aip = double(kAi0 * fp - kAip0 * gp);
    r.bip = double(kSqrt3 * (kAi0 * fp + kAip0 * gp));
    return r;
}

AiryValues airy_asymptotic(double x) {
    const auto& c = coeffs();
    const double sqpi = std::sqrt(std::numbers::pi);
    AiryValues r;
    if (x > 0) {
        double z = 2.0 / 3.0 * x * std::sqrt(x);
        double q = std::pow(x, 0.25);
        double ea = std::exp(-z), eb = std::exp(z);
        r.ai = ea / (2 * sqpi * q) * truncated_sum(c.u, z, 0, 1, true);
        r.aip = -q * ea / (2 * sqpi) * truncated_sum(c.v, z, 0, 1, true);
        r.bi = eb / (sqpi * q) * truncated_sum(c.u, z, 0, 1, false);
        r.bip = q * eb / sqpi * truncated_sum(c.v, z, 0, 1, false);
        return r;
    }
    double y = -x;
    double z = 2.0 / 3.0 * y * std::sqrt(y);
    double q = std::pow(y, 0.25);
    double P = truncated_sum(c.u, z, 0, 2, true);
    double Q = truncated_sum(c.u, z, 1, 2, true);
    double R = truncated_sum(c.v, z, 0, 2, true);
    double S = truncated_sum(c.v, z, 1, 2, true);
    double s = std::sin(z + std::numbers::pi / 4), co = std::cos(z + std::numbers::pi / 4);
    r.ai = (s * P - co * Q) / (sqpi * q);
    r.bi = (co * P + s * Q) / (sqpi * q);
    r.aip = -q / sqpi * (co * R + s * S);
    r.bip = q / sqpi * (s * R - co * S);
    return r;
}

} // namespace detail

AiryValues airy(double x) {
    if (!(x >= kAiryDomain.lo && x <= kAiryDomain.hi))
        throw DomainError("Airy argument outside validated domain [-30, 10]: " + std::to_string(x));
    return airy_unchecked(x);
}

AiryValues airy_unchecked(double x) {
    return (x >= kAirySeriesLow && x <= kAirySeriesHigh) ? detail::airy_series(x) : detail::airy_asymptotic(x);
}

double airy_ai(double x) { return airy(x).ai; }
double airy_bi(double x) { return airy(x).bi; }

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi);
}

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

std::complex<double> acos_complex(std::complex<double> z) {
    using C = std::complex<double>;
    C w = 1.0 - z * z;
    if (w.imag() == 0) w = C(w.real(), 0.0);
    const C i(0, 1);
    return -i * std::log(z + i * std::sqrt(w));
}

double acosh_real_branch(double x) {
    if (x < 1 && x >= 1 - 1e-12) x = 1;
    if (x < 1) throw DomainError("acosh argument below 1");
    return std::acosh(x);
}

} // namespace vmw
