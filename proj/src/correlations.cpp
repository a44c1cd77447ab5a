#include "vmw/correlations.hpp"

#include "vmw/exact.hpp"
#include "vmw/special.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace vmw {

namespace {

void validate(const CorrelationInput& in) {
    if (!triangle_ok(in.j1, in.j2, in.j3)) throw DomainError("correlation: triangle rule violated");
    if (std::abs(in.m3.twice()) > in.j3.twice() || ((in.j3 - in.m3).twice() & 1))
        throw DomainError("correlation: invalid m3");
}

double jj(HalfInt j, NormConvention conv) {
    double v = modulus(j, conv);
    return v * v;
}

template <class F> void for_each_m1(const CorrelationInput& in, F&& f) {
    for (int64_t t = -in.j1.twice(); t <= in.j1.twice(); t += 2) {
        HalfInt m1 = half(t), m2 = in.m3 - m1;
        if (std::abs(m2.twice()) > in.j2.twice()) continue;
        double c = cg_exact(in.j1, m1, in.j2, m2, in.j3, in.m3);
        f(m1, m2, c * c);
    }
}

} // namespace

CosPhi12 cos_phi12(const CorrelationInput& in, HalfInt m1, NormConvention conv) {
    validate(in);
    const HalfInt m2 = in.m3 - m1;
    const double p1 = lambda_perp(in.j1, m1, conv), p2 = lambda_perp(in.j2, m2, conv);
    if (p1 == 0 || p2 == 0) throw DomainError("cos_phi12: vanishing perpendicular projection");
    const double num = jj(in.j3, conv) - jj(in.j1, conv) - jj(in.j2, conv) - 2 * m1.value() * m2.value();
    CosPhi12 r;
    r.value = num / (2 * p1 * p2);
    r.out_of_range = std::abs(r.value) > 1 + 1e-12;
    return r;
}

double mstate_correlation_vm(const CorrelationInput& in, int quadrature_n) {
    validate(in);
    if (quadrature_n < 64) throw DomainError("mstate_correlation_vm: quadrature_n must be >= 64");
    using C = std::complex<double>;
    double integral = 0, reduced = 0;
    for_each_m1(in, [&](HalfInt m1, HalfInt m2, double w) {
        const double p1 = lambda_perp(in.j1, m1, NormConvention::SqrtJJPlus1);
        const double p2 = lambda_perp(in.j2, m2, NormConvention::SqrtJJPlus1);
        if (w == 0 || p1 == 0 || p2 == 0) return;
        const double cphi = cos_phi12(in, m1).value;
        const C phi2 = -acos_complex(C(cphi, 0));
        C avg = 0;
        for (int k = 0; k < quadrature_n; ++k) {
            const double Phi = 2 * std::numbers::pi * k / quadrature_n;
            avg += p1 * std::cos(Phi) * p2 * std::cos(phi2 + Phi);
        }
        integral += w * (avg / double(quadrature_n)).real();
        reduced += 0.5 * w * p1 * p2 * cphi;
    });
    if (std::abs(integral - reduced) > 1e-10)
        throw std::logic_error("mstate_correlation_vm: quadrature disagrees with analytic reduction");
    return integral;
}

double mstate_correlation_closed(const CorrelationInput& in) {
    validate(in);
    const double a = jj(in.j3, NormConvention::SqrtJJPlus1) - jj(in.j1, NormConvention::SqrtJJPlus1) -
                     jj(in.j2, NormConvention::SqrtJJPlus1);
    double sum = 0;
    for_each_m1(in, [&](HalfInt m1, HalfInt m2, double w) { sum += w * (a - 2 * m1.value() * m2.value()); });
    return sum / 4;
}

double g_factor(HalfInt S, HalfInt M) {
    if (S.twice() <= 0) throw DomainError("g_factor: S must be positive");
    if (std::abs(M.twice()) > S.twice() || ((S - M).twice() & 1)) throw DomainError("g_factor: invalid M");
    if (M.twice() == 0) throw DomainError("g_factor: undefined at M = 0");
    const double s = S.value(), m = M.value();
    const double cos_theta = m / s;
    return (m + s * cos_theta) / m;
}

} // namespace vmw
