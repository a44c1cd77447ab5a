#include "vmw/semiwigd.hpp"

#include "vmw/exact.hpp"
#include "vmw/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vmw {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const WigdQuery& q) {
    if (q.j.twice() < 0 || std::abs(q.mp.twice()) > q.j.twice() || std::abs(q.m.twice()) > q.j.twice() ||
        ((q.j - q.mp).twice() & 1) || ((q.j - q.m).twice() & 1))
        throw DomainError("wigd: invalid (j, m', m)");
    if (!(q.theta >= 0 && q.theta <= kPi)) throw DomainError("wigd: theta outside [0, pi]");
}

double acosh_or_zero(double x) { return std::acosh(std::max(x, 1.0)); }

// Hyperbolic imaginary part of the phase in the forbidden region.
double phase_imag_forbidden(double J, double mp, double m, double th) {
    const double s = std::sin(th), c = std::cos(th);
    const double rp = std::sqrt(J * J - mp * mp), rm = std::sqrt(J * J - m * m);
    const double sg = mp < m * c ? -1.0 : 1.0;
    return sg * mp * acosh_or_zero((m - mp * c) / (s * rp)) -
           J * acosh_or_zero(std::abs(J * J * c - m * mp) / (rm * rp)) +
           m * acosh_or_zero(std::abs(m * c - mp) / (s * rm));
}

double exact_at(const WigdQuery& q) { return wigner_d_exact(q.j, q.mp, q.m, q.theta); }

double asymptotic_canonical(const WigdQuery& q) {
    const double J = q.j.value() + 0.5;
    const double R = r_classifier(q);
    if (std::abs(R) < kWigdTurningFraction * J * J) throw DomainError("wigd_asymptotic: turning point (R ~ 0)");
    const std::complex<double> p = wigd_phase(q);
    const double cosine = std::cos(p.real() - q.j.value() * kPi);
    const double amp = std::sqrt(2 / kPi) / std::pow(std::abs(R), 0.25);
    if (R > 0) return amp * cosine;
    return amp * std::numbers::sqrt2 * cosine * std::exp(-std::abs(p.imag()) - kPi / 4);
}

bool on_wedge_edge(const WigdQuery& c) { return c.m.twice() == 0 || std::abs(c.mp.twice()) == c.m.twice(); }

} // namespace

double r_classifier(const WigdQuery& q) {
    const double J = q.j.value() + 0.5, m = q.m.value(), mp = q.mp.value();
    const double s = std::sin(q.theta), c = std::cos(q.theta);
    return J * J * s * s - m * m - mp * mp + 2 * m * mp * c;
}

std::complex<double> wigd_phase(const WigdQuery& q) {
    validate(q);
    const double s = std::sin(q.theta);
    if (q.theta == 0 || q.theta == kPi || s <= 0) throw DomainError("wigd_phase: singular at theta = 0 or pi");
    const double J = q.j.value() + 0.5, m = q.m.value(), mp = q.mp.value(), c = std::cos(q.theta);
    const double rp = std::sqrt(J * J - mp * mp), rm = std::sqrt(J * J - m * m);
    const std::complex<double> a1 = acos_complex((m - mp * c) / (s * rp));
    const std::complex<double> a2 = acos_complex((m * mp - J * J * c) / (rm * rp));
    const std::complex<double> a3 = acos_complex((m * c - mp) / (s * rm));
    const double re = (-mp * a1 + J * a2 + m * a3).real() - kPi / 4;
    if (r_classifier(q) >= 0) return {re, 0.0};
    return {re, phase_imag_forbidden(J, mp, m, q.theta)};
}

WigdCanonical wigd_symmetry(const WigdQuery& q) {
    validate(q);
    WigdCanonical out{q, 1};
    WigdQuery& c = out.query;
    if (c.theta > kPi / 2) {
        out.sign *= parity_sign(c.j - c.m);
        c.mp = -c.mp;
        c.theta = kPi - c.theta;
    }
    if (std::abs(c.mp.twice()) > std::abs(c.m.twice())) {
        out.sign *= parity_sign(c.mp - c.m);
        std::swap(c.mp, c.m);
    }
    if (c.m.twice() < 0) {
        out.sign *= parity_sign(c.mp - c.m);
        c.mp = -c.mp;
        c.m = -c.m;
    }
    return out;
}

double wigd_asymptotic(const WigdQuery& q) {
    WigdCanonical c = wigd_symmetry(q);
    return c.sign * asymptotic_canonical(c.query);
}

double wigd_airy_argument(const WigdQuery& c) {
    const double J = c.j.value() + 0.5, m = c.m.value(), mp = c.mp.value();
    const double R = r_classifier(c);
    if (R > 0) {
        const double p = wigd_phase(c).real();
        const double x = mp < m * std::cos(c.theta) ? J * kPi - (p + kPi / 4) : p + kPi / 4 - m * kPi;
        return -std::pow(1.5 * std::abs(x), 2.0 / 3.0);
    }
    return std::pow(1.5 * std::abs(phase_imag_forbidden(J, mp, m, c.theta)), 2.0 / 3.0);
}

double wigd_wkb(const WigdQuery& q) {
    validate(q);
    if (q.theta == 0 || q.theta == kPi) return exact_at(q);
    WigdCanonical cw = wigd_symmetry(q);
    WigdQuery c = cw.query;
    if (on_wedge_edge(c)) {
        if (c.j.value() <= kWigdExactEdgeJ) return cw.sign * exact_at(c);
        return cw.sign * asymptotic_canonical(c);
    }
    if (r_classifier(c) == 0) c.theta *= 1 + 1e-9;
    const double R = r_classifier(c);
    const double Z = wigd_airy_argument(c);
    double v = std::pow(-4 * Z / R, 0.25) * airy_unchecked(Z).ai;
    if (!(c.mp.value() < c.m.value() * std::cos(c.theta))) v *= parity_sign(c.j - c.m);
    return cw.sign * v;
}

CgLimitResult wigd_from_cg_limit(HalfInt j1, HalfInt mp, HalfInt m, double theta, HalfInt j2) {
    validate(WigdQuery{j1, mp, m, 0.0});
    if (!(theta >= 0 && theta <= kPi)) throw DomainError("wigd_from_cg_limit: theta outside [0, pi]");
    const int64_t tj2 = j2.twice();
    const double target = tj2 * std::cos(theta);
    const int64_t steps = int64_t(std::llround((target + double(tj2)) / 2));
    const HalfInt m2 = half(2 * steps - tj2);
    if (std::abs(m2.twice()) > tj2) throw DomainError("wigd_from_cg_limit: rounded m2 exceeds j2");
    CgLimitResult r;
    r.m2 = m2;
    r.theta_eff = std::acos(std::clamp(m2.value() / j2.value(), -1.0, 1.0));
    r.value = parity_sign(j1 - m) * cg_exact(j1, m, j2, m2, j2 + mp, m + m2);
    return r;
}

} // namespace vmw
