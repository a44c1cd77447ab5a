#include "vmw/semicg.hpp"

#include "vmw/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace vmw {

namespace {

constexpr double kPi = std::numbers::pi;

using Vec3 = std::array<double, 3>;

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 unit_vector(double J, double m, double azimuth) {
    double c = m / J;
    double s = std::sqrt(std::max(0.0, 1 - c * c));
    return {s * std::cos(azimuth), s * std::sin(azimuth), c};
}

// Sense of rotation about v relative to the coupling-plane normal n.
int rotation_sign(const Vec3& n, const Vec3& v) {
    const Vec3 z{0, 0, 1};
    double zv = dot(z, v);
    Vec3 zp{z[0] - zv * v[0], z[1] - zv * v[1], z[2] - zv * v[2]};
    return dot(cross(n, zp), v) >= 0 ? 1 : -1;
}

cplx acos_clamped(cplx z) {
    if (z.imag() == 0 && std::abs(z.real()) > 1 && std::abs(z.real()) - 1 < 1e-12)
        z = cplx(std::copysign(1.0, z.real()), 0);
    return acos_complex(z);
}

bool is_real_positive(cplx b) { return b.imag() == 0 && b.real() > 0; }

double heron_product(double a, double b, double c) {
    return (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
}

double sgn_plus(double x) { return x >= 0 ? 1.0 : -1.0; }

double wkb_integer_j3(const CGKey& k) {
    CouplingGeometry g = coupling_geometry(k);
    const double J1 = k.j1.value() + 0.5, J2 = k.j2.value() + 0.5, J3 = k.j3.value() + 0.5;
    const double m1 = k.m1.value(), m2 = k.m2.value();
    const double omega0 = kPi / 2 *
                          (J1 * g.s1 + J2 * g.s2 + J3 * g.s3 + m1 * (1 - sgn_plus(kPi / 2 - g.phi1.real())) -
                           m2 * (1 - sgn_plus(kPi / 2 - g.phi2.real())));
    const double delta0 = (J1 + J2 + J3) * kPi / 2;
    const double c0 = std::round(std::cos(omega0 + delta0)), s0 = std::round(std::sin(omega0 + delta0));
    if (std::abs(c0) + std::abs(s0) != 1.0)
        throw std::logic_error("cg_wkb: branching parameters c0, s0 are not a single unit");

    const cplx d = g.omega - omega0;
    const double Z = std::pow(1.5 * std::abs(d), 2.0 / 3.0);
    const int sign = parity_sign(k.j1 + k.j2 + HalfInt(1));
    double pref = sign * std::sqrt(2 * k.j3.value() + 1) * std::pow(Z, 0.25);
    if (std::abs(g.beta) == 0) throw DomainError("cg_wkb: degenerate beta = 0");
    pref /= std::sqrt(std::abs(g.beta) / 2);

    if (is_real_positive(g.beta)) {
        AiryValues a = airy_unchecked(-Z);
        return pref * (d.real() < 0 ? c0 * a.ai - s0 * a.bi : c0 * a.bi - s0 * a.ai);
    }
    AiryValues a = airy_unchecked(std::min(Z, 100.0));
    auto term = [](double c, double v) { return c == 0 ? 0.0 : c * v; };
    return pref * (d.imag() > 0 ? term(c0, a.ai) - term(s0, a.bi) : term(c0, a.bi) - term(s0, a.ai));
}

} // namespace

cplx beta_area(double l1, double l2, double l3) {
    if (l1 < 0 || l2 < 0 || l3 < 0) throw DomainError("beta_area: negative side");
    double p = heron_product(l1, l2, l3);
    return p >= 0 ? cplx(std::sqrt(p), 0) : cplx(0, std::sqrt(-p));
}

double cg_sq_avg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3, SqAvgVariant variant) {
    cplx b = beta_area(lambda_perp(j1, m1), lambda_perp(j2, m2), lambda_perp(j3, m1 + m2));
    if (!is_real_positive(b)) throw DomainError("cg_sq_avg: beta is not real positive");
    double num = variant == SqAvgVariant::JPlusOne ? 2 * (j3.value() + 1) : 2 * j3.value() + 1;
    return num / (kPi * b.real());
}

CouplingGeometry coupling_geometry(const CGKey& k) {
    if (!cg_selection_ok(k)) throw DomainError("coupling_geometry: selection rules violated");
    const double J1 = k.j1.value() + 0.5, J2 = k.j2.value() + 0.5, J3 = k.j3.value() + 0.5;
    const double m1 = k.m1.value(), m2 = k.m2.value(), m3 = k.m3.value();
    CouplingGeometry g;
    g.lambda1 = lambda_perp(k.j1, k.m1);
    g.lambda2 = lambda_perp(k.j2, k.m2);
    g.lambda3 = lambda_perp(k.j3, k.m3);
    const double l1 = g.lambda1, l2 = g.lambda2, l3 = g.lambda3;
    g.j_sum = J1 + J2 + J3;
    g.beta = beta_area(l1, l2, l3);
    g.alpha = std::sqrt(std::max(0.0, heron_product(J1, J2, J3)));
    if (g.alpha == 0) throw DomainError("coupling_geometry: collinear triangle (alpha = 0)");

    g.phi1 = acos_clamped((l1 * l1 + l3 * l3 - l2 * l2) / (2 * l1 * l3));
    g.phi2 = acos_clamped((l2 * l2 + l3 * l3 - l1 * l1) / (2 * l2 * l3));

    const Vec3 v1 = unit_vector(J1, m1, g.phi1.real());
    const Vec3 v2 = unit_vector(J2, m2, -g.phi2.real());
    const Vec3 v3 = unit_vector(J3, m3, 0.0);
    const Vec3 a{J1 * v1[0], J1 * v1[1], J1 * v1[2]};
    const Vec3 b{J2 * v2[0], J2 * v2[1], J2 * v2[2]};
    const Vec3 n = cross(a, b);
    const Vec3 nneg{-n[0], -n[1], -n[2]};
    g.s1 = rotation_sign(n, v1);
    g.s2 = rotation_sign(n, v2);
    g.s3 = rotation_sign(nneg, v3);

    const cplx sin1 = std::sin(g.phi1), sin2 = std::sin(g.phi2);
    g.eps1 = double(g.s1) * acos_clamped(2 / g.alpha * l3 * J1 * sin1);
    g.eps2 = double(g.s2) * acos_clamped(2 / g.alpha * l3 * J2 * sin2);
    g.eps3 = double(g.s3) * acos_clamped(2 / g.alpha * l1 * J3 * sin1);
    g.omega = J1 * g.eps1 + J2 * g.eps2 + J3 * g.eps3 + m1 * g.phi1 - m2 * g.phi2;
    g.ex_phase = (k.j3 - k.j1 - k.j2).value() * kPi / 2;
    g.theta_total = g.omega + g.ex_phase;
    return g;
}

Region classify_region(const CouplingGeometry& g) {
    if (std::abs(g.beta) < kTurningTau * g.j_sum * g.j_sum) return Region::Turning;
    return is_real_positive(g.beta) ? Region::Allowed : Region::Forbidden;
}

double cg_allowed(const CouplingGeometry& g, HalfInt j3) {
    if (classify_region(g) != Region::Allowed) throw DomainError("cg_allowed: geometry is not in the allowed region");
    if (std::abs(g.theta_total.imag()) >= 1e-9) throw std::logic_error("cg_allowed: complex phase in allowed region");
    return 2 * std::sqrt((j3.value() + 1) / (kPi * g.beta.real())) * std::cos(g.theta_total.real());
}

double cg_forbidden(const CouplingGeometry& g, HalfInt j3) {
    if (classify_region(g) != Region::Forbidden)
        throw DomainError("cg_forbidden: geometry is not in the forbidden region");
    const double th_re = g.theta_total.real(), th_im = g.theta_total.imag();
    return 2 * std::sqrt((j3.value() + 1) / (kPi * std::abs(g.beta))) * std::numbers::sqrt2 * std::cos(th_re) *
           std::exp(-std::abs(th_im) - kPi / 4);
}

double cg_wkb(const CGKey& key) {
    if (!cg_selection_ok(key)) return 0.0;
    if (key.j3.is_integer()) return wkb_integer_j3(key);
    CgTransform t = cg_symmetry(key, key.j2.is_integer() ? CgRelation::SwapToJ2 : CgRelation::SwapToJ1);
    return t.factor * wkb_integer_j3(t.key);
}

double cg_semiclassical(const CGKey& key) {
    if (!cg_selection_ok(key)) return 0.0;
    CouplingGeometry g;
    try {
        g = coupling_geometry(key);
    } catch (const DomainError&) {
        return cg_wkb(key);
    }
    switch (classify_region(g)) {
    case Region::Allowed: return cg_allowed(g, key.j3);
    case Region::Forbidden: return cg_forbidden(g, key.j3);
    case Region::Turning: break;
    }
    return cg_wkb(key);
}

std::pair<double, double> turning_points(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2) {
    const double l1 = lambda_perp(j1, m1), l2 = lambda_perp(j2, m2), m3 = (m1 + m2).value();
    auto j3_of = [m3](double l3) { return std::sqrt(m3 * m3 + l3 * l3) - 0.5; };
    return {j3_of(std::abs(l1 - l2)), j3_of(l1 + l2)};
}

} // namespace vmw
