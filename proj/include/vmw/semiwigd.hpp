#pragma once

#include "vmw/qnum.hpp"

#include <complex>

namespace vmw {

struct WigdQuery {
    HalfInt j, mp, m;
    double theta = 0;
};

/// R = J^2 sin^2 theta - m^2 - m'^2 + 2 m m' cos theta with J = j + 1/2.
double r_classifier(const WigdQuery& q);

/// Rotation phase; real part from principal arccos branches, imaginary part
/// from the hyperbolic forms when R < 0. Throws DomainError unless 0 < theta < pi.
std::complex<double> wigd_phase(const WigdQuery& q);

/// |R| below this fraction of J^2 counts as a turning point for wigd_asymptotic.
inline constexpr double kWigdTurningFraction = 1e-8;

/// Closed asymptotic forms, evaluated in the canonical wedge.
double wigd_asymptotic(const WigdQuery& q);

/// Uniform Airy form (-4Z/R)^(1/4) Ai(Z) after reduction to the canonical wedge.
double wigd_wkb(const WigdQuery& q);

/// Airy argument Z of wigd_wkb for a query already in the canonical wedge.
double wigd_airy_argument(const WigdQuery& canonical);

struct WigdCanonical {
    WigdQuery query;
    int sign = 1;
};

/// Maps to 0 <= theta <= pi/2, m >= 0, |m'| <= m: theta reflection, then m/m' swap, then negation.
WigdCanonical wigd_symmetry(const WigdQuery& q);

/// Edge cases outside the open wedge (m = 0 or |m'| = m) use the exact kernel up to this j.
inline constexpr double kWigdExactEdgeJ = 20.0;

struct CgLimitResult {
    double value = 0;
    double theta_eff = 0; ///< arccos(m2 / j2) after rounding m2
    HalfInt m2;
};

/// (-1)^(j1 - m) <j1 m, j2 m2 | j2 + m', m + m2> with m2 = j2 cos(theta) rounded to a valid projection.
CgLimitResult wigd_from_cg_limit(HalfInt j1, HalfInt mp, HalfInt m, double theta, HalfInt j2);

} // namespace vmw
