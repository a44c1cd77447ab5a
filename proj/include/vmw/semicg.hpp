#pragma once

#include "vmw/exact.hpp"

#include <complex>
#include <utility>

namespace vmw {

using cplx = std::complex<double>;

/// Rotation-phase geometry of the coupling j1 + j2 -> j3.
struct CouplingGeometry {
    cplx phi1, phi2;
    cplx eps1, eps2, eps3;
    int s1 = 1, s2 = 1, s3 = 1;
    double alpha = 0;
    cplx beta;
    cplx omega;
    double ex_phase = 0; ///< (j3 - j1 - j2) pi / 2
    cplx theta_total;    ///< omega + ex_phase
    double lambda1 = 0, lambda2 = 0, lambda3 = 0;
    double j_sum = 0; ///< J1 + J2 + J3
};

enum class Region { Allowed, Forbidden, Turning };

/// Turning when |beta| < kTurningTau * (J1 + J2 + J3)^2.
inline constexpr double kTurningTau = 0.05;

/// Square root of the Heron product (l1+l2+l3)(-l1+l2+l3)(l1-l2+l3)(l1+l2-l3);
/// a negative product gives +i sqrt|product|.
cplx beta_area(double l1, double l2, double l3);

enum class SqAvgVariant {
    JPlusOne,        ///< 2 (j3 + 1) / (pi beta)
    TwoJPlusOneHalf  ///< (2 j3 + 1) / (pi beta)
};

double cg_sq_avg(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3,
                 SqAvgVariant variant = SqAvgVariant::JPlusOne);

/// Throws DomainError for a collinear (alpha = 0) triangle or invalid key.
CouplingGeometry coupling_geometry(const CGKey& key);

Region classify_region(const CouplingGeometry& geom);

double cg_allowed(const CouplingGeometry& geom, HalfInt j3);
double cg_forbidden(const CouplingGeometry& geom, HalfInt j3);

/// Uniform Airy form, valid through the turning points.
double cg_wkb(const CGKey& key);

/// Closed forms away from the turning points, cg_wkb near them.
double cg_semiclassical(const CGKey& key);

/// Real j3 values where beta vanishes for fixed (j1 m1, j2 m2): lambda3 = |lambda1 - lambda2| and lambda1 + lambda2.
std::pair<double, double> turning_points(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2);

} // namespace vmw
