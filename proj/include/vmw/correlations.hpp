#pragma once

#include "vmw/qnum.hpp"

namespace vmw {

struct CorrelationInput {
    HalfInt j1, j2, j3, m3;
};

struct CosPhi12 {
    double value = 0;
    bool out_of_range = false; ///< |value| > 1 (beyond rounding): no classical coupling angle
};

/// Cosine of the azimuthal angle between j1 and j2 for the m1 component.
/// Throws DomainError when a perpendicular projection vanishes (j_i = 0).
CosPhi12 cos_phi12(const CorrelationInput& in, HalfInt m1, NormConvention conv = NormConvention::SqrtJJPlus1);

/// Vector-model value of <j3 m3| j1x j2x |j3 m3>: trapezoid average over the
/// delocalization angle, checked against its analytic reduction.
double mstate_correlation_vm(const CorrelationInput& in, int quadrature_n = 256);

/// 1/4 sum_m1 C^2 [j3(j3+1) - j1(j1+1) - j2(j2+1) - 2 m1 m2].
double mstate_correlation_closed(const CorrelationInput& in);

/// (M + S cos(theta_M)) / M with cos(theta_M) = M / S.
double g_factor(HalfInt S, HalfInt M);

} // namespace vmw
