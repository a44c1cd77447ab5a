#pragma once

#include "vmw/qnum.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace vmw {

/// Key of <j1 m1, j2 m2 | j3 m3>.
struct CGKey {
    HalfInt j1, m1, j2, m2, j3, m3;
};

enum class CgMode {
    Auto,         ///< exact integers for 2j <= 60, log-factorials above (with a cancellation guard)
    ExactInteger, ///< big-rational Racah sum
    LogFactorial  ///< log-factorial terms, compensated summation
};

inline constexpr int64_t kExactTwiceJLimit = 60;

double cg_exact(const CGKey& key, CgMode mode = CgMode::Auto);
double cg_exact(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3, HalfInt m3);

/// Selection rules only: triangle, m3 = m1 + m2, |m_i| <= j_i with matching parity.
bool cg_selection_ok(const CGKey& key);

enum class CgRelation {
    SwapToJ2, ///< <j1 m1, j3 -m3 | j2 -m2>
    SwapToJ1  ///< <j3 -m3, j2 m2 | j1 -m1> with phase (-1)^(j2 + m2)
};

struct CgTransform {
    CGKey key;
    double factor; ///< original = factor * coefficient(key)
};

CgTransform cg_symmetry(const CGKey& key, CgRelation relation);

double wigner_d_exact(HalfInt j, HalfInt mp, HalfInt m, double theta);
std::complex<double> wigner_D(HalfInt j, HalfInt mp, HalfInt m, const EulerAngles& angles);

/// Full d^j(theta), rows/cols indexed by m + j, built from the eigen-decomposition of J_y.
/// Stable for large j where the alternating sum loses digits.
Eigen::MatrixXd wigner_d_matrix(HalfInt j, double theta);

/// d^j_{m j}(theta) for m = -j..j (single-term closed form, evaluated in logs).
std::vector<double> stretched_column(HalfInt j, double theta);

using DenseOperator = Eigen::MatrixXcd;
inline constexpr int kDenseDimLimit = 4096;

struct SpinOps {
    DenseOperator jz, jp, jm;
};
/// Matrices of J_z, J_+, J_- in the |j m> basis ordered m = -j..j.
SpinOps spin_operators(HalfInt j);

/// Product-basis amplitudes of |j3 m3>; index (m1 + j1) * (2 j2 + 1) + (m2 + j2).
Eigen::VectorXcd coupled_state_product_basis(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m3);

enum class Axis { X, Y, Z };
/// <j3 m3| j1a j2a |j3 m3> from dense product-basis matrices.
double pairwise_expectation(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m3, Axis axis);
/// XX correlation, cross-checked against the ladder-operator identity.
double pairwise_xx_expectation(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m3);

} // namespace vmw
