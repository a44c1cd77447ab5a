#include "vmw/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace vmw {

namespace mp = boost::multiprecision;
using BigInt = mp::cpp_int;
using BigRat = mp::cpp_rational;

namespace {

BigInt big_factorial(int64_t n) {
    static std::vector<BigInt> table{BigInt(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (int64_t(table.size()) <= n) table.push_back(table.back() * BigInt(table.size()));
    return table[size_t(n)];
}

// Correctly scaled conversion; convert_to<double> can overflow on huge operands.
double rational_to_double(const BigRat& r) {
    BigInt num = mp::numerator(r), den = mp::denominator(r);
    if (num == 0) return 0.0;
    bool neg = num < 0;
    if (neg) num = -num;
    long shift = long(mp::msb(den)) - long(mp::msb(num)) + 64;
    BigInt q = shift >= 0 ? BigInt((num << shift) / den) : BigInt(num / (den << -shift));
    double v = std::ldexp(q.convert_to<double>(), int(-shift));
    return neg ? -v : v;
}

struct RacahLimits {
    int64_t a, b, c, d; // j1+j2-j3, j1-j2+j3, -j1+j2+j3, j1+j2+j3+1
    int64_t kmin, kmax;
};

RacahLimits racah_limits(const CGKey& k) {
    int64_t j1 = k.j1.twice(), m1 = k.m1.twice(), j2 = k.j2.twice(), m2 = k.m2.twice(), j3 = k.j3.twice();
    RacahLimits L;
    L.a = (j1 + j2 - j3) / 2;
    L.b = (j1 - j2 + j3) / 2;
    L.c = (-j1 + j2 + j3) / 2;
    L.d = (j1 + j2 + j3) / 2 + 1;
    L.kmin = std::max<int64_t>({0, (j2 - j3 - m1) / 2, (j1 - j3 + m2) / 2});
    L.kmax = std::min<int64_t>({L.a, (j1 - m1) / 2, (j2 + m2) / 2});
    return L;
}

double cg_exact_integer(const CGKey& k) {
    auto L = racah_limits(k);
    auto F = [](int64_t n) { return big_factorial(n); };
    int64_t j1 = k.j1.twice(), m1 = k.m1.twice(), j2 = k.j2.twice(), m2 = k.m2.twice(), j3 = k.j3.twice(),
            m3 = k.m3.twice();
    BigInt pnum = BigInt(j3 + 1) * F(L.a) * F(L.b) * F(L.c) * F((j1 + m1) / 2) * F((j1 - m1) / 2) *
                  F((j2 + m2) / 2) * F((j2 - m2) / 2) * F((j3 + m3) / 2) * F((j3 - m3) / 2);
    BigRat pre(pnum, F(L.d));
    BigRat sum = 0;
    for (int64_t s = L.kmin; s <= L.kmax; ++s) {
        BigInt den = F(s) * F(L.a - s) * F((j1 - m1) / 2 - s) * F((j2 + m2) / 2 - s) *
                     F((j3 - j2 + m1) / 2 + s) * F((j3 - j1 - m2) / 2 + s);
        BigRat t(1, den);
        if (s % 2) sum -= t;
        else sum += t;
    }
    if (sum == 0) return 0.0;
    double mag = std::sqrt(rational_to_double(pre * sum * sum));
    return sum > 0 ? mag : -mag;
}

long double lf(int64_t n) { return std::lgammal(static_cast<long double>(n) + 1.0L); }

// Returns the value and the ratio max|term| / |sum| as a cancellation measure.
std::pair<double, double> cg_log_factorial(const CGKey& k) {
    auto L = racah_limits(k);
    int64_t j1 = k.j1.twice(), m1 = k.m1.twice(), j2 = k.j2.twice(), m2 = k.m2.twice(), j3 = k.j3.twice(),
            m3 = k.m3.twice();
    long double lp = 0.5L * (std::log(static_cast<long double>(j3 + 1)) + lf(L.a) + lf(L.b) + lf(L.c) - lf(L.d) +
                             lf((j1 + m1) / 2) + lf((j1 - m1) / 2) + lf((j2 + m2) / 2) + lf((j2 - m2) / 2) +
                             lf((j3 + m3) / 2) + lf((j3 - m3) / 2));
    long double sum = 0, comp = 0, big = 0;
    for (int64_t s = L.kmin; s <= L.kmax; ++s) {
        long double lt = lp - (lf(s) + lf(L.a - s) + lf((j1 - m1) / 2 - s) + lf((j2 + m2) / 2 - s) +
                               lf((j3 - j2 + m1) / 2 + s) + lf((j3 - j1 - m2) / 2 + s));
        long double t = std::exp(lt) * ((s % 2) ? -1.0L : 1.0L);
        big = std::max(big, std::abs(t));
        long double nsum = sum + t; // Neumaier
        comp += (std::abs(sum) >= std::abs(t)) ? (sum - nsum) + t : (t - nsum) + sum;
        sum = nsum;
    }
    double v = static_cast<double>(sum + comp);
    double ratio = v == 0 ? INFINITY : static_cast<double>(big) / std::abs(v);
    return {v, ratio};
}

} // namespace

bool cg_selection_ok(const CGKey& k) {
    auto jm_ok = [](HalfInt j, HalfInt m) {
        return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() && ((j.twice() - m.twice()) % 2 == 0);
    };
    return triangle_ok(k.j1, k.j2, k.j3) && jm_ok(k.j1, k.m1) && jm_ok(k.j2, k.m2) && jm_ok(k.j3, k.m3) &&
           k.m1 + k.m2 == k.m3;
}

double cg_exact(const CGKey& key, CgMode mode) {
    if (!cg_selection_ok(key)) return 0.0;
    int64_t tj = std::max({key.j1.twice(), key.j2.twice(), key.j3.twice()});
    switch (mode) {
    case CgMode::ExactInteger: return cg_exact_integer(key);
    case CgMode::LogFactorial: return cg_log_factorial(key).first;
    case CgMode::Auto: break;
    }
    if (tj <= kExactTwiceJLimit) return cg_exact_integer(key);
    auto [v, ratio] = cg_log_factorial(key);
    if (ratio > 1e8) return cg_exact_integer(key);
    return v;
}

double cg_exact(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3, HalfInt m3) {
    return cg_exact(CGKey{j1, m1, j2, m2, j3, m3});
}

CgTransform cg_symmetry(const CGKey& k, CgRelation relation) {
    if (relation == CgRelation::SwapToJ2) {
        int sign = ((k.j1 - k.m1).twice() / 2) % 2 ? -1 : 1;
        double f = sign * std::sqrt(double(k.j3.twice() + 1) / double(k.j2.twice() + 1));
        return {CGKey{k.j1, k.m1, k.j3, -k.m3, k.j2, -k.m2}, f};
    }
    int sign = ((k.j2 + k.m2).twice() / 2) % 2 ? -1 : 1;
    double f = sign * std::sqrt(double(k.j3.twice() + 1) / double(k.j1.twice() + 1));
    return {CGKey{k.j3, -k.m3, k.j2, k.m2, k.j1, -k.m1}, f};
}

double wigner_d_exact(HalfInt j, HalfInt mp, HalfInt m, double theta) {
    const int64_t tj = j.twice(), tmp = mp.twice(), tm = m.twice();
    if (std::abs(tmp) > tj || std::abs(tm) > tj || ((tj - tmp) & 1) || ((tj - tm) & 1))
        throw DomainError("wigner_d_exact: invalid (j, m', m)");
    const int64_t jpm = (tj + tm) / 2, jmm = (tj - tm) / 2, jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
    const int64_t dm = (tmp - tm) / 2; // m' - m
    auto lfl = [](int64_t n) { return std::lgamma((long double)n + 1.0L); };
    const long double lnum = 0.5L * (lfl(jpm) + lfl(jmm) + lfl(jpmp) + lfl(jmmp));
    const long double c = std::cos((long double)theta / 2), s = std::sin((long double)theta / 2);
    int64_t kmin = std::max<int64_t>(0, -dm), kmax = std::min<int64_t>(jpm, jmmp);
    long double sum = 0;
    for (int64_t k = kmin; k <= kmax; ++k) {
        long double lw = lnum - (lfl(jpm - k) + lfl(k) + lfl(jmmp - k) + lfl(dm + k));
        int64_t ec = (2 * tj + tm - tmp) / 2 - 2 * k; // 2j + m - m' - 2k
        int64_t es = dm + 2 * k;
        long double t = std::exp(lw) * std::pow(c, (long double)ec) * std::pow(s, (long double)es);
        sum += ((k + dm) % 2 == 0) ? t : -t;
    }
    return double(sum);
}

std::complex<double> wigner_D(HalfInt j, HalfInt mp, HalfInt m, const EulerAngles& a) {
    double d = wigner_d_exact(j, mp, m, a.theta);
    return std::polar(1.0, -mp.value() * a.phi) * d * std::polar(1.0, -m.value() * a.chi);
}

SpinOps spin_operators(HalfInt j) {
    const int n = int(j.twice() + 1);
    SpinOps o{DenseOperator::Zero(n, n), DenseOperator::Zero(n, n), DenseOperator::Zero(n, n)};
    const double jv = j.value();
    for (int i = 0; i < n; ++i) {
        double m = -jv + i;
        o.jz(i, i) = m;
        if (i + 1 < n) o.jp(i + 1, i) = std::sqrt(jv * (jv + 1) - m * (m + 1));
        if (i > 0) o.jm(i - 1, i) = std::sqrt(jv * (jv + 1) - m * (m - 1));
    }
    return o;
}

Eigen::MatrixXd wigner_d_matrix(HalfInt j, double theta) {
    SpinOps o = spin_operators(j);
    DenseOperator jy = (o.jp - o.jm) / std::complex<double>(0, 2);
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(jy);
    const auto& V = es.eigenvectors();
    Eigen::VectorXcd ph = (es.eigenvalues().cast<std::complex<double>>() * std::complex<double>(0, -theta))
                              .array()
                              .exp();
    DenseOperator d = V * ph.asDiagonal() * V.adjoint();
    return d.real();
}

std::vector<double> stretched_column(HalfInt j, double theta) {
    const int64_t tj = j.twice();
    const int n = int(tj + 1);
    std::vector<double> out(size_t(n), 0.0);
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const double lc = std::log(std::abs(c)), ls = std::log(std::abs(s));
    for (int i = 0; i < n; ++i) {
        int64_t jpm = i, jmm = tj - i; // j + m, j - m
        double lb = 0.5 * (lf(tj) - lf(jpm) - lf(jmm));
        double e = lb + (jpm ? jpm * lc : 0.0) + (jmm ? jmm * ls : 0.0);
        if ((jpm && c == 0) || (jmm && s == 0)) continue;
        double v = std::exp(e);
        if (c < 0 && (jpm % 2)) v = -v;
        out[size_t(i)] = v;
    }
    return out;
}

Eigen::VectorXcd coupled_state_product_basis(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m3) {
    if (!triangle_ok(j1, j2, j3) || std::abs(m3.twice()) > j3.twice() || ((j3 - m3).twice() & 1))
        throw DomainError("coupled_state_product_basis: selection rules violated");
    const int n1 = int(j1.twice() + 1), n2 = int(j2.twice() + 1);
    if (n1 * n2 > kDenseDimLimit) throw DomainError("product basis exceeds dense limit");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n1 * n2);
    for (int a = 0; a < n1; ++a) {
        HalfInt m1 = half(2 * a - j1.twice());
        HalfInt m2 = m3 - m1;
        if (std::abs(m2.twice()) > j2.twice()) continue;
        int b = int((m2.twice() + j2.twice()) / 2);
        v(a * n2 + b) = cg_exact(j1, m1, j2, m2, j3, m3);
    }
    return v;
}

namespace {

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
    DenseOperator r(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index k = 0; k < a.cols(); ++k) r.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return r;
}

DenseOperator axis_op(const SpinOps& o, Axis axis) {
    switch (axis) {
    case Axis::X: return (o.jp + o.jm) / 2.0;
    case Axis::Y: return (o.jp - o.jm) / std::complex<double>(0, 2);
    case Axis::Z: return o.jz;
    }
    return o.jz;
}

} // namespace

double pairwise_expectation(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m3, Axis axis) {
    Eigen::VectorXcd psi = coupled_state_product_basis(j1, j2, j3, m3);
    SpinOps a = spin_operators(j1), b = spin_operators(j2);
    const int n1 = int(a.jz.rows()), n2 = int(b.jz.rows());
    DenseOperator op = kron(axis_op(a, axis), DenseOperator::Identity(n2, n2)) *
                       kron(DenseOperator::Identity(n1, n1), axis_op(b, axis));
    return (psi.adjoint() * op * psi)(0, 0).real();
}

double pairwise_xx_expectation(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m3) {
    double direct = pairwise_expectation(j1, j2, j3, m3, Axis::X);

    Eigen::VectorXcd psi = coupled_state_product_basis(j1, j2, j3, m3);
    SpinOps a = spin_operators(j1), b = spin_operators(j2);
    const int n1 = int(a.jz.rows()), n2 = int(b.jz.rows());
    DenseOperator I1 = DenseOperator::Identity(n1, n1), I2 = DenseOperator::Identity(n2, n2);
    auto one = [&](const DenseOperator& x) { return kron(x, I2); };
    auto two = [&](const DenseOperator& x) { return kron(I1, x); };
    DenseOperator jx = one(axis_op(a, Axis::X)) + two(axis_op(b, Axis::X));
    DenseOperator jy = one(axis_op(a, Axis::Y)) + two(axis_op(b, Axis::Y));
    DenseOperator jz = one(a.jz) + two(b.jz);
    DenseOperator j3sq = jx * jx + jy * jy + jz * jz;
    const double v1 = j1.value(), v2 = j2.value();
    DenseOperator ident = DenseOperator::Identity(n1 * n2, n1 * n2);
    DenseOperator rhs = (j3sq - v1 * (v1 + 1) * ident - v2 * (v2 + 1) * ident - 2.0 * one(a.jz) * two(b.jz) +
                         one(a.jp) * two(b.jp) + one(a.jm) * two(b.jm)) /
                        4.0;
    double via_ladder = (psi.adjoint() * rhs * psi)(0, 0).real();
    if (std::abs(direct - via_ladder) > 1e-10)
        throw std::logic_error("pairwise_xx_expectation: dense and ladder-identity evaluations disagree");
    return direct;
}

} // namespace vmw
