#include "vmw/qnum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace vmw {

namespace {

bool parse_int(std::string_view s, int64_t& out) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

} // namespace

int64_t HalfInt::as_int() const {
    if (!is_integer()) throw DomainError("half-integer " + str() + " used where an integer is required");
    return twice_ / 2;
}

HalfInt HalfInt::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    const std::string bad = "not a half-integer: '" + std::string(text) + "'";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        int64_t num = 0;
        if (text.substr(slash + 1) != "2" || !parse_int(text.substr(0, slash), num))
            throw std::invalid_argument(bad);
        return from_twice(num);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view ip = text.substr(0, dot), fp = text.substr(dot + 1);
        while (!fp.empty() && fp.back() == '0') fp.remove_suffix(1);
        bool neg = !ip.empty() && ip.front() == '-';
        int64_t whole = 0;
        if (ip == "-" || ip.empty()) whole = 0;
        else if (!parse_int(ip, whole)) throw std::invalid_argument(bad);
        int64_t t = 2 * whole;
        if (fp == "5") t += neg ? -1 : 1;
        else if (!fp.empty()) throw std::invalid_argument(bad);
        return from_twice(t);
    }
    int64_t v = 0;
    if (!parse_int(text, v)) throw std::invalid_argument(bad);
    return from_twice(2 * v);
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

int parity_sign(HalfInt k) {
    int64_t n = k.as_int();
    return (n % 2 == 0) ? 1 : -1;
}

JM::JM(HalfInt j_, HalfInt m_) : j(j_), m(m_) {
    if (j.twice() < 0) throw DomainError("negative j");
    if (std::abs(m.twice()) > j.twice() || ((j.twice() - m.twice()) & 1))
        throw DomainError("invalid (j, m) = (" + j.str() + ", " + m.str() + ")");
}

double reduce_angle(double a) {
    constexpr double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r = 0;
    return r;
}

EulerAngles::EulerAngles(double phi_, double theta_, double chi_)
    : phi(reduce_angle(phi_)), theta(theta_), chi(reduce_angle(chi_)) {
    if (!(theta >= 0 && theta <= std::numbers::pi)) throw DomainError("Euler theta outside [0, pi]");
}

double modulus(HalfInt j, NormConvention conv) {
    double v = j.value();
    return conv == NormConvention::JPlusHalf ? v + 0.5 : std::sqrt(v * (v + 1));
}

double theta_m(HalfInt j, HalfInt m, NormConvention conv) {
    if (j.twice() <= 0) throw DomainError("theta_m requires j > 0");
    if (std::abs(m.twice()) > j.twice()) throw DomainError("theta_m requires |m| <= j");
    double c = m.value() / modulus(j, conv);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3) {
    int64_t a = j1.twice(), b = j2.twice(), c = j3.twice();
    if (a < 0 || b < 0 || c < 0) return false;
    if ((a + b + c) % 2 != 0) return false;
    return c >= std::abs(a - b) && c <= a + b;
}

double lambda_perp(HalfInt j, HalfInt m, NormConvention conv) {
    double J = modulus(j, conv), mv = m.value();
    double r = J * J - mv * mv;
    if (r < 0 && r > -1e-12) r = 0;
    return std::sqrt(r);
}

} // namespace vmw
