#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vmw {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exact half-integer stored as its doubled value.
class HalfInt {
public:
    constexpr HalfInt() = default;
    static constexpr HalfInt from_twice(int64_t t) { HalfInt h; h.twice_ = t; return h; }
    constexpr HalfInt(int v) : twice_(2 * int64_t(v)) {}

    constexpr int64_t twice() const { return twice_; }
    constexpr double value() const { return 0.5 * double(twice_); }
    constexpr bool is_integer() const { return (twice_ & 1) == 0; }
    /// Integer part; throws unless the value is an integer.
    int64_t as_int() const;

    constexpr HalfInt operator-() const { return from_twice(-twice_); }
    constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
    constexpr HalfInt& operator+=(HalfInt o) { twice_ += o.twice_; return *this; }
    constexpr HalfInt& operator-=(HalfInt o) { twice_ -= o.twice_; return *this; }
    constexpr auto operator<=>(const HalfInt&) const = default;

    /// Accepts "7/2", "3.5", "-3"; anything else throws std::invalid_argument.
    static HalfInt parse(std::string_view text);
    std::string str() const;

private:
    int64_t twice_ = 0;
};

constexpr HalfInt half(int64_t twice) { return HalfInt::from_twice(twice); }

/// (-1)^k for an integer-valued HalfInt.
int parity_sign(HalfInt k);

struct JM {
    HalfInt j, m;
    JM(HalfInt j_, HalfInt m_);
};

struct EulerAngles {
    double phi = 0, theta = 0, chi = 0;
    EulerAngles() = default;
    EulerAngles(double phi_, double theta_, double chi_);
};

enum class NormConvention { JPlusHalf, SqrtJJPlus1 };

double modulus(HalfInt j, NormConvention conv = NormConvention::JPlusHalf);
double theta_m(HalfInt j, HalfInt m, NormConvention conv = NormConvention::JPlusHalf);
bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3);
double lambda_perp(HalfInt j, HalfInt m, NormConvention conv = NormConvention::JPlusHalf);

double reduce_angle(double a);

} // namespace vmw
