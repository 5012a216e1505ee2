#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace qorth {

/// Real number stored as sign * mantissa * 2^exponent with |mantissa| in [1,2).
///
/// Holds quantities such as h(n) ~ s^n and p_n(0) = sqrt(h(n)) whose exponent
/// leaves the double range long before the computation becomes meaningless.
/// Zero is represented by mantissa 0 and exponent 0. Non-finite values are
/// rejected at construction.
class ScaledReal {
  public:
    constexpr ScaledReal() = default;
    ScaledReal(double value);  // NOLINT(google-explicit-constructor)

    /// Builds mantissa * 2^exponent and normalizes.
    static ScaledReal from_parts(double mantissa, std::int64_t exponent);

    double mantissa() const { return mantissa_; }
    std::int64_t exponent() const { return exponent_; }

    bool is_zero() const { return mantissa_ == 0.0; }
    int sign() const { return mantissa_ > 0.0 ? 1 : (mantissa_ < 0.0 ? -1 : 0); }

    /// Nearest double; +-inf on overflow, +-0 on underflow.
    double to_double() const;

    /// Natural logarithm of |value|; -inf for zero.
    double log_abs() const;

    ScaledReal abs() const;
    ScaledReal sqrt() const;

    ScaledReal operator-() const;
    ScaledReal& operator+=(const ScaledReal& rhs);
    ScaledReal& operator-=(const ScaledReal& rhs);
    ScaledReal& operator*=(const ScaledReal& rhs);
    ScaledReal& operator/=(const ScaledReal& rhs);

    friend ScaledReal operator+(ScaledReal lhs, const ScaledReal& rhs) { return lhs += rhs; }
    friend ScaledReal operator-(ScaledReal lhs, const ScaledReal& rhs) { return lhs -= rhs; }
    friend ScaledReal operator*(ScaledReal lhs, const ScaledReal& rhs) { return lhs *= rhs; }
    friend ScaledReal operator/(ScaledReal lhs, const ScaledReal& rhs) { return lhs /= rhs; }

    friend bool operator==(const ScaledReal& lhs, const ScaledReal& rhs) {
        return lhs.mantissa_ == rhs.mantissa_ && lhs.exponent_ == rhs.exponent_;
    }
    friend std::partial_ordering operator<=>(const ScaledReal& lhs, const ScaledReal& rhs);

    std::string to_string() const;

  private:
    void normalize();

    double mantissa_ = 0.0;
    std::int64_t exponent_ = 0;
};

}  // namespace qorth
