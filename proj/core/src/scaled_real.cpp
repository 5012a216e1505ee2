#include "qorth/scaled_real.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "qorth/errors.hpp"

namespace qorth {

namespace {

// Beyond this exponent gap the smaller addend is below half an ulp.
constexpr std::int64_t kAddCutoff = 60;

}  // namespace

ScaledReal::ScaledReal(double value) : mantissa_(value), exponent_(0) {
    if (!std::isfinite(value)) {
        throw DomainError("ScaledReal: non-finite value");
    }
    normalize();
}

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
    if (!std::isfinite(mantissa)) {
        throw DomainError("ScaledReal: non-finite mantissa");
    }
    ScaledReal r;
    r.mantissa_ = mantissa;
    r.exponent_ = exponent;
    r.normalize();
    return r;
}

void ScaledReal::normalize() {
    if (mantissa_ == 0.0) {
        mantissa_ = 0.0;  // drops the sign of -0.0
        exponent_ = 0;
        return;
    }
    int e = 0;
    // frexp gives |m| in [0.5, 1); shift to [1, 2).
    double m = std::frexp(mantissa_, &e);
    mantissa_ = m * 2.0;
    exponent_ += static_cast<std::int64_t>(e) - 1;
}

double ScaledReal::to_double() const {
    if (mantissa_ == 0.0) return 0.0;
    if (exponent_ > std::numeric_limits<double>::max_exponent) {
        return mantissa_ > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    }
    if (exponent_ < std::numeric_limits<double>::min_exponent - 60) {
        return mantissa_ > 0 ? 0.0 : -0.0;
    }
    return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

double ScaledReal::log_abs() const {
    if (mantissa_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(mantissa_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

ScaledReal ScaledReal::abs() const {
    ScaledReal r = *this;
    r.mantissa_ = std::fabs(r.mantissa_);
    return r;
}

ScaledReal ScaledReal::sqrt() const {
    if (mantissa_ < 0.0) {
        throw DomainError("ScaledReal::sqrt of negative value");
    }
    if (mantissa_ == 0.0) return {};
    double m = mantissa_;
    std::int64_t e = exponent_;
    if (e % 2 != 0) {
        m *= 2.0;
        e -= 1;
    }
    return from_parts(std::sqrt(m), e / 2);
}

ScaledReal ScaledReal::operator-() const {
    ScaledReal r = *this;
    r.mantissa_ = -r.mantissa_;
    if (r.mantissa_ == 0.0) r.mantissa_ = 0.0;
    return r;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) {
    if (rhs.mantissa_ == 0.0) return *this;
    if (mantissa_ == 0.0) {
        *this = rhs;
        return *this;
    }
    const std::int64_t diff = exponent_ - rhs.exponent_;
    if (diff > kAddCutoff) return *this;
    if (diff < -kAddCutoff) {
        *this = rhs;
        return *this;
    }
    if (diff >= 0) {
        mantissa_ += std::ldexp(rhs.mantissa_, static_cast<int>(-diff));
    } else {
        mantissa_ = std::ldexp(mantissa_, static_cast<int>(diff)) + rhs.mantissa_;
        exponent_ = rhs.exponent_;
    }
    normalize();
    return *this;
}

ScaledReal& ScaledReal::operator-=(const ScaledReal& rhs) { return *this += -rhs; }

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) {
    mantissa_ *= rhs.mantissa_;
    exponent_ += rhs.exponent_;
    normalize();
    return *this;
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
    if (rhs.mantissa_ == 0.0) {
        throw DomainError("ScaledReal: division by zero");
    }
    mantissa_ /= rhs.mantissa_;
    exponent_ -= rhs.exponent_;
    normalize();
    return *this;
}

std::partial_ordering operator<=>(const ScaledReal& lhs, const ScaledReal& rhs) {
    const int ls = lhs.sign();
    const int rs = rhs.sign();
    if (ls != rs) return ls <=> rs;
    if (ls == 0) return std::partial_ordering::equivalent;
    // Same sign, both nonzero: magnitude order decides, reversed for negatives.
    std::partial_ordering mag = lhs.exponent_ != rhs.exponent_
                                    ? (lhs.exponent_ <=> rhs.exponent_)
                                    : (std::fabs(lhs.mantissa_) <=> std::fabs(rhs.mantissa_));
    if (ls > 0) return mag;
    if (mag == std::partial_ordering::less) return std::partial_ordering::greater;
    if (mag == std::partial_ordering::greater) return std::partial_ordering::less;
    return mag;
}

std::string ScaledReal::to_string() const {
    if (mantissa_ == 0.0) return "0";
    // Decimal rendering: value = d * 10^k with d in [1,10).
    const double log10_abs = std::log10(std::fabs(mantissa_)) +
                             static_cast<double>(exponent_) * std::numbers::log10e * std::numbers::ln2;
    double k = std::floor(log10_abs);
    double d = std::pow(10.0, log10_abs - k);
    if (d >= 10.0) {
        d /= 10.0;
        k += 1.0;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%.16ge%+.0f", mantissa_ < 0 ? "-" : "", d, k);
    return buf;
}

}  // namespace qorth
