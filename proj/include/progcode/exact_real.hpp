#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace progcode {

using BigInt = mpz_class;

/// Arbitrary-precision rational in canonical form (reduced, positive
/// denominator). Every codec-side quantity is carried as an ExactReal so no
/// floating-point rounding enters encoding, decoding or error measurement.
class ExactReal {
public:
    ExactReal() = default;
    ExactReal(std::int64_t value);  // NOLINT(google-explicit-constructor)
    ExactReal(BigInt numerator, BigInt denominator);
    explicit ExactReal(const BigInt& integer);
    explicit ExactReal(mpq_class value);

    /// Parses "p" or "p/q" in base 10.
    static ExactReal parse(std::string_view text);

    [[nodiscard]] BigInt numerator() const { return value_.get_num(); }
    [[nodiscard]] BigInt denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }

    /// Largest integer m with m <= *this.
    [[nodiscard]] BigInt floor() const;
    [[nodiscard]] ExactReal abs() const;
    [[nodiscard]] ExactReal square() const { return *this * *this; }
    [[nodiscard]] ExactReal reciprocal() const;

    /// Nearest binary64 value, rounded toward zero (mpq_get_d semantics).
    [[nodiscard]] double to_double() const { return value_.get_d(); }
    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string to_string() const;

    friend ExactReal operator+(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator-(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator*(const ExactReal& a, const ExactReal& b);
    /// Throws std::domain_error on division by zero.
    friend ExactReal operator/(const ExactReal& a, const ExactReal& b);
    friend ExactReal operator-(const ExactReal& a);

    ExactReal& operator+=(const ExactReal& other);
    ExactReal& operator-=(const ExactReal& other);
    ExactReal& operator*=(const ExactReal& other);
    ExactReal& operator/=(const ExactReal& other);

    friend bool operator==(const ExactReal& a, const ExactReal& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactReal& a, const ExactReal& b);

    friend std::ostream& operator<<(std::ostream& os, const ExactReal& value);

private:
    struct CanonicalTag {};
    ExactReal(mpq_class value, CanonicalTag) : value_(std::move(value)) {}

    mpq_class value_{0};
};

ExactReal min(const ExactReal& a, const ExactReal& b);
ExactReal max(const ExactReal& a, const ExactReal& b);
ExactReal clamp(const ExactReal& value, const ExactReal& lo, const ExactReal& hi);

/// base^exponent for a non-negative exponent.
ExactReal pow(const ExactReal& base, unsigned exponent);

}  // namespace progcode
