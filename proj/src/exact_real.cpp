#include "progcode/exact_real.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace progcode {

ExactReal::ExactReal(std::int64_t value) {
    // mpz from long is 64-bit on LP64 platforms
    value_ = mpq_class(BigInt(static_cast<long>(value)));
}

ExactReal::ExactReal(BigInt numerator, BigInt denominator) {
    if (denominator == 0) {
        throw std::domain_error("ExactReal: zero denominator");
    }
    value_ = mpq_class(std::move(numerator), std::move(denominator));
    value_.canonicalize();
}

ExactReal::ExactReal(const BigInt& integer) : value_(integer) {}

ExactReal::ExactReal(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) {
        throw std::domain_error("ExactReal: zero denominator");
    }
    value_.canonicalize();
}

ExactReal ExactReal::parse(std::string_view text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return ExactReal(BigInt(std::string(text), 10));
        }
        return {BigInt(std::string(text.substr(0, slash)), 10),
                BigInt(std::string(text.substr(slash + 1)), 10)};
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("ExactReal: cannot parse '" + std::string(text) + "'");
    }
}

BigInt ExactReal::floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return out;
}

ExactReal ExactReal::abs() const { return {mpq_class(::abs(value_)), CanonicalTag{}}; }

ExactReal ExactReal::reciprocal() const {
    if (is_zero()) {
        throw std::domain_error("ExactReal: reciprocal of zero");
    }
    return {mpq_class(1 / value_), CanonicalTag{}};
}

std::string ExactReal::to_string() const { return value_.get_str(10); }

ExactReal operator+(const ExactReal& a, const ExactReal& b) { return {mpq_class(a.value_ + b.value_), ExactReal::CanonicalTag{}}; }
ExactReal operator-(const ExactReal& a, const ExactReal& b) { return {mpq_class(a.value_ - b.value_), ExactReal::CanonicalTag{}}; }
ExactReal operator*(const ExactReal& a, const ExactReal& b) { return {mpq_class(a.value_ * b.value_), ExactReal::CanonicalTag{}}; }

ExactReal operator/(const ExactReal& a, const ExactReal& b) {
    if (b.is_zero()) {
        throw std::domain_error("ExactReal: division by zero");
    }
    return {mpq_class(a.value_ / b.value_), ExactReal::CanonicalTag{}};
}

ExactReal operator-(const ExactReal& a) { return {mpq_class(-a.value_), ExactReal::CanonicalTag{}}; }

ExactReal& ExactReal::operator+=(const ExactReal& other) {
    value_ += other.value_;
    return *this;
}

ExactReal& ExactReal::operator-=(const ExactReal& other) {
    value_ -= other.value_;
    return *this;
}

ExactReal& ExactReal::operator*=(const ExactReal& other) {
    value_ *= other.value_;
    return *this;
}

ExactReal& ExactReal::operator/=(const ExactReal& other) {
    if (other.is_zero()) {
        throw std::domain_error("ExactReal: division by zero");
    }
    value_ /= other.value_;
    return *this;
}

std::strong_ordering operator<=>(const ExactReal& a, const ExactReal& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const ExactReal& value) { return os << value.to_string(); }

ExactReal min(const ExactReal& a, const ExactReal& b) { return b < a ? b : a; }
ExactReal max(const ExactReal& a, const ExactReal& b) { return a < b ? b : a; }

ExactReal clamp(const ExactReal& value, const ExactReal& lo, const ExactReal& hi) {
    if (value < lo) return lo;
    if (hi < value) return hi;
    return value;
}

ExactReal pow(const ExactReal& base, unsigned exponent) {
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return {num, den};
}

}  // namespace progcode
