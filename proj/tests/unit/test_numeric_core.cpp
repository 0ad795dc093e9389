#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "progcode/numeric_core.hpp"

namespace progcode {
namespace {

ExactReal frac(long p, long q) { return {BigInt(p), BigInt(q)}; }

// Independent decomposition of a binary64 into mantissa * 2^exp.
ExactReal dyadic_oracle(double v) {
    int exp = 0;
    const double mant = std::frexp(v, &exp);
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    BigInt num(static_cast<long>(scaled));
    const int shift = exp - 53;
    if (shift >= 0) {
        return ExactReal(BigInt(num << shift));
    }
    return {num, BigInt(1) << static_cast<unsigned>(-shift)};
}

TEST(ExactReal, CanonicalForm) {
    const ExactReal a(BigInt(6), BigInt(-8));
    EXPECT_EQ(a.numerator(), -3);
    EXPECT_EQ(a.denominator(), 4);
    EXPECT_EQ(a, frac(-3, 4));
    EXPECT_THROW(ExactReal(BigInt(1), BigInt(0)), std::domain_error);
    EXPECT_THROW(ExactReal(1) / ExactReal(0), std::domain_error);
}

TEST(ExactReal, ParseAndPrint) {
    EXPECT_EQ(ExactReal::parse("10/4"), frac(5, 2));
    EXPECT_EQ(ExactReal::parse("-7"), ExactReal(-7));
    EXPECT_EQ(frac(5, 2).to_string(), "5/2");
    EXPECT_THROW(ExactReal::parse("abc"), std::invalid_argument);
}

TEST(ExactReal, FloorIsUniqueIntegerBelow) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000000, 1000000);
    std::uniform_int_distribution<long> den(1, 5000);
    for (int i = 0; i < 5000; ++i) {
        const ExactReal a = frac(num(rng), den(rng));
        const ExactReal m(a.floor());
        EXPECT_LE(m, a);
        EXPECT_LT(a, m + ExactReal(1));
    }
    EXPECT_EQ(frac(-1, 2).floor(), -1);
    EXPECT_EQ(frac(7, 7).floor(), 1);
}

TEST(ExactReal, AdditionIsInvertible) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-1L << 40, 1L << 40);
    std::uniform_int_distribution<long> den(1, 1L << 30);
    for (int i = 0; i < 5000; ++i) {
        const ExactReal a = frac(num(rng), den(rng));
        const ExactReal b = frac(num(rng), den(rng));
        EXPECT_EQ((a + b) - b, a);
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
    }
}

TEST(Factorial, Examples) {
    EXPECT_EQ(factorial(0), ExactReal(1));
    EXPECT_EQ(factorial(5), ExactReal(120));
    std::uint64_t product = 1;
    for (std::uint64_t i = 2; i <= 13; ++i) product *= i;
    EXPECT_EQ(product, 6227020800ULL);
    EXPECT_EQ(factorial(13), ExactReal(static_cast<std::int64_t>(product)));
}

TEST(TailSum, Examples) {
    EXPECT_EQ(tail_sum_k_over_factorial(2, std::nullopt), frac(1, 2));
    EXPECT_EQ(tail_sum_k_over_factorial(1, 1), frac(1, 2));
    // 1/2 + 2/6 + 3/24
    const ExactReal brute = frac(1, 2) + frac(2, 6) + frac(3, 24);
    EXPECT_EQ(brute, frac(23, 24));
    EXPECT_EQ(tail_sum_k_over_factorial(1, 3), brute);
}

TEST(TailSum, RejectsBadRange) {
    EXPECT_THROW(tail_sum_k_over_factorial(0, 5), std::invalid_argument);
    EXPECT_THROW(tail_sum_k_over_factorial(4, 3), std::invalid_argument);
}

TEST(TailSum, TelescopesAgainstBruteForce) {
    for (unsigned ell = 1; ell <= 50; ++ell) {
        ExactReal partial(0);
        for (unsigned last = ell; last <= 60; ++last) {
            partial += ExactReal(BigInt(last), factorial_int(last + 1));
            const ExactReal closed = tail_sum_k_over_factorial(ell, last);
            ASSERT_EQ(closed, partial) << "ell=" << ell << " K=" << last;
            ASSERT_EQ(closed + factorial(last + 1).reciprocal(), factorial(ell).reciprocal());
        }
    }
}

TEST(EmbedFloat, Examples) {
    EXPECT_EQ(embed_float(0.5), frac(1, 2));
    EXPECT_EQ(embed_float(-2.0), ExactReal(-2));
    const ExactReal tenth = embed_float(0.1);
    EXPECT_EQ(tenth.numerator(), BigInt("3602879701896397"));
    EXPECT_EQ(tenth.denominator(), BigInt(1) << 55);
    EXPECT_EQ(tenth, dyadic_oracle(0.1));
}

TEST(EmbedFloat, RejectsNonFinite) {
    EXPECT_THROW(embed_float(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    EXPECT_THROW(embed_float(std::numeric_limits<double>::infinity()), std::invalid_argument);
    EXPECT_THROW(embed_float(-std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST(EmbedFloat, MatchesBitDecompositionAndIsInjective) {
    std::mt19937_64 rng(3);
    std::set<std::string> seen;
    std::normal_distribution<double> gauss(0.0, 1e3);
    for (int i = 0; i < 5000; ++i) {
        const double v = gauss(rng) * std::ldexp(1.0, static_cast<int>(rng() % 200) - 100);
        const ExactReal e = embed_float(v);
        ASSERT_EQ(e, dyadic_oracle(v));
        ASSERT_EQ(e.to_double(), v);
        seen.insert(e.to_string());
    }
    EXPECT_EQ(seen.size(), 5000U);
    EXPECT_EQ(embed_float(std::numeric_limits<double>::denorm_min()),
              ExactReal(BigInt(1), BigInt(1) << 1074));
}

TEST(FactorialInverseBound, Examples) {
    EXPECT_TRUE(lemma5_bound_holds(720.0, 6));
    EXPECT_TRUE(lemma5_bound_holds(4.0, 6));
    EXPECT_TRUE(lemma5_bound_holds(720.0, 7));
}

TEST(FactorialInverseBound, HoldsOnFactorialGrid) {
    for (unsigned n = 6; n <= 20; ++n) {
        for (double u : {0.5, 0.9, 1.0}) {
            EXPECT_TRUE(lemma5_bound_holds(factorial(n).to_double() * u, n)) << "n=" << n << " u=" << u;
        }
    }
}

TEST(FactorialInverseBound, RejectsPreconditionViolations) {
    EXPECT_THROW(lemma5_bound_holds(3.0, 6), std::invalid_argument);
    EXPECT_THROW(lemma5_bound_holds(100.0, 5), std::invalid_argument);
    EXPECT_THROW(lemma5_bound_holds(721.0, 6), std::invalid_argument);
}

TEST(EulerBracket, ContainsE) {
    const EulerBracket b = euler_bracket(30);
    EXPECT_LT(b.lo, b.hi);
    EXPECT_LE(b.lo.to_double(), std::numbers::e);
    EXPECT_GE(b.hi.to_double(), std::numbers::e);
    EXPECT_LT((b.hi - b.lo).to_double(), 1e-30);
}

}  // namespace
}  // namespace progcode
