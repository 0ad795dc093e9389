#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "progcode/bounds.hpp"
#include "progcode/codec.hpp"
#include "progcode/numeric_core.hpp"

namespace progcode::bounds {
namespace {

const ExactReal& gamma16() {
    static const ExactReal g = compute_gamma(kDefaultDepth);
    return g;
}

double gamma_d() { return gamma16().to_double(); }

double q_function(double u) { return 0.5 * std::erfc(u / std::numbers::sqrt2); }

double log_factorial2(unsigned n) { return std::lgamma(n + 1.0) / std::numbers::ln2; }

TEST(Opta, Examples) {
    const double c = std::numbers::pi * std::numbers::e / 6.0;
    EXPECT_NEAR(opta_sdr(0.0, 3), 1.42329, 5e-6);
    EXPECT_DOUBLE_EQ(opta_sdr(0.0, 7), c);
    EXPECT_DOUBLE_EQ(opta_sdr(99.0, 1), 100.0 * c);
    EXPECT_DOUBLE_EQ(opta_mse(99.0, 2), (1.0 / 12.0) / opta_sdr(99.0, 2));
    EXPECT_THROW(opta_sdr(1.0, 0), std::invalid_argument);
    EXPECT_THROW(opta_sdr(-1.0, 1), std::invalid_argument);
}

TEST(ComputeEll, Examples) {
    EXPECT_EQ(compute_ell(0.1, gamma16()), 2U);
    EXPECT_EQ(compute_ell(0.1), 2U);
    // 6 * 10 / 0.5 = 120 = 5! sits on the inclusive left edge of ell = 2
    const ExactReal ten(10);
    EXPECT_EQ(compute_ell(0.5, ten), 2U);
    EXPECT_EQ(compute_ell(std::nextafter(0.5, 1.0), ten), 1U);
    EXPECT_EQ(compute_ell(60.0, ten), std::nullopt);
    EXPECT_EQ(compute_ell(6.0 * gamma_d()), std::nullopt);
    EXPECT_THROW(compute_ell(0.0), std::invalid_argument);
    EXPECT_THROW(compute_ell(-1.0), std::invalid_argument);
}

TEST(ComputeEll, MatchesFactorialLadder) {
    for (double sigma = 2.0; sigma > 1e-60; sigma *= 0.63) {
        const auto ell = compute_ell(sigma, gamma16());
        const double log_ratio = std::log2(6.0 * gamma_d() / sigma);
        if (!ell) {
            EXPECT_LT(log_ratio, std::log2(24.0) + 1e-9);
            continue;
        }
        EXPECT_LE(log_factorial2(*ell + 3), log_ratio + 1e-9) << sigma;
        EXPECT_GT(log_factorial2(*ell + 4), log_ratio - 1e-9) << sigma;
    }
}

TEST(Prop1Tail, Examples) {
    const double sigma = 6.0 * gamma_d() / 65536.0;
    EXPECT_NEAR(prop1_tail(sigma, gamma_d()), std::exp(-8.0), 1e-12);
    EXPECT_THROW(prop1_tail(3.0 * gamma_d(), gamma_d()), std::domain_error);
    EXPECT_THROW(prop1_tail(0.0, gamma_d()), std::invalid_argument);
}

TEST(Prop1Tail, MonotoneInSigma) {
    double previous = 1.0;
    for (double w = 16.0; w < 1e300; w *= 3.0) {
        const double t = prop1_tail(6.0 * gamma_d() / w, gamma_d());
        EXPECT_LE(t, previous) << w;
        previous = t;
    }
}

TEST(Prop1Tail, DominatesGaussianTail) {
    for (double sigma = 1.5; sigma > 1e-40; sigma *= 0.8) {
        const auto ell = compute_ell(sigma, gamma16());
        if (!ell) continue;
        EXPECT_GE(prop1_tail(sigma, gamma_d()), 2.0 * q_function(*ell + 3.0)) << sigma;
    }
}

TEST(AchievableBound, FirstTermExample) {
    const double sigma = 6.0 * gamma_d() * std::ldexp(1.0, -20);
    const double first = 4.0 * std::pow(std::ldexp(1.0, -20) * std::pow(20.0, 5), 2);
    const double total = achievable_mse_bound(sigma, 1, gamma16());
    EXPECT_NEAR(total - prop1_tail(sigma, gamma_d()), first, 1e-9 * first);
}

TEST(AchievableBound, RejectsOutsideRegime) {
    EXPECT_THROW(achievable_mse_bound(6.0 * gamma_d(), 1, gamma16()), std::domain_error);
    EXPECT_THROW(achievable_mse_bound(0.01, 0, gamma16()), std::invalid_argument);
    EXPECT_THROW(regime_mse_bound(6.0 * gamma_d(), 1, gamma16()), std::domain_error);
}

TEST(AchievableBound, DominatesRegimeBoundAndConverse) {
    for (unsigned n_uses : {1U, 2U, 3U}) {
        for (double sigma = 1.8; sigma > 1e-60; sigma *= 0.7) {
            if (!compute_ell(sigma, gamma16())) continue;
            const double achievable = achievable_mse_bound(sigma, n_uses, gamma16());
            EXPECT_GE(achievable, regime_mse_bound(sigma, n_uses, gamma16())) << sigma;
            EXPECT_GE(achievable, opta_mse(1.0 / (sigma * sigma), n_uses)) << sigma;
        }
    }
}

TEST(AchievableBound, FactorialChain) {
    for (double sigma = 1e-3; sigma > 1e-200; sigma *= 0.5) {
        const auto ell = compute_ell(sigma, gamma16());
        ASSERT_TRUE(ell);
        if (*ell < 5) continue;
        const double w = 6.0 * gamma_d() / sigma;
        const double lhs = -log_factorial2(*ell - 1);
        const double rhs = -std::log2(w) + 5.0 * std::log2(std::log2(w));
        EXPECT_LE(lhs, rhs + 1e-9) << sigma;
    }
}

TEST(AchievableBound, FactorialDominatesPowerOfTwo) {
    for (unsigned ell = 1; ell <= 50; ++ell) {
        EXPECT_LE(BigInt(1) << (ell + 3), factorial_int(ell + 3)) << ell;
    }
}

TEST(EventA, LowerBoundIsAProbability) {
    for (double sigma = 1.5; sigma > 1e-20; sigma *= 0.5) {
        for (unsigned n_uses : {1U, 3U, 10U}) {
            const double p = event_a_lower_bound(sigma, n_uses, gamma_d());
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
        }
    }
}

TEST(Theorem1, Constants) {
    const double g = gamma_d();
    const auto one = theorem1_constants(1, g);
    EXPECT_NEAR(one.c1, 4.83e-4, 5e-6);
    EXPECT_NEAR(one.c1, 4.0 / std::pow(12.0 * g, 2), 1e-18);
    EXPECT_NEAR(one.c2 / one.c1, std::pow(2.0 * std::log2(6.0 * g), 10), 1e-6);
    const auto two = theorem1_constants(2, g);
    EXPECT_NEAR(two.c1, 4.0 / std::pow(12.0 * g, 4), 1e-20);
    EXPECT_THROW(theorem1_constants(0, g), std::invalid_argument);
}

TEST(Corollary1, Examples) {
    const auto b = corollary1_bracket(65536.0, 1);
    EXPECT_DOUBLE_EQ(b.lower, -24.0);
    EXPECT_NEAR(b.upper, 16.51, 5e-3);
    EXPECT_THROW(corollary1_bracket(2.0, 1), std::domain_error);
}

TEST(Corollary1, UpperSlopeAndGap) {
    for (unsigned n_uses : {1U, 2U, 3U}) {
        const auto a = corollary1_bracket(1e10, n_uses);
        const auto b = corollary1_bracket(1e20, n_uses);
        EXPECT_NEAR((b.upper - a.upper) / (std::log2(1e20) - std::log2(1e10)), n_uses, 1e-6);
        const double lls = std::log2(std::log2(1e20));
        EXPECT_NEAR(b.upper - b.lower - 10.0 * n_uses * lls, std::log2(std::numbers::pi * std::numbers::e / 6.0), 1e-6);
    }
    EXPECT_LE(corollary1_bracket(1e30, 1).lower, corollary1_bracket(1e30, 1).upper);
}

TEST(BoundReport, Consistent) {
    const BoundReport r = bound_report(1e4, 2, gamma16());
    EXPECT_DOUBLE_EQ(r.opta_mse, (1.0 / 12.0) / r.opta_sdr);
    ASSERT_TRUE(r.ell);
    ASSERT_TRUE(r.achievable_mse);
    EXPECT_GE(*r.achievable_mse, r.opta_mse);
    ASSERT_TRUE(r.thm1_c3);
    EXPECT_DOUBLE_EQ(*r.thm1_c3, 2.0 * prop1_tail(0.01, gamma_d()));
    ASSERT_TRUE(r.corollary1_lower_logsdr);

    const BoundReport low = bound_report(0.01, 1, gamma16());
    EXPECT_FALSE(low.ell);
    EXPECT_FALSE(low.achievable_mse);
    EXPECT_FALSE(low.corollary1_lower_logsdr);
}

}  // namespace
}  // namespace progcode::bounds
