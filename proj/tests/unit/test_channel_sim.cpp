#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "progcode/bounds.hpp"
#include "progcode/channel_sim.hpp"
#include "progcode/numeric_core.hpp"

namespace progcode {
namespace {

struct Running {
    double n = 0, mean = 0, m2 = 0;
    void add(double v) {
        n += 1;
        const double d = v - mean;
        mean += d / n;
        m2 += d * (v - mean);
    }
    double variance() const { return m2 / (n - 1); }
    double std_error() const { return std::sqrt(variance() / n); }
};

SimConfig small_config() {
    SimConfig c;
    c.channel_uses = 2;
    c.snr_grid_db = {10.0, 30.0};
    c.trials_per_point = 300;
    c.master_seed = 99;
    return c;
}

void expect_same(const SweepPoint& a, const SweepPoint& b) {
    EXPECT_EQ(a.snr_db, b.snr_db);
    EXPECT_EQ(a.mse_mean, b.mse_mean);
    EXPECT_EQ(a.mse_ci95, b.mse_ci95);
    EXPECT_EQ(a.mse_median, b.mse_median);
    EXPECT_EQ(a.mse_mean_given_a, b.mse_mean_given_a);
    EXPECT_EQ(a.event_a_rate, b.event_a_rate);
    EXPECT_EQ(a.baseline_mse, b.baseline_mse);
    EXPECT_EQ(a.ell, b.ell);
}

TEST(SampleNoise, DeterministicGivenStream) {
    RngStream a(5);
    RngStream b(5);
    EXPECT_EQ(sample_noise(1.0, 4, a), sample_noise(1.0, 4, b));
    RngStream c = trial_stream(1, 2, 3);
    RngStream d = trial_stream(1, 2, 3);
    EXPECT_EQ(sample_noise(0.3, 3, c), sample_noise(0.3, 3, d));
    RngStream e = trial_stream(1, 2, 4);
    RngStream f = trial_stream(1, 2, 3);
    EXPECT_NE(sample_noise(0.3, 3, e), sample_noise(0.3, 3, f));
}

TEST(SampleNoise, ScalesWithSigma) {
    RngStream a(8);
    RngStream b(8);
    const auto unit = sample_noise(1.0, 50, a);
    const auto tiny = sample_noise(1e-6, 50, b);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        EXPECT_EQ(tiny[i], embed_float(1e-6 * unit[i].to_double()));
    }
}

TEST(SampleNoise, RejectsNonPositiveSigma) {
    RngStream s(1);
    EXPECT_THROW(sample_noise(0.0, 1, s), std::invalid_argument);
    EXPECT_THROW(sample_noise(-1.0, 1, s), std::invalid_argument);
}

TEST(SampleNoise, VarianceMatches) {
    RngStream s(12);
    const double sigma = 0.7;
    Running sq;
    for (int block = 0; block < 1000; ++block) {
        for (const auto& z : sample_noise(sigma, 1000, s)) {
            const double v = z.to_double();
            sq.add(v * v);
        }
    }
    EXPECT_NEAR(sq.mean, sigma * sigma, 3.0 * sq.std_error());
}

TEST(SampleSource, OnGridInsideDomain) {
    RngStream s(3);
    for (int i = 0; i < 10000; ++i) {
        const ExactReal u = sample_source(s);
        ASSERT_GE(u, ExactReal(BigInt(-1), BigInt(2)));
        ASSERT_LT(u, ExactReal(BigInt(1), BigInt(2)));
        ASSERT_LE(u.denominator(), BigInt(1) << 53);
    }
}

TEST(RunTrial, NoiselessLimit) {
    for (unsigned n_uses : {1U, 2U, 3U}) {
        const EncoderParams params = EncoderParams::make(n_uses);
        const ExactReal bound = ExactReal(4) / pow(factorial(kDefaultDepth + 1), 2 * n_uses);
        for (std::uint64_t i = 0; i < 50; ++i) {
            RngStream s = trial_stream(7, 0, i);
            const TrialRecord rec = run_trial(1e-30, params, s);
            ASSERT_LE(rec.sq_err, bound);
            ASSERT_TRUE(rec.event_a);
            ASSERT_EQ(rec.prop3_bound_ok, true);
            ASSERT_EQ(rec.prop2_digits_ok, true);
        }
    }
}

TEST(RunTrial, RecordIsConsistent) {
    const EncoderParams params = EncoderParams::make(2);
    for (std::uint64_t i = 0; i < 200; ++i) {
        RngStream s = trial_stream(11, 1, i);
        const TrialRecord rec = run_trial(0.05, params, s);
        ASSERT_EQ(rec.sq_err, (rec.u_hat - rec.u).square());
        ASSERT_EQ(rec.ell, bounds::compute_ell(0.05, params.gamma()));
        ASSERT_EQ(rec.event_a, noise_within_regime(rec.z, *rec.ell, params.gamma()));
        for (std::size_t n = 0; n < 2; ++n) {
            ASSERT_EQ(rec.y[n], rec.x[n] + rec.z[n]);
        }
        if (rec.event_a) {
            ASSERT_EQ(rec.prop3_bound_ok, true);
            ASSERT_EQ(rec.prop2_digits_ok, true);
        } else {
            ASSERT_FALSE(rec.prop3_bound_ok.has_value());
        }
    }
}

TEST(RunTrial, OutsideRegimeStillRuns) {
    const EncoderParams params = EncoderParams::make(1);
    RngStream s(4);
    const TrialRecord rec = run_trial(3.0, params, s);
    EXPECT_FALSE(rec.ell.has_value());
    EXPECT_FALSE(rec.event_a);
    EXPECT_FALSE(rec.prop3_bound_ok.has_value());
}

TEST(ShieldingBound, UsesTruncatedLevel) {
    EXPECT_EQ(shielding_error_bound(4, 2, 16), ExactReal(2) / ExactReal(36));
    EXPECT_EQ(shielding_error_bound(40, 1, 16), ExactReal(2) / factorial(17));
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
    SimConfig c = small_config();
    c.workers = 1;
    const auto one = run_sweep(c);
    c.workers = 4;
    const auto four = run_sweep(c);
    ASSERT_EQ(one.size(), four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        expect_same(one[i], four[i]);
    }
}

TEST(Sweep, SingleTrialIsDegenerate) {
    SimConfig c = small_config();
    c.snr_grid_db = {25.0};
    c.trials_per_point = 1;
    const auto pts = run_sweep(c);
    ASSERT_EQ(pts.size(), 1U);
    RngStream s = trial_stream(c.master_seed, 0, 0);
    const TrialRecord rec = run_trial(sigma_from_snr_db(25.0), EncoderParams::make(2), s);
    EXPECT_EQ(pts[0].mse_mean, rec.sq_err.to_double());
    EXPECT_EQ(pts[0].mse_median, rec.sq_err.to_double());
    EXPECT_EQ(pts[0].mse_ci95, 0.0);
}

TEST(Sweep, RejectsInvalidConfig) {
    SimConfig c = small_config();
    c.snr_grid_db.clear();
    EXPECT_THROW(run_sweep(c), std::invalid_argument);
    c = small_config();
    c.trials_per_point = 0;
    EXPECT_THROW(run_sweep(c), std::invalid_argument);
    c = small_config();
    c.workers = 0;
    EXPECT_THROW(run_sweep(c), std::invalid_argument);
}

TEST(Sweep, MseNonIncreasingAndEventABound) {
    SimConfig c;
    c.channel_uses = 2;
    c.snr_grid_db = {10.0, 20.0, 30.0, 40.0, 50.0};
    c.trials_per_point = 4000;
    c.master_seed = 2024;
    const auto pts = run_sweep(c);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        EXPECT_LE(pts[i].mse_mean, pts[i - 1].mse_mean + pts[i].mse_ci95 + pts[i - 1].mse_ci95) << pts[i].snr_db;
    }
    for (const auto& p : pts) {
        EXPECT_EQ(p.prop3_violations, 0U);
        EXPECT_EQ(p.prop2_violations, 0U);
        if (p.event_a_lower_bound) {
            const double se = std::sqrt(p.event_a_rate * (1.0 - p.event_a_rate) / p.trials);
            EXPECT_GE(p.event_a_rate + 3.0 * se, *p.event_a_lower_bound) << p.snr_db;
        }
        EXPECT_GE(p.mse_mean, bounds::opta_mse(1.0 / (p.sigma * p.sigma), 2));
    }
}

TEST(Sweep, BoundSandwichAt20dB) {
    SimConfig c;
    c.channel_uses = 2;
    c.snr_grid_db = {20.0};
    c.trials_per_point = 100000;
    c.master_seed = 77;
    const SweepPoint p = run_sweep(c).at(0);
    ASSERT_TRUE(p.achievable_mse_bound);
    EXPECT_LE(p.mse_mean, *p.achievable_mse_bound + 3.0 * p.mse_ci95);
    EXPECT_GE(p.mse_mean, bounds::opta_mse(100.0, 2));
    EXPECT_EQ(p.prop3_violations, 0U);
}

TEST(Baseline, SdrMatchesLinearMmse) {
    struct Case {
        double sigma;
        unsigned n_uses;
    };
    for (const Case cs : {Case{1.0, 1}, Case{0.5, 3}, Case{0.1, 2}}) {
        Running err;
        for (std::uint64_t i = 0; i < 1000000; ++i) {
            RngStream s = trial_stream(5, 0, i);
            err.add(baseline_linear(cs.sigma, cs.n_uses, s));
        }
        const double expected = (1.0 / 12.0) / (1.0 + cs.n_uses / (cs.sigma * cs.sigma));
        EXPECT_NEAR(err.mean, expected, 3.0 * err.std_error()) << cs.sigma << " " << cs.n_uses;
    }
}

TEST(Baseline, CollapsesToMeanAtHugeNoise) {
    Running err;
    for (std::uint64_t i = 0; i < 20000; ++i) {
        RngStream s = trial_stream(6, 0, i);
        err.add(baseline_linear(1e6, 2, s));
    }
    EXPECT_NEAR((1.0 / 12.0) / err.mean, 1.0, 0.05);
}

TEST(Power, UnitSecondMomentZeroMean) {
    const EncoderParams params = EncoderParams::make(3);
    Running power;
    Running mean;
    RngStream s(31);
    for (int i = 0; i < 33334; ++i) {
        for (const auto& x : encode(sample_source(s), params).x) {
            const double v = x.to_double();
            power.add(v * v);
            mean.add(v);
        }
    }
    EXPECT_NEAR(power.mean, 1.0, 3.0 * power.std_error());
    EXPECT_NEAR(mean.mean, 0.0, 3.0 * mean.std_error());
}

}  // namespace
}  // namespace progcode
