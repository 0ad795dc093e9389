#include "progcode/channel_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "progcode/bounds.hpp"
#include "progcode/numeric_core.hpp"

namespace progcode {

namespace {

constexpr std::uint64_t kBaselineDomain = 0x8000000000000000ULL;

// Per-trial results kept for the ordered reduction.
struct TrialSummary {
    ExactReal sq_err;
    double sq_err_approx = 0;
    bool event_a = false;
    bool prop3_violation = false;
    bool prop2_violation = false;
    double baseline_sq_err = 0;
};

template <typename Fn>
void parallel_for(std::uint64_t count, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, count)));
    if (workers == 1) {
        for (std::uint64_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                    next.store(count);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double to_db(double ratio) { return 10.0 * std::log10(ratio); }

}  // namespace

void validate(const SimConfig& config) {
    if (config.channel_uses < 1) {
        throw std::invalid_argument("SimConfig: N must be >= 1");
    }
    if (config.depth < 8) {
        throw std::invalid_argument("SimConfig: depth must be >= 8");
    }
    if (config.snr_grid_db.empty()) {
        throw std::invalid_argument("SimConfig: SNR grid is empty");
    }
    for (double snr : config.snr_grid_db) {
        if (!std::isfinite(snr)) {
            throw std::invalid_argument("SimConfig: SNR grid contains a non-finite value");
        }
    }
    if (config.trials_per_point < 1) {
        throw std::invalid_argument("SimConfig: trials per point must be >= 1");
    }
    if (config.workers < 1) {
        throw std::invalid_argument("SimConfig: workers must be >= 1");
    }
}

double sigma_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

RngStream trial_stream(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t trial_index) {
    return RngStream::derive(master_seed, snr_index, trial_index);
}

std::vector<ExactReal> sample_noise(double sigma, unsigned channel_uses, RngStream& stream) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("sample_noise: sigma must be positive and finite");
    }
    std::vector<ExactReal> z;
    z.reserve(channel_uses);
    for (unsigned n = 0; n < channel_uses; ++n) {
        z.push_back(embed_float(sigma * stream.standard_normal()));
    }
    return z;
}

ExactReal sample_source(RngStream& stream) {
    static const BigInt two53 = BigInt(1) << 53;
    static const BigInt two52 = BigInt(1) << 52;
    return {BigInt(static_cast<unsigned long>(stream.bits53())) - two52, two53};
}

ExactReal shielding_error_bound(unsigned ell, unsigned channel_uses, unsigned depth) {
    const unsigned effective = std::min(ell, depth + 2);
    return ExactReal(2) / pow(factorial(effective - 1), channel_uses);
}

bool noise_within_regime(std::span<const ExactReal> z, unsigned ell, const ExactReal& gamma) {
    const ExactReal threshold = ExactReal(6) * gamma / factorial(ell + 2);
    return std::all_of(z.begin(), z.end(), [&](const ExactReal& v) { return v.abs() < threshold; });
}

TrialRecord run_trial(double sigma, const EncoderParams& params, RngStream& stream) {
    const unsigned n_uses = params.channel_uses();
    const unsigned depth = params.depth();
    TrialRecord rec;
    rec.sigma = sigma;
    rec.u = sample_source(stream);
    rec.z = sample_noise(sigma, n_uses, stream);
    rec.x = encode(rec.u, params).x;
    rec.y.reserve(n_uses);
    for (unsigned n = 0; n < n_uses; ++n) {
        rec.y.push_back(rec.x[n] + rec.z[n]);
    }
    const DecodeResult decoded = decode_detailed(rec.y, params);
    rec.u_hat = decoded.u_hat;
    rec.sq_err = (rec.u_hat - rec.u).square();

    const ProgressiveDigits truth = source_digits(rec.u, n_uses, depth);
    rec.first_corrupted.assign(n_uses, std::nullopt);
    for (unsigned n = 1; n <= n_uses; ++n) {
        for (unsigned k = 1; k <= depth; ++k) {
            const std::size_t p = truth.index(k, n);
            if (decoded.digits[p] != static_cast<std::int64_t>(truth.digits()[p])) {
                rec.first_corrupted[n - 1] = k;
                break;
            }
        }
    }

    rec.ell = bounds::compute_ell(sigma, params.gamma());
    if (rec.ell) {
        rec.event_a = noise_within_regime(rec.z, *rec.ell, params.gamma());
    }
    if (rec.event_a) {
        const unsigned ell = *rec.ell;
        rec.prop3_bound_ok = (rec.u_hat - rec.u).abs() <= shielding_error_bound(ell, n_uses, depth);
        const unsigned guaranteed = ell >= 2 ? std::min(ell - 2, depth) : 0;
        rec.prop2_digits_ok = std::all_of(rec.first_corrupted.begin(), rec.first_corrupted.end(),
                                          [&](const std::optional<unsigned>& k) { return !k || *k > guaranteed; });
    }
    return rec;
}

double baseline_linear(double sigma, unsigned channel_uses, RngStream& stream) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("baseline_linear: sigma must be positive");
    }
    const double u = stream.uniform() - 0.5;
    const double root12 = std::sqrt(12.0);
    const double x = root12 * u;
    double sum = 0.0;
    for (unsigned n = 0; n < channel_uses; ++n) {
        sum += x + sigma * stream.standard_normal();
    }
    const double u_hat = sum / (root12 * (static_cast<double>(channel_uses) + sigma * sigma));
    return (u_hat - u) * (u_hat - u);
}

std::vector<SweepPoint> run_sweep(const SimConfig& config) {
    validate(config);
    const EncoderParams params = EncoderParams::make(config.channel_uses, config.depth);
    const std::uint64_t trials = config.trials_per_point;
    const double gamma = params.gamma().to_double();

    std::vector<SweepPoint> points;
    points.reserve(config.snr_grid_db.size());
    for (std::size_t j = 0; j < config.snr_grid_db.size(); ++j) {
        const double snr_db = config.snr_grid_db[j];
        const double sigma = sigma_from_snr_db(snr_db);

        std::vector<TrialSummary> results(trials);
        parallel_for(trials, config.workers, [&](std::uint64_t i) {
            RngStream stream = trial_stream(config.master_seed, j, i);
            const TrialRecord rec = run_trial(sigma, params, stream);
            RngStream base_stream = trial_stream(config.master_seed, j | kBaselineDomain, i);
            TrialSummary& out = results[i];
            out.sq_err = rec.sq_err;
            out.sq_err_approx = rec.sq_err.to_double();
            out.event_a = rec.event_a;
            out.prop3_violation = rec.prop3_bound_ok.has_value() && !*rec.prop3_bound_ok;
            out.prop2_violation = rec.prop2_digits_ok.has_value() && !*rec.prop2_digits_ok;
            out.baseline_sq_err = baseline_linear(sigma, config.channel_uses, base_stream);
        });

        // Ordered reduction; the exact sums are order-free anyway.
        SweepPoint pt;
        pt.snr_db = snr_db;
        pt.sigma = sigma;
        pt.trials = trials;
        ExactReal sum(0);
        ExactReal sum_sq(0);
        ExactReal sum_given_a(0);
        std::uint64_t count_a = 0;
        double baseline_sum = 0.0;
        std::vector<double> approx;
        approx.reserve(trials);
        for (const auto& r : results) {
            sum += r.sq_err;
            sum_sq += r.sq_err.square();
            approx.push_back(r.sq_err_approx);
            if (r.event_a) {
                ++count_a;
                sum_given_a += r.sq_err;
            }
            pt.prop3_violations += r.prop3_violation ? 1 : 0;
            pt.prop2_violations += r.prop2_violation ? 1 : 0;
            baseline_sum += r.baseline_sq_err;
        }
        const ExactReal n_exact(static_cast<std::int64_t>(trials));
        const ExactReal mean = sum / n_exact;
        pt.mse_mean = mean.to_double();
        if (trials > 1) {
            const ExactReal var = (sum_sq - n_exact * mean.square()) / ExactReal(static_cast<std::int64_t>(trials - 1));
            pt.mse_ci95 = 1.96 * std::sqrt(var.to_double() / static_cast<double>(trials));
        }
        pt.mse_median = median_of(std::move(approx));
        if (count_a > 0) {
            pt.mse_mean_given_a = (sum_given_a / ExactReal(static_cast<std::int64_t>(count_a))).to_double();
        }
        pt.sdr_db = to_db(bounds::kSourceVariance / pt.mse_mean);
        pt.event_a_rate = static_cast<double>(count_a) / static_cast<double>(trials);
        if (6.0 * gamma / sigma > 2.0) {
            pt.event_a_lower_bound = bounds::event_a_lower_bound(sigma, config.channel_uses, gamma);
        }
        pt.ell = bounds::compute_ell(sigma, params.gamma());
        const double snr = 1.0 / (sigma * sigma);
        pt.opta_sdr = bounds::opta_sdr(snr, config.channel_uses);
        pt.opta_sdr_db = to_db(pt.opta_sdr);
        if (pt.ell) {
            pt.achievable_mse_bound = bounds::achievable_mse_bound(sigma, config.channel_uses, params.gamma());
        }
        pt.baseline_mse = baseline_sum / static_cast<double>(trials);
        pt.baseline_sdr_db = to_db(bounds::kSourceVariance / pt.baseline_mse);
        points.push_back(pt);
    }
    return points;
}

}  // namespace progcode
