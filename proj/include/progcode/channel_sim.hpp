#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "progcode/codec.hpp"
#include "progcode/exact_real.hpp"
#include "progcode/rng.hpp"

namespace progcode {

/// Monte Carlo sweep configuration. Transmit power is fixed to 1, so
/// sigma = 10^(-snr_db/20).
struct SimConfig {
    unsigned channel_uses = 1;
    unsigned depth = kDefaultDepth;
    std::vector<double> snr_grid_db;
    std::uint64_t trials_per_point = 0;
    std::uint64_t master_seed = 0;
    unsigned workers = 1;
};

/// Throws std::invalid_argument describing the first invalid field.
void validate(const SimConfig& config);

double sigma_from_snr_db(double snr_db);

struct TrialRecord {
    double sigma = 0;
    ExactReal u;
    std::vector<ExactReal> x;
    std::vector<ExactReal> z;
    std::vector<ExactReal> y;
    ExactReal u_hat;
    ExactReal sq_err;
    std::optional<unsigned> ell;
    bool event_a = false;
    /// |U^ - U| <= 2/((ell'-1)!)^N with ell' = min(ell, K+2); only evaluated
    /// on event-A trials.
    std::optional<bool> prop3_bound_ok;
    /// Decoded digits equal the source digits for every k <= min(ell-2, K);
    /// only evaluated on event-A trials.
    std::optional<bool> prop2_digits_ok;
    /// Per channel, the first block whose decoded digit is wrong.
    std::vector<std::optional<unsigned>> first_corrupted;
};

/// N i.i.d. N(0, sigma^2) draws in binary64, each embedded exactly.
/// Throws std::invalid_argument unless sigma > 0.
std::vector<ExactReal> sample_noise(double sigma, unsigned channel_uses, RngStream& stream);

/// Unif[-1/2, 1/2) source on the 2^-53 grid, exactly.
ExactReal sample_source(RngStream& stream);

/// Right side of the shielding guarantee: 2/((ell'-1)!)^N, ell' = min(ell, K+2).
ExactReal shielding_error_bound(unsigned ell, unsigned channel_uses, unsigned depth);

/// True iff |z(n)| < 6 gamma / (ell+2)! for every n.
bool noise_within_regime(std::span<const ExactReal> z, unsigned ell, const ExactReal& gamma);

/// One trial: draws U, encodes, adds noise, decodes and classifies.
TrialRecord run_trial(double sigma, const EncoderParams& params, RngStream& stream);

/// One trial of the uncoded baseline X(n) = sqrt(12) U with linear MMSE
/// combining; returns the squared error. Expected SDR is 1 + N / sigma^2.
double baseline_linear(double sigma, unsigned channel_uses, RngStream& stream);

struct SweepPoint {
    double snr_db = 0;
    double sigma = 0;
    std::uint64_t trials = 0;
    double mse_mean = 0;
    /// Half-width of the normal-approximation 95% interval on mse_mean.
    double mse_ci95 = 0;
    double mse_median = 0;
    std::optional<double> mse_mean_given_a;
    double sdr_db = 0;
    double event_a_rate = 0;
    std::optional<double> event_a_lower_bound;
    std::uint64_t prop3_violations = 0;
    std::uint64_t prop2_violations = 0;
    std::optional<unsigned> ell;
    double opta_sdr = 0;
    double opta_sdr_db = 0;
    std::optional<double> achievable_mse_bound;
    double baseline_mse = 0;
    double baseline_sdr_db = 0;
};

/// Runs every grid point; results are a pure function of the config apart
/// from `workers`, which only changes wall time. Trial i at grid index j
/// uses RngStream::derive(master_seed, j, i).
std::vector<SweepPoint> run_sweep(const SimConfig& config);

/// Stream for trial `trial_index` at grid index `snr_index`.
RngStream trial_stream(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t trial_index);

}  // namespace progcode
