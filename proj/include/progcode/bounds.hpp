#pragma once

#include <optional>

#include "progcode/exact_real.hpp"

namespace progcode::bounds {

// All "log" below is base 2; "exp" is natural.

/// Variance of the Unif[-1/2, 1/2] source.
inline constexpr double kSourceVariance = 1.0 / 12.0;

/// Separation converse (pi e / 6)(1 + snr)^N for the uniform source.
double opta_sdr(double snr, unsigned channel_uses);
/// kSourceVariance / opta_sdr.
double opta_mse(double snr, unsigned channel_uses);

/// The unique ell >= 1 with (ell+3)! <= 6 gamma / sigma < (ell+4)!, decided
/// exactly on the embedded sigma; nullopt when 6 gamma / sigma < 4!.
/// Throws std::invalid_argument unless sigma > 0 and finite.
std::optional<unsigned> compute_ell(double sigma, const ExactReal& gamma);
/// Uses compute_gamma(kDefaultDepth).
std::optional<unsigned> compute_ell(double sigma);

/// exp(-(log w)^2 / (2 (log log w)^2)) with w = 6 gamma / sigma.
/// Throws std::domain_error unless w > 2.
double prop1_tail(double sigma, double gamma);

/// 4 (sigma/(6 gamma) (log w)^5)^(2N) + N prop1_tail(sigma).
/// Throws std::domain_error when compute_ell(sigma) has no value.
double achievable_mse_bound(double sigma, unsigned channel_uses, const ExactReal& gamma);

/// The intermediate form 4/((ell-1)!)^(2N) + N prop1_tail(sigma).
double regime_mse_bound(double sigma, unsigned channel_uses, const ExactReal& gamma);

/// Union bound on P(event A): 1 - N prop1_tail(sigma), floored at 0.
double event_a_lower_bound(double sigma, unsigned channel_uses, double gamma);

struct Theorem1Constants {
    double c1;
    double c2;
};
/// c1 = 4/((6 gamma)^(2N) 2^(2N)), c2 = c1 (2 log(6 gamma))^(10N).
Theorem1Constants theorem1_constants(unsigned channel_uses, double gamma);

struct LogSdrBracket {
    double lower;
    double upper;
};
/// (N log snr - 10 N log log snr, N log(1 + snr) + log(pi e / 6)), with the
/// o(log log snr) slack of the lower side dropped. Requires snr > 2.
LogSdrBracket corollary1_bracket(double snr, unsigned channel_uses);

struct BoundReport {
    double snr = 0;
    unsigned channel_uses = 0;
    double opta_sdr = 0;
    double opta_mse = 0;
    std::optional<unsigned> ell;
    std::optional<double> achievable_mse;
    double thm1_c1 = 0;
    double thm1_c2 = 0;
    /// Second term of the achievable bound at this snr; nullopt outside the
    /// domain of prop1_tail.
    std::optional<double> thm1_c3;
    std::optional<double> corollary1_lower_logsdr;
    std::optional<double> corollary1_upper_logsdr;
};
/// Everything above at sigma = 1/sqrt(snr) (unit power).
BoundReport bound_report(double snr, unsigned channel_uses, const ExactReal& gamma);

}  // namespace progcode::bounds
