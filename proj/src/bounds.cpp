#include "progcode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "progcode/codec.hpp"
#include "progcode/numeric_core.hpp"

namespace progcode::bounds {

namespace {

constexpr double kOptaConstant = std::numbers::pi * std::numbers::e / 6.0;

void require_uses(unsigned channel_uses) {
    if (channel_uses < 1) {
        throw std::invalid_argument("bounds: N must be >= 1");
    }
}

void require_sigma(double sigma) {
    if (!std::isfinite(sigma) || sigma <= 0.0) {
        throw std::invalid_argument("bounds: sigma must be positive and finite");
    }
}

const ExactReal& default_gamma() {
    static const ExactReal gamma = compute_gamma(kDefaultDepth);
    return gamma;
}

}  // namespace

double opta_sdr(double snr, unsigned channel_uses) {
    require_uses(channel_uses);
    if (snr < 0.0) {
        throw std::invalid_argument("opta_sdr: snr must be >= 0");
    }
    return kOptaConstant * std::pow(1.0 + snr, static_cast<double>(channel_uses));
}

double opta_mse(double snr, unsigned channel_uses) { return kSourceVariance / opta_sdr(snr, channel_uses); }

std::optional<unsigned> compute_ell(double sigma, const ExactReal& gamma) {
    require_sigma(sigma);
    const ExactReal ratio = ExactReal(6) * gamma / embed_float(sigma);
    if (ratio < factorial(4)) {
        return std::nullopt;
    }
    unsigned ell = 1;
    BigInt next = factorial_int(5);  // (ell+4)!
    while (!(ratio < ExactReal(next))) {
        ++ell;
        next *= (ell + 4);
    }
    return ell;
}

std::optional<unsigned> compute_ell(double sigma) { return compute_ell(sigma, default_gamma()); }

double prop1_tail(double sigma, double gamma) {
    require_sigma(sigma);
    const double w = 6.0 * gamma / sigma;
    if (!(w > 2.0)) {
        throw std::domain_error("prop1_tail: requires 6 gamma / sigma > 2");
    }
    const double lw = std::log2(w);
    const double llw = std::log2(lw);
    return std::exp(-(lw * lw) / (2.0 * llw * llw));
}

double achievable_mse_bound(double sigma, unsigned channel_uses, const ExactReal& gamma) {
    require_uses(channel_uses);
    if (!compute_ell(sigma, gamma)) {
        throw std::domain_error("achievable_mse_bound: sigma outside the ell regime");
    }
    const double g = gamma.to_double();
    const double w = 6.0 * g / sigma;
    const double base = std::pow(std::log2(w), 5) / w;
    const double n = static_cast<double>(channel_uses);
    return 4.0 * std::pow(base, 2.0 * n) + n * prop1_tail(sigma, g);
}

double regime_mse_bound(double sigma, unsigned channel_uses, const ExactReal& gamma) {
    require_uses(channel_uses);
    const auto ell = compute_ell(sigma, gamma);
    if (!ell) {
        throw std::domain_error("regime_mse_bound: sigma outside the ell regime");
    }
    const double n = static_cast<double>(channel_uses);
    const double inv_fact = 1.0 / std::tgamma(static_cast<double>(*ell));  // 1/(ell-1)!
    return 4.0 * std::pow(inv_fact, 2.0 * n) + n * prop1_tail(sigma, gamma.to_double());
}

double event_a_lower_bound(double sigma, unsigned channel_uses, double gamma) {
    require_uses(channel_uses);
    return std::max(0.0, 1.0 - static_cast<double>(channel_uses) * prop1_tail(sigma, gamma));
}

Theorem1Constants theorem1_constants(unsigned channel_uses, double gamma) {
    require_uses(channel_uses);
    const double n = static_cast<double>(channel_uses);
    const double c1 = 4.0 / (std::pow(6.0 * gamma, 2.0 * n) * std::pow(2.0, 2.0 * n));
    const double c2 = c1 * std::pow(2.0 * std::log2(6.0 * gamma), 10.0 * n);
    return {c1, c2};
}

LogSdrBracket corollary1_bracket(double snr, unsigned channel_uses) {
    require_uses(channel_uses);
    if (!(snr > 2.0)) {
        throw std::domain_error("corollary1_bracket: requires snr > 2");
    }
    const double n = static_cast<double>(channel_uses);
    const double lower = n * std::log2(snr) - 10.0 * n * std::log2(std::log2(snr));
    const double upper = n * std::log2(1.0 + snr) + std::log2(kOptaConstant);
    return {lower, upper};
}

BoundReport bound_report(double snr, unsigned channel_uses, const ExactReal& gamma) {
    require_uses(channel_uses);
    if (!(snr > 0.0) || !std::isfinite(snr)) {
        throw std::invalid_argument("bound_report: snr must be positive and finite");
    }
    BoundReport r;
    const double g = gamma.to_double();
    const double sigma = 1.0 / std::sqrt(snr);
    r.snr = snr;
    r.channel_uses = channel_uses;
    r.opta_sdr = opta_sdr(snr, channel_uses);
    r.opta_mse = opta_mse(snr, channel_uses);
    r.ell = compute_ell(sigma, gamma);
    if (r.ell) {
        r.achievable_mse = achievable_mse_bound(sigma, channel_uses, gamma);
    }
    const auto [c1, c2] = theorem1_constants(channel_uses, g);
    r.thm1_c1 = c1;
    r.thm1_c2 = c2;
    if (6.0 * g / sigma > 2.0) {
        r.thm1_c3 = static_cast<double>(channel_uses) * prop1_tail(sigma, g);
    }
    if (snr > 2.0) {
        const auto [lo, hi] = corollary1_bracket(snr, channel_uses);
        r.corollary1_lower_logsdr = lo;
        r.corollary1_upper_logsdr = hi;
    }
    return r;
}

}  // namespace progcode::bounds
