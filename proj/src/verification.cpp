#include "progcode/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "progcode/numeric_core.hpp"
#include "progcode/progressive_expansion.hpp"
#include "progcode/rng.hpp"
#include "progcode/stats.hpp"

namespace progcode {

namespace {

constexpr double kSignificance = 1e-3;

std::uint64_t below(RngStream& rng, std::uint64_t bound) { return rng.next_u64() % bound; }

CheckResult check_telescoping(unsigned depth) {
    CheckResult r{"telescoping_identity", true, {}};
    for (unsigned ell = 1; ell <= depth; ++ell) {
        // brute-force partial sums of k/(k+1)!
        ExactReal partial(0);
        for (unsigned last = ell; last <= depth + 10; ++last) {
            partial += ExactReal(BigInt(last), factorial_int(last + 1));
            const ExactReal closed = tail_sum_k_over_factorial(ell, last);
            if (closed != partial || closed + factorial(last + 1).reciprocal() != factorial(ell).reciprocal()) {
                r.passed = false;
                r.detail = "mismatch at ell=" + std::to_string(ell) + " K=" + std::to_string(last);
                return r;
            }
        }
    }
    r.detail = "ell <= " + std::to_string(depth) + ", K <= " + std::to_string(depth + 10);
    return r;
}

CheckResult check_small_values(std::uint64_t cases, RngStream& rng) {
    CheckResult r{"small_value_zero_digits", true, {}};
    for (std::uint64_t i = 0; i < cases; ++i) {
        const unsigned s_len = 1 + static_cast<unsigned>(below(rng, 3));
        const unsigned ell = 1 + static_cast<unsigned>(below(rng, 6));
        const unsigned t = 1 + static_cast<unsigned>(below(rng, s_len));
        const ExactReal threshold = position_weight(s_len, ell, t);
        const std::uint64_t q = 1 + below(rng, 1000000);
        const ExactReal x = threshold * ExactReal(BigInt(static_cast<unsigned long>(below(rng, q))),
                                                  BigInt(static_cast<unsigned long>(q)));
        if (!leading_digits_zero_upto(x, s_len, ell, t)) {
            r.passed = false;
            r.detail = "x=" + x.to_string() + " S=" + std::to_string(s_len);
            return r;
        }
    }
    r.detail = std::to_string(cases) + " fuzzed rationals";
    return r;
}

CheckResult check_finite_round_trip(std::uint64_t cases, RngStream& rng) {
    CheckResult r{"finite_expansion_round_trip", true, {}};
    for (std::uint64_t i = 0; i < cases; ++i) {
        const unsigned s_len = 1 + static_cast<unsigned>(below(rng, 3));
        const unsigned depth = 1 + static_cast<unsigned>(below(rng, 8));
        std::vector<std::uint32_t> digits;
        for (unsigned k = 1; k <= depth; ++k) {
            for (unsigned s = 1; s <= s_len; ++s) {
                digits.push_back(static_cast<std::uint32_t>(below(rng, k + 1)));
            }
        }
        const ProgressiveDigits d(s_len, depth, digits);
        if (expand(reconstruct(d), s_len, depth) != d) {
            r.passed = false;
            r.detail = "round trip failed for S=" + std::to_string(s_len) + " K=" + std::to_string(depth);
            return r;
        }
    }
    r.detail = std::to_string(cases) + " constructed digit arrays";
    return r;
}

CheckResult check_factorial_inverse() {
    CheckResult r{"factorial_inverse_bound", true, {}};
    for (unsigned n = 6; n <= 20; ++n) {
        for (double u : {0.5, 0.9, 1.0}) {
            const double omega = factorial(n).to_double() * u;
            if (!lemma5_bound_holds(omega, n)) {
                r.passed = false;
                r.detail = "fails at n=" + std::to_string(n);
                return r;
            }
        }
    }
    r.detail = "omega = n! u, u in {0.5, 0.9, 1}, 6 <= n <= 20";
    return r;
}

CheckResult check_digit_law(std::uint64_t samples, std::uint64_t seed) {
    CheckResult r{"digit_law_uniform_pairwise", true, {}};
    const DigitStatistics st = digit_statistics(samples, 2, 4, seed);
    double worst = 1.0;
    for (const auto& m : st.marginal) {
        worst = std::min(worst, stats::chi_square_uniform(m).p_value);
    }
    for (const auto& pair : st.joint) {
        worst = std::min(worst, stats::chi_square_independence(pair.counts, pair.rows, pair.cols).p_value);
    }
    // Bonferroni over all marginals and pairs
    const double tests = static_cast<double>(st.marginal.size() + st.joint.size());
    r.passed = worst >= kSignificance / tests;
    std::ostringstream os;
    os << samples << " samples, S=2, K=4, min p-value " << worst;
    r.detail = os.str();
    return r;
}

CheckResult check_symbol_range(unsigned depth) {
    CheckResult r{"codebook_range_and_moments", true, {}};
    const CodebookConstants c = codebook_constants(depth);
    // |X~| <= 16.5 - 6e, tested against the lower rational bracket.
    const bool range_ok = c.symbol_max <= c.range_bound_lo && -c.symbol_min <= c.range_bound_lo;
    const double moment = c.second_moment.to_double();
    const bool moment_ok = std::abs(moment - 0.0173814) < 5e-8;
    const bool mean_ok = c.mean.abs() <= factorial(depth + 3).reciprocal() * ExactReal(6);
    r.passed = range_ok && moment_ok && mean_ok;
    std::ostringstream os;
    os.precision(9);
    os << "max " << c.symbol_max.to_double() << ", min " << c.symbol_min.to_double() << ", E[X^2] " << moment;
    r.detail = os.str();
    return r;
}

}  // namespace

std::vector<CheckResult> verify_lemmas(const LemmaSuiteOptions& options) {
    RngStream rng(options.seed);
    std::vector<CheckResult> out;
    out.push_back(check_telescoping(options.depth));
    out.push_back(check_small_values(options.fuzz_cases, rng));
    out.push_back(check_finite_round_trip(options.fuzz_cases, rng));
    out.push_back(check_factorial_inverse());
    out.push_back(check_digit_law(options.digit_samples, options.seed));
    out.push_back(check_symbol_range(kDefaultDepth));
    return out;
}

CodebookConstants codebook_constants(unsigned depth) {
    CodebookConstants c;
    c.depth = depth;
    SymbolMoments m = symbol_moments(depth);
    c.second_moment = m.second_moment;
    c.alpha = m.alpha;
    c.mean = m.mean;
    c.gamma = compute_gamma(depth);
    const EulerBracket e = euler_bracket(std::max(40U, offset_depth(depth) + 10));
    const ExactReal half_33(BigInt(33), BigInt(2));
    c.range_bound_lo = half_33 - ExactReal(6) * e.hi;
    c.range_bound_hi = half_33 - ExactReal(6) * e.lo;
    const EncoderParams params(1, depth, c.gamma);
    c.symbol_min = params.symbol_min();
    c.symbol_max = params.symbol_max();
    c.gap = central_gap(depth);
    return c;
}

}  // namespace progcode
