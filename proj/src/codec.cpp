#include "progcode/codec.hpp"

#include <stdexcept>
#include <string>

#include "progcode/numeric_core.hpp"

namespace progcode {

namespace {

const ExactReal kHalf{BigInt(1), BigInt(2)};

// 1/(k+3)! summed over K < k <= offset_depth(K), plus the closing term.
ExactReal offset_tail(unsigned depth) {
    ExactReal tail(0);
    for (unsigned k = depth + 1; k <= offset_depth(depth); ++k) {
        tail += factorial(k + 3).reciprocal();
    }
    const unsigned m = offset_depth(depth) + 3;
    return tail + ExactReal(BigInt(1), factorial_int(m) * m);
}

std::vector<std::uint32_t> max_digits(unsigned depth) {
    std::vector<std::uint32_t> d(depth);
    for (unsigned k = 1; k <= depth; ++k) {
        d[k - 1] = k;
    }
    return d;
}

}  // namespace

SymbolMoments symbol_moments(unsigned depth) {
    if (depth < 1) {
        throw std::invalid_argument("symbol_moments: depth must be >= 1");
    }
    ExactReal alpha(0);
    ExactReal digit_mean_sum(0);  // sum E[U_k + 1]/(k+3)! = sum (k+2)/(2 (k+3)!)
    for (unsigned k = 1; k <= depth; ++k) {
        const BigInt f = factorial_int(k + 3);
        alpha += ExactReal(BigInt(k * (k + 2)), 12 * f * f);
        digit_mean_sum += ExactReal(BigInt(k + 2), 2 * f);
    }
    ExactReal mean = ExactReal(6) * (digit_mean_sum + offset_tail(depth)) - kHalf;
    ExactReal second = ExactReal(36) * alpha + mean.square();
    return {std::move(alpha), std::move(mean), std::move(second)};
}

ExactReal compute_gamma(unsigned depth) {
    if (depth < 8) {
        throw std::invalid_argument("compute_gamma: depth must be >= 8, got " + std::to_string(depth));
    }
    constexpr unsigned kBits = 96;
    const ExactReal m = symbol_moments(depth).second_moment;
    // gamma = floor(2^kBits / sqrt(m)) / 2^kBits = isqrt(den 2^(2 kBits) / num) / 2^kBits
    BigInt scaled = m.denominator() << (2 * kBits);
    scaled /= m.numerator();
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
    return {root, BigInt(1) << kBits};
}

EncoderParams EncoderParams::make(unsigned channel_uses, unsigned depth) {
    return {channel_uses, depth, compute_gamma(depth)};
}

EncoderParams::EncoderParams(unsigned channel_uses, unsigned depth, ExactReal gamma)
    : channel_uses_(channel_uses), depth_(depth), gamma_(std::move(gamma)) {
    if (channel_uses < 1) {
        throw std::invalid_argument("EncoderParams: channel uses must be >= 1");
    }
    if (depth < 1) {
        throw std::invalid_argument("EncoderParams: depth must be >= 1");
    }
    if (gamma_.sign() <= 0) {
        throw std::invalid_argument("EncoderParams: gamma must be positive");
    }
    const ExactReal power = gamma_.square() * symbol_moments(depth).second_moment;
    const ExactReal slack(BigInt(1), BigInt(1000000000));
    if (power > ExactReal(1) || power < ExactReal(1) - slack) {
        throw std::invalid_argument("EncoderParams: gamma does not normalize the symbol power to 1");
    }
    const std::vector<std::uint32_t> zeros(depth, 0);
    symbol_min_ = normalized_symbol(zeros, depth);
    symbol_max_ = normalized_symbol(max_digits(depth), depth);
}

ExactReal normalized_symbol(std::span<const std::uint32_t> channel_digits, unsigned depth) {
    if (channel_digits.size() != depth) {
        throw std::invalid_argument("normalized_symbol: expected one digit per block");
    }
    // X~ + 1/2 = 6 sum_k c_k/(k+3)! = num / prod_{k<=K'} (k+3), Horner in k.
    BigInt num = 0;
    BigInt den = 1;
    for (unsigned k = 1; k <= offset_depth(depth); ++k) {
        std::uint32_t c = 1;
        if (k <= depth) {
            const std::uint32_t digit = channel_digits[k - 1];
            if (digit > k) {
                throw std::invalid_argument("normalized_symbol: digit out of range at block " + std::to_string(k));
            }
            c += digit;
        }
        mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), k + 3);
        mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), k + 3);
        num += c;
    }
    // closing term 6/((2K+3)! (2K+3)) = 1/(den (2K+3))
    const unsigned m = offset_depth(depth) + 3;
    mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), m);
    mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), m);
    num += 1;
    return ExactReal(num, den) - kHalf;
}

ProgressiveDigits source_digits(const ExactReal& u, unsigned channel_uses, unsigned depth) {
    if (u < -kHalf || u >= kHalf) {
        throw std::invalid_argument("encode: U must lie in [-1/2, 1/2), got " + u.to_string());
    }
    return expand(u + kHalf, channel_uses, depth);
}

std::vector<ExactReal> encode_normalized(const ExactReal& u, const EncoderParams& params) {
    const unsigned n_uses = params.channel_uses();
    const unsigned depth = params.depth();
    const ProgressiveDigits digits = source_digits(u, n_uses, depth);
    std::vector<ExactReal> out;
    out.reserve(n_uses);
    std::vector<std::uint32_t> column(depth);
    for (unsigned n = 1; n <= n_uses; ++n) {
        for (unsigned k = 1; k <= depth; ++k) {
            column[k - 1] = digits.at(k, n);
        }
        out.push_back(normalized_symbol(column, depth));
    }
    return out;
}

ChannelFrame encode(const ExactReal& u, const EncoderParams& params) {
    ChannelFrame frame{encode_normalized(u, params)};
    for (auto& x : frame.x) {
        x *= params.gamma();
    }
    return frame;
}

DecodeResult decode_detailed(std::span<const ExactReal> y, const EncoderParams& params) {
    const unsigned n_uses = params.channel_uses();
    const unsigned depth = params.depth();
    if (y.size() != n_uses) {
        throw std::invalid_argument("decode: expected " + std::to_string(n_uses) + " channel outputs, got " +
                                    std::to_string(y.size()));
    }
    const ExactReal six(6);
    std::vector<std::int64_t> digits(static_cast<std::size_t>(n_uses) * depth);
    for (unsigned n = 1; n <= n_uses; ++n) {
        const ExactReal y_norm = clamp(y[n - 1] / params.gamma(), params.symbol_min(), params.symbol_max());
        // (y~ + 1/2)/3! lies in [0, 1/6), so its first two S=1 digits vanish and
        // the digit at 1/(k+3)! is V_k.
        const ProgressiveDigits v = expand((y_norm + kHalf) / six, 1, depth + 2);
        for (unsigned k = 1; k <= depth; ++k) {
            digits[static_cast<std::size_t>(k - 1) * n_uses + (n - 1)] = static_cast<std::int64_t>(v.at(k + 2, 1)) - 1;
        }
    }
    ExactReal u_hat = reconstruct_signed(digits, n_uses, depth) - kHalf;
    u_hat = clamp(u_hat, -kHalf, kHalf);
    return {std::move(u_hat), std::move(digits)};
}

ExactReal decode(std::span<const ExactReal> y, const EncoderParams& params) {
    return decode_detailed(y, params).u_hat;
}

ExactReal decode(std::span<const double> y, const EncoderParams& params) {
    std::vector<ExactReal> exact;
    exact.reserve(y.size());
    for (double v : y) {
        exact.push_back(embed_float(v));
    }
    return decode(exact, params);
}

std::vector<std::optional<unsigned>> effective_regime_digits(const ExactReal& u, std::span<const ExactReal> z,
                                                             const EncoderParams& params) {
    const unsigned n_uses = params.channel_uses();
    if (z.size() != n_uses) {
        throw std::invalid_argument("effective_regime_digits: noise size does not match N");
    }
    const ProgressiveDigits truth = source_digits(u, n_uses, params.depth());
    ChannelFrame frame = encode(u, params);
    for (unsigned n = 0; n < n_uses; ++n) {
        frame.x[n] += z[n];
    }
    const DecodeResult decoded = decode_detailed(frame.x, params);
    std::vector<std::optional<unsigned>> first(n_uses);
    for (unsigned n = 1; n <= n_uses; ++n) {
        for (unsigned k = 1; k <= params.depth(); ++k) {
            const std::size_t p = truth.index(k, n);
            if (decoded.digits[p] != static_cast<std::int64_t>(truth.digits()[p])) {
                first[n - 1] = k;
                break;
            }
        }
    }
    return first;
}

CentralGap central_gap(unsigned depth) {
    if (depth < 1) {
        throw std::invalid_argument("central_gap: depth must be >= 1");
    }
    std::vector<std::uint32_t> below = max_digits(depth);
    below[0] = 0;
    std::vector<std::uint32_t> above(depth, 0);
    above[0] = 1;
    return {normalized_symbol(below, depth), normalized_symbol(above, depth)};
}

}  // namespace progcode
