#include "progcode/progressive_expansion.hpp"

#include <stdexcept>
#include <string>

#include "progcode/numeric_core.hpp"
#include "progcode/rng.hpp"

namespace progcode {

namespace {

void require_shape(unsigned block_length, unsigned depth) {
    if (block_length < 1 || depth < 1) {
        throw std::invalid_argument("progressive expansion: block length and depth must be >= 1");
    }
}

}  // namespace

ProgressiveDigits::ProgressiveDigits(unsigned block_length, unsigned depth)
    : block_length_(block_length), depth_(depth) {
    require_shape(block_length, depth);
    digits_.assign(static_cast<std::size_t>(block_length) * depth, 0);
}

ProgressiveDigits::ProgressiveDigits(unsigned block_length, unsigned depth, std::vector<std::uint32_t> digits)
    : block_length_(block_length), depth_(depth), digits_(std::move(digits)) {
    require_shape(block_length, depth);
    if (digits_.size() != static_cast<std::size_t>(block_length) * depth) {
        throw std::invalid_argument("ProgressiveDigits: expected " + std::to_string(block_length * depth) +
                                    " digits, got " + std::to_string(digits_.size()));
    }
    for (unsigned k = 1; k <= depth; ++k) {
        for (unsigned s = 1; s <= block_length; ++s) {
            if (digits_[index(k, s)] > k) {
                throw std::invalid_argument("ProgressiveDigits: digit at (" + std::to_string(k) + ", " +
                                            std::to_string(s) + ") exceeds " + std::to_string(k));
            }
        }
    }
}

std::size_t ProgressiveDigits::index(unsigned k, unsigned s) const {
    if (k < 1 || k > depth_ || s < 1 || s > block_length_) {
        throw std::out_of_range("ProgressiveDigits: position out of range");
    }
    return static_cast<std::size_t>(k - 1) * block_length_ + (s - 1);
}

std::uint32_t ProgressiveDigits::at(unsigned k, unsigned s) const { return digits_[index(k, s)]; }

ProgressiveDigits expand(const ExactReal& x, unsigned block_length, unsigned depth) {
    require_shape(block_length, depth);
    if (x.sign() < 0 || x >= ExactReal(1)) {
        throw std::invalid_argument("expand: x must lie in [0, 1), got " + x.to_string());
    }
    // Residual r = rem / den with 0 <= rem < den; each step multiplies by the
    // block base and splits off the integer part.
    const BigInt& den = x.raw().get_den();
    BigInt rem = x.raw().get_num();
    BigInt digit;
    std::vector<std::uint32_t> out;
    out.reserve(static_cast<std::size_t>(block_length) * depth);
    for (unsigned k = 1; k <= depth; ++k) {
        for (unsigned s = 1; s <= block_length; ++s) {
            mpz_mul_ui(rem.get_mpz_t(), rem.get_mpz_t(), k + 1);
            mpz_fdiv_qr(digit.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), den.get_mpz_t());
            out.push_back(static_cast<std::uint32_t>(digit.get_ui()));
        }
    }
    return {block_length, depth, std::move(out)};
}

ExactReal reconstruct_signed(std::span<const std::int64_t> digits, unsigned block_length, unsigned depth) {
    require_shape(block_length, depth);
    if (digits.size() != static_cast<std::size_t>(block_length) * depth) {
        throw std::invalid_argument("reconstruct_signed: digit count does not match shape");
    }
    // Mixed-radix Horner: value = num / prod(bases).
    BigInt num = 0;
    BigInt den = 1;
    std::size_t p = 0;
    for (unsigned k = 1; k <= depth; ++k) {
        for (unsigned s = 1; s <= block_length; ++s, ++p) {
            mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), k + 1);
            mpz_mul_ui(den.get_mpz_t(), den.get_mpz_t(), k + 1);
            num += static_cast<long>(digits[p]);
        }
    }
    return {num, den};
}

ExactReal reconstruct(const ProgressiveDigits& digits) {
    std::vector<std::int64_t> wide(digits.digits().begin(), digits.digits().end());
    return reconstruct_signed(wide, digits.block_length(), digits.depth());
}

ExactReal truncation_bound(unsigned block_length, unsigned depth) {
    return pow(factorial(depth + 1), block_length).reciprocal();
}

ExactReal position_weight(unsigned block_length, unsigned k, unsigned s) {
    BigInt den = factorial_int(k);
    mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), block_length);
    BigInt base_pow;
    mpz_ui_pow_ui(base_pow.get_mpz_t(), k + 1, s);
    return {BigInt(1), den * base_pow};
}

bool leading_digits_zero_upto(const ExactReal& x, unsigned block_length, unsigned ell, unsigned t) {
    if (t < 1 || t > block_length) {
        throw std::invalid_argument("leading_digits_zero_upto: t must lie in [1, S]");
    }
    const ProgressiveDigits d = expand(x, block_length, ell);
    const std::size_t last = d.index(ell, t);
    for (std::size_t p = 0; p <= last; ++p) {
        if (d.digits()[p] != 0) {
            return false;
        }
    }
    return true;
}

DigitStatistics digit_statistics(std::uint64_t sample_count, unsigned block_length, unsigned depth,
                                 std::uint64_t seed) {
    require_shape(block_length, depth);
    DigitStatistics stats;
    stats.block_length = block_length;
    stats.depth = depth;
    if (sample_count == 0) {
        return stats;
    }
    stats.sample_count = sample_count;
    const std::size_t positions = static_cast<std::size_t>(block_length) * depth;
    auto radix = [block_length](std::size_t p) { return static_cast<std::size_t>(p / block_length) + 2; };
    stats.marginal.resize(positions);
    for (std::size_t p = 0; p < positions; ++p) {
        stats.marginal[p].assign(radix(p), 0);
    }
    for (std::size_t p = 0; p < positions; ++p) {
        for (std::size_t q = p + 1; q < positions; ++q) {
            stats.joint.push_back({p, q, radix(p), radix(q), std::vector<std::uint64_t>(radix(p) * radix(q), 0)});
        }
    }

    RngStream stream(seed);
    const BigInt two53 = BigInt(1) << 53;
    for (std::uint64_t i = 0; i < sample_count; ++i) {
        const ExactReal x(BigInt(static_cast<unsigned long>(stream.bits53())), two53);
        const ProgressiveDigits d = expand(x, block_length, depth);
        const auto digits = d.digits();
        for (std::size_t p = 0; p < positions; ++p) {
            ++stats.marginal[p][digits[p]];
        }
        for (auto& pair : stats.joint) {
            ++pair.counts[digits[pair.first] * pair.cols + digits[pair.second]];
        }
    }
    return stats;
}

}  // namespace progcode
