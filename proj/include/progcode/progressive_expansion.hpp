#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "progcode/exact_real.hpp"

namespace progcode {

/// Digits x_ks of an S-progressive expansion truncated to K blocks.
///
/// Block k (1-based) has base k+1 and holds S digits, each in {0, ..., k}.
/// The digit at (k, s) carries weight 1 / ((k!)^S (k+1)^s). Storage and
/// iteration order is k-major, s-minor, which is also the significance order.
class ProgressiveDigits {
public:
    /// All-zero expansion.
    ProgressiveDigits(unsigned block_length, unsigned depth);
    /// Throws std::invalid_argument if `digits` has the wrong size or any
    /// digit lies outside {0, ..., k}.
    ProgressiveDigits(unsigned block_length, unsigned depth, std::vector<std::uint32_t> digits);

    [[nodiscard]] unsigned block_length() const { return block_length_; }
    [[nodiscard]] unsigned depth() const { return depth_; }

    /// Digit at block k in [1, depth], slot s in [1, block_length].
    [[nodiscard]] std::uint32_t at(unsigned k, unsigned s) const;
    [[nodiscard]] std::span<const std::uint32_t> digits() const { return digits_; }
    /// Position index of (k, s) in k-major order.
    [[nodiscard]] std::size_t index(unsigned k, unsigned s) const;

    friend bool operator==(const ProgressiveDigits&, const ProgressiveDigits&) = default;

private:
    unsigned block_length_;
    unsigned depth_;
    std::vector<std::uint32_t> digits_;
};

/// S-progressive expansion of x in [0, 1) to K blocks.
/// Throws std::invalid_argument for x outside [0, 1), S < 1 or K < 1.
ProgressiveDigits expand(const ExactReal& x, unsigned block_length, unsigned depth);

/// Exact finite sum of the digits against their weights.
ExactReal reconstruct(const ProgressiveDigits& digits);

/// Weighted sum of signed digits in the same mixed radix, without range
/// checks. `digits` is k-major with `block_length` entries per block.
ExactReal reconstruct_signed(std::span<const std::int64_t> digits, unsigned block_length, unsigned depth);

/// Upper bound on x - reconstruct(expand(x, S, K)): 1/((K+1)!)^S.
ExactReal truncation_bound(unsigned block_length, unsigned depth);

/// Weight 1/((k!)^S (k+1)^s) of position (k, s).
ExactReal position_weight(unsigned block_length, unsigned k, unsigned s);

/// True iff every digit at a position up to and including (ell, t) is zero.
bool leading_digits_zero_upto(const ExactReal& x, unsigned block_length, unsigned ell, unsigned t);

/// Frequency tables of expansion digits of uniform samples on [0, 1).
struct DigitStatistics {
    unsigned block_length = 0;
    unsigned depth = 0;
    std::uint64_t sample_count = 0;
    /// marginal[p][v]: count of digit value v at position p (k-major).
    std::vector<std::vector<std::uint64_t>> marginal;
    /// Joint counts for positions p < q; `joint` is ordered by
    /// (p, q) lexicographically, each table row-major over (x_p, x_q).
    struct Pair {
        std::size_t first;
        std::size_t second;
        std::size_t rows;
        std::size_t cols;
        std::vector<std::uint64_t> counts;
    };
    std::vector<Pair> joint;

    [[nodiscard]] bool empty() const { return sample_count == 0; }
};

/// Draws `sample_count` uniform values on [0, 1) from a stream seeded with
/// `seed`, expands each with block length S to K blocks and tallies the
/// digits. A zero count yields an empty table.
DigitStatistics digit_statistics(std::uint64_t sample_count, unsigned block_length, unsigned depth,
                                 std::uint64_t seed);

}  // namespace progcode
