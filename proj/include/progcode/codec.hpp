#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "progcode/exact_real.hpp"
#include "progcode/progressive_expansion.hpp"

namespace progcode {

/// Truncation depth used when none is given.
inline constexpr unsigned kDefaultDepth = 16;

/// Levels carrying the constant +1 offset. Digits stop at level K; the
/// offsets continue to level 2K and are closed by 1/((2K+3)! (2K+3)), which
/// bounds the rest of sum 1/(k+3)! from above. The noiseless codeword thus
/// sits just above the truncated limit point, within 1/((2K+3)! (2K+3)).
constexpr unsigned offset_depth(unsigned depth) { return 2 * depth; }

/// Truncated digit-moment series for the normalized channel symbol
///   X~ = 6 * sum_{k<=K} (U_k + 1)/(k+3)! + 6 * offset_tail - 1/2
/// where offset_tail covers the levels above K as described at offset_depth,
/// with U_k uniform on {0..k} and pairwise independent.
struct SymbolMoments {
    ExactReal alpha;          ///< sum_{k<=K} k(k+2) / (12 ((k+3)!)^2), the digit variance series
    ExactReal mean;           ///< E[X~]
    ExactReal second_moment;  ///< E[X~^2] = 36 alpha + mean^2
};
SymbolMoments symbol_moments(unsigned depth);

/// Power normalizer 1/sqrt(E[X~^2]) as a dyadic rational rounded down, so
/// gamma^2 E[X~^2] <= 1 with relative error below 2^-90.
/// Throws std::invalid_argument for depth < 8.
ExactReal compute_gamma(unsigned depth);

class EncoderParams {
public:
    /// N channel uses, K digit blocks, gamma from compute_gamma(K).
    static EncoderParams make(unsigned channel_uses, unsigned depth = kDefaultDepth);
    /// Explicit gamma; throws std::invalid_argument unless gamma > 0 and
    /// gamma^2 E[X~^2] lies in [1 - 1e-9, 1].
    EncoderParams(unsigned channel_uses, unsigned depth, ExactReal gamma);

    [[nodiscard]] unsigned channel_uses() const { return channel_uses_; }
    [[nodiscard]] unsigned depth() const { return depth_; }
    [[nodiscard]] const ExactReal& gamma() const { return gamma_; }
    /// Range of the normalized codebook; decoder input is clipped to it.
    [[nodiscard]] const ExactReal& symbol_min() const { return symbol_min_; }
    [[nodiscard]] const ExactReal& symbol_max() const { return symbol_max_; }

private:
    unsigned channel_uses_;
    unsigned depth_;
    ExactReal gamma_;
    ExactReal symbol_min_;
    ExactReal symbol_max_;
};

struct ChannelFrame {
    std::vector<ExactReal> x;
};

/// Normalized symbol for one channel from its digits U_1..U_K (digit k-1 in
/// the span is U_k, which must lie in {0..k}).
ExactReal normalized_symbol(std::span<const std::uint32_t> channel_digits, unsigned depth);

/// Source digits of U + 1/2: N-progressive expansion to depth K.
/// Throws std::invalid_argument unless U lies in [-1/2, 1/2).
ProgressiveDigits source_digits(const ExactReal& u, unsigned channel_uses, unsigned depth);

/// X~(1..N) for source U.
std::vector<ExactReal> encode_normalized(const ExactReal& u, const EncoderParams& params);
/// X(n) = gamma X~(n).
ChannelFrame encode(const ExactReal& u, const EncoderParams& params);

struct DecodeResult {
    ExactReal u_hat;
    /// Decoded digits U^_kn in {-1..k+1}, k-major with N entries per block.
    std::vector<std::int64_t> digits;
};

/// Full decoder output. Throws std::invalid_argument on a size mismatch.
DecodeResult decode_detailed(std::span<const ExactReal> y, const EncoderParams& params);
ExactReal decode(std::span<const ExactReal> y, const EncoderParams& params);
/// Embeds each value exactly, then decodes. Rejects non-finite input.
ExactReal decode(std::span<const double> y, const EncoderParams& params);

/// For each channel, the smallest block k at which the decoded digit of
/// encode(U) + z differs from the source digit, or nullopt if none up to K.
std::vector<std::optional<unsigned>> effective_regime_digits(const ExactReal& u, std::span<const ExactReal> z,
                                                             const EncoderParams& params);

/// Edges of the empty interval of normalized symbols around zero: `left` is
/// the largest symbol with U_1 = 0 and `right` the smallest with U_1 = 1.
struct CentralGap {
    ExactReal left;
    ExactReal right;
};
CentralGap central_gap(unsigned depth = kDefaultDepth);

}  // namespace progcode
