#pragma once

#include <cstdint>
#include <random>

namespace progcode {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix64(std::uint64_t x);

/// A reproducible random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the uniform and Gaussian transforms
/// are implemented here rather than with std:: distributions, whose output
/// is implementation-defined.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}

    /// Stream for (master, a, b), e.g. (seed, snr_index, trial_index).
    static RngStream derive(std::uint64_t master, std::uint64_t a, std::uint64_t b);

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform integer in [0, 2^53).
    std::uint64_t bits53() { return engine_() >> 11; }
    /// bits53() / 2^53, uniform on [0, 1).
    double uniform() { return static_cast<double>(bits53()) * 0x1.0p-53; }
    /// N(0, 1) via the Marsaglia polar method; the second variate is discarded
    /// so every draw consumes a whole number of engine outputs.
    double standard_normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace progcode
