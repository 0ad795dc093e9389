#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "progcode/codec.hpp"

namespace progcode {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct LemmaSuiteOptions {
    /// Telescoping identity is checked for ell <= depth and ell <= K <= depth + 10.
    unsigned depth = 50;
    std::uint64_t fuzz_cases = 10000;
    std::uint64_t digit_samples = 200000;
    std::uint64_t seed = 20240601;
};

/// Runs the expansion and codeword property checks; each entry reports one
/// property with a short diagnostic.
std::vector<CheckResult> verify_lemmas(const LemmaSuiteOptions& options = {});

/// Codebook constants at truncation depth K.
struct CodebookConstants {
    unsigned depth = kDefaultDepth;
    ExactReal second_moment;
    ExactReal alpha;
    ExactReal mean;
    ExactReal gamma;
    /// 16.5 - 6e, bracketed by rationals.
    ExactReal range_bound_lo;
    ExactReal range_bound_hi;
    ExactReal symbol_min;
    ExactReal symbol_max;
    CentralGap gap;
};
CodebookConstants codebook_constants(unsigned depth = kDefaultDepth);

}  // namespace progcode
