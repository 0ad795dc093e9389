#pragma once

#include <cstdint>
#include <span>

namespace progcode::stats {

struct ChiSquareResult {
    double statistic = 0;
    double degrees_of_freedom = 0;
    double p_value = 1;
};

/// Pearson goodness-of-fit against the uniform law over the cells.
ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts);

/// Pearson test of independence on a rows x cols contingency table
/// (row-major), with expected counts from the observed marginals.
ChiSquareResult chi_square_independence(std::span<const std::uint64_t> table, std::size_t rows, std::size_t cols);

/// Upper quantile of the chi-square law: x with P(X > x) = alpha.
double chi_square_critical(double degrees_of_freedom, double alpha);

}  // namespace progcode::stats
