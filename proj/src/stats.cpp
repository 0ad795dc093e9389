#include "progcode/stats.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace progcode::stats {

namespace {

double upper_tail(double statistic, double dof) {
    const boost::math::chi_squared_distribution<double> law(dof);
    return boost::math::cdf(boost::math::complement(law, statistic));
}

}  // namespace

ChiSquareResult chi_square_uniform(std::span<const std::uint64_t> counts) {
    if (counts.size() < 2) {
        throw std::invalid_argument("chi_square_uniform: need at least two cells");
    }
    const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
    if (total == 0) {
        throw std::invalid_argument("chi_square_uniform: empty table");
    }
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    const double dof = static_cast<double>(counts.size() - 1);
    return {stat, dof, upper_tail(stat, dof)};
}

ChiSquareResult chi_square_independence(std::span<const std::uint64_t> table, std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 2 || table.size() != rows * cols) {
        throw std::invalid_argument("chi_square_independence: bad table shape");
    }
    std::vector<double> row_sum(rows, 0);
    std::vector<double> col_sum(cols, 0);
    double total = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double v = static_cast<double>(table[r * cols + c]);
            row_sum[r] += v;
            col_sum[c] += v;
            total += v;
        }
    }
    if (total == 0) {
        throw std::invalid_argument("chi_square_independence: empty table");
    }
    double stat = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double expected = row_sum[r] * col_sum[c] / total;
            if (expected == 0) {
                continue;
            }
            const double d = static_cast<double>(table[r * cols + c]) - expected;
            stat += d * d / expected;
        }
    }
    const double dof = static_cast<double>((rows - 1) * (cols - 1));
    return {stat, dof, upper_tail(stat, dof)};
}

double chi_square_critical(double degrees_of_freedom, double alpha) {
    const boost::math::chi_squared_distribution<double> law(degrees_of_freedom);
    return boost::math::quantile(boost::math::complement(law, alpha));
}

}  // namespace progcode::stats
