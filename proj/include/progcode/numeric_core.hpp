#pragma once

#include <cstdint>
#include <optional>

#include "progcode/exact_real.hpp"

namespace progcode {

/// n! as an exact integer.
BigInt factorial_int(unsigned n);
ExactReal factorial(unsigned n);

/// sum_{k=ell}^{last} k/(k+1)!, evaluated in closed form as
/// 1/ell! - 1/(last+1)!. An empty `last` means the infinite sum, 1/ell!.
/// Throws std::invalid_argument if ell < 1 or last < ell.
ExactReal tail_sum_k_over_factorial(unsigned ell, std::optional<unsigned> last);

/// Exact dyadic rational equal to `value` bit-for-bit.
/// Throws std::invalid_argument for NaN or infinities.
ExactReal embed_float(double value);

/// True iff n - 1 >= log2(omega) / log2(log2(omega)).
/// Requires omega >= 4, n >= 6 and omega <= n!; throws std::invalid_argument
/// otherwise. The logs are evaluated in binary64.
bool lemma5_bound_holds(double omega, unsigned n);

/// Rational bracket lo < e < hi from the first `terms` terms of sum 1/j!,
/// using the tail bound sum_{j>=m} 1/j! < 1/((m-1)! (m-1)).
struct EulerBracket {
    ExactReal lo;
    ExactReal hi;
};
EulerBracket euler_bracket(unsigned terms = 40);

}  // namespace progcode
