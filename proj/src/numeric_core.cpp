#include "progcode/numeric_core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace progcode {

BigInt factorial_int(unsigned n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

ExactReal factorial(unsigned n) { return ExactReal(factorial_int(n)); }

ExactReal tail_sum_k_over_factorial(unsigned ell, std::optional<unsigned> last) {
    if (ell < 1) {
        throw std::invalid_argument("tail_sum_k_over_factorial: ell must be >= 1");
    }
    const ExactReal head = factorial(ell).reciprocal();
    if (!last) {
        return head;
    }
    if (*last < ell) {
        throw std::invalid_argument("tail_sum_k_over_factorial: last must be >= ell");
    }
    return head - factorial(*last + 1).reciprocal();
}

ExactReal embed_float(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("embed_float: value is not finite");
    }
    // mpq_set_d is exact for every finite binary64 value.
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), value);
    return ExactReal(std::move(q));
}

bool lemma5_bound_holds(double omega, unsigned n) {
    if (!(omega >= 4.0) || n < 6) {
        throw std::invalid_argument("lemma5_bound_holds: requires omega >= 4 and n >= 6");
    }
    if (embed_float(omega) > factorial(n)) {
        throw std::invalid_argument("lemma5_bound_holds: omega exceeds n! for n = " + std::to_string(n));
    }
    const double log_omega = std::log2(omega);
    return static_cast<double>(n - 1) >= log_omega / std::log2(log_omega);
}

EulerBracket euler_bracket(unsigned terms) {
    if (terms < 3) {
        throw std::invalid_argument("euler_bracket: need at least 3 terms");
    }
    // numerator / terms! ... accumulate sum_{j<terms} 1/j! over a common denominator
    const BigInt den = factorial_int(terms - 1);
    BigInt num = 0;
    BigInt term = den;  // den / j!
    for (unsigned j = 0; j < terms; ++j) {
        num += term;
        if (j + 1 < terms) {
            term /= (j + 1);
        }
    }
    ExactReal partial(num, den);
    // tail sum_{j>=terms} 1/j! < 1/((terms-1)! (terms-1))
    ExactReal tail_bound(BigInt(1), den * (terms - 1));
    return {partial, partial + tail_bound};
}

}  // namespace progcode
