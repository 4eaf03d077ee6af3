#pragma once

#include "pgap/interval.hpp"

#include <cstdint>
#include <vector>

namespace pgap::certify {

inline constexpr mpfr_prec_t kDefaultPrecision = 192;

// Enclosure of prod_{3 <= p < limit} (1 - 1/(p-1)^2).
CertifiedInterval euler_product_partial(std::uint64_t limit, mpfr_prec_t precision_bits = kDefaultPrecision);

// Enclosure of sum_{3 <= p <= T+1, p prime} 2/((p-2)(p+1)).
CertifiedInterval pair_tail_sum(std::uint64_t T, mpfr_prec_t precision_bits = kDefaultPrecision);

enum class Parity { even, odd };

// even: sum over squarefree even d <= T of 1/d^2;
// odd:  sum over squarefree odd d <= T+1 of 1/(2 d^2).
CertifiedInterval sqfree_parity_sum(std::uint64_t T, Parity parity, mpfr_prec_t precision_bits = kDefaultPrecision);

// Exact value of the telescoping tail sum_{n >= T+2} 2/((n-2)(n-1)) = 2/T.
mpq_class telescoped_pair_tail(std::uint64_t T);

struct Program5Bounds {
    CertifiedInterval log10_W;   // log10 of the product of primes below 50
    CertifiedInterval exponent;  // E * log10(W), E = product of the first 43 primes
    mpz_class primorial_below_50;
    mpz_class first43_product;
};
Program5Bounds program5_bounds(mpfr_prec_t precision_bits = kDefaultPrecision);

// Golden-value reports for the five appendix computations. Each report is
// verified when the enclosure matches the recorded decimal both as a
// 15-significant-digit string (after rounding through a 53-bit float, the
// precision the recorded values were printed at) and numerically within
// 1e-12 absolute (1e-10 relative for the 1e76-scale value).
std::vector<InequalityReport> appendix_reports(mpfr_prec_t precision_bits = kDefaultPrecision);

// The eight-step constant chain behind the red-prime count bound
// R <= 6.646 r x / (log x)^2.
std::vector<InequalityReport> verify_lemma1_chain(mpfr_prec_t precision_bits = kDefaultPrecision);

// Re-certification of the closing display 50 * 10^17.7888 * 10^(1.8339e76)
// < 10^(1.834e76), using the Program 5 value of log10(W).
InequalityReport verify_theorem3_display(mpfr_prec_t precision_bits = kDefaultPrecision);

// Certifies, in logged space and without materializing any tower:
//   (a) 1.01624 e^(8m+4) e^(1.01624 e^(8m+4) (8m+4)) < e^(e^(10.5m))
//   (b) e^(8m+4) + 1.01624 e^(8m+4) ... combined bound < e^(e^(10.6m))
// Requires m >= 3.
InequalityReport verify_tower_bound(long m, mpfr_prec_t precision_bits = kDefaultPrecision);

// Desk-scale sweeps of the three classical bounds used in the proofs:
//   pi(x) > x/log x for 17 <= x <= x_max,
//   prod_{p<=x} p < e^(1.01624 x) at every prime x <= x_max,
//   p_k <= k(log k + log log k) for 6 <= k <= k_max.
std::vector<InequalityReport> check_classical_inequalities(std::uint64_t x_max, std::uint64_t k_max,
                                                           mpfr_prec_t precision_bits = kDefaultPrecision);

// Certified strict comparison helper: verified iff hi(lhs) < lo(rhs).
InequalityReport certify_less(std::string name, std::string claimed, const IntervalReal& lhs,
                              const IntervalReal& rhs);

}  // namespace pgap::certify
