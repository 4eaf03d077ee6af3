#pragma once

#include "pgap/interval.hpp"
#include "pgap/sieve.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgap::sqfree {

// Subset of Z_m for squarefree m >= 2; residues kept sorted and unique.
struct ResidueSet {
    std::uint64_t modulus = 0;
    std::vector<std::uint32_t> residues;
};

// Validated constructor: checks the modulus is squarefree and >= 2, all
// residues lie in [0, m); deduplicates and sorts.
ResidueSet make_residue_set(std::uint64_t modulus, std::vector<std::uint32_t> residues);

bool is_squarefree(std::uint64_t m);

struct QRTable {
    std::uint64_t modulus = 0;
    std::vector<char> is_square;         // indexed by residue
    std::vector<std::uint32_t> squares;  // sorted, 0 included
};

// { x^2 mod m : 0 <= x < m }; m >= 2.
QRTable squares_mod(std::uint64_t m);

// True iff (a-b) mod m is a non-square for every ordered pair of distinct
// residues. Both orders are checked: the relation is asymmetric whenever
// -1 is a non-square modulo some prime factor of m.
bool is_sdf_residue_set(const ResidueSet& r);

// The 7-element subset of Z_65 assembled by CRT from the classical
// (mod 5, mod 13) pair list.
ResidueSet ruzsa_65();

enum class SearchMode { exact, witness };

struct MaxSdfResult {
    unsigned size = 0;
    ResidueSet witness;
    bool optimal = false;
    std::uint64_t nodes = 0;
};

// Maximum set of residues modulo m with pairwise non-square differences:
// branch-and-bound maximum clique with greedy-coloring bounds over the
// compatibility graph. optimal is true only if the search space was
// exhausted within node_budget.
MaxSdfResult max_sdf_residues(std::uint64_t m, SearchMode mode = SearchMode::exact,
                              std::uint64_t node_budget = 100'000'000);

// R_a = { (r + a) mod m : r in R }; 0 <= a < m.
ResidueSet shifted_family(const ResidueSet& r, std::uint64_t a);

// Base-m digit pattern: digits n >= 1, one shift per even position
// j in {0, 2, ...}, j < n.
struct DigitTupleSpec {
    std::uint64_t modulus = 0;
    unsigned digits = 0;
    std::vector<std::uint32_t> shifts;
};

struct SDFSet {
    std::vector<std::uint64_t> elements;  // ascending
    std::optional<DigitTupleSpec> spec;
    std::string label;
};

// All s = sum r_j m^j + 1 in [1, m^n] whose even-position digits lie in the
// per-position shifted copy of R (odd-position digits free). The output has
// no two elements differing by a perfect square.
SDFSet build_digit_set(const DigitTupleSpec& spec, const ResidueSet& r);

// Membership test for the digit set without materializing it.
bool digit_set_contains(const DigitTupleSpec& spec, const ResidueSet& r, std::uint64_t s);

struct BestTupleResult {
    DigitTupleSpec spec;
    std::uint64_t prime_count = 0;
    // Credit matrix over all m^ceil(n/2) shift tuples, indexed by
    // sum_j shift_j m^j; kept for the counting identity.
    std::vector<std::uint64_t> tuple_counts;
};

// Shift tuple whose digit set captures the most primes <= m^n, found by
// decomposing each prime and crediting every compatible tuple. Ties break
// to the lexicographically smallest tuple.
BestTupleResult best_tuple_for_primes(std::uint64_t m, unsigned n, const ResidueSet& r,
                                      const PrimeTable& t);

struct Theorem5Witness {
    SDFSet primes;
    CertifiedInterval bound;  // x^gamma / (m log x)
    CertifiedInterval gamma;
    bool meets_bound = false;
    unsigned n = 0;
};

// Runs the digit construction at n = floor(log_m x) and compares the prime
// count against x^gamma(m) / (m log x) with gamma = 1/2 + log|R|/(2 log m).
Theorem5Witness theorem5_witness(std::uint64_t x, std::uint64_t m, const ResidueSet& r,
                                 const PrimeTable& t, mpfr_prec_t precision_bits = 192);

}  // namespace pgap::sqfree
