#pragma once

#include "pgap/interval.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace pgap::powertuple {

// Factored positive integer: prime -> exponent >= 1; empty map is 1.
// Exponents are big integers (the k=50 instance needs ~1e75).
using ExponentVector = std::map<std::uint64_t, mpz_class>;

ExponentVector factorize(std::uint64_t v);  // v >= 1
ExponentVector combine(const ExponentVector& a, const ExponentVector& b);
// Decimal digit count upper estimate, for materialization guards.
double approx_digits(const ExponentVector& v);
// Product as an integer; only sensible when approx_digits is small.
mpz_class materialize(const ExponentVector& v);

// Exponent 1 on every prime <= K.
ExponentVector primorial(std::uint64_t K);

// Per-index prime power targets: element i of the tuple must become a
// perfect targets[i]-th power.
struct TargetAssignment {
    unsigned k = 0;
    std::map<unsigned, std::uint64_t> targets;  // index in [1, k-1] -> prime
};

// targets[i] = p_i.
TargetAssignment default_targets(unsigned k);

// The k=50 split: squares on {1,4,9,16,25,49}, cubes on {3,24}, and the
// remaining 41 indices mapped ascending onto p_3..p_43.
TargetAssignment paper50_targets();

struct PowerTupleResult {
    ExponentVector W;
    ExponentVector a;
    unsigned k = 0;
    CertifiedInterval log10_a;
};

// CRT-solves, per base prime q <= K, the congruences
//   alpha_q = -(e_q(W) + e_q(i))  (mod targets[i])  for i in [1, k-1],
// taking the minimal non-negative solution. Duplicate prime targets must
// agree; otherwise infeasible_system_error.
PowerTupleResult solve_exponents(std::uint64_t K, const TargetAssignment& assignment,
                                 mpfr_prec_t precision_bits = 192);

// Checks every i*W*a is a perfect targets[i]-th power by exponent
// divisibility, and cross-checks with exact integer root extraction
// whenever the materialized value stays under materialize_limit digits.
bool verify_power_tuple(const PowerTupleResult& result, const TargetAssignment& assignment,
                        std::uint64_t materialize_limit = 100'000);

struct AdmissibleReport {
    bool admissible = false;
    std::optional<std::uint64_t> witness_prime;  // least covering prime
};

// Offsets are admissible iff no prime p <= k sees all residues.
AdmissibleReport admissible_check(const std::vector<std::int64_t>& offsets);
// Same check for factored offsets, via modular exponentiation.
AdmissibleReport admissible_check(const std::vector<ExponentVector>& offsets);

// {i*W*a : 1 <= i <= k} in factored form.
std::vector<ExponentVector> tuple_offsets(const PowerTupleResult& result);

}  // namespace pgap::powertuple
