#pragma once

#include "pgap/interval.hpp"
#include "pgap/sieve.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pgap::gapscan {

enum class Color : std::uint8_t { red, green, yellow };

// 1-based prime index of the first prime of the run; length 0 when absent.
struct GreenRun {
    std::size_t start_index = 0;
    std::size_t length = 0;
};

struct ColoringReport {
    std::uint64_t x = 0;
    double r = 0;
    std::optional<unsigned> t;      // set by the three-coloring
    std::vector<Color> colors;      // aligned with primes <= x
    std::uint64_t red_count = 0;
    std::uint64_t green_count = 0;
    std::uint64_t yellow_count = 0;
    GreenRun longest_green_run;
    // Maximal monochrome blocks of the prime sequence, green vs non-green.
    // The pigeonhole argument assumes the sequence starts non-green; scans
    // where it does not simply report starts_red = false.
    bool starts_red = false;
    std::uint64_t red_interval_count = 0;
    std::uint64_t green_interval_count = 0;
};

// Largest g such that some k consecutive prime gaps within [1, x] are all
// >= g: max over n of min(p_{n+1}-p_n, ..., p_{n+k}-p_{n+k-1}), p_{n+k} <= x.
std::uint64_t g_k(const PrimeTable& t, std::uint64_t x, unsigned k);

// Two-coloring: p is red iff the next prime after p lies within r.
// Requires x + r <= t.limit() so the quantifier can reach past x.
ColoringReport color_two(const PrimeTable& t, std::uint64_t x, double r);

struct Theorem1Report {
    std::uint64_t x = 0;
    unsigned k = 0;
    double r = 0;                     // 0.1504 log x / k
    bool r_within_paper_range = false;  // r >= 2, i.e. k <= 0.0752 log x
    std::uint64_t red_count = 0;
    std::uint64_t green_count = 0;
    CertifiedInterval lemma1_ceiling;  // 6.646 r x / (log x)^2
    CertifiedInterval red_ratio;       // R (log x)^2 / (r x)
    GreenRun longest_green_run;
    bool run_meets_k = false;
    bool starts_red = false;
    std::uint64_t red_interval_count = 0;
    std::uint64_t green_interval_count = 0;
};

// Reporting scan for the two-coloring at r = 0.1504 log x / k. Outcomes are
// reported, not asserted: at desk scale the x > x_0 proviso usually leaves
// the wanted green run out of reach.
Theorem1Report theorem1_report(const PrimeTable& t, std::uint64_t x, unsigned k,
                               mpfr_prec_t precision_bits = 192);

// All pairs M < q < p <= N with p - q a perfect square, ascending by (q, p).
std::vector<std::pair<std::uint64_t, std::uint64_t>> square_diff_pairs(const PrimeTable& t,
                                                                       std::uint64_t M,
                                                                       std::uint64_t N);

// Three-coloring: red if p + h^2 is prime for some 1 <= h <= r (precedence),
// else yellow if p_{i+t} - p_i > r^2, else green. Requires x + r^2 <= t.limit().
ColoringReport color_three(const PrimeTable& t, std::uint64_t x, unsigned tparam, double r);

struct GreenRunWitness {
    std::vector<std::uint64_t> primes;  // consecutive in the prime sequence
    bool pairwise_ok = false;           // brute-force non-square differences
    std::size_t start_index = 0;        // 1-based index of the first prime
};

struct Theorem6Result {
    std::uint64_t x = 0;
    long t = 0;
    double r = 0;
    bool degenerate = false;  // t < 2 at this x; formula out of desk range
    bool found = false;
    GreenRunWitness witness;
    ColoringReport coloring;  // empty when degenerate
};

// First run of run_length consecutive green primes in a coloring, with its
// pairwise differences re-verified square-free by brute force.
std::optional<GreenRunWitness> first_green_run(const PrimeTable& t, const ColoringReport& report,
                                               std::size_t run_length);

// Formula-driven search: t = floor(0.24 (log x)^(1/4)),
// r = t^(1/3) (log x)^(2/3) / 3.323^(1/3); extracts the first run of t
// consecutive green primes and re-verifies its differences by brute force.
Theorem6Result theorem6_search(const PrimeTable& t, std::uint64_t x, mpfr_prec_t precision_bits = 192);

// Fallback scan: first window of run_length consecutive primes <= x whose
// pairwise differences are all non-squares.
std::optional<GreenRunWitness> first_sdf_run(const PrimeTable& t, std::uint64_t x, unsigned run_length);

// Unconditional counting bound Y <= t x / r^2 for a three-coloring report;
// the comparison is exact (r is treated as its exact dyadic value).
bool yellow_bound_check(const ColoringReport& report);

}  // namespace pgap::gapscan
