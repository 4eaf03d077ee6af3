#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace pgap {

struct SieveConfig {
    // Odd numbers handled per sieve segment; must be >= 2^10.
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    std::optional<std::filesystem::path> cache_path;
    unsigned threads = 1;
};

// Ascending primes up to an inclusive limit. Immutable once built;
// safe to share read-only across threads. 1-indexed queries match the
// usual p_1 = 2 convention.
class PrimeTable {
  public:
    PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const { return limit_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    std::size_t count() const { return primes_.size(); }

    // p_n with p_1 = 2; throws std::out_of_range outside [1, count()].
    std::uint64_t nth(std::size_t n) const;
    bool contains(std::uint64_t v) const;
    // pi(x) for x <= limit.
    std::size_t count_upto(std::uint64_t x) const;
    // Smallest table prime > v, if any.
    std::optional<std::uint64_t> next_prime_after(std::uint64_t v) const;
    // 1-based index of prime p, if p is in the table.
    std::optional<std::size_t> index_of(std::uint64_t p) const;

  private:
    std::uint64_t limit_;
    std::vector<std::uint64_t> primes_;
};

// Segmented sieve of Eratosthenes over odd integers. Deterministic and
// independent of segment_size; x < 2 is a domain error. When
// cfg.cache_path is set, a valid cache file is used instead of sieving
// and a fresh sieve result is written back otherwise; corrupt or
// mismatched caches are discarded silently.
PrimeTable primes_up_to(std::uint64_t x, const SieveConfig& cfg = {});

std::uint64_t nth_prime(const PrimeTable& t, std::size_t n);

// |{p <= N : p and p+h both prime}|; requires N + h <= t.limit().
std::uint64_t pair_count_with_difference(const PrimeTable& t, std::uint64_t N, std::uint64_t h);

}  // namespace pgap
