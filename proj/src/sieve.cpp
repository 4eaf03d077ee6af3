#include "pgap/sieve.hpp"

#include "pgap/errors.hpp"
#include "pgap/numutil.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <future>
#include <stdexcept>

namespace pgap {

namespace {

constexpr char kCacheMagic[4] = {'P', 'G', 'A', 'P'};
constexpr unsigned char kCacheVersion = 0x01;

// Composite flags for odd numbers 3..limit, bit i <-> 3 + 2i, 1 = composite.
struct OddBitset {
    std::uint64_t limit = 0;
    std::uint64_t bits = 0;
    std::vector<std::uint64_t> words;

    static std::uint64_t bit_count_for(std::uint64_t limit) {
        return limit >= 3 ? (limit - 1) / 2 : 0;
    }

    explicit OddBitset(std::uint64_t lim)
        : limit(lim), bits(bit_count_for(lim)), words((bits + 63) / 64, 0) {}

    void set(std::uint64_t idx) { words[idx >> 6] |= std::uint64_t{1} << (idx & 63); }
    bool test(std::uint64_t idx) const {
        return (words[idx >> 6] >> (idx & 63)) & 1;
    }
};

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

void sieve_chunk(OddBitset& bs, const std::vector<std::uint64_t>& base, std::uint64_t b0, std::uint64_t b1) {
    if (b0 >= b1) return;
    const std::uint64_t lo_val = 3 + 2 * b0;
    const std::uint64_t hi_val = 3 + 2 * (b1 - 1);
    for (std::uint64_t p : base) {
        if (p == 2) continue;
        if (p * p > hi_val) break;
        std::uint64_t m = p * p;
        if (m < lo_val) {
            m = (lo_val + p - 1) / p * p;
            if (m % 2 == 0) m += p;
        }
        for (; m <= hi_val; m += 2 * p) bs.set((m - 3) / 2);
    }
}

OddBitset sieve_composites(std::uint64_t x, const SieveConfig& cfg) {
    OddBitset bs(x);
    if (bs.bits == 0) return bs;
    auto base = simple_sieve(isqrt_u64(x));

    // Chunks are word-aligned so parallel workers never share a word.
    const std::uint64_t chunk = (cfg.segment_size + 63) / 64 * 64;
    if (cfg.threads <= 1) {
        for (std::uint64_t b0 = 0; b0 < bs.bits; b0 += chunk)
            sieve_chunk(bs, base, b0, std::min(b0 + chunk, bs.bits));
        return bs;
    }
    std::vector<std::future<void>> tasks;
    std::uint64_t b0 = 0;
    while (b0 < bs.bits) {
        while (tasks.size() >= cfg.threads) {
            tasks.front().get();
            tasks.erase(tasks.begin());
        }
        std::uint64_t b1 = std::min(b0 + chunk, bs.bits);
        tasks.push_back(std::async(std::launch::async, [&bs, &base, b0, b1] {
            sieve_chunk(bs, base, b0, b1);
        }));
        b0 = b1;
    }
    for (auto& t : tasks) t.get();
    return bs;
}

std::optional<OddBitset> load_cache(const std::filesystem::path& path, std::uint64_t x) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    char magic[4];
    unsigned char version = 0;
    unsigned char limit_bytes[8];
    if (!in.read(magic, 4)) return std::nullopt;
    if (std::memcmp(magic, kCacheMagic, 4) != 0) return std::nullopt;
    if (!in.read(reinterpret_cast<char*>(&version), 1) || version != kCacheVersion) return std::nullopt;
    if (!in.read(reinterpret_cast<char*>(limit_bytes), 8)) return std::nullopt;
    std::uint64_t limit = 0;
    for (int i = 7; i >= 0; --i) limit = (limit << 8) | limit_bytes[i];
    if (limit != x) return std::nullopt;

    OddBitset bs(x);
    std::vector<unsigned char> payload(bs.words.size() * 8);
    if (!in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size())))
        return std::nullopt;
    in.peek();
    if (!in.eof()) return std::nullopt;
    for (std::size_t w = 0; w < bs.words.size(); ++w) {
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | payload[w * 8 + static_cast<std::size_t>(i)];
        bs.words[w] = v;
    }
    // quick sanity probe: 3,5,7 prime, 9 composite
    if (bs.bits >= 1 && bs.test(0)) return std::nullopt;
    if (bs.bits >= 2 && bs.test(1)) return std::nullopt;
    if (bs.bits >= 3 && bs.test(2)) return std::nullopt;
    if (bs.bits >= 4 && !bs.test(3)) return std::nullopt;
    return bs;
}

void save_cache(const std::filesystem::path& path, const OddBitset& bs) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return;  // cache is best-effort
    out.write(kCacheMagic, 4);
    out.put(static_cast<char>(kCacheVersion));
    unsigned char limit_bytes[8];
    std::uint64_t limit = bs.limit;
    for (int i = 0; i < 8; ++i) {
        limit_bytes[i] = static_cast<unsigned char>(limit & 0xff);
        limit >>= 8;
    }
    out.write(reinterpret_cast<const char*>(limit_bytes), 8);
    std::vector<unsigned char> payload(bs.words.size() * 8);
    for (std::size_t w = 0; w < bs.words.size(); ++w) {
        std::uint64_t v = bs.words[w];
        for (int i = 0; i < 8; ++i) {
            payload[w * 8 + static_cast<std::size_t>(i)] = static_cast<unsigned char>(v & 0xff);
            v >>= 8;
        }
    }
    out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
}

}  // namespace

std::uint64_t PrimeTable::nth(std::size_t n) const {
    if (n < 1 || n > primes_.size()) throw std::out_of_range("prime index out of range");
    return primes_[n - 1];
}

bool PrimeTable::contains(std::uint64_t v) const {
    return std::binary_search(primes_.begin(), primes_.end(), v);
}

std::size_t PrimeTable::count_upto(std::uint64_t x) const {
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
}

std::optional<std::uint64_t> PrimeTable::next_prime_after(std::uint64_t v) const {
    auto it = std::upper_bound(primes_.begin(), primes_.end(), v);
    if (it == primes_.end()) return std::nullopt;
    return *it;
}

std::optional<std::size_t> PrimeTable::index_of(std::uint64_t p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

PrimeTable primes_up_to(std::uint64_t x, const SieveConfig& cfg) {
    if (x < 2) throw std::domain_error("primes_up_to requires x >= 2");
    if (cfg.segment_size < (std::uint64_t{1} << 10))
        throw std::domain_error("segment_size must be at least 2^10");

    std::optional<OddBitset> bs;
    if (cfg.cache_path) bs = load_cache(*cfg.cache_path, x);
    bool from_cache = bs.has_value();
    if (!bs) bs = sieve_composites(x, cfg);
    if (cfg.cache_path && !from_cache) save_cache(*cfg.cache_path, *bs);

    std::vector<std::uint64_t> primes;
    primes.reserve(x > 16 ? static_cast<std::size_t>(1.2 * static_cast<double>(x) / std::log(static_cast<double>(x))) + 16
                          : 16);
    primes.push_back(2);
    for (std::uint64_t i = 0; i < bs->bits; ++i)
        if (!bs->test(i)) primes.push_back(3 + 2 * i);
    return PrimeTable(x, std::move(primes));
}

std::uint64_t nth_prime(const PrimeTable& t, std::size_t n) { return t.nth(n); }

std::uint64_t pair_count_with_difference(const PrimeTable& t, std::uint64_t N, std::uint64_t h) {
    if (h < 1) throw std::domain_error("pair difference h must be >= 1");
    if (N > t.limit() || h > t.limit() - N)
        throw insufficient_table_error("pair_count_with_difference needs table limit >= N + h");
    std::uint64_t count = 0;
    const auto& ps = t.primes();
    std::size_t n = t.count_upto(N);
    for (std::size_t i = 0; i < n; ++i)
        if (t.contains(ps[i] + h)) ++count;
    return count;
}

}  // namespace pgap
