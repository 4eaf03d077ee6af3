#include "pgap/sieve.hpp"

#include "pgap/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace pgap;

TEST_CASE("primes_up_to basics") {
    PrimeTable t = primes_up_to(10);
    CHECK(t.primes() == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(t.count() == 4);

    CHECK(primes_up_to(2).primes() == std::vector<std::uint64_t>{2});
    CHECK(primes_up_to(100).count() == 25);
    CHECK_THROWS_AS(primes_up_to(1), std::domain_error);
    CHECK_THROWS_AS(primes_up_to(0), std::domain_error);

    SieveConfig tiny;
    tiny.segment_size = 512;
    CHECK_THROWS_AS(primes_up_to(100, tiny), std::domain_error);
}

TEST_CASE("sieve agrees with trial division up to 10^4") {
    auto expected = oracle::primes_upto(10000);
    PrimeTable t = primes_up_to(10000);
    REQUIRE(t.count() == expected.size());
    CHECK(t.primes() == expected);

    for (std::uint64_t x : {2ull, 3ull, 4ull, 17ull, 100ull, 997ull, 4096ull, 9999ull}) {
        PrimeTable s = primes_up_to(x);
        std::size_t n = 0;
        while (n < expected.size() && expected[n] <= x) ++n;
        CHECK(s.count() == n);
    }
}

TEST_CASE("result independent of segment size and threads") {
    PrimeTable base = primes_up_to(100000);
    for (std::uint64_t seg : {std::uint64_t{1} << 10, std::uint64_t{1} << 12, std::uint64_t{1} << 20}) {
        SieveConfig cfg;
        cfg.segment_size = seg;
        CHECK(primes_up_to(100000, cfg).primes() == base.primes());
    }
    SieveConfig par;
    par.threads = 4;
    par.segment_size = 1 << 12;
    CHECK(primes_up_to(100000, par).primes() == base.primes());
}

TEST_CASE("nth_prime") {
    PrimeTable t = primes_up_to(100);
    CHECK(nth_prime(t, 1) == 2);
    CHECK(nth_prime(t, 4) == 7);
    CHECK(nth_prime(t, 25) == 97);
    CHECK(nth_prime(t, 25) == oracle::primes_upto(100).back());
    CHECK_THROWS_AS(nth_prime(t, 0), std::out_of_range);
    CHECK_THROWS_AS(nth_prime(t, 26), std::out_of_range);
}

TEST_CASE("pair counts by difference") {
    PrimeTable t = primes_up_to(200);
    CHECK(pair_count_with_difference(t, 100, 2) == 8);
    CHECK(pair_count_with_difference(t, 100, 1) == 1);
    CHECK(pair_count_with_difference(t, 10, 4) == 2);
    CHECK_THROWS_AS(pair_count_with_difference(t, 199, 2), insufficient_table_error);
    CHECK_THROWS_AS(pair_count_with_difference(t, 100, 0), std::domain_error);
}

TEST_CASE("odd differences admit at most one pair") {
    PrimeTable t = primes_up_to(2000);
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t h = 2 * (rng() % 50) + 1;
        std::uint64_t n = 10 + rng() % 1000;
        CHECK(pair_count_with_difference(t, n, h) <= 1);
    }
}

TEST_CASE("pair counts match a brute-force scan") {
    PrimeTable t = primes_up_to(1500);
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t h = 1 + rng() % 30;
        std::uint64_t n = 5 + rng() % 1400;
        if (n + h > 1500) continue;
        std::uint64_t brute = 0;
        for (std::uint64_t p = 2; p <= n; ++p)
            if (oracle::is_prime(p) && oracle::is_prime(p + h)) ++brute;
        INFO("N=", n, " h=", h);
        CHECK(pair_count_with_difference(t, n, h) == brute);
    }
}

TEST_CASE("cache round trip and rejection") {
    namespace fs = std::filesystem;
    fs::path cache = fs::temp_directory_path() / "pgap_sieve_cache_test.bin";
    std::error_code ec;
    fs::remove(cache, ec);

    SieveConfig cfg;
    cfg.cache_path = cache;
    PrimeTable fresh = primes_up_to(50000, cfg);
    REQUIRE(fs::exists(cache));
    PrimeTable cached = primes_up_to(50000, cfg);
    CHECK(cached.primes() == fresh.primes());

    SUBCASE("limit mismatch recomputes") {
        PrimeTable other = primes_up_to(60000, cfg);
        CHECK(other.primes() == primes_up_to(60000).primes());
    }
    SUBCASE("truncated cache recomputes") {
        fs::resize_file(cache, 32);
        PrimeTable re = primes_up_to(50000, cfg);
        CHECK(re.primes() == fresh.primes());
    }
    SUBCASE("bad magic recomputes") {
        std::fstream f(cache, std::ios::in | std::ios::out | std::ios::binary);
        f.put('X');
        f.close();
        PrimeTable re = primes_up_to(50000, cfg);
        CHECK(re.primes() == fresh.primes());
    }
    fs::remove(cache, ec);
}

TEST_CASE("table queries") {
    PrimeTable t = primes_up_to(100);
    CHECK(t.contains(97));
    CHECK_FALSE(t.contains(91));
    CHECK(t.count_upto(10) == 4);
    CHECK(t.next_prime_after(23) == 29);
    CHECK(t.next_prime_after(89) == 97);
    CHECK_FALSE(t.next_prime_after(97).has_value());
    CHECK(t.index_of(2) == 1);
    CHECK(t.index_of(97) == 25);
    CHECK_FALSE(t.index_of(91).has_value());
}
