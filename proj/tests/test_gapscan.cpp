#include "pgap/gapscan.hpp"

#include "pgap/decimal.hpp"
#include "pgap/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace pgap;
using namespace pgap::gapscan;

namespace {
std::map<std::uint64_t, Color> color_by_prime(const PrimeTable& t, const ColoringReport& rep) {
    std::map<std::uint64_t, Color> out;
    for (std::size_t i = 0; i < rep.colors.size(); ++i) out[t.primes()[i]] = rep.colors[i];
    return out;
}
}  // namespace

TEST_CASE("g_k examples") {
    PrimeTable t = primes_up_to(100);
    CHECK(g_k(t, 30, 1) == 6);
    CHECK(g_k(t, 30, 2) == 4);
    CHECK(g_k(t, 5, 1) == 2);
    CHECK_THROWS_AS(g_k(t, 5, 3), std::domain_error);
    CHECK_THROWS_AS(g_k(t, 200, 1), insufficient_table_error);
    CHECK_THROWS_AS(g_k(t, 30, 0), std::domain_error);
}

TEST_CASE("g_k agrees with the naive window oracle") {
    PrimeTable t = primes_up_to(20000);
    auto naive_src = oracle::primes_upto(20000);
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        std::uint64_t x = 30 + rng() % 19000;
        unsigned k = 1 + rng() % 5;
        if (t.count_upto(x) < k + 1) continue;
        INFO("x=", x, " k=", k);
        CHECK(g_k(t, x, k) == oracle::naive_g_k(naive_src, x, k));
    }
}

TEST_CASE("color_two examples at x=30") {
    PrimeTable t = primes_up_to(100);
    ColoringReport rep = color_two(t, 30, 2.0);
    auto by_prime = color_by_prime(t, rep);
    for (std::uint64_t p : {2ull, 3ull, 5ull, 11ull, 17ull, 29ull}) CHECK(by_prime.at(p) == Color::red);
    for (std::uint64_t p : {7ull, 13ull, 19ull, 23ull}) CHECK(by_prime.at(p) == Color::green);
    CHECK(rep.red_count == 6);
    CHECK(rep.green_count == 4);
    CHECK(rep.longest_green_run.start_index == 8);  // 19, 23
    CHECK(rep.longest_green_run.length == 2);
    CHECK(rep.starts_red);

    ColoringReport all_green = color_two(t, 30, 0.5);
    CHECK(all_green.red_count == 0);
    CHECK(all_green.green_count == 10);
    CHECK_FALSE(all_green.starts_red);

    ColoringReport all_red = color_two(t, 30, 6.0);
    CHECK(all_red.green_count == 0);
    CHECK(all_red.red_count == 10);

    CHECK_THROWS_AS(color_two(t, 100, 2.0), insufficient_table_error);
    CHECK_THROWS_AS(color_two(t, 30, -1.0), std::domain_error);
}

TEST_CASE("color_two agrees with a trial-division oracle") {
    PrimeTable t = primes_up_to(1200);
    for (double r : {1.0, 2.0, 4.0, 5.5}) {
        ColoringReport rep = color_two(t, 1000, r);
        auto primes = oracle::primes_upto(1000);
        REQUIRE(rep.colors.size() == primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) {
            // next prime by trial division, possibly beyond x
            std::uint64_t q = primes[i] + 1;
            while (!oracle::is_prime(q)) ++q;
            bool red = static_cast<double>(q - primes[i]) <= r;
            INFO("p=", primes[i], " r=", r);
            CHECK(rep.colors[i] == (red ? Color::red : Color::green));
        }
    }
}

TEST_CASE("partition and red-monotonicity properties") {
    PrimeTable t = primes_up_to(20000);
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        std::uint64_t x = 100 + rng() % 15000;
        double r1 = (rng() % 80) / 10.0;
        double r2 = r1 + (rng() % 60) / 10.0;
        ColoringReport a = color_two(t, x, r1);
        ColoringReport b = color_two(t, x, r2);
        CHECK(a.red_count + a.green_count == t.count_upto(x));
        CHECK(b.red_count + b.green_count == t.count_upto(x));
        REQUIRE(a.colors.size() == b.colors.size());
        for (std::size_t i = 0; i < a.colors.size(); ++i)
            if (a.colors[i] == Color::red) CHECK(b.colors[i] == Color::red);
        // interval structure: blocks alternate, so counts differ by at most 1
        std::uint64_t blocks = a.red_interval_count + a.green_interval_count;
        if (blocks > 0) {
            CHECK(a.red_interval_count + 1 >= a.green_interval_count);
            CHECK(a.green_interval_count + 1 >= a.red_interval_count);
        }
    }
}

TEST_CASE("theorem1_report at desk scale") {
    PrimeTable t = primes_up_to(1000200);
    Theorem1Report rep = theorem1_report(t, 1000000, 2);
    // r = 0.1504 log(1e6)/2 = 1.0389...: below the paper's r >= 2 range
    CHECK(rep.r == doctest::Approx(1.03888).epsilon(1e-3));
    CHECK_FALSE(rep.r_within_paper_range);
    CHECK(rep.red_count + rep.green_count == t.count_upto(1000000));
    CHECK(rep.red_count <= t.count_upto(1000000));
    // ceiling = 6.646 r x/(log x)^2 ~ 36170
    CHECK(rep.lemma1_ceiling.lo > 30000);
    CHECK(rep.lemma1_ceiling.hi < 40000);
    CHECK(rep.red_ratio.lo > 0);
    CHECK_THROWS_AS(theorem1_report(t, 1000000, 1), std::domain_error);
}

TEST_CASE("square_diff_pairs examples") {
    PrimeTable t = primes_up_to(100);
    using pair_list = std::vector<std::pair<std::uint64_t, std::uint64_t>>;
    CHECK(square_diff_pairs(t, 0, 12) == pair_list{{2, 3}, {2, 11}, {3, 7}, {7, 11}});
    CHECK(square_diff_pairs(t, 2, 12) == pair_list{{3, 7}, {7, 11}});
    CHECK(square_diff_pairs(t, 0, 2) == pair_list{});
    CHECK_THROWS_AS(square_diff_pairs(t, 12, 12), std::domain_error);
    CHECK_THROWS_AS(square_diff_pairs(t, 0, 101), insufficient_table_error);

    // every reported difference is a square; oracle cross-check on a range
    PrimeTable big = primes_up_to(5000);
    auto pairs = square_diff_pairs(big, 0, 5000);
    CHECK(!pairs.empty());
    for (auto [q, p] : pairs) {
        CHECK(oracle::is_square(p - q));
        CHECK(big.contains(q));
        CHECK(big.contains(p));
    }
    // completeness against a brute-force scan
    pair_list brute;
    auto op = oracle::primes_upto(300);
    for (std::size_t i = 0; i < op.size(); ++i)
        for (std::size_t j = i + 1; j < op.size(); ++j)
            if (oracle::is_square(op[j] - op[i])) brute.emplace_back(op[i], op[j]);
    std::sort(brute.begin(), brute.end());
    CHECK(square_diff_pairs(big, 0, 300) == brute);
}

TEST_CASE("color_three examples") {
    PrimeTable t = primes_up_to(200);
    ColoringReport rep = color_three(t, 100, 2, 2.0);
    auto by_prime = color_by_prime(t, rep);
    CHECK(by_prime.at(2) == Color::red);  // 2 + 1 = 3 prime
    // 23: 24 and 27 composite, p_{i+2} - p = 31 - 23 = 8 > 4
    CHECK(by_prime.at(23) == Color::yellow);
    CHECK(rep.red_count + rep.green_count + rep.yellow_count == t.count_upto(100));

    ColoringReport no_red = color_three(t, 100, 2, 0.0);
    CHECK(no_red.red_count == 0);

    CHECK_THROWS_AS(color_three(t, 100, 0, 2.0), std::domain_error);
    CHECK_THROWS_AS(color_three(t, 190, 2, 4.0), insufficient_table_error);
}

TEST_CASE("yellow bound holds on every scan") {
    PrimeTable t = primes_up_to(120000);
    for (std::uint64_t x : {1000ull, 10000ull, 100000ull}) {
        for (unsigned tt : {1u, 2u, 3u}) {
            for (double r : {0.0, 3.0, 10.0}) {
                ColoringReport rep = color_three(t, x, tt, r);
                INFO("x=", x, " t=", tt, " r=", r);
                CHECK(yellow_bound_check(rep));
                CHECK(rep.red_count + rep.green_count + rep.yellow_count == t.count_upto(x));
            }
        }
    }
    ColoringReport two = color_two(t, 1000, 2.0);
    CHECK_THROWS_AS(yellow_bound_check(two), std::domain_error);
}

TEST_CASE("first_green_run extraction and the no-square-difference core") {
    PrimeTable t = primes_up_to(20000);

    // with r = 0 and t = 1 every prime is yellow (any positive gap exceeds 0)
    auto all_yellow = color_three(t, 1000, 1, 0.0);
    CHECK(all_yellow.green_count == 0);
    CHECK_FALSE(first_green_run(t, all_yellow, 1).has_value());

    // any run of t consecutive green primes must be pairwise square-free;
    // this is the unconditional core of the three-coloring argument
    int runs_found = 0;
    for (std::uint64_t x : {1000ull, 10000ull}) {
        for (unsigned tt : {2u, 3u}) {
            for (double r : {2.0, 3.5, 6.0}) {
                auto rep = color_three(t, x, tt, r);
                auto w = first_green_run(t, rep, tt);
                if (!w) continue;
                ++runs_found;
                INFO("x=", x, " t=", tt, " r=", r);
                CHECK(w->primes.size() == tt);
                CHECK(w->pairwise_ok);
                CHECK(oracle::pairwise_square_free(w->primes));
                // witness really is the reported run: consecutive table
                // primes, all green
                for (std::size_t i = 0; i < tt; ++i) {
                    std::size_t idx = w->start_index - 1 + i;
                    CHECK(t.primes()[idx] == w->primes[i]);
                    CHECK(rep.colors[idx] == Color::green);
                }
                if (w->start_index >= 2) CHECK(rep.colors[w->start_index - 2] != Color::green);
            }
        }
    }
    CHECK(runs_found > 0);
    CHECK_THROWS_AS(first_green_run(t, all_yellow, 0), std::domain_error);
}

TEST_CASE("theorem6_search degenerates at desk scale") {
    PrimeTable t = primes_up_to(1001200);
    Theorem6Result res = theorem6_search(t, 1000000);
    CHECK(res.t == 0);
    CHECK(res.degenerate);
    CHECK_FALSE(res.found);
    CHECK_THROWS_AS(theorem6_search(t, 16), std::domain_error);
}

TEST_CASE("first_sdf_run fallback finds {23, 29, 31}") {
    PrimeTable t = primes_up_to(100);
    auto w = first_sdf_run(t, 100, 3);
    REQUIRE(w.has_value());
    CHECK(w->primes == std::vector<std::uint64_t>{23, 29, 31});
    CHECK(w->start_index == 9);
    CHECK(w->pairwise_ok);
    CHECK(oracle::pairwise_square_free(w->primes));

    // length 2: (2,3) fails since 1 = 1^2, so the first window is (3,5)
    auto w2 = first_sdf_run(t, 100, 2);
    REQUIRE(w2.has_value());
    CHECK(w2->primes == std::vector<std::uint64_t>{3, 5});
    CHECK(w2->start_index == 2);
}

TEST_CASE("every window reported by first_sdf_run verifies") {
    PrimeTable t = primes_up_to(5000);
    for (unsigned len : {2u, 3u, 4u, 5u}) {
        auto w = first_sdf_run(t, 5000, len);
        REQUIRE(w.has_value());
        CHECK(w->primes.size() == len);
        CHECK(oracle::pairwise_square_free(w->primes));
        // earlier windows must all contain a square difference
        const auto& ps = t.primes();
        for (std::size_t s = 0; s + 1 < w->start_index; ++s) {
            std::vector<std::uint64_t> window(ps.begin() + static_cast<std::ptrdiff_t>(s),
                                              ps.begin() + static_cast<std::ptrdiff_t>(s + len));
            CHECK_FALSE(oracle::pairwise_square_free(window));
        }
    }
}
