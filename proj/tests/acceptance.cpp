// Acceptance suite: runs every criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 only if all pass.

#include "pgap/certify.hpp"
#include "pgap/decimal.hpp"
#include "pgap/gapscan.hpp"
#include "pgap/powertuple.hpp"
#include "pgap/sieve.hpp"
#include "pgap/sqfree.hpp"

#include "oracles.hpp"

#include <json.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace pgap;
using json = nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool check_budget(Outcome& o, double elapsed, double budget) {
    if (elapsed > budget) {
        o.pass = false;
        o.detail += " [exceeded " + std::to_string(budget) + "s budget]";
        return false;
    }
    return true;
}

// ---- criterion 1: golden appendix values through the CLI ---------------

Outcome criterion1() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    std::string cmd = std::string(PGAP_CLI_PATH) + " certify --all 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        o.detail = "could not spawn CLI";
        return o;
    }
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    int rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    double elapsed = seconds_since(start);

    std::size_t verified = 0, total = 0;
    std::istringstream lines(out);
    std::string line;
    std::vector<std::string> golden_names = {"appendix.program1", "appendix.program2",
                                             "appendix.program3", "appendix.program4",
                                             "appendix.program5.log10_W", "appendix.program5.exponent"};
    std::size_t golden_seen = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto j = json::parse(line, nullptr, false);
        if (j.is_discarded()) continue;
        ++total;
        if (j.value("verified", false)) ++verified;
        for (const auto& g : golden_names)
            if (j.value("name", "") == g) ++golden_seen;
    }
    o.pass = rc == 0 && total >= 15 && verified == total && golden_seen == golden_names.size();
    o.detail = "exit=" + std::to_string(rc) + ", " + std::to_string(verified) + "/" +
               std::to_string(total) + " verified, " + std::to_string(elapsed).substr(0, 5) + "s";
    check_budget(o, elapsed, 60.0);
    return o;
}

// ---- criterion 2: lemma 1 constant chain --------------------------------

Outcome criterion2() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    auto chain = certify::verify_lemma1_chain();
    double elapsed = seconds_since(start);
    std::size_t ok = 0;
    for (const auto& r : chain) ok += r.verified;
    o.pass = chain.size() == 8 && ok == 8;
    o.detail = std::to_string(ok) + "/8 verified";
    check_budget(o, elapsed, 5.0);
    return o;
}

// ---- criterion 3: tower bounds for 3 <= m <= 200 ------------------------

Outcome criterion3() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    long failures = 0;
    for (long m = 3; m <= 200; ++m)
        if (!certify::verify_tower_bound(m).verified) ++failures;
    double elapsed = seconds_since(start);
    o.pass = failures == 0;
    o.detail = failures == 0 ? "all m in [3,200] verified" : std::to_string(failures) + " failures";
    check_budget(o, elapsed, 5.0);
    return o;
}

// ---- criterion 4: the mod-65 residue set --------------------------------

Outcome criterion4() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    auto r = sqfree::ruzsa_65();
    bool sdf = sqfree::is_sdf_residue_set(r);
    auto q = sqfree::squares_mod(65);
    int nonsquare = 0, checked = 0;
    for (auto a : r.residues)
        for (auto b : r.residues) {
            if (a == b) continue;
            ++checked;
            if (!q.is_square[(a + 65 - b) % 65]) ++nonsquare;
        }
    double elapsed = seconds_since(start);
    o.pass = sdf && checked == 42 && nonsquare == 42;
    o.detail = std::to_string(nonsquare) + "/42 ordered differences are non-squares";
    check_budget(o, elapsed, 1.0);
    return o;
}

// ---- criterion 5: r(m) searches ------------------------------------------

Outcome criterion5() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    auto r5 = sqfree::max_sdf_residues(5, sqfree::SearchMode::exact);
    bool ok5 = r5.optimal && r5.size == 2 && r5.size == oracle::max_sdf_exhaustive(5);
    auto r65 = sqfree::max_sdf_residues(65, sqfree::SearchMode::witness);
    bool ok65 = r65.size >= 7 && sqfree::is_sdf_residue_set(r65.witness);
    auto r205 = sqfree::max_sdf_residues(205, sqfree::SearchMode::witness);
    bool ok205 = r205.size >= 12 && sqfree::is_sdf_residue_set(r205.witness);
    double elapsed = seconds_since(start);
    o.pass = ok5 && ok65 && ok205;
    o.detail = "r(5)=" + std::to_string(r5.size) + " exact, r(65)>=" + std::to_string(r65.size) +
               ", r(205)>=" + std::to_string(r205.size) + ", " + std::to_string(elapsed).substr(0, 5) + "s";
    check_budget(o, elapsed, 300.0);
    return o;
}

// ---- criterion 6: digit-set property test --------------------------------

Outcome criterion6() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(65537);
    auto r5 = sqfree::make_residue_set(5, {0, 2});
    auto r65 = sqfree::ruzsa_65();
    int tuples = 0, failures = 0;
    while (tuples < 110) {
        const auto& r = (rng() % 2) ? r5 : r65;
        unsigned n = 1 + rng() % 3;
        sqfree::DigitTupleSpec spec;
        spec.modulus = r.modulus;
        spec.digits = n;
        for (unsigned j = 0; j < (n + 1) / 2; ++j)
            spec.shifts.push_back(static_cast<std::uint32_t>(rng() % r.modulus));
        auto s = sqfree::build_digit_set(spec, r);
        if (!oracle::pairwise_square_free(s.elements)) ++failures;
        ++tuples;
    }
    double elapsed = seconds_since(start);
    o.pass = failures == 0;
    o.detail = std::to_string(tuples) + " random tuples exhaustively checked, " +
               std::to_string(failures) + " failures, " + std::to_string(elapsed).substr(0, 5) + "s";
    check_budget(o, elapsed, 120.0);
    return o;
}

// ---- criterion 7: pigeonhole counting identity ---------------------------

Outcome criterion7() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    PrimeTable t = primes_up_to(169);
    struct Case {
        std::uint64_t m;
        unsigned n;
    };
    bool all_ok = true;
    std::string parts;
    for (Case c : {Case{5, 2}, Case{5, 3}, Case{13, 2}}) {
        auto r = sqfree::make_residue_set(c.m, {0, 2});
        auto best = sqfree::best_tuple_for_primes(c.m, c.n, r, t);
        std::uint64_t total = 0;
        for (auto v : best.tuple_counts) total += v;
        std::uint64_t mn = 1;
        for (unsigned j = 0; j < c.n; ++j) mn *= c.m;
        std::uint64_t expect = t.count_upto(mn);
        for (unsigned j = 0; j < (c.n + 1) / 2; ++j) expect *= r.residues.size();
        bool ok = total == expect;
        all_ok = all_ok && ok;
        parts += "(" + std::to_string(c.m) + "," + std::to_string(c.n) + "):" +
                 std::to_string(total) + "==" + std::to_string(expect) + " ";
    }
    double elapsed = seconds_since(start);
    o.pass = all_ok;
    o.detail = parts;
    check_budget(o, elapsed, 60.0);
    return o;
}

// ---- criterion 8: power tuples -------------------------------------------

Outcome criterion8() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    using namespace powertuple;

    auto a3 = solve_exponents(3, default_targets(3));
    bool ok3 = materialize(a3.a) == 486;
    mpz_class wa = materialize(combine(a3.W, a3.a));
    mpz_class root;
    ok3 = ok3 && mpz_root(root.get_mpz_t(), wa.get_mpz_t(), 2) != 0 && root == 54;
    mpz_class wa2 = 2 * wa;
    ok3 = ok3 && mpz_root(root.get_mpz_t(), wa2.get_mpz_t(), 3) != 0 && root == 18;
    ok3 = ok3 && verify_power_tuple(a3, default_targets(3));

    auto a5 = solve_exponents(5, default_targets(5));
    bool ok5 = verify_power_tuple(a5, default_targets(5));
    // materialized root cross-check is part of verify (digits ~ hundreds),
    // but re-run it explicitly here
    for (unsigned i = 1; i < 5 && ok5; ++i) {
        mpz_class v = materialize(combine(factorize(i), combine(a5.W, a5.a)));
        std::uint64_t target = default_targets(5).targets.at(i);
        ok5 = mpz_root(root.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(target)) != 0;
    }

    auto assignment = paper50_targets();
    auto a50 = solve_exponents(50, assignment);
    bool ok50 = verify_power_tuple(a50, assignment);
    ok50 = ok50 && a50.log10_a.hi <= rational_from_decimal("1.8339e76");
    auto adm = admissible_check(tuple_offsets(a50));
    ok50 = ok50 && adm.admissible;

    double elapsed = seconds_since(start);
    o.pass = ok3 && ok5 && ok50;
    o.detail = std::string("K=3 ") + (ok3 ? "ok" : "FAIL") + ", K=5 " + (ok5 ? "ok" : "FAIL") +
               ", K=50 " + (ok50 ? "ok" : "FAIL") + " (log10_a hi " +
               decimal_from_rational(a50.log10_a.hi, 6, MPFR_RNDU) + ")";
    check_budget(o, elapsed, 120.0);
    return o;
}

// ---- criterion 9: gap scans vs oracles ------------------------------------

Outcome criterion9() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    PrimeTable t = primes_up_to(1'000'200);
    const auto& ps = t.primes();
    std::size_t c_small = t.count_upto(100'000);

    // g_k vs an incremental O(c k) oracle, checked at every prime x <= 1e5
    // (g_k only changes at primes) and at sampled composite x
    bool gk_ok = true;
    std::uint64_t gk_checked = 0;
    for (unsigned k = 1; k <= 5 && gk_ok; ++k) {
        std::uint64_t running = 0;
        for (std::size_t e = k; e < c_small; ++e) {
            // window of k gaps ending with the gap into ps[e]
            std::uint64_t wmin = UINT64_MAX;
            for (unsigned j = 0; j < k; ++j) wmin = std::min(wmin, ps[e - j] - ps[e - j - 1]);
            running = std::max(running, wmin);
            std::uint64_t x = ps[e];
            if (gapscan::g_k(t, x, k) != running) {
                gk_ok = false;
                o.detail = "g_k mismatch at x=" + std::to_string(x) + " k=" + std::to_string(k);
                break;
            }
            ++gk_checked;
        }
    }
    // composite x between primes reuse the last prime's value
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 300 && gk_ok; ++trial) {
        std::size_t e = 2 + rng() % (c_small - 3);
        std::uint64_t x = ps[e] + 1 + rng() % (ps[e + 1] - ps[e]);  // in [p_e+1, p_{e+1}]
        unsigned k = 1 + rng() % 5;
        if (t.count_upto(x) < k + 1) continue;
        std::uint64_t at_prime = gapscan::g_k(t, ps[t.count_upto(x) - 1], k);
        if (gapscan::g_k(t, x, k) != at_prime) {
            gk_ok = false;
            o.detail = "g_k composite-x mismatch at x=" + std::to_string(x);
        }
        ++gk_checked;
    }

    // color partitions and the yellow bound
    bool partition_ok = true, yellow_ok = true;
    for (std::uint64_t x : {10'000ull, 100'000ull, 1'000'000ull}) {
        for (double r : {1.5, 6.0}) {
            auto rep = gapscan::color_two(t, x, r);
            partition_ok = partition_ok && rep.red_count + rep.green_count == t.count_upto(x);
        }
        for (double r : {3.0, 12.0}) {
            for (unsigned tt : {1u, 3u}) {
                auto rep = gapscan::color_three(t, x, tt, r);
                partition_ok = partition_ok &&
                               rep.red_count + rep.green_count + rep.yellow_count == t.count_upto(x);
                yellow_ok = yellow_ok && gapscan::yellow_bound_check(rep);
            }
        }
    }

    double elapsed = seconds_since(start);
    o.pass = gk_ok && partition_ok && yellow_ok;
    if (o.pass)
        o.detail = std::to_string(gk_checked) + " g_k points, partitions and Y-bounds hold, " +
                   std::to_string(elapsed).substr(0, 5) + "s";
    check_budget(o, elapsed, 120.0);
    return o;
}

// ---- criterion 10: square-difference prime pairs ---------------------------

Outcome criterion10() {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    PrimeTable t = primes_up_to(1'100'000);
    bool ok = true;
    std::string parts;
    for (std::uint64_t m : {0ull, 100'000ull, 1'000'000ull}) {
        auto pairs = gapscan::square_diff_pairs(t, m, m + 100'000);
        ok = ok && !pairs.empty();
        parts += "M=" + std::to_string(m) + ":" + std::to_string(pairs.size()) + " ";
    }
    double elapsed = seconds_since(start);
    o.pass = ok;
    o.detail = parts;
    check_budget(o, elapsed, 60.0);
    return o;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        Outcome (*fn)();
    };
    const Entry entries[] = {
        {1, "golden appendix values via `certify --all`", criterion1},
        {2, "lemma 1 constant chain", criterion2},
        {3, "tower bounds for 3 <= m <= 200", criterion3},
        {4, "mod-65 residue set", criterion4},
        {5, "r(m) searches (exact 5, witnesses 65/205)", criterion5},
        {6, "digit sets are square-difference free", criterion6},
        {7, "pigeonhole counting identity", criterion7},
        {8, "perfect-power tuples (K=3, 5, 50)", criterion8},
        {9, "gap scans vs oracles", criterion9},
        {10, "square-difference prime pairs", criterion10},
    };

    int failures = 0;
    for (const auto& e : entries) {
        Outcome o = e.fn();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << e.id << ": " << e.name << " - "
                  << o.detail << "\n";
        std::cout.flush();
        if (!o.pass) ++failures;
    }
    if (failures == 0) {
        std::cout << "all 10 acceptance criteria passed\n";
        return 0;
    }
    std::cout << failures << " acceptance criteria failed\n";
    return 1;
}
