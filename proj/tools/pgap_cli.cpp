#include "pgap/certify.hpp"
#include "pgap/decimal.hpp"
#include "pgap/errors.hpp"
#include "pgap/gapscan.hpp"
#include "pgap/powertuple.hpp"
#include "pgap/sieve.hpp"
#include "pgap/sqfree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace pgap;

constexpr const char* kVersion = "0.1.0";

struct GlobalOptions {
    mpfr_prec_t precision_bits = 192;
    std::uint64_t limit_override = 0;  // 0 = derive from the command
    std::string cache_path;
    unsigned threads = 1;
    std::string output = "json";
};

json interval_json(const CertifiedInterval& iv) {
    return json{{"lo", decimal_from_rational(iv.lo, 30, MPFR_RNDD)},
                {"hi", decimal_from_rational(iv.hi, 30, MPFR_RNDU)}};
}

json report_json(const InequalityReport& r) {
    return json{{"name", r.name},
                {"claimed", r.claimed},
                {"verified", r.verified},
                {"lo", decimal_from_rational(r.witness.lo, 30, MPFR_RNDD)},
                {"hi", decimal_from_rational(r.witness.hi, 30, MPFR_RNDU)}};
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

SieveConfig sieve_config(const GlobalOptions& g) {
    SieveConfig cfg;
    if (!g.cache_path.empty()) cfg.cache_path = g.cache_path;
    cfg.threads = g.threads;
    return cfg;
}

PrimeTable table_for(const GlobalOptions& g, std::uint64_t needed) {
    std::uint64_t limit = g.limit_override ? g.limit_override : needed;
    return primes_up_to(limit, sieve_config(g));
}

json coloring_json(const gapscan::ColoringReport& rep) {
    json j{{"x", rep.x},
           {"r", rep.r},
           {"counts", json{{"red", rep.red_count}, {"green", rep.green_count}}},
           {"longest_green_run",
            json{{"start_index", rep.longest_green_run.start_index},
                 {"length", rep.longest_green_run.length}}},
           {"starts_red", rep.starts_red},
           {"red_intervals", rep.red_interval_count},
           {"green_intervals", rep.green_interval_count}};
    if (rep.t) {
        j["t"] = *rep.t;
        j["counts"]["yellow"] = rep.yellow_count;
    }
    return j;
}

void dump_colors_tsv(const PrimeTable& t, const gapscan::ColoringReport& rep) {
    const char* names[] = {"red", "green", "yellow"};
    for (std::size_t i = 0; i < rep.colors.size(); ++i)
        std::cout << t.primes()[i] << "\t" << names[static_cast<int>(rep.colors[i])] << "\n";
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// --- subcommand runners -------------------------------------------------

int run_certify(const GlobalOptions& g, bool all, bool golden, bool chain, bool theorem3, bool tower,
                bool classical, long m_max, std::uint64_t x_max, std::uint64_t k_max) {
    if (all) golden = chain = theorem3 = true;
    if (!(golden || chain || theorem3 || tower || classical)) golden = chain = theorem3 = true;

    std::vector<InequalityReport> reports;
    if (golden) {
        auto a = certify::appendix_reports(g.precision_bits);
        reports.insert(reports.end(), a.begin(), a.end());
    }
    if (chain) {
        auto c = certify::verify_lemma1_chain(g.precision_bits);
        reports.insert(reports.end(), c.begin(), c.end());
    }
    if (theorem3) reports.push_back(certify::verify_theorem3_display(g.precision_bits));
    if (tower)
        for (long m = 3; m <= m_max; ++m) reports.push_back(certify::verify_tower_bound(m, g.precision_bits));
    if (classical) {
        auto c = certify::check_classical_inequalities(x_max, k_max, g.precision_bits);
        reports.insert(reports.end(), c.begin(), c.end());
    }

    bool ok = true;
    for (const auto& r : reports) {
        emit(report_json(r));
        ok = ok && r.verified;
    }
    return ok ? 0 : 1;
}

int run_sieve(const GlobalOptions& g, std::uint64_t x, std::uint64_t nth, std::uint64_t pair_h,
              std::uint64_t pair_n) {
    PrimeTable t = table_for(g, x);
    emit(json{{"limit", x}, {"count", t.count_upto(x)}});
    if (nth > 0) emit(json{{"n", nth}, {"prime", t.nth(nth)}});
    if (pair_h > 0) {
        std::uint64_t upto = pair_n > 0 ? pair_n : x - pair_h;
        emit(json{{"N", upto}, {"h", pair_h}, {"pairs", pair_count_with_difference(t, upto, pair_h)}});
    }
    return 0;
}

int run_gaps_gk(const GlobalOptions& g, std::uint64_t x, unsigned k) {
    PrimeTable t = table_for(g, x);
    emit(json{{"g_k", gapscan::g_k(t, x, k)}});
    return 0;
}

int run_gaps_color1(const GlobalOptions& g, std::uint64_t x, unsigned k) {
    double r_est = 0.1504 * std::log(static_cast<double>(x)) / k;
    PrimeTable t = table_for(g, x + static_cast<std::uint64_t>(std::ceil(r_est)) + 64);
    auto rep = gapscan::theorem1_report(t, x, k, g.precision_bits);
    emit(json{{"x", rep.x},
              {"k", rep.k},
              {"r", rep.r},
              {"r_within_paper_range", rep.r_within_paper_range},
              {"counts", json{{"red", rep.red_count}, {"green", rep.green_count}}},
              {"lemma1_ceiling", interval_json(rep.lemma1_ceiling)},
              {"red_ratio", interval_json(rep.red_ratio)},
              {"longest_green_run",
               json{{"start_index", rep.longest_green_run.start_index},
                    {"length", rep.longest_green_run.length}}},
              {"run_meets_k", rep.run_meets_k},
              {"starts_red", rep.starts_red},
              {"red_intervals", rep.red_interval_count},
              {"green_intervals", rep.green_interval_count}});
    return 0;
}

int run_gaps_color6(const GlobalOptions& g, std::uint64_t x, long tparam, double r) {
    if (tparam > 0 && r >= 0) {
        PrimeTable t = table_for(g, x + static_cast<std::uint64_t>(std::ceil(r * r)) + 64);
        auto rep = gapscan::color_three(t, x, static_cast<unsigned>(tparam), r);
        json j = coloring_json(rep);
        j["yellow_bound_ok"] = gapscan::yellow_bound_check(rep);
        if (g.output == "tsv") {
            dump_colors_tsv(t, rep);
        } else {
            emit(j);
        }
        return 0;
    }
    if (tparam > 0) {
        // brute-force fallback: first window of tparam consecutive primes
        // with pairwise non-square differences
        PrimeTable t = table_for(g, x);
        auto w = gapscan::first_sdf_run(t, x, static_cast<unsigned>(tparam));
        json j{{"x", x}, {"t", tparam}, {"found", w.has_value()}};
        if (w) {
            j["witness"] = w->primes;
            j["start_index"] = w->start_index;
            j["pairwise_ok"] = w->pairwise_ok;
        }
        emit(j);
        return 0;
    }
    // formula mode
    double lx = std::log(static_cast<double>(x));
    double t_est = std::floor(0.24 * std::pow(lx, 0.25));
    std::uint64_t margin = 64;
    if (t_est >= 2) {
        double r_est = std::pow(t_est, 1.0 / 3) * std::pow(lx, 2.0 / 3) / std::pow(3.323, 1.0 / 3);
        margin += static_cast<std::uint64_t>(std::ceil(r_est * r_est)) + 1024;
    }
    PrimeTable t = table_for(g, x + margin);
    auto res = gapscan::theorem6_search(t, x, g.precision_bits);
    json j{{"x", res.x}, {"t", res.t}, {"r", res.r}, {"degenerate", res.degenerate}, {"found", res.found}};
    if (!res.degenerate) {
        j["counts"] = json{{"red", res.coloring.red_count},
                           {"green", res.coloring.green_count},
                           {"yellow", res.coloring.yellow_count}};
        j["yellow_bound_ok"] = gapscan::yellow_bound_check(res.coloring);
    }
    if (res.found) {
        j["witness"] = res.witness.primes;
        j["start_index"] = res.witness.start_index;
        j["pairwise_ok"] = res.witness.pairwise_ok;
    }
    emit(j);
    return 0;
}

int run_gaps_pairs(const GlobalOptions& g, std::uint64_t lo, std::uint64_t hi) {
    PrimeTable t = table_for(g, hi);
    auto pairs = gapscan::square_diff_pairs(t, lo, hi);
    json arr = json::array();
    for (auto [q, p] : pairs) arr.push_back(json::array({q, p}));
    emit(json{{"min", lo}, {"max", hi}, {"count", pairs.size()}, {"pairs", arr}});
    return 0;
}

int run_sdf_rm(std::uint64_t modulus, bool exact, std::uint64_t budget) {
    auto res = sqfree::max_sdf_residues(modulus,
                                        exact ? sqfree::SearchMode::exact : sqfree::SearchMode::witness,
                                        budget);
    emit(json{{"modulus", modulus},
              {"size", res.size},
              {"witness", res.witness.residues},
              {"optimal", res.optimal},
              {"nodes", res.nodes}});
    return 0;
}

sqfree::ResidueSet residues_or_default(std::uint64_t modulus, const std::vector<std::uint32_t>& residues,
                                       std::uint64_t budget) {
    if (!residues.empty()) return sqfree::make_residue_set(modulus, residues);
    if (modulus == 65) return sqfree::ruzsa_65();
    auto found = sqfree::max_sdf_residues(modulus, sqfree::SearchMode::witness, budget);
    std::cerr << "note: using searched residue witness of size " << found.size << " for modulus "
              << modulus << "\n";
    return found.witness;
}

int run_sdf_digit_set(std::uint64_t modulus, unsigned digits, const std::vector<std::uint32_t>& shifts,
                      const std::vector<std::uint32_t>& residues, std::uint64_t budget) {
    auto r = residues_or_default(modulus, residues, budget);
    sqfree::DigitTupleSpec spec{modulus, digits, shifts};
    auto s = sqfree::build_digit_set(spec, r);
    emit(json{{"modulus", modulus},
              {"digits", digits},
              {"shifts", shifts},
              {"residues", r.residues},
              {"count", s.elements.size()},
              {"elements", s.elements}});
    return 0;
}

int run_sdf_primes(const GlobalOptions& g, std::uint64_t x, std::uint64_t modulus,
                   const std::vector<std::uint32_t>& residues, std::uint64_t budget) {
    auto r = residues_or_default(modulus, residues, budget);
    PrimeTable t = table_for(g, x);
    auto w = sqfree::theorem5_witness(x, modulus, r, t, g.precision_bits);
    emit(json{{"x", x},
              {"modulus", modulus},
              {"n", w.n},
              {"shifts", w.primes.spec ? json(w.primes.spec->shifts) : json(nullptr)},
              {"prime_count", w.primes.elements.size()},
              {"primes", w.primes.elements},
              {"gamma", interval_json(w.gamma)},
              {"bound", interval_json(w.bound)},
              {"meets_bound", w.meets_bound}});
    return 0;
}

json exponent_vector_json(const powertuple::ExponentVector& v) {
    json j = json::object();
    std::size_t total_len = 0;
    for (const auto& [p, e] : v) total_len += e.get_str().size();
    if (total_len > 16384) {
        std::string canon;
        for (const auto& [p, e] : v) canon += std::to_string(p) + "^" + e.get_str() + " ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                      static_cast<unsigned long long>(fnv1a(canon)));
        return json{{"elided", true}, {"primes", v.size()}, {"digest", buf}};
    }
    for (const auto& [p, e] : v) {
        std::string es = e.get_str();
        // numbers above 15 significant digits travel as strings
        if (es.size() > 15)
            j[std::to_string(p)] = es;
        else
            j[std::to_string(p)] = e.get_ui();
    }
    return j;
}

int run_powertuple(const GlobalOptions& g, unsigned k, bool paper50, std::uint64_t materialize_limit) {
    powertuple::TargetAssignment assignment =
        paper50 ? powertuple::paper50_targets() : powertuple::default_targets(k);
    auto result = powertuple::solve_exponents(assignment.k, assignment, g.precision_bits);
    bool verified = powertuple::verify_power_tuple(result, assignment, materialize_limit);
    auto adm = powertuple::admissible_check(powertuple::tuple_offsets(result));
    json j{{"k", result.k},
           {"W", exponent_vector_json(result.W)},
           {"a", exponent_vector_json(result.a)},
           {"log10_a", interval_json(result.log10_a)},
           {"verified", verified},
           {"admissible", adm.admissible}};
    if (adm.witness_prime) j["witness_prime"] = *adm.witness_prime;
    emit(j);
    return verified && adm.admissible ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-gap structures toolkit: certified constants, sieve scans, "
                 "square-difference-free constructions, perfect-power tuples"};
    app.set_version_flag("--version", kVersion);

    GlobalOptions g;
    long precision = 192;
    app.add_option("--precision-bits", precision, "interval arithmetic precision")
        ->envname("PGAP_PRECISION");
    app.add_option("--limit", g.limit_override, "sieve table limit override")->envname("PGAP_LIMIT");
    app.add_option("--cache", g.cache_path, "sieve cache file path");
    app.add_option("--threads", g.threads, "worker cap for sieving");
    app.add_option("--output", g.output, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "golden appendix values and certified inequalities");
    bool all = false, golden = false, chain = false, theorem3 = false, tower = false, classical = false;
    long m_max = 10;
    std::uint64_t x_max = 10000, k_max = 5000;
    certify_cmd->add_flag("--all", all, "golden values + constant chain + closing display");
    certify_cmd->add_flag("--golden", golden, "the five appendix results");
    certify_cmd->add_flag("--chain", chain, "the eight-step constant chain");
    certify_cmd->add_flag("--theorem3", theorem3, "closing display re-certification");
    certify_cmd->add_flag("--tower", tower, "tower bounds for m in [3, --m-max]");
    certify_cmd->add_flag("--classical", classical, "pi(x), primorial and p_k sweeps");
    certify_cmd->add_option("--m-max", m_max, "largest m for --tower");
    certify_cmd->add_option("--x-max", x_max, "sweep bound for --classical");
    certify_cmd->add_option("--k-max", k_max, "index bound for --classical");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "prime table queries");
    std::uint64_t sieve_x = 0, sieve_nth = 0, pair_h = 0, pair_n = 0;
    sieve_cmd->add_option("--x", sieve_x, "sieve bound")->required();
    sieve_cmd->add_option("--nth", sieve_nth, "report the n-th prime");
    sieve_cmd->add_option("--pair-diff", pair_h, "count prime pairs with this difference");
    sieve_cmd->add_option("--upto", pair_n, "pair count range bound (default x - h)");

    // gaps
    auto* gaps_cmd = app.add_subcommand("gaps", "gap scans and colorings");
    gaps_cmd->require_subcommand(1);
    auto* gk_cmd = gaps_cmd->add_subcommand("gk", "max-min consecutive gap statistic");
    std::uint64_t gk_x = 0;
    unsigned gk_k = 1;
    gk_cmd->add_option("--x", gk_x)->required();
    gk_cmd->add_option("--k", gk_k)->required();
    auto* color1_cmd = gaps_cmd->add_subcommand("color1", "two-coloring report");
    std::uint64_t c1_x = 0;
    unsigned c1_k = 2;
    color1_cmd->add_option("--x", c1_x)->required();
    color1_cmd->add_option("--k", c1_k)->required();
    auto* color6_cmd = gaps_cmd->add_subcommand("color6", "three-coloring / consecutive run search");
    std::uint64_t c6_x = 0;
    long c6_t = 0;
    double c6_r = -1;
    color6_cmd->add_option("--x", c6_x)->required();
    color6_cmd->add_option("--t", c6_t, "run length (omit for the formula value)");
    color6_cmd->add_option("--r", c6_r, "red radius (with --t: explicit coloring)");
    auto* pairs_cmd = gaps_cmd->add_subcommand("pairs", "prime pairs with square difference");
    std::uint64_t p_min = 0, p_max = 0;
    pairs_cmd->add_option("--min", p_min)->required();
    pairs_cmd->add_option("--max", p_max)->required();

    // sdf
    auto* sdf_cmd = app.add_subcommand("sdf", "square-difference-free structures");
    sdf_cmd->require_subcommand(1);
    auto* rm_cmd = sdf_cmd->add_subcommand("rm", "max residue set search");
    std::uint64_t rm_modulus = 0, budget = 100'000'000;
    bool rm_exact = false;
    rm_cmd->add_option("--modulus", rm_modulus)->required();
    rm_cmd->add_flag("--exact", rm_exact);
    rm_cmd->add_option("--budget", budget, "node budget");
    auto* ds_cmd = sdf_cmd->add_subcommand("digit-set", "materialize a digit set");
    std::uint64_t ds_modulus = 0;
    unsigned ds_digits = 1;
    std::vector<std::uint32_t> ds_shifts, ds_residues;
    ds_cmd->add_option("--modulus", ds_modulus)->required();
    ds_cmd->add_option("--digits", ds_digits)->required();
    ds_cmd->add_option("--shifts", ds_shifts)->required()->delimiter(',');
    ds_cmd->add_option("--residues", ds_residues)->delimiter(',');
    auto* sp_cmd = sdf_cmd->add_subcommand("primes", "prime-restricted digit set witness");
    std::uint64_t sp_x = 0, sp_modulus = 0;
    std::vector<std::uint32_t> sp_residues;
    sp_cmd->add_option("--x", sp_x)->required();
    sp_cmd->add_option("--modulus", sp_modulus)->required();
    sp_cmd->add_option("--residues", sp_residues)->delimiter(',');

    // powertuple
    auto* pt_cmd = app.add_subcommand("powertuple", "CRT perfect-power tuple construction");
    unsigned pt_k = 0;
    bool paper50 = false;
    std::uint64_t materialize_limit = 100'000;
    pt_cmd->add_option("--k", pt_k, "tuple length");
    pt_cmd->add_flag("--paper50", paper50, "the k=50 split assignment");
    pt_cmd->add_option("--materialize-limit", materialize_limit, "digit cap for integer root checks");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    g.precision_bits = static_cast<mpfr_prec_t>(precision);

    auto started = std::chrono::steady_clock::now();
    std::string command;
    json params = json::object();
    int rc = 0;
    try {
        if (*certify_cmd) {
            command = "certify";
            params = {{"all", all},       {"golden", golden}, {"chain", chain}, {"theorem3", theorem3},
                      {"tower", tower},   {"classical", classical},             {"m_max", m_max},
                      {"x_max", x_max},   {"k_max", k_max}};
            rc = run_certify(g, all, golden, chain, theorem3, tower, classical, m_max, x_max, k_max);
        } else if (*sieve_cmd) {
            command = "sieve";
            params = {{"x", sieve_x}, {"nth", sieve_nth}, {"pair_diff", pair_h}, {"upto", pair_n}};
            rc = run_sieve(g, sieve_x, sieve_nth, pair_h, pair_n);
        } else if (*gk_cmd) {
            command = "gaps gk";
            params = {{"x", gk_x}, {"k", gk_k}};
            rc = run_gaps_gk(g, gk_x, gk_k);
        } else if (*color1_cmd) {
            command = "gaps color1";
            params = {{"x", c1_x}, {"k", c1_k}};
            rc = run_gaps_color1(g, c1_x, c1_k);
        } else if (*color6_cmd) {
            command = "gaps color6";
            params = {{"x", c6_x}, {"t", c6_t}, {"r", c6_r}};
            rc = run_gaps_color6(g, c6_x, c6_t, c6_r);
        } else if (*pairs_cmd) {
            command = "gaps pairs";
            params = {{"min", p_min}, {"max", p_max}};
            rc = run_gaps_pairs(g, p_min, p_max);
        } else if (*rm_cmd) {
            command = "sdf rm";
            params = {{"modulus", rm_modulus}, {"exact", rm_exact}, {"budget", budget}};
            rc = run_sdf_rm(rm_modulus, rm_exact, budget);
        } else if (*ds_cmd) {
            command = "sdf digit-set";
            params = {{"modulus", ds_modulus}, {"digits", ds_digits}, {"shifts", ds_shifts},
                      {"residues", ds_residues}};
            rc = run_sdf_digit_set(ds_modulus, ds_digits, ds_shifts, ds_residues, budget);
        } else if (*sp_cmd) {
            command = "sdf primes";
            params = {{"x", sp_x}, {"modulus", sp_modulus}, {"residues", sp_residues}};
            rc = run_sdf_primes(g, sp_x, sp_modulus, sp_residues, budget);
        } else if (*pt_cmd) {
            command = "powertuple";
            if (paper50) pt_k = 50;
            if (pt_k < 2) throw std::domain_error("powertuple requires --k >= 2 or --paper50");
            params = {{"k", pt_k}, {"paper50", paper50}, {"materialize_limit", materialize_limit}};
            rc = run_powertuple(g, pt_k, paper50, materialize_limit);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    json manifest{{"command", command},
                  {"parameters", params},
                  {"tool_version", kVersion},
                  {"precision_bits", static_cast<long>(g.precision_bits)},
                  {"elapsed_ms", elapsed}};
    std::cerr << manifest.dump() << "\n";
    return rc;
}
