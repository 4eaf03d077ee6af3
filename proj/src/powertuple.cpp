#include "pgap/powertuple.hpp"

#include "pgap/errors.hpp"
#include "pgap/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgap::powertuple {

namespace {

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
    std::uint64_t acc = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % mod;  // mod <= ~2^31 here, no overflow
        base = base * base % mod;
        exp >>= 1;
    }
    return acc;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::uint64_t limit = 64;
    while (true) {
        PrimeTable t = primes_up_to(limit);
        if (t.count() >= count) {
            std::vector<std::uint64_t> out(t.primes().begin(),
                                           t.primes().begin() + static_cast<std::ptrdiff_t>(count));
            return out;
        }
        limit *= 2;
    }
}

}  // namespace

ExponentVector factorize(std::uint64_t v) {
    if (v < 1) throw std::domain_error("factorize requires v >= 1");
    ExponentVector out;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        while (v % p == 0) {
            out[p] += 1;
            v /= p;
        }
    }
    if (v > 1) out[v] += 1;
    return out;
}

ExponentVector combine(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector out = a;
    for (const auto& [p, e] : b) out[p] += e;
    return out;
}

double approx_digits(const ExponentVector& v) {
    double digits = 0;
    for (const auto& [p, e] : v)
        digits += e.get_d() * std::log10(static_cast<double>(p));
    return digits + 1;
}

mpz_class materialize(const ExponentVector& v) {
    mpz_class out = 1;
    for (const auto& [p, e] : v) {
        if (!e.fits_ulong_p()) throw std::overflow_error("exponent too large to materialize");
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), e.get_ui());
        out *= pw;
    }
    return out;
}

ExponentVector primorial(std::uint64_t K) {
    if (K < 2) throw std::domain_error("primorial requires K >= 2");
    ExponentVector out;
    PrimeTable t = primes_up_to(K);
    for (std::uint64_t p : t.primes()) out[p] = 1;
    return out;
}

TargetAssignment default_targets(unsigned k) {
    if (k < 2) throw std::domain_error("default_targets requires k >= 2");
    auto primes = first_primes(k - 1);
    TargetAssignment out;
    out.k = k;
    for (unsigned i = 1; i < k; ++i) out.targets[i] = primes[i - 1];
    return out;
}

TargetAssignment paper50_targets() {
    const std::vector<unsigned> h1 = {1, 4, 9, 16, 25, 49};
    const std::vector<unsigned> h2 = {3, 24};
    auto primes = first_primes(43);

    TargetAssignment out;
    out.k = 50;
    for (unsigned i : h1) out.targets[i] = 2;
    for (unsigned i : h2) out.targets[i] = 3;
    std::size_t next = 2;  // p_3 is primes[2]
    for (unsigned i = 1; i <= 49; ++i) {
        if (out.targets.count(i)) continue;
        out.targets[i] = primes[next++];
    }
    return out;
}

PowerTupleResult solve_exponents(std::uint64_t K, const TargetAssignment& assignment,
                                 mpfr_prec_t precision_bits) {
    if (K < 2) throw std::domain_error("solve_exponents requires K >= 2");
    if (assignment.k < 2 || assignment.k > K + 1)
        throw std::domain_error("assignment.k must lie in [2, K+1]");
    for (unsigned i = 1; i < assignment.k; ++i) {
        auto it = assignment.targets.find(i);
        if (it == assignment.targets.end() || it->second < 2)
            throw std::domain_error("every index in [1, k-1] needs a target >= 2");
    }

    ExponentVector W = primorial(K);

    std::vector<ExponentVector> index_factors(assignment.k);
    for (unsigned i = 1; i < assignment.k; ++i) index_factors[i] = factorize(i);

    ExponentVector a;
    for (const auto& [q, wexp] : W) {
        (void)wexp;  // always 1
        // residue requirements grouped by modulus, checked for collisions
        std::map<std::uint64_t, std::uint64_t> congruences;  // modulus -> residue
        for (unsigned i = 1; i < assignment.k; ++i) {
            std::uint64_t t = assignment.targets.at(i);
            std::uint64_t eq = 0;
            auto it = index_factors[i].find(q);
            if (it != index_factors[i].end()) eq = it->second.get_ui();
            std::uint64_t res = (t - (1 + eq) % t) % t;
            auto [pos, inserted] = congruences.emplace(t, res);
            if (!inserted && pos->second != res)
                throw infeasible_system_error("incompatible congruences for repeated target " +
                                              std::to_string(t));
        }
        // CRT over pairwise coprime prime moduli, minimal non-negative solution
        mpz_class x = 0, modulus = 1;
        for (const auto& [t, res] : congruences) {
            mpz_class tz(static_cast<unsigned long>(t));
            mpz_class minv;
            if (mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), tz.get_mpz_t()) == 0)
                throw infeasible_system_error("moduli not coprime");
            mpz_class delta = (mpz_class(static_cast<unsigned long>(res)) - x) % tz;
            if (delta < 0) delta += tz;
            x += modulus * ((delta * minv) % tz);
            modulus *= tz;
        }
        if (x > 0) a[q] = x;
    }

    const mpfr_prec_t prec = precision_bits;
    IntervalReal log10_a(prec);
    for (const auto& [q, e] : a)
        log10_a += IntervalReal::from_integer(e, prec) *
                   IntervalReal::log10(IntervalReal::from_ulong(q, prec));

    PowerTupleResult out;
    out.W = std::move(W);
    out.a = std::move(a);
    out.k = assignment.k;
    out.log10_a = log10_a.to_certified("log10(a) for K=" + std::to_string(K));
    return out;
}

bool verify_power_tuple(const PowerTupleResult& result, const TargetAssignment& assignment,
                        std::uint64_t materialize_limit) {
    ExponentVector wa = combine(result.W, result.a);
    for (unsigned i = 1; i < result.k; ++i) {
        auto it = assignment.targets.find(i);
        if (it == assignment.targets.end()) return false;
        std::uint64_t t = it->second;
        ExponentVector iwa = combine(factorize(i), wa);
        for (const auto& [p, e] : iwa) {
            (void)p;
            if (!mpz_divisible_ui_p(e.get_mpz_t(), static_cast<unsigned long>(t))) return false;
        }
        if (approx_digits(iwa) <= static_cast<double>(materialize_limit)) {
            mpz_class v = materialize(iwa);
            mpz_class root;
            int exact = mpz_root(root.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(t));
            if (!exact) return false;
            mpz_class back;
            mpz_pow_ui(back.get_mpz_t(), root.get_mpz_t(), static_cast<unsigned long>(t));
            if (back != v) return false;
        }
    }
    return true;
}

AdmissibleReport admissible_check(const std::vector<std::int64_t>& offsets) {
    if (offsets.empty()) throw std::domain_error("offsets must be non-empty");
    std::vector<std::int64_t> sorted = offsets;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::domain_error("offsets must be distinct");

    std::uint64_t k = offsets.size();
    PrimeTable table = primes_up_to(std::max<std::uint64_t>(k, 2));
    for (std::uint64_t p : table.primes()) {
        if (p > k) break;
        std::vector<char> seen(p, 0);
        std::uint64_t distinct = 0;
        for (std::int64_t b : offsets) {
            std::uint64_t r = static_cast<std::uint64_t>(((b % static_cast<std::int64_t>(p)) +
                                                          static_cast<std::int64_t>(p))) %
                              p;
            if (!seen[r]) {
                seen[r] = 1;
                ++distinct;
            }
        }
        if (distinct == p) return {false, p};
    }
    return {true, std::nullopt};
}

AdmissibleReport admissible_check(const std::vector<ExponentVector>& offsets) {
    if (offsets.empty()) throw std::domain_error("offsets must be non-empty");
    for (std::size_t i = 0; i < offsets.size(); ++i)
        for (std::size_t j = i + 1; j < offsets.size(); ++j)
            if (offsets[i] == offsets[j]) throw std::domain_error("offsets must be distinct");

    std::uint64_t k = offsets.size();
    PrimeTable table = primes_up_to(std::max<std::uint64_t>(k, 2));
    for (std::uint64_t p : table.primes()) {
        if (p > k) break;
        std::vector<char> seen(p, 0);
        std::uint64_t distinct = 0;
        for (const ExponentVector& off : offsets) {
            std::uint64_t r = 1 % p;
            for (const auto& [q, e] : off) {
                std::uint64_t qm = q % p;
                if (qm == 0) {
                    r = 0;
                    break;
                }
                // Fermat: q^e = q^(e mod (p-1)) mod p for p prime, p not dividing q
                std::uint64_t ered = p > 2 ? mpz_fdiv_ui(e.get_mpz_t(), static_cast<unsigned long>(p - 1)) : 0;
                r = r * powmod_u64(qm, ered, p) % p;
            }
            if (!seen[r]) {
                seen[r] = 1;
                ++distinct;
            }
        }
        if (distinct == p) return {false, p};
    }
    return {true, std::nullopt};
}

std::vector<ExponentVector> tuple_offsets(const PowerTupleResult& result) {
    ExponentVector wa = combine(result.W, result.a);
    std::vector<ExponentVector> out;
    out.reserve(result.k);
    for (unsigned i = 1; i <= result.k; ++i) out.push_back(combine(factorize(i), wa));
    return out;
}

}  // namespace pgap::powertuple
