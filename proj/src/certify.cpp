#include "pgap/certify.hpp"

#include "pgap/decimal.hpp"
#include "pgap/errors.hpp"
#include "pgap/numutil.hpp"
#include "pgap/sieve.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pgap::certify {

namespace {

IntervalReal euler_product_iv(std::uint64_t limit, mpfr_prec_t prec) {
    if (limit < 3) throw std::domain_error("euler_product_partial requires limit >= 3");
    IntervalReal prod = IntervalReal::from_long(1, prec);
    if (limit == 3) return prod;
    PrimeTable t = primes_up_to(limit - 1);
    for (std::uint64_t p : t.primes()) {
        if (p < 3) continue;
        // 1 - 1/(p-1)^2 = p(p-2) / (p-1)^2
        mpq_class f(p * (p - 2), (p - 1) * (p - 1));
        f.canonicalize();
        prod *= IntervalReal::from_rational(f, prec);
    }
    return prod;
}

IntervalReal pair_sum_iv(std::uint64_t T, mpfr_prec_t prec) {
    if (T < 3) throw std::domain_error("pair_tail_sum requires T >= 3");
    PrimeTable t = primes_up_to(T + 1);
    IntervalReal sum(prec);
    for (std::uint64_t p : t.primes()) {
        if (p < 3) continue;
        mpq_class term(2, (p - 2) * (p + 1));
        term.canonicalize();
        sum += IntervalReal::from_rational(term, prec);
    }
    return sum;
}

std::vector<char> squarefree_flags(std::uint64_t n) {
    std::vector<char> flags(n + 1, 1);
    if (n >= 1) flags[0] = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        std::uint64_t sq = p * p;
        for (std::uint64_t m = sq; m <= n; m += sq) flags[m] = 0;
    }
    return flags;
}

IntervalReal sqfree_sum_iv(std::uint64_t T, Parity parity, mpfr_prec_t prec) {
    if (T < 1) throw std::domain_error("sqfree_parity_sum requires T >= 1");
    std::uint64_t upper = parity == Parity::even ? T : T + 1;
    auto sqfree = squarefree_flags(upper);
    IntervalReal sum(prec);
    std::uint64_t start = parity == Parity::even ? 2 : 1;
    for (std::uint64_t d = start; d <= upper; d += 2) {
        if (!sqfree[d]) continue;
        mpq_class term = parity == Parity::even ? mpq_class(1, d * d) : mpq_class(1, 2 * d * d);
        term.canonicalize();
        sum += IntervalReal::from_rational(term, prec);
    }
    return sum;
}

// String check for a recorded decimal: both endpoints must round to the
// same 53-bit value (the float width the results were printed from) and
// that value must print as `printed` at 15 significant digits.
bool matches_printed(const IntervalReal& iv, const std::string& printed) {
    Real lo53(53), hi53(53);
    mpfr_set(lo53.get(), iv.lo(), MPFR_RNDN);
    mpfr_set(hi53.get(), iv.hi(), MPFR_RNDN);
    if (!mpfr_equal_p(lo53.get(), hi53.get())) return false;
    return sci_from_mpfr(lo53.get(), 15, MPFR_RNDN) == parse_sci_decimal(printed);
}

InequalityReport golden_report(std::string name, const IntervalReal& iv, const std::string& printed,
                               bool relative_tol) {
    mpq_class v = rational_from_decimal(printed);
    mpq_class tol = relative_tol ? mpq_class(v * rational_from_decimal("1e-10"))
                                 : rational_from_decimal("1e-12");
    bool numeric_ok = iv.lo_rational() >= v - tol && iv.hi_rational() <= v + tol;
    bool string_ok = matches_printed(iv, printed);
    InequalityReport r;
    r.name = std::move(name);
    r.claimed = "encloses " + printed;
    r.verified = string_ok && numeric_ok;
    r.witness = iv.to_certified(r.claimed);
    return r;
}

InequalityReport exact_less_report(std::string name, std::string claimed, const mpq_class& lhs,
                                   const mpq_class& rhs) {
    InequalityReport r;
    r.name = std::move(name);
    r.claimed = std::move(claimed);
    r.verified = lhs < rhs;
    r.witness = CertifiedInterval{lhs, lhs, r.claimed};
    return r;
}

}  // namespace

InequalityReport certify_less(std::string name, std::string claimed, const IntervalReal& lhs,
                              const IntervalReal& rhs) {
    InequalityReport r;
    r.name = std::move(name);
    r.claimed = std::move(claimed);
    r.verified = lhs.strictly_less(rhs);
    r.witness = lhs.to_certified(r.claimed);
    return r;
}

CertifiedInterval euler_product_partial(std::uint64_t limit, mpfr_prec_t precision_bits) {
    return euler_product_iv(limit, precision_bits)
        .to_certified("prod over primes in [3," + std::to_string(limit) + ") of 1 - 1/(p-1)^2");
}

CertifiedInterval pair_tail_sum(std::uint64_t T, mpfr_prec_t precision_bits) {
    return pair_sum_iv(T, precision_bits)
        .to_certified("sum over primes in [3," + std::to_string(T + 1) + "] of 2/((p-2)(p+1))");
}

CertifiedInterval sqfree_parity_sum(std::uint64_t T, Parity parity, mpfr_prec_t precision_bits) {
    std::string desc = parity == Parity::even
                           ? "sum over squarefree even d <= " + std::to_string(T) + " of 1/d^2"
                           : "sum over squarefree odd d <= " + std::to_string(T + 1) + " of 1/(2d^2)";
    return sqfree_sum_iv(T, parity, precision_bits).to_certified(std::move(desc));
}

mpq_class telescoped_pair_tail(std::uint64_t T) {
    if (T < 1) throw std::domain_error("telescoped_pair_tail requires T >= 1");
    mpq_class q(2, T);
    q.canonicalize();
    return q;
}

Program5Bounds program5_bounds(mpfr_prec_t precision_bits) {
    PrimeTable t = primes_up_to(200);
    mpz_class W = 1;
    for (std::uint64_t p : t.primes())
        if (p < 50) W *= static_cast<unsigned long>(p);
    mpz_class E = 1;
    for (std::size_t j = 1; j <= 43; ++j) E *= static_cast<unsigned long>(t.nth(j));

    IntervalReal log10_W = IntervalReal::log10(IntervalReal::from_integer(W, precision_bits));
    IntervalReal exponent = IntervalReal::from_integer(E, precision_bits) * log10_W;

    Program5Bounds out;
    out.log10_W = log10_W.to_certified("log10 of product of primes below 50");
    out.exponent = exponent.to_certified("E * log10(W) with E the product of the first 43 primes");
    out.primorial_below_50 = W;
    out.first43_product = E;
    return out;
}

std::vector<InequalityReport> appendix_reports(mpfr_prec_t precision_bits) {
    std::vector<InequalityReport> out;
    out.push_back(golden_report("appendix.program1", euler_product_iv(5000, precision_bits),
                                "0.660175738989977", false));
    out.push_back(golden_report("appendix.program2", pair_sum_iv(20000, precision_bits),
                                "0.727089417741948", false));
    out.push_back(golden_report("appendix.program3", sqfree_sum_iv(5000, Parity::even, precision_bits),
                                "0.303923082993008", false));
    out.push_back(golden_report("appendix.program4", sqfree_sum_iv(5000, Parity::odd, precision_bits),
                                "0.607886600147474", false));

    PrimeTable t = primes_up_to(200);
    mpz_class W = 1;
    for (std::uint64_t p : t.primes())
        if (p < 50) W *= static_cast<unsigned long>(p);
    mpz_class E = 1;
    for (std::size_t j = 1; j <= 43; ++j) E *= static_cast<unsigned long>(t.nth(j));
    IntervalReal log10_W = IntervalReal::log10(IntervalReal::from_integer(W, precision_bits));
    IntervalReal exponent = IntervalReal::from_integer(E, precision_bits) * log10_W;
    out.push_back(golden_report("appendix.program5.log10_W", log10_W, "17.7887972765829", false));
    out.push_back(golden_report("appendix.program5.exponent", exponent, "1.83383491155388e76", true));
    return out;
}

std::vector<InequalityReport> verify_lemma1_chain(mpfr_prec_t precision_bits) {
    const mpfr_prec_t prec = precision_bits;
    std::vector<InequalityReport> out;

    // (a) Euler product below 0.6602
    IntervalReal euler = euler_product_iv(5000, prec);
    {
        InequalityReport r;
        r.name = "lemma1.a.euler_product";
        r.claimed = "prod_{2<p<5000} (1 - 1/(p-1)^2) < 0.6602";
        r.verified = euler.hi_rational() < rational_from_decimal("0.6602");
        r.witness = euler.to_certified(r.claimed);
        out.push_back(std::move(r));
    }

    // (b) partial pair sum below 0.7271, telescoping tail 2/T = 0.0001
    {
        IntervalReal partial = pair_sum_iv(20000, prec);
        mpq_class tail = telescoped_pair_tail(20000);
        bool partial_ok = partial.hi_rational() < rational_from_decimal("0.7271");
        bool tail_ok = tail == rational_from_decimal("0.0001");
        bool total_ok = rational_from_decimal("0.7271") + tail == rational_from_decimal("0.7272");
        InequalityReport r;
        r.name = "lemma1.b.pair_sum";
        r.claimed = "sum_{2<p<=20001} 2/((p-2)(p+1)) < 0.7271 and tail 2/T = 0.0001, so the full sum < 0.7272";
        r.verified = partial_ok && tail_ok && total_ok;
        r.witness = partial.to_certified(r.claimed);
        out.push_back(std::move(r));
    }

    // (c) e^0.7272 < 2.0693
    {
        IntervalReal e = IntervalReal::exp(IntervalReal::from_decimal("0.7272", prec));
        InequalityReport r;
        r.name = "lemma1.c.exp";
        r.claimed = "e^0.7272 < 2.0693";
        r.verified = e.hi_rational() < rational_from_decimal("2.0693");
        r.witness = e.to_certified(r.claimed);
        out.push_back(std::move(r));
    }

    // (d) 8.0001 * 0.6602 < 5.2817
    out.push_back(exact_less_report("lemma1.d.sieve_constant", "8.0001 * 0.6602 < 5.2817",
                                    rational_from_decimal("8.0001") * rational_from_decimal("0.6602"),
                                    rational_from_decimal("5.2817")));

    // (e) 2.0693 / 1.5 < 1.3796
    out.push_back(exact_less_report("lemma1.e.halved_exp", "2.0693 / 1.5 < 1.3796",
                                    rational_from_decimal("2.0693") / rational_from_decimal("1.5"),
                                    rational_from_decimal("1.3796")));

    // (f) squarefree parity sums with their telescoping tails
    {
        IntervalReal even = sqfree_sum_iv(5000, Parity::even, prec);
        IntervalReal odd = sqfree_sum_iv(5000, Parity::odd, prec);
        mpq_class tail_even(1, 2 * 5000);
        mpq_class tail_odd(1, 4 * 5000);
        tail_even.canonicalize();
        tail_odd.canonicalize();
        bool even_ok = even.hi_rational() < rational_from_decimal("0.304") &&
                       tail_even == rational_from_decimal("0.0001") &&
                       rational_from_decimal("0.304") + tail_even == rational_from_decimal("0.3041");
        bool odd_ok = odd.hi_rational() < rational_from_decimal("0.6079") &&
                      tail_odd == rational_from_decimal("0.00005") &&
                      rational_from_decimal("0.6079") + tail_odd == rational_from_decimal("0.60795");
        InequalityReport r;
        r.name = "lemma1.f.squarefree_sums";
        r.claimed = "even squarefree sum < 0.304 (tail 0.0001, total 0.3041); odd < 0.6079 (tail 0.00005, total 0.60795)";
        r.verified = even_ok && odd_ok;
        r.witness = (even + odd).to_certified(r.claimed);
        out.push_back(std::move(r));
    }

    // (g) 1.3796 (0.3041 + 0.60795) < 1.2583
    out.push_back(exact_less_report(
        "lemma1.g.density_sum", "1.3796 * (0.3041 + 0.60795) < 1.2583",
        rational_from_decimal("1.3796") * (rational_from_decimal("0.3041") + rational_from_decimal("0.60795")),
        rational_from_decimal("1.2583")));

    // (h) 5.2817 * 1.2583 < 6.646
    out.push_back(exact_less_report("lemma1.h.final", "5.2817 * 1.2583 < 6.646",
                                    rational_from_decimal("5.2817") * rational_from_decimal("1.2583"),
                                    rational_from_decimal("6.646")));
    return out;
}

InequalityReport verify_theorem3_display(mpfr_prec_t precision_bits) {
    const mpfr_prec_t prec = precision_bits;
    PrimeTable t = primes_up_to(50);
    mpz_class W = 1;
    for (std::uint64_t p : t.primes()) W *= static_cast<unsigned long>(p);
    IntervalReal log10_W = IntervalReal::log10(IntervalReal::from_integer(W, prec));
    IntervalReal lhs = IntervalReal::log10(IntervalReal::from_long(50, prec)) + log10_W +
                       IntervalReal::from_decimal("1.8339e76", prec);
    InequalityReport r;
    r.name = "theorem3.final_display";
    r.claimed = "log10(50) + log10(p1...p15) + 1.8339e76 < 1.834e76";
    r.verified = lhs.hi_rational() < rational_from_decimal("1.834e76");
    r.witness = lhs.to_certified(r.claimed);
    return r;
}

InequalityReport verify_tower_bound(long m, mpfr_prec_t precision_bits) {
    if (m < 3) throw std::domain_error("verify_tower_bound requires m >= 3");
    const mpfr_prec_t prec = precision_bits;
    IntervalReal c = IntervalReal::from_decimal("1.01624", prec);
    IntervalReal k_exp = IntervalReal::from_long(8 * m + 4, prec);
    IntervalReal e8m4 = IntervalReal::exp(k_exp);
    mpq_class m105 = mpq_class(105, 10) * m;
    m105.canonicalize();
    mpq_class m106 = mpq_class(106, 10) * m;
    m106.canonicalize();
    IntervalReal L = IntervalReal::exp(IntervalReal::from_rational(m105, prec));  // e^(10.5m)

    // Lemma step, twice-logged: ln ln of the explicit bound on a stays below e^(10.5m).
    IntervalReal lnln_a = IntervalReal::log(c) + k_exp + c * k_exp * e8m4;
    bool lemma_ok = lnln_a.strictly_less(L);

    // Theorem step: ln(K_m W a) < (8m+4) + 1.01624 e^(8m+4) + e^L.  Both small
    // terms are below e^L, so the sum is at most 3 e^L = e^(ln 3 + L), and it
    // suffices that ln 3 + L < e^(10.6m).
    IntervalReal ln_t1 = IntervalReal::log(k_exp);
    IntervalReal ln_t2 = IntervalReal::log(c) + k_exp;
    IntervalReal ln3 = IntervalReal::log(IntervalReal::from_long(3, prec));
    IntervalReal rhs = IntervalReal::exp(IntervalReal::from_rational(m106, prec));  // e^(10.6m)
    bool theorem_ok = ln_t1.strictly_less(L) && ln_t2.strictly_less(L) && (ln3 + L).strictly_less(rhs);

    InequalityReport r;
    r.name = "lemma6.tower.m" + std::to_string(m);
    r.claimed = "a-bound fits under e^(e^(e^(10.5m))) and the gap bound under e^(e^(e^(10.6m))) at m=" +
                std::to_string(m);
    r.verified = lemma_ok && theorem_ok;
    r.witness = (ln3 + L).to_certified("ln ln of the combined gap bound at m=" + std::to_string(m));
    return r;
}

std::vector<InequalityReport> check_classical_inequalities(std::uint64_t x_max, std::uint64_t k_max,
                                                           mpfr_prec_t precision_bits) {
    if (x_max < 17) throw std::domain_error("check_classical_inequalities requires x_max >= 17");
    if (k_max < 6) throw std::domain_error("check_classical_inequalities requires k_max >= 6");
    const mpfr_prec_t prec = precision_bits;

    double kd = static_cast<double>(k_max);
    std::uint64_t pk_limit = static_cast<std::uint64_t>(kd * (std::log(kd) + std::log(std::log(kd)) + 1.0)) + 64;
    PrimeTable t = primes_up_to(std::max(x_max, pk_limit));

    std::vector<InequalityReport> out;

    // pi(x) > x / log x for integer x in [17, x_max]
    {
        bool all_ok = true;
        std::uint64_t worst_x = 0;
        mpq_class worst_margin;
        IntervalReal worst_iv(prec);
        std::size_t pi = t.count_upto(16);
        for (std::uint64_t x = 17; x <= x_max; ++x) {
            if (t.contains(x)) ++pi;
            IntervalReal xiv = IntervalReal::from_ulong(x, prec);
            IntervalReal quot = xiv / IntervalReal::log(xiv);
            mpq_class margin = mpq_class(pi) - quot.hi_rational();
            bool ok = margin > 0;
            all_ok = all_ok && ok;
            if (worst_x == 0 || margin < worst_margin) {
                worst_x = x;
                worst_margin = margin;
                worst_iv = quot;
            }
        }
        InequalityReport r;
        r.name = "classical.pi_lower_bound";
        r.claimed = "pi(x) > x/log x for all integer x in [17, " + std::to_string(x_max) + "]";
        r.verified = all_ok;
        r.witness = worst_iv.to_certified("x/log x at the tightest x = " + std::to_string(worst_x));
        out.push_back(std::move(r));
    }

    // prod_{p <= x} p < e^(1.01624 x), equivalently sum_{p <= x} ln p < 1.01624 x,
    // checked at every prime x <= x_max (the left side only changes there).
    {
        IntervalReal theta(prec);
        IntervalReal c = IntervalReal::from_decimal("1.01624", prec);
        bool all_ok = true;
        std::uint64_t worst_p = 0;
        mpq_class worst_margin;
        IntervalReal worst_iv(prec);
        for (std::uint64_t p : t.primes()) {
            if (p > x_max) break;
            theta += IntervalReal::log(IntervalReal::from_ulong(p, prec));
            IntervalReal rhs = c * IntervalReal::from_ulong(p, prec);
            mpq_class margin = rhs.lo_rational() - theta.hi_rational();
            bool ok = theta.strictly_less(rhs);
            all_ok = all_ok && ok;
            if (worst_p == 0 || margin < worst_margin) {
                worst_p = p;
                worst_margin = margin;
                worst_iv = theta;
            }
        }
        InequalityReport r;
        r.name = "classical.primorial_upper";
        r.claimed = "prod_{p<=x} p < e^(1.01624 x) at every prime x <= " + std::to_string(x_max);
        r.verified = all_ok;
        r.witness = worst_iv.to_certified("sum of ln p at the tightest prime x = " + std::to_string(worst_p));
        out.push_back(std::move(r));
    }

    // p_k <= k (log k + log log k) for k in [6, k_max]
    {
        bool all_ok = true;
        std::uint64_t worst_k = 0;
        mpq_class worst_margin;
        IntervalReal worst_iv(prec);
        for (std::uint64_t k = 6; k <= k_max; ++k) {
            std::uint64_t pk = t.nth(static_cast<std::size_t>(k));
            IntervalReal kiv = IntervalReal::from_ulong(k, prec);
            IntervalReal lnk = IntervalReal::log(kiv);
            IntervalReal rhs = kiv * (lnk + IntervalReal::log(lnk));
            mpq_class margin = rhs.lo_rational() - pk;
            bool ok = margin > 0;
            all_ok = all_ok && ok;
            if (worst_k == 0 || margin < worst_margin) {
                worst_k = k;
                worst_margin = margin;
                worst_iv = rhs;
            }
        }
        InequalityReport r;
        r.name = "classical.dusart_pk";
        r.claimed = "p_k <= k(log k + log log k) for all k in [6, " + std::to_string(k_max) + "]";
        r.verified = all_ok;
        r.witness = worst_iv.to_certified("k(log k + log log k) at the tightest k = " + std::to_string(worst_k));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace pgap::certify
