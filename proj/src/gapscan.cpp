#include "pgap/gapscan.hpp"

#include "pgap/errors.hpp"
#include "pgap/numutil.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace pgap::gapscan {

namespace {

void require_table_reach(const PrimeTable& t, std::uint64_t x, double reach) {
    if (!std::isfinite(reach) || reach < 0) throw std::domain_error("parameter must be finite and >= 0");
    long double need = static_cast<long double>(x) + static_cast<long double>(reach);
    if (need > static_cast<long double>(t.limit()))
        throw insufficient_table_error("table limit too small for this scan");
}

void finalize_counts(ColoringReport& rep) {
    rep.red_count = rep.green_count = rep.yellow_count = 0;
    rep.longest_green_run = {};
    rep.red_interval_count = rep.green_interval_count = 0;

    std::size_t run_start = 0, run_len = 0;
    std::optional<bool> last_green;
    for (std::size_t i = 0; i < rep.colors.size(); ++i) {
        Color c = rep.colors[i];
        if (c == Color::red) ++rep.red_count;
        if (c == Color::green) ++rep.green_count;
        if (c == Color::yellow) ++rep.yellow_count;

        bool green = c == Color::green;
        if (!last_green || *last_green != green) {
            (green ? rep.green_interval_count : rep.red_interval_count)++;
            last_green = green;
        }
        if (green) {
            if (run_len == 0) run_start = i + 1;  // 1-based
            ++run_len;
            if (run_len > rep.longest_green_run.length)
                rep.longest_green_run = {run_start, run_len};
        } else {
            run_len = 0;
        }
    }
    rep.starts_red = !rep.colors.empty() && rep.colors.front() != Color::green;
}

}  // namespace

std::uint64_t g_k(const PrimeTable& t, std::uint64_t x, unsigned k) {
    if (k < 1) throw std::domain_error("g_k requires k >= 1");
    if (x > t.limit()) throw insufficient_table_error("g_k requires x <= table limit");
    std::size_t c = t.count_upto(x);
    if (c < static_cast<std::size_t>(k) + 1) throw std::domain_error("not enough primes below x for k gaps");

    const auto& ps = t.primes();
    // sliding minimum over the k consecutive gaps ending at each window
    std::deque<std::size_t> dq;  // gap indices, values increasing
    std::uint64_t best = 0;
    for (std::size_t gi = 0; gi + 1 < c; ++gi) {
        std::uint64_t gap = ps[gi + 1] - ps[gi];
        while (!dq.empty() && ps[dq.back() + 1] - ps[dq.back()] >= gap) dq.pop_back();
        dq.push_back(gi);
        if (gi + 1 >= k) {
            if (dq.front() + k <= gi) dq.pop_front();
            std::uint64_t wmin = ps[dq.front() + 1] - ps[dq.front()];
            best = std::max(best, wmin);
        }
    }
    return best;
}

ColoringReport color_two(const PrimeTable& t, std::uint64_t x, double r) {
    require_table_reach(t, x, r);
    ColoringReport rep;
    rep.x = x;
    rep.r = r;
    std::size_t c = t.count_upto(x);
    rep.colors.reserve(c);
    const auto& ps = t.primes();
    for (std::size_t i = 0; i < c; ++i) {
        bool red = false;
        if (i + 1 < ps.size()) {
            std::uint64_t gap = ps[i + 1] - ps[i];
            red = static_cast<double>(gap) <= r;
        }
        // else: no prime within the table past p, so the gap already
        // exceeds limit - p >= r
        rep.colors.push_back(red ? Color::red : Color::green);
    }
    finalize_counts(rep);
    return rep;
}

Theorem1Report theorem1_report(const PrimeTable& t, std::uint64_t x, unsigned k,
                               mpfr_prec_t precision_bits) {
    if (k < 2) throw std::domain_error("theorem1_report requires k >= 2");
    if (x < 3) throw std::domain_error("theorem1_report requires x >= 3");
    const mpfr_prec_t prec = precision_bits;

    IntervalReal logx = IntervalReal::log(IntervalReal::from_ulong(x, prec));
    IntervalReal riv = IntervalReal::from_decimal("0.1504", prec) * logx /
                       IntervalReal::from_ulong(k, prec);
    double r = riv.mid_double();

    ColoringReport coloring = color_two(t, x, r);

    IntervalReal xiv = IntervalReal::from_ulong(x, prec);
    IntervalReal ceiling = IntervalReal::from_decimal("6.646", prec) * riv * xiv / (logx * logx);
    IntervalReal ratio = IntervalReal::from_ulong(coloring.red_count, prec) * logx * logx / (riv * xiv);

    Theorem1Report rep;
    rep.x = x;
    rep.k = k;
    rep.r = r;
    rep.r_within_paper_range = riv.lo_rational() >= 2;
    rep.red_count = coloring.red_count;
    rep.green_count = coloring.green_count;
    rep.lemma1_ceiling = ceiling.to_certified("6.646 r x/(log x)^2");
    rep.red_ratio = ratio.to_certified("R (log x)^2/(r x)");
    rep.longest_green_run = coloring.longest_green_run;
    rep.run_meets_k = coloring.longest_green_run.length >= k;
    rep.starts_red = coloring.starts_red;
    rep.red_interval_count = coloring.red_interval_count;
    rep.green_interval_count = coloring.green_interval_count;
    return rep;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> square_diff_pairs(const PrimeTable& t,
                                                                       std::uint64_t M,
                                                                       std::uint64_t N) {
    if (M >= N) throw std::domain_error("square_diff_pairs requires M < N");
    if (N > t.limit()) throw insufficient_table_error("square_diff_pairs requires N <= table limit");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    const auto& ps = t.primes();
    std::size_t hi = t.count_upto(N);
    for (std::size_t i = 0; i < hi; ++i) {
        std::uint64_t q = ps[i];
        if (q <= M) continue;
        for (std::uint64_t h = 1; q + h * h <= N; ++h)
            if (t.contains(q + h * h)) out.emplace_back(q, q + h * h);
    }
    return out;
}

ColoringReport color_three(const PrimeTable& t, std::uint64_t x, unsigned tparam, double r) {
    if (tparam < 1) throw std::domain_error("color_three requires t >= 1");
    if (!std::isfinite(r) || r < 0) throw std::domain_error("color_three requires finite r >= 0");
    require_table_reach(t, x, r * r);

    // exact thresholds from the dyadic value of r
    mpq_class rq(r);
    mpq_class r2 = rq * rq;
    std::uint64_t h_max = static_cast<std::uint64_t>(std::floor(r));

    ColoringReport rep;
    rep.x = x;
    rep.r = r;
    rep.t = tparam;
    std::size_t c = t.count_upto(x);
    rep.colors.reserve(c);
    const auto& ps = t.primes();
    for (std::size_t i = 0; i < c; ++i) {
        std::uint64_t p = ps[i];
        bool red = false;
        for (std::uint64_t h = 1; h <= h_max; ++h) {
            if (t.contains(p + h * h)) {
                red = true;
                break;
            }
        }
        if (red) {
            rep.colors.push_back(Color::red);
            continue;
        }
        bool yellow;
        if (i + tparam < ps.size()) {
            std::uint64_t diff = ps[i + tparam] - p;
            yellow = mpq_class(diff) > r2;
        } else {
            // p_{i+t} exceeds the table, and limit >= x + r^2 >= p + r^2
            yellow = true;
        }
        rep.colors.push_back(yellow ? Color::yellow : Color::green);
    }
    finalize_counts(rep);
    return rep;
}

Theorem6Result theorem6_search(const PrimeTable& table, std::uint64_t x, mpfr_prec_t precision_bits) {
    if (x < 17) throw std::domain_error("theorem6_search requires x >= 17");
    const mpfr_prec_t prec = precision_bits;

    IntervalReal logx = IntervalReal::log(IntervalReal::from_ulong(x, prec));
    IntervalReal quarter_root = IntervalReal::exp(IntervalReal::log(logx) /
                                                  IntervalReal::from_long(4, prec));
    IntervalReal tval = IntervalReal::from_decimal("0.24", prec) * quarter_root;
    auto tfloor = tval.exact_floor();
    long tt = tfloor ? *tfloor : static_cast<long>(std::floor(tval.mid_double()));

    Theorem6Result res;
    res.x = x;
    res.t = tt;
    if (tt < 2) {
        res.degenerate = true;
        return res;
    }

    IntervalReal third = IntervalReal::from_rational(mpq_class(1, 3), prec);
    IntervalReal two_thirds = IntervalReal::from_rational(mpq_class(2, 3), prec);
    IntervalReal lnr = third * IntervalReal::log(IntervalReal::from_long(tt, prec)) +
                       two_thirds * IntervalReal::log(logx) -
                       third * IntervalReal::log(IntervalReal::from_decimal("3.323", prec));
    IntervalReal riv = IntervalReal::exp(lnr);
    double r = riv.mid_double();
    res.r = r;

    res.coloring = color_three(table, x, static_cast<unsigned>(tt), r);
    auto w = first_green_run(table, res.coloring, static_cast<std::size_t>(tt));
    if (w) {
        res.witness = std::move(*w);
        res.found = true;
    }
    return res;
}

std::optional<GreenRunWitness> first_green_run(const PrimeTable& t, const ColoringReport& report,
                                               std::size_t run_length) {
    if (run_length < 1) throw std::domain_error("run length must be >= 1");
    const auto& ps = t.primes();
    std::size_t run = 0;
    for (std::size_t i = 0; i < report.colors.size(); ++i) {
        run = report.colors[i] == Color::green ? run + 1 : 0;
        if (run == run_length) {
            std::size_t start = i + 1 - run;
            GreenRunWitness w;
            w.start_index = start + 1;
            w.primes.assign(ps.begin() + static_cast<std::ptrdiff_t>(start),
                            ps.begin() + static_cast<std::ptrdiff_t>(start + run));
            w.pairwise_ok = true;
            for (std::size_t a = 0; a < w.primes.size() && w.pairwise_ok; ++a)
                for (std::size_t b = a + 1; b < w.primes.size(); ++b)
                    if (is_perfect_square(w.primes[b] - w.primes[a])) {
                        w.pairwise_ok = false;
                        break;
                    }
            return w;
        }
    }
    return std::nullopt;
}

std::optional<GreenRunWitness> first_sdf_run(const PrimeTable& t, std::uint64_t x, unsigned run_length) {
    if (run_length < 2) throw std::domain_error("first_sdf_run requires run length >= 2");
    if (x > t.limit()) throw insufficient_table_error("first_sdf_run requires x <= table limit");
    std::size_t c = t.count_upto(x);
    const auto& ps = t.primes();
    if (c < run_length) return std::nullopt;
    for (std::size_t start = 0; start + run_length <= c; ++start) {
        bool ok = true;
        for (std::size_t a = start; a < start + run_length && ok; ++a)
            for (std::size_t b = a + 1; b < start + run_length; ++b)
                if (is_perfect_square(ps[b] - ps[a])) {
                    ok = false;
                    break;
                }
        if (ok) {
            GreenRunWitness w;
            w.start_index = start + 1;
            w.primes.assign(ps.begin() + static_cast<std::ptrdiff_t>(start),
                            ps.begin() + static_cast<std::ptrdiff_t>(start + run_length));
            w.pairwise_ok = true;
            return w;
        }
    }
    return std::nullopt;
}

bool yellow_bound_check(const ColoringReport& report) {
    if (!report.t) throw std::domain_error("yellow_bound_check needs a three-coloring report");
    mpq_class rq(report.r);
    mpq_class r2 = rq * rq;
    // Y <= t x / r^2, compared as Y r^2 <= t x (exact; trivially true for r = 0)
    mpq_class lhs = mpq_class(report.yellow_count) * r2;
    mpq_class rhs = mpq_class(*report.t) * mpq_class(report.x);
    return lhs <= rhs;
}

}  // namespace pgap::gapscan
