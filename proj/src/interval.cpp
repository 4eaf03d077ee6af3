#include "pgap/interval.hpp"

#include "pgap/decimal.hpp"

#include <cassert>
#include <map>
#include <stdexcept>
#include <utility>

namespace pgap {

namespace {

mpfr_prec_t max_prec(const IntervalReal& a, const IntervalReal& b) {
    return std::max(a.prec(), b.prec());
}

// Working precision for series evaluation; the extra bits absorb the
// argument-reduction squarings and accumulated term rounding.
mpfr_prec_t working_prec(mpfr_prec_t prec) { return prec + 64; }

}  // namespace

IntervalReal IntervalReal::from_long(long v, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::from_ulong(unsigned long v, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_set_ui(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_ui(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::from_integer(const mpz_class& z, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::from_decimal(std::string_view text, mpfr_prec_t prec) {
    return from_rational(rational_from_decimal(text), prec);
}

IntervalReal IntervalReal::from_mpfr(mpfr_srcptr v, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_set(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec) {
    IntervalReal r(prec);
    mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    if (mpfr_cmp(r.lo_.get(), r.hi_.get()) > 0) throw std::invalid_argument("interval endpoints out of order");
    return r;
}

mpq_class IntervalReal::lo_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), lo_.get());
    return q;
}

mpq_class IntervalReal::hi_rational() const {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), hi_.get());
    return q;
}

double IntervalReal::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double IntervalReal::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }

double IntervalReal::mid_double() const {
    Real m(prec() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return mpfr_get_d(m.get(), MPFR_RNDN);
}

bool IntervalReal::contains(const mpq_class& v) const {
    return mpfr_cmp_q(lo_.get(), v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), v.get_mpq_t()) >= 0;
}

bool IntervalReal::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

CertifiedInterval IntervalReal::to_certified(std::string description) const {
    return CertifiedInterval{lo_rational(), hi_rational(), std::move(description)};
}

IntervalReal IntervalReal::operator-() const {
    IntervalReal r(prec());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

IntervalReal operator+(const IntervalReal& a, const IntervalReal& b) {
    IntervalReal r(max_prec(a, b));
    mpfr_add(r.lo_.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi(), b.hi(), MPFR_RNDU);
    return r;
}

IntervalReal operator-(const IntervalReal& a, const IntervalReal& b) {
    IntervalReal r(max_prec(a, b));
    mpfr_sub(r.lo_.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi(), b.lo(), MPFR_RNDU);
    return r;
}

IntervalReal operator*(const IntervalReal& a, const IntervalReal& b) {
    mpfr_prec_t p = max_prec(a, b);
    IntervalReal r(p);
    Real t(p);
    mpfr_srcptr al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    const mpfr_srcptr cand[4][2] = {{al, bl}, {al, bh}, {ah, bl}, {ah, bh}};
    mpfr_mul(r.lo_.get(), cand[0][0], cand[0][1], MPFR_RNDD);
    mpfr_mul(r.hi_.get(), cand[0][0], cand[0][1], MPFR_RNDU);
    for (int i = 1; i < 4; ++i) {
        mpfr_mul(t.get(), cand[i][0], cand[i][1], MPFR_RNDD);
        if (mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_mul(t.get(), cand[i][0], cand[i][1], MPFR_RNDU);
        if (mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
    }
    return r;
}

IntervalReal operator/(const IntervalReal& a, const IntervalReal& b) {
    if (b.contains_zero()) throw std::domain_error("interval division by interval containing zero");
    mpfr_prec_t p = max_prec(a, b);
    IntervalReal r(p);
    Real t(p);
    const mpfr_srcptr cand[4][2] = {{a.lo(), b.lo()}, {a.lo(), b.hi()}, {a.hi(), b.lo()}, {a.hi(), b.hi()}};
    mpfr_div(r.lo_.get(), cand[0][0], cand[0][1], MPFR_RNDD);
    mpfr_div(r.hi_.get(), cand[0][0], cand[0][1], MPFR_RNDU);
    for (int i = 1; i < 4; ++i) {
        mpfr_div(t.get(), cand[i][0], cand[i][1], MPFR_RNDD);
        if (mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
        mpfr_div(t.get(), cand[i][0], cand[i][1], MPFR_RNDU);
        if (mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
    }
    return r;
}

IntervalReal& IntervalReal::operator+=(const IntervalReal& o) { return *this = *this + o; }
IntervalReal& IntervalReal::operator-=(const IntervalReal& o) { return *this = *this - o; }
IntervalReal& IntervalReal::operator*=(const IntervalReal& o) { return *this = *this * o; }
IntervalReal& IntervalReal::operator/=(const IntervalReal& o) { return *this = *this / o; }

IntervalReal IntervalReal::div_2ui(unsigned long k) const {
    IntervalReal r(prec());
    mpfr_div_2ui(r.lo_.get(), lo_.get(), k, MPFR_RNDD);
    mpfr_div_2ui(r.hi_.get(), hi_.get(), k, MPFR_RNDU);
    return r;
}

IntervalReal IntervalReal::pow_ui(const IntervalReal& x, unsigned long e) {
    IntervalReal acc = from_long(1, x.prec());
    IntervalReal base = x;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return acc;
}

std::optional<long> IntervalReal::exact_floor() const {
    Real fl(prec()), fh(prec());
    mpfr_floor(fl.get(), lo_.get());
    mpfr_floor(fh.get(), hi_.get());
    if (!mpfr_equal_p(fl.get(), fh.get())) return std::nullopt;
    if (!mpfr_fits_slong_p(fl.get(), MPFR_RNDN)) return std::nullopt;
    return mpfr_get_si(fl.get(), MPFR_RNDN);
}

namespace {

// Enclosure of e^v for a single mpfr value. Argument reduction v = 2^k * y
// with |y| <= 1/2, Taylor with a geometric tail bound, then k squarings.
IntervalReal exp_scalar(mpfr_srcptr v, mpfr_prec_t out_prec) {
    if (mpfr_zero_p(v)) return IntervalReal::from_long(1, out_prec);

    bool negate = mpfr_sgn(v) < 0;
    mpfr_exp_t e = mpfr_get_exp(v);  // |v| in [2^(e-1), 2^e)
    unsigned long k = e >= 0 ? static_cast<unsigned long>(e) + 1 : 0;
    mpfr_prec_t wp = working_prec(out_prec) + static_cast<mpfr_prec_t>(k);

    Real y(wp);
    mpfr_abs(y.get(), v, MPFR_RNDN);        // exact: same mantissa at wider prec
    mpfr_div_2ui(y.get(), y.get(), k, MPFR_RNDN);  // exact scaling, y in [0, 1/2]

    IntervalReal yiv = IntervalReal::from_mpfr(y.get(), wp);
    IntervalReal sum = IntervalReal::from_long(1, wp);
    IntervalReal term = IntervalReal::from_long(1, wp);
    Real eps(wp);
    mpfr_set_ui_2exp(eps.get(), 1, -static_cast<mpfr_exp_t>(wp), MPFR_RNDN);

    unsigned long j = 0;
    while (true) {
        ++j;
        term = term * yiv / IntervalReal::from_ulong(j, wp);
        sum = sum + term;
        if (mpfr_cmp(term.hi(), eps.get()) < 0) break;
        if (j > 10000) throw std::runtime_error("exp series failed to converge");
    }
    // tail = sum_{i>j} y^i/i! <= term_{j+1} * 1/(1 - y/(j+2)) <= 2*term_{j+1} for y <= 1/2
    Real tail(wp);
    mpfr_mul(tail.get(), term.hi(), y.get(), MPFR_RNDU);
    mpfr_div_ui(tail.get(), tail.get(), j + 1, MPFR_RNDU);
    mpfr_mul_2ui(tail.get(), tail.get(), 1, MPFR_RNDU);
    Real zero(wp);
    IntervalReal tail_iv = IntervalReal::from_endpoints(zero, tail, wp);
    sum = sum + tail_iv;

    for (unsigned long i = 0; i < k; ++i) sum = sum * sum;

    if (negate) sum = IntervalReal::from_long(1, wp) / sum;

    Real lo(out_prec), hi(out_prec);
    mpfr_set(lo.get(), sum.lo(), MPFR_RNDD);
    mpfr_set(hi.get(), sum.hi(), MPFR_RNDU);
    return IntervalReal::from_endpoints(lo, hi, out_prec);
}

// atanh on an interval with 0 <= z.lo and z.hi <= 1/2, via the odd series
// with an explicit geometric tail bound.
IntervalReal atanh_interval(const IntervalReal& z) {
    mpfr_prec_t wp = z.prec();
    if (mpfr_sgn(z.lo()) < 0) throw std::domain_error("atanh_interval requires z >= 0");
    if (mpfr_cmp_d(z.hi(), 0.5) > 0) throw std::domain_error("atanh_interval requires z <= 1/2");
    if (mpfr_zero_p(z.hi())) return IntervalReal(wp);

    IntervalReal zsq = z * z;
    IntervalReal p = z;
    IntervalReal s = z;
    Real eps(wp);
    mpfr_set_ui_2exp(eps.get(), 1, -static_cast<mpfr_exp_t>(wp), MPFR_RNDN);

    unsigned long j = 0;
    while (true) {
        ++j;
        p = p * zsq;  // z^(2j+1)
        IntervalReal t = p / IntervalReal::from_ulong(2 * j + 1, wp);
        s = s + t;
        if (mpfr_cmp(t.hi(), eps.get()) < 0) break;
        if (j > 100000) throw std::runtime_error("atanh series failed to converge");
    }
    // tail <= z^(2j+3) / ((2j+3) (1 - z^2))
    Real tail(wp), denom(wp);
    mpfr_mul(tail.get(), p.hi(), zsq.hi(), MPFR_RNDU);
    mpfr_ui_sub(denom.get(), 1, zsq.hi(), MPFR_RNDD);
    mpfr_mul_ui(denom.get(), denom.get(), 2 * j + 3, MPFR_RNDD);
    mpfr_div(tail.get(), tail.get(), denom.get(), MPFR_RNDU);
    Real zero(wp);
    s = s + IntervalReal::from_endpoints(zero, tail, wp);
    return s;
}

IntervalReal log2_interval(mpfr_prec_t wp) {
    // ln 2 = 2 atanh(1/3); cached per working precision.
    thread_local std::map<mpfr_prec_t, IntervalReal> cache;
    auto it = cache.find(wp);
    if (it != cache.end()) return it->second;
    IntervalReal third = IntervalReal::from_rational(mpq_class(1, 3), wp);
    IntervalReal ln2 = atanh_interval(third) * IntervalReal::from_long(2, wp);
    cache.emplace(wp, ln2);
    return ln2;
}

// Enclosure of ln v for a single positive mpfr value: v = m * 2^k with
// m in [1,2), ln m = 2 atanh((m-1)/(m+1)).
IntervalReal log_scalar(mpfr_srcptr v, mpfr_prec_t out_prec) {
    if (mpfr_sgn(v) <= 0) throw std::domain_error("log of non-positive value");
    mpfr_prec_t wp = working_prec(out_prec);

    mpfr_exp_t e = mpfr_get_exp(v);
    long k = static_cast<long>(e) - 1;
    Real m(std::max<mpfr_prec_t>(wp, mpfr_get_prec(v)));
    mpfr_mul_2si(m.get(), v, -k, MPFR_RNDN);  // exact, m in [1, 2)

    IntervalReal miv = IntervalReal::from_mpfr(m.get(), wp);
    IntervalReal one = IntervalReal::from_long(1, wp);
    IntervalReal z = (miv - one) / (miv + one);
    IntervalReal lnm = atanh_interval(z) * IntervalReal::from_long(2, wp);
    IntervalReal result = lnm + log2_interval(wp) * IntervalReal::from_long(k, wp);

    Real lo(out_prec), hi(out_prec);
    mpfr_set(lo.get(), result.lo(), MPFR_RNDD);
    mpfr_set(hi.get(), result.hi(), MPFR_RNDU);
    return IntervalReal::from_endpoints(lo, hi, out_prec);
}

}  // namespace

IntervalReal IntervalReal::exp(const IntervalReal& x) {
    IntervalReal lo_enc = exp_scalar(x.lo(), x.prec());
    IntervalReal hi_enc = exp_scalar(x.hi(), x.prec());
    Real lo(x.prec()), hi(x.prec());
    mpfr_set(lo.get(), lo_enc.lo(), MPFR_RNDD);
    mpfr_set(hi.get(), hi_enc.hi(), MPFR_RNDU);
    return from_endpoints(lo, hi, x.prec());
}

IntervalReal IntervalReal::log(const IntervalReal& x) {
    if (mpfr_sgn(x.lo()) <= 0) throw std::domain_error("log of interval with non-positive lower bound");
    IntervalReal lo_enc = log_scalar(x.lo(), x.prec());
    IntervalReal hi_enc = log_scalar(x.hi(), x.prec());
    Real lo(x.prec()), hi(x.prec());
    mpfr_set(lo.get(), lo_enc.lo(), MPFR_RNDD);
    mpfr_set(hi.get(), hi_enc.hi(), MPFR_RNDU);
    return from_endpoints(lo, hi, x.prec());
}

IntervalReal IntervalReal::log10(const IntervalReal& x) {
    IntervalReal ln10 = log(from_long(10, x.prec()));
    return log(x) / ln10;
}

}  // namespace pgap
