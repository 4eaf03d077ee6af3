#include "pgap/interval.hpp"

#include "pgap/decimal.hpp"

#include <doctest.h>

using namespace pgap;

namespace {
bool encloses_between(const IntervalReal& iv, const char* lo_dec, const char* hi_dec) {
    // the interval must sit inside [lo_dec, hi_dec]
    return iv.lo_rational() >= rational_from_decimal(lo_dec) &&
           iv.hi_rational() <= rational_from_decimal(hi_dec);
}
}  // namespace

TEST_CASE("construction is outward and exact where dyadic") {
    auto third = IntervalReal::from_rational(mpq_class(1, 3), 128);
    CHECK(third.contains(mpq_class(1, 3)));
    CHECK(third.lo_rational() < mpq_class(1, 3));
    CHECK(third.hi_rational() > mpq_class(1, 3));
    CHECK_FALSE(third.is_point());

    auto q = IntervalReal::from_rational(mpq_class(45, 64), 128);
    CHECK(q.is_point());
    CHECK(q.lo_rational() == mpq_class(45, 64));
}

TEST_CASE("arithmetic encloses exact results") {
    const mpfr_prec_t prec = 128;
    auto a = IntervalReal::from_rational(mpq_class(1, 3), prec);
    auto b = IntervalReal::from_rational(mpq_class(1, 6), prec);
    CHECK((a + b).contains(mpq_class(1, 2)));
    CHECK((a - b).contains(mpq_class(1, 6)));
    CHECK((a * b).contains(mpq_class(1, 18)));
    CHECK((a / b).contains(mpq_class(2)));

    // dyadic products stay points
    auto p = IntervalReal::from_rational(mpq_class(3, 4), prec) *
             IntervalReal::from_rational(mpq_class(15, 16), prec);
    CHECK(p.is_point());
    CHECK(p.lo_rational() == mpq_class(45, 64));
}

TEST_CASE("multiplication handles signs") {
    const mpfr_prec_t prec = 96;
    Real lo(prec), hi(prec);
    mpfr_set_si(lo.get(), -2, MPFR_RNDD);
    mpfr_set_si(hi.get(), 3, MPFR_RNDU);
    auto x = IntervalReal::from_endpoints(lo, hi, prec);
    mpfr_set_si(lo.get(), -5, MPFR_RNDD);
    mpfr_set_si(hi.get(), 7, MPFR_RNDU);
    auto y = IntervalReal::from_endpoints(lo, hi, prec);
    auto p = x * y;
    CHECK(p.lo_rational() == -15);  // 3 * -5
    CHECK(p.hi_rational() == 21);   // 3 * 7
}

TEST_CASE("division by an interval containing zero throws") {
    const mpfr_prec_t prec = 96;
    auto one = IntervalReal::from_long(1, prec);
    Real lo(prec), hi(prec);
    mpfr_set_si(lo.get(), -1, MPFR_RNDD);
    mpfr_set_si(hi.get(), 1, MPFR_RNDU);
    auto z = IntervalReal::from_endpoints(lo, hi, prec);
    CHECK_THROWS_AS(one / z, std::domain_error);
}

TEST_CASE("exp enclosures") {
    const mpfr_prec_t prec = 192;
    auto e0 = IntervalReal::exp(IntervalReal(prec));
    CHECK(e0.is_point());
    CHECK(e0.lo_rational() == 1);

    auto e1 = IntervalReal::exp(IntervalReal::from_long(1, prec));
    CHECK(encloses_between(e1, "2.71828182845904523536028747135", "2.71828182845904523536028747136"));

    auto em1 = IntervalReal::exp(IntervalReal::from_long(-1, prec));
    CHECK(encloses_between(em1, "0.36787944117144232159552377016", "0.36787944117144232159552377017"));

    auto e100 = IntervalReal::exp(IntervalReal::from_long(100, prec));
    CHECK(encloses_between(e100, "2.688117141816135448412625551e43", "2.688117141816135448412625552e43"));

    // monotone hull over an interval argument
    Real lo(prec), hi(prec);
    mpfr_set_si(lo.get(), 1, MPFR_RNDD);
    mpfr_set_si(hi.get(), 2, MPFR_RNDU);
    auto span = IntervalReal::exp(IntervalReal::from_endpoints(lo, hi, prec));
    CHECK(span.contains(rational_from_decimal("2.7182818285")));
    CHECK(span.contains(rational_from_decimal("7.3890560989")));
}

TEST_CASE("log enclosures") {
    const mpfr_prec_t prec = 192;
    auto l1 = IntervalReal::log(IntervalReal::from_long(1, prec));
    CHECK(l1.is_point());
    CHECK(l1.lo_rational() == 0);

    auto l2 = IntervalReal::log(IntervalReal::from_long(2, prec));
    CHECK(encloses_between(l2, "0.69314718055994530941723212145", "0.69314718055994530941723212146"));

    auto l10 = IntervalReal::log(IntervalReal::from_long(10, prec));
    CHECK(encloses_between(l10, "2.30258509299404568401799145468", "2.30258509299404568401799145469"));

    auto lg1000 = IntervalReal::log10(IntervalReal::from_long(1000, prec));
    CHECK(lg1000.contains(mpq_class(3)));
    CHECK(lg1000.hi_rational() - lg1000.lo_rational() < rational_from_decimal("1e-40"));

    CHECK_THROWS_AS(IntervalReal::log(IntervalReal(prec)), std::domain_error);
    CHECK_THROWS_AS(IntervalReal::log(IntervalReal::from_long(-3, prec)), std::domain_error);
}

TEST_CASE("exp(log(x)) contains x") {
    const mpfr_prec_t prec = 160;
    for (long v : {2L, 7L, 97L, 1000003L}) {
        auto x = IntervalReal::from_long(v, prec);
        CHECK(IntervalReal::exp(IntervalReal::log(x)).contains(mpq_class(v)));
    }
}

TEST_CASE("recomputation at higher precision nests") {
    auto make = [](mpfr_prec_t prec) {
        auto x = IntervalReal::from_rational(mpq_class(7272, 10000), prec);
        return IntervalReal::exp(x) + IntervalReal::log(IntervalReal::from_long(7, prec)) *
                                          IntervalReal::from_rational(mpq_class(1, 3), prec);
    };
    auto a64 = make(64);
    auto a128 = make(128);
    auto a256 = make(256);
    CHECK(a128.subset_of(a64));
    CHECK(a256.subset_of(a128));
}

TEST_CASE("pow_ui and scaling") {
    const mpfr_prec_t prec = 96;
    auto two = IntervalReal::from_long(2, prec);
    CHECK(IntervalReal::pow_ui(two, 10).lo_rational() == 1024);
    CHECK(IntervalReal::pow_ui(two, 10).is_point());
    auto m2 = IntervalReal::from_long(-2, prec);
    CHECK(IntervalReal::pow_ui(m2, 3).lo_rational() == -8);
    CHECK(two.div_2ui(3).lo_rational() == mpq_class(1, 4));
}

TEST_CASE("exact_floor") {
    const mpfr_prec_t prec = 96;
    CHECK(IntervalReal::from_rational(mpq_class(5, 2), prec).exact_floor() == 2);
    CHECK(IntervalReal::from_long(7, prec).exact_floor() == 7);
    Real lo(prec), hi(prec);
    mpfr_set_d(lo.get(), 2.999, MPFR_RNDD);
    mpfr_set_d(hi.get(), 3.001, MPFR_RNDU);
    CHECK_FALSE(IntervalReal::from_endpoints(lo, hi, prec).exact_floor().has_value());
}

TEST_CASE("strict comparison is strict") {
    const mpfr_prec_t prec = 96;
    auto a = IntervalReal::from_long(1, prec);
    auto b = IntervalReal::from_long(2, prec);
    CHECK(a.strictly_less(b));
    CHECK_FALSE(b.strictly_less(a));
    CHECK_FALSE(a.strictly_less(a));  // equal endpoints never verify
}
