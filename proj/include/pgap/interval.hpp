#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>
#include <string_view>

namespace pgap {

// RAII wrapper around one mpfr_t with fixed precision.
class Real {
  public:
    explicit Real(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  private:
    mpfr_t v_;
};

// Rational enclosure of a real value. Endpoints are exact; every producer
// guarantees the true value lies in [lo, hi].
struct CertifiedInterval {
    mpq_class lo;
    mpq_class hi;
    std::string description;

    bool valid() const { return lo <= hi; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    mpq_class width() const { return hi - lo; }
};

// One certified inequality: `claimed` in human-readable form, `verified`
// true only when the comparison is strict at the outward-rounded endpoints.
struct InequalityReport {
    std::string name;
    std::string claimed;
    bool verified = false;
    CertifiedInterval witness;
};

// Dyadic interval [lo, hi] at a fixed mpfr precision. All operations round
// lo down and hi up, so exact results of the modelled real computation stay
// enclosed. exp/log are Taylor/atanh series with explicit remainder bounds;
// no library transcendentals are trusted.
class IntervalReal {
  public:
    explicit IntervalReal(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

    static IntervalReal from_long(long v, mpfr_prec_t prec);
    static IntervalReal from_ulong(unsigned long v, mpfr_prec_t prec);
    static IntervalReal from_rational(const mpq_class& q, mpfr_prec_t prec);
    static IntervalReal from_integer(const mpz_class& z, mpfr_prec_t prec);
    static IntervalReal from_decimal(std::string_view text, mpfr_prec_t prec);
    static IntervalReal from_mpfr(mpfr_srcptr v, mpfr_prec_t prec);
    static IntervalReal from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec);

    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    mpfr_prec_t prec() const { return lo_.prec(); }

    mpq_class lo_rational() const;
    mpq_class hi_rational() const;
    double lo_double() const;
    double hi_double() const;
    double mid_double() const;

    bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
    bool contains(const mpq_class& v) const;
    bool contains_zero() const;
    bool strictly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    // hi < o.lo: the entire interval lies strictly below o.
    bool strictly_less(const IntervalReal& o) const {
        return mpfr_cmp(hi_.get(), o.lo_.get()) < 0;
    }
    bool subset_of(const IntervalReal& o) const {
        return mpfr_cmp(o.lo_.get(), lo_.get()) <= 0 && mpfr_cmp(hi_.get(), o.hi_.get()) <= 0;
    }

    CertifiedInterval to_certified(std::string description) const;

    IntervalReal operator-() const;
    friend IntervalReal operator+(const IntervalReal& a, const IntervalReal& b);
    friend IntervalReal operator-(const IntervalReal& a, const IntervalReal& b);
    friend IntervalReal operator*(const IntervalReal& a, const IntervalReal& b);
    friend IntervalReal operator/(const IntervalReal& a, const IntervalReal& b);

    IntervalReal& operator+=(const IntervalReal& o);
    IntervalReal& operator-=(const IntervalReal& o);
    IntervalReal& operator*=(const IntervalReal& o);
    IntervalReal& operator/=(const IntervalReal& o);

    // Exact scaling by 2^-k (no rounding).
    IntervalReal div_2ui(unsigned long k) const;

    static IntervalReal exp(const IntervalReal& x);
    static IntervalReal log(const IntervalReal& x);    // requires lo > 0
    static IntervalReal log10(const IntervalReal& x);  // requires lo > 0
    static IntervalReal pow_ui(const IntervalReal& x, unsigned long e);

    // Floor shared by both endpoints, if they agree and fit a long.
    std::optional<long> exact_floor() const;

  private:
    Real lo_;
    Real hi_;
};

}  // namespace pgap
