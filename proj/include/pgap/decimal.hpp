#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <string_view>

namespace pgap {

// Exact rational value of a decimal literal such as "0.6602", "-3", or
// "1.8339e76". Throws std::invalid_argument on malformed input.
mpq_class rational_from_decimal(std::string_view text);

// Normalized scientific form: value = sign * 0.digits * 10^exp10 where
// digits carries the significant digits without leading or trailing zeros.
// Zero is represented by an empty digit string.
struct SciDecimal {
    bool neg = false;
    std::string digits;
    long exp10 = 0;
    bool operator==(const SciDecimal&) const = default;
};

SciDecimal parse_sci_decimal(std::string_view text);

// Significant-digit rounding of an mpfr value (rnd applies to the decimal
// conversion, so MPFR_RNDD/RNDU give directed decimal bounds).
SciDecimal sci_from_mpfr(mpfr_srcptr v, int sig_digits, mpfr_rnd_t rnd);

// Decimal rendering of an exact rational, rounded in direction rnd at
// sig_digits significant digits. Uses plain notation for moderate
// exponents and d.ddde[+-]x otherwise.
std::string decimal_from_rational(const mpq_class& q, int sig_digits, mpfr_rnd_t rnd);

std::string to_string(const SciDecimal& d);

}  // namespace pgap
