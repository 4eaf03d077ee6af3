#include "pgap/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace pgap {

namespace {

struct ParsedDecimal {
    bool neg = false;
    std::string int_digits;
    std::string frac_digits;
    long exp10 = 0;
};

ParsedDecimal parse_raw(std::string_view text) {
    ParsedDecimal out;
    std::size_t i = 0;
    auto fail = [&] { throw std::invalid_argument("malformed decimal: " + std::string(text)); };
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        out.neg = text[i] == '-';
        ++i;
    }
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out.int_digits += text[i++];
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) out.frac_digits += text[i++];
    }
    if (i == start || (out.int_digits.empty() && out.frac_digits.empty())) fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            eneg = text[i] == '-';
            ++i;
        }
        if (i >= text.size()) fail();
        long e = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            e = e * 10 + (text[i] - '0');
            ++i;
        }
        out.exp10 = eneg ? -e : e;
    }
    if (i != text.size()) fail();
    return out;
}

mpz_class pow10_z(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

}  // namespace

mpq_class rational_from_decimal(std::string_view text) {
    ParsedDecimal p = parse_raw(text);
    mpz_class mantissa(p.int_digits + p.frac_digits, 10);
    long shift = p.exp10 - static_cast<long>(p.frac_digits.size());
    mpq_class q;
    if (shift >= 0) {
        q = mpq_class(mantissa * pow10_z(static_cast<unsigned long>(shift)));
    } else {
        q = mpq_class(mantissa, pow10_z(static_cast<unsigned long>(-shift)));
    }
    q.canonicalize();
    if (p.neg) q = -q;
    return q;
}

SciDecimal parse_sci_decimal(std::string_view text) {
    ParsedDecimal p = parse_raw(text);
    std::string all = p.int_digits + p.frac_digits;
    SciDecimal out;
    out.neg = p.neg;
    // exponent so that value = 0.all * 10^exp before normalization
    long exp = static_cast<long>(p.int_digits.size()) + p.exp10;
    std::size_t lead = all.find_first_not_of('0');
    if (lead == std::string::npos) return out;  // zero
    exp -= static_cast<long>(lead);
    all.erase(0, lead);
    std::size_t tail = all.find_last_not_of('0');
    all.erase(tail + 1);
    out.digits = std::move(all);
    out.exp10 = exp;
    return out;
}

SciDecimal sci_from_mpfr(mpfr_srcptr v, int sig_digits, mpfr_rnd_t rnd) {
    SciDecimal out;
    if (mpfr_zero_p(v)) return out;
    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(sig_digits), v, rnd);
    if (s == nullptr) throw std::runtime_error("mpfr_get_str failed");
    std::string digits(s);
    mpfr_free_str(s);
    if (!digits.empty() && digits[0] == '-') {
        out.neg = true;
        digits.erase(0, 1);
    }
    std::size_t tail = digits.find_last_not_of('0');
    if (tail == std::string::npos) {
        return out;
    }
    digits.erase(tail + 1);
    out.digits = std::move(digits);
    out.exp10 = static_cast<long>(e);
    return out;
}

std::string to_string(const SciDecimal& d) {
    if (d.digits.empty()) return "0";
    std::string out;
    if (d.neg) out += '-';
    long e = d.exp10;
    long ndig = static_cast<long>(d.digits.size());
    if (e >= 1 && e <= std::max<long>(ndig + 2, 18)) {
        // plain notation with the point inside or right-padded zeros
        if (e >= ndig) {
            out += d.digits;
            out.append(static_cast<std::size_t>(e - ndig), '0');
        } else {
            out += d.digits.substr(0, static_cast<std::size_t>(e));
            out += '.';
            out += d.digits.substr(static_cast<std::size_t>(e));
        }
    } else if (e <= 0 && e > -5) {
        out += "0.";
        out.append(static_cast<std::size_t>(-e), '0');
        out += d.digits;
    } else {
        out += d.digits.substr(0, 1);
        if (ndig > 1) {
            out += '.';
            out += d.digits.substr(1);
        }
        out += 'e';
        out += std::to_string(e - 1);
    }
    return out;
}

std::string decimal_from_rational(const mpq_class& q, int sig_digits, mpfr_rnd_t rnd) {
    if (q == 0) return "0";
    mpfr_t v;
    mpfr_init2(v, static_cast<mpfr_prec_t>(sig_digits) * 4 + 64);
    mpfr_set_q(v, q.get_mpq_t(), rnd);
    SciDecimal d = sci_from_mpfr(v, sig_digits, rnd);
    mpfr_clear(v);
    return to_string(d);
}

}  // namespace pgap
