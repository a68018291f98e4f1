#ifndef RELMAS_RATIONAL_HPP
#define RELMAS_RATIONAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace relmas {

// Exact rational arithmetic for the contention engine. All event arithmetic
// stays in Rat; decimal rendering happens only at I/O boundaries.
using Rat = mpq_class;

inline Rat make_rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

inline std::int64_t rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("rational floor out of range");
    return static_cast<std::int64_t>(q.get_si());
}

inline std::int64_t rat_ceil(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("rational ceil out of range");
    return static_cast<std::int64_t>(q.get_si());
}

inline mpz_class rat_floor_mpz(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Parses a plain decimal literal ("3", "-3.25", ".5") into an exact rational.
// Scientific notation is not accepted; cost tables use plain decimals.
inline Rat rat_from_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty decimal literal");
    std::string digits;
    digits.reserve(text.size());
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    bool seen_digit = false;
    std::size_t i = 0;
    bool negative = false;
    if (text[i] == '+') {
        ++i;
    } else if (text[i] == '-') {
        negative = true;
        ++i;
    }
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch == '.') {
            if (seen_dot) throw std::invalid_argument("malformed decimal: " + text);
            seen_dot = true;
        } else if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            if (seen_dot) ++frac_digits;
            seen_digit = true;
        } else {
            throw std::invalid_argument("malformed decimal: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed decimal: " + text);
    mpz_class num(digits.empty() ? "0" : digits, 10);
    if (negative) num = -num;
    mpz_class den(1);
    for (std::size_t k = 0; k < frac_digits; ++k) den *= 10;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Fixed-point rendering used when writing rationals into CSV/JSON.
inline std::string rat_to_decimal(const Rat& r, int digits = 6) {
    mpz_class scale(1);
    for (int k = 0; k < digits; ++k) scale *= 10;
    mpz_class num = r.get_num() * scale;
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), r.get_den_mpz_t());
    // round half up on the scaled value
    if (rem * 2 >= r.get_den()) q += 1;
    bool neg = q < 0;
    if (neg) q = -q;
    std::string s = q.get_str();
    while (s.size() <= static_cast<std::size_t>(digits)) s.insert(s.begin(), '0');
    std::string out = s.substr(0, s.size() - digits);
    if (digits > 0) {
        std::string frac = s.substr(s.size() - digits);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    }
    if (neg && out != "0") out.insert(out.begin(), '-');
    return out;
}

}  // namespace relmas

#endif
