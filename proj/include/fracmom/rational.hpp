#ifndef FRACMOM_RATIONAL_HPP
#define FRACMOM_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "fracmom/errors.hpp"

namespace fracmom {

using Rational = mpq_class;

inline Rational make_rational(long num, unsigned long den = 1) {
    if (den == 0) throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// b^e with e a non-negative integer; 0^0 = 1
inline Rational pow_rational(const Rational& b, unsigned long e) {
    if (e == 0) return Rational(1);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), e);
    return r; // num/den already coprime, powers stay coprime
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline unsigned long denominator_ui(const Rational& r) {
    if (!r.get_den().fits_ulong_p()) throw DomainError("exponent denominator too large");
    return r.get_den().get_ui();
}

// "p/q", "p", or a finite decimal with optional exponent ("1.25e-3")
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw DomainError("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw DomainError("bad rational literal: " + s);
        if (den == 0) throw DomainError("zero denominator: " + s);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }
    std::string digits;
    long frac_digits = 0, exp10 = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            digits += s[i++];
            ++frac_digits;
        }
    }
    if (digits.empty()) throw DomainError("bad numeric literal: " + s);
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool eneg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) { eneg = s[i] == '-'; ++i; }
        if (i >= s.size()) throw DomainError("bad exponent in literal: " + s);
        long e = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e = e * 10 + (s[i++] - '0');
        exp10 = eneg ? -e : e;
    }
    if (i != s.size()) throw DomainError("bad numeric literal: " + s);
    mpz_class num;
    num.set_str(digits, 10);
    Rational r(num);
    long shift = exp10 - frac_digits;
    if (shift > 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        r *= Rational(p);
    } else if (shift < 0) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        r /= Rational(p);
    }
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

inline std::string format_rational(const Rational& r) {
    return r.get_str(); // "p" or "p/q"
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline unsigned long lcm_ui(unsigned long a, unsigned long b) {
    mpz_class l;
    mpz_lcm_ui(l.get_mpz_t(), mpz_class(a).get_mpz_t(), b);
    if (!l.fits_ulong_p()) throw DomainError("denominator lcm overflow");
    return l.get_ui();
}

} // namespace fracmom

#endif
