#ifndef FRACMOM_MODE_HPP
#define FRACMOM_MODE_HPP

#include <cmath>
#include <complex>
#include <string>

#include "fracmom/rational.hpp"

namespace fracmom {

// Complex number with exact rational real/imaginary parts.
struct ExactComplex {
    Rational re, im;

    ExactComplex() = default;
    ExactComplex(Rational r) : re(std::move(r)) {}
    ExactComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    ExactComplex& operator+=(const ExactComplex& o) { re += o.re; im += o.im; return *this; }
    ExactComplex& operator-=(const ExactComplex& o) { re -= o.re; im -= o.im; return *this; }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline ExactComplex conj(const ExactComplex& c) { return {c.re, -c.im}; }
inline bool is_zero(const ExactComplex& c) { return c.re == 0 && c.im == 0; }
inline bool is_zero(const std::complex<double>& c) { return c.real() == 0.0 && c.imag() == 0.0; }

// Exact mode: rational values, every comparison is exact equality.
struct ExactMode {
    static constexpr bool is_exact = true;
    using Real = Rational;
    using Complex = ExactComplex;

    static Complex make_complex(Real re, Real im = Real(0)) { return {std::move(re), std::move(im)}; }
    static Complex from_rational(const Rational& r) { return Complex(r); }
    static Real real_part(const Complex& c) { return c.re; }
    static Real imag_part(const Complex& c) { return c.im; }
    static Real real_from_rational(const Rational& r) { return r; }
    static double as_double(const Real& r) { return to_double(r); }
};

// Float mode: binary doubles, comparisons carry tolerances.
struct FloatMode {
    static constexpr bool is_exact = false;
    using Real = double;
    using Complex = std::complex<double>;

    static Complex make_complex(Real re, Real im = 0.0) { return {re, im}; }
    static Complex from_rational(const Rational& r) { return Complex(to_double(r)); }
    static Real real_part(const Complex& c) { return c.real(); }
    static Real imag_part(const Complex& c) { return c.imag(); }
    static Real real_from_rational(const Rational& r) { return to_double(r); }
    static double as_double(Real r) { return r; }
};

template <class M>
std::complex<double> complex_as_double(const typename M::Complex& c) {
    return {M::as_double(M::real_part(c)), M::as_double(M::imag_part(c))};
}

} // namespace fracmom

#endif
