#ifndef FRACMOM_PARSER_HPP
#define FRACMOM_PARSER_HPP

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "fracmom/frac_poly.hpp"

namespace fracmom {

// Recursive-descent parser for the interchange grammar:
//   expr   := ['+'|'-'] term { ('+'|'-') term }
//   term   := factor { '*' factor }
//   factor := number['i'] | 'i' | var | '(' expr ')'
//   var    := 't'<k> [ '^' int | '^(' rational ')' ]   (also 's' when enabled)
// Numbers are rational "p/q" or decimal literals; decimals are exact in exact
// mode (every finite decimal is a rational).
template <class M>
class ExprParser {
public:
    ExprParser(std::string text, std::size_t n, bool allow_s)
        : text_(std::move(text)), n_(n), allow_s_(allow_s) {}

    // with allow_s, the result has dimension n+1 and s is variable n+1
    FracPoly<M> parse() {
        std::size_t dim = allow_s_ ? n_ + 1 : n_;
        FracPoly<M> r = parse_expr(dim);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    FracPoly<M> parse_expr(std::size_t dim) {
        FracPoly<M> acc(dim);
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
        }
        acc = acc + signed_term(dim, neg);
        while (true) {
            c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            acc = acc + signed_term(dim, c == '-');
        }
        return acc;
    }

    FracPoly<M> signed_term(std::size_t dim, bool neg) {
        FracPoly<M> t = parse_term(dim);
        return neg ? -t : t;
    }

    FracPoly<M> parse_term(std::size_t dim) {
        FracPoly<M> f = parse_factor(dim);
        while (peek() == '*') {
            ++pos_;
            f = f * parse_factor(dim);
        }
        return f;
    }

    FracPoly<M> parse_factor(std::size_t dim) {
        char c = peek();
        if (c == '(') {
            ++pos_;
            FracPoly<M> inner = parse_expr(dim);
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number(dim);
        if (c == 'i' && !ident_continues(pos_ + 1)) {
            ++pos_;
            return FracPoly<M>::constant(dim, M::make_complex(typename M::Real(0),
                                                              M::real_from_rational(Rational(1))));
        }
        if (c == 't') return parse_variable(dim);
        if (c == 's' && allow_s_ && !ident_continues(pos_ + 1)) return parse_svar(dim);
        fail("expected a number, variable, or '('");
    }

    bool ident_continues(std::size_t p) const {
        return p < text_.size() && std::isalnum(static_cast<unsigned char>(text_[p]));
    }

    FracPoly<M> parse_number(std::size_t dim) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("malformed number");
        bool rational_form = false;
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            rational_form = true;
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
            if (pos_ < text_.size() && text_[pos_] == '.') {
                ++pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
            if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
                std::size_t p = pos_ + 1;
                if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
                if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                    pos_ = p;
                    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
                }
            }
        }
        std::string lit = text_.substr(start, pos_ - start);
        typename M::Real value = literal_value(lit, rational_form);
        bool imaginary = false;
        if (pos_ < text_.size() && text_[pos_] == 'i' && !ident_continues(pos_ + 1)) {
            imaginary = true;
            ++pos_;
        }
        auto c = imaginary ? M::make_complex(typename M::Real(0), value)
                           : M::make_complex(value);
        return FracPoly<M>::constant(dim, c);
    }

    static typename M::Real literal_value(const std::string& lit, bool rational_form) {
        if constexpr (M::is_exact) {
            (void)rational_form;
            return parse_rational(lit);
        } else {
            if (rational_form) {
                auto slash = lit.find('/');
                return std::strtod(lit.c_str(), nullptr) /
                       std::strtod(lit.c_str() + slash + 1, nullptr);
            }
            return std::strtod(lit.c_str(), nullptr);
        }
    }

    FracPoly<M> parse_variable(std::size_t dim) {
        ++pos_; // 't'
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("variable index expected after 't'");
        unsigned long idx = std::strtoul(text_.substr(start, pos_ - start).c_str(), nullptr, 10);
        if (idx < 1 || idx > n_) {
            pos_ = start;
            fail("variable index out of range 1.." + std::to_string(n_));
        }
        Rational e = parse_exponent();
        return FracPoly<M>::monomial(ExponentVector::unit(dim, idx, e),
                                     M::from_rational(Rational(1)));
    }

    FracPoly<M> parse_svar(std::size_t dim) {
        ++pos_; // 's'
        Rational e = parse_exponent();
        if (!is_integer(e)) fail("s admits integer exponents only");
        return FracPoly<M>::monomial(ExponentVector::unit(dim, n_ + 1, e),
                                     M::from_rational(Rational(1)));
    }

    // "^k" for integer k, "^(p/q)" for rationals; defaults to 1
    Rational parse_exponent() {
        if (pos_ >= text_.size() || text_[pos_] != '^') return Rational(1);
        ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            Rational e = parse_signed_rational();
            expect(')');
            if (e < 0) fail("negative exponent");
            return e;
        }
        Rational e = parse_signed_rational();
        if (!is_integer(e)) fail("fractional exponent must be parenthesized");
        if (e < 0) fail("negative exponent");
        return e;
    }

    Rational parse_signed_rational() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
            fail("rational expected");
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        return parse_rational(text_.substr(start, pos_ - start));
    }

    std::string text_;
    std::size_t pos_ = 0;
    std::size_t n_;
    bool allow_s_;
};

template <class M>
FracPoly<M> parse_fracpoly(const std::string& text, std::size_t n) {
    return ExprParser<M>(text, n, false).parse();
}

// dimension n+1; index n+1 holds the s-exponent (integers only)
template <class M>
FracPoly<M> parse_fracpoly_with_s(const std::string& text, std::size_t n) {
    return ExprParser<M>(text, n, true).parse();
}

inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace detail {

template <class M>
std::string format_real_abs(const typename M::Real& v) {
    if constexpr (M::is_exact) {
        return format_rational(v < 0 ? typename M::Real(-v) : v);
    } else {
        return format_double(v < 0 ? -v : v);
    }
}

template <class M>
std::string format_real(const typename M::Real& v) {
    if constexpr (M::is_exact) return format_rational(v);
    else return format_double(v);
}

} // namespace detail

// Canonical formatting: terms in the canonical exponent order, exponent 1
// implicit, rational exponents parenthesized. parse(format(f)) == f.
template <class M>
std::string format_fracpoly(const FracPoly<M>& f, const std::string& s_name = "") {
    using Real = typename M::Real;
    if (f.is_zero()) return "0";
    const std::size_t n_t = s_name.empty() ? f.dim() : f.dim() - 1;
    std::string out;
    bool first = true;
    for (const auto& [e, c] : f.terms()) {
        std::string mono;
        for (std::size_t j = 0; j < f.dim(); ++j) {
            if (e[j] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += j < n_t ? "t" + std::to_string(j + 1) : s_name;
            if (e[j] != 1) {
                if (is_integer(e[j])) mono += "^" + format_rational(e[j]);
                else mono += "^(" + format_rational(e[j]) + ")";
            }
        }
        Real re = M::real_part(c), im = M::imag_part(c);
        bool neg = false;
        std::string coeff;
        if (im == Real(0)) {
            neg = re < Real(0);
            Real mag = neg ? Real(-re) : re;
            if (mag != Real(1) || mono.empty()) coeff = detail::format_real<M>(mag);
        } else if (re == Real(0)) {
            neg = im < Real(0);
            Real mag = neg ? Real(-im) : im;
            coeff = (mag == Real(1) ? "" : detail::format_real<M>(mag)) + "i";
        } else {
            std::string ims = (M::imag_part(c) < Real(0) ? " - " : " + ") +
                              (im == Real(1) || im == Real(-1)
                                   ? ""
                                   : detail::format_real_abs<M>(im)) + "i";
            coeff = "(" + detail::format_real<M>(re) + ims + ")";
        }
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (!coeff.empty()) {
            out += coeff;
            if (!mono.empty()) out += "*";
        }
        out += mono;
    }
    return out;
}

} // namespace fracmom

#endif
