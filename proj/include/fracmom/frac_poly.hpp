#ifndef FRACMOM_FRAC_POLY_HPP
#define FRACMOM_FRAC_POLY_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "fracmom/exponent.hpp"
#include "fracmom/mode.hpp"

namespace fracmom {

inline constexpr std::size_t kDefaultTermLimit = 100000;

// Point of R_+^n with component j equal to roots[j]^powers[j]; keeps t^alpha
// rational whenever powers[j] * alpha_j is an integer.
struct RootPoint {
    std::vector<Rational> roots;
    std::vector<unsigned long> powers;

    static RootPoint uniform(std::vector<Rational> roots, unsigned long d) {
        RootPoint p;
        p.powers.assign(roots.size(), d);
        p.roots = std::move(roots);
        return p;
    }

    std::size_t dim() const { return roots.size(); }

    Rational component(std::size_t j) const { return pow_rational(roots[j], powers[j]); }

    // roots[j]^(powers[j] * e); e must make the exponent an integer
    Rational pow_component(std::size_t j, const Rational& e) const {
        Rational k = e * static_cast<long>(powers[j]);
        if (!is_integer(k))
            throw DomainError("exponent " + format_rational(e) +
                              " not exact for root power " + std::to_string(powers[j]));
        if (!k.get_num().fits_ulong_p()) throw DomainError("exponent too large");
        return pow_rational(roots[j], k.get_num().get_ui());
    }
};

// Element of Q_n: finite sum of complex-coefficient monomials t^alpha,
// alpha in Q_+^n. Normalized: no zero coefficients stored.
template <class M>
class FracPoly {
public:
    using Complex = typename M::Complex;
    using TermMap = std::map<ExponentVector, Complex>;

    explicit FracPoly(std::size_t dim) : dim_(dim) {}

    static FracPoly zero(std::size_t dim) { return FracPoly(dim); }

    static FracPoly constant(std::size_t dim, Complex c) {
        FracPoly f(dim);
        f.add_term(ExponentVector::zero(dim), std::move(c));
        return f;
    }

    static FracPoly monomial(ExponentVector e, Complex c) {
        FracPoly f(e.dim());
        f.add_term(std::move(e), std::move(c));
        return f;
    }

    // variable t_j (1-based)
    static FracPoly variable(std::size_t dim, std::size_t j) {
        return monomial(ExponentVector::unit(dim, j), M::from_rational(Rational(1)));
    }

    std::size_t dim() const { return dim_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_real() const {
        for (const auto& [e, c] : terms_)
            if (M::imag_part(c) != typename M::Real(0)) return false;
        return true;
    }

    void add_term(ExponentVector e, Complex c) {
        if (e.dim() != dim_) throw DimensionMismatch("term dimension mismatch");
        if (fracmom::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (fracmom::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend FracPoly operator+(const FracPoly& f, const FracPoly& g) {
        f.check_dim(g);
        FracPoly r = f;
        for (const auto& [e, c] : g.terms_) r.add_term(e, c);
        return r;
    }

    friend FracPoly operator-(const FracPoly& f, const FracPoly& g) {
        f.check_dim(g);
        FracPoly r = f;
        for (const auto& [e, c] : g.terms_) r.add_term(e, -c);
        return r;
    }

    friend FracPoly operator-(const FracPoly& f) {
        FracPoly r(f.dim_);
        for (const auto& [e, c] : f.terms_) r.terms_.emplace(e, -c);
        return r;
    }

    FracPoly mul(const FracPoly& g, std::size_t term_limit = kDefaultTermLimit) const {
        check_dim(g);
        FracPoly r(dim_);
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : g.terms_) {
                r.add_term(e1 + e2, c1 * c2);
                if (r.terms_.size() > term_limit)
                    throw ResourceLimit("product exceeds term limit");
            }
        return r;
    }

    friend FracPoly operator*(const FracPoly& f, const FracPoly& g) { return f.mul(g); }

    FracPoly conjugate() const {
        FracPoly r(dim_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, conj(c));
        return r;
    }

    // |f|^2 = f * conj(f); real coefficients by construction
    FracPoly conj_abs_square() const { return mul(conjugate()); }

    // numeric evaluation at t in R_+^n; 0^0 = 1, fractional powers via the
    // real non-negative root
    std::complex<double> eval(const std::vector<double>& t) const {
        if (t.size() != dim_) throw DimensionMismatch("point dimension mismatch");
        for (double x : t)
            if (x < 0.0) throw DomainError("negative point component");
        std::complex<double> acc(0.0, 0.0);
        for (const auto& [e, c] : terms_) {
            double m = 1.0;
            for (std::size_t j = 0; j < dim_; ++j) {
                double a = to_double(e[j]);
                if (a != 0.0) m *= std::pow(t[j], a);
            }
            acc += complex_as_double<M>(c) * m;
        }
        return acc;
    }

    // exact evaluation at a RootPoint (exact mode only)
    Complex eval_exact(const RootPoint& p) const
        requires M::is_exact
    {
        if (p.dim() != dim_) throw DimensionMismatch("point dimension mismatch");
        Complex acc;
        for (const auto& [e, c] : terms_) {
            Rational m(1);
            for (std::size_t j = 0; j < dim_ && m != 0; ++j)
                if (e[j] != 0) m *= p.pow_component(j, e[j]);
            acc += c * Complex(m);
        }
        return acc;
    }

    // substitute t_j = u_j^{c_j}; requires c_j to clear the j-th denominators
    FracPoly clear_denominators(const std::vector<unsigned long>& c) const {
        if (c.size() != dim_) throw DimensionMismatch("scaling vector dimension mismatch");
        FracPoly r(dim_);
        for (const auto& [e, coeff] : terms_) {
            std::vector<Rational> scaled(dim_);
            for (std::size_t j = 0; j < dim_; ++j) {
                if (c[j] == 0 || c[j] % denominator_ui(e[j]) != 0)
                    throw DomainError("c[" + std::to_string(j + 1) +
                                      "] does not clear exponent denominator");
                scaled[j] = e[j] * static_cast<long>(c[j]);
            }
            r.terms_.emplace(ExponentVector(std::move(scaled)), coeff);
        }
        return r;
    }

    // per-variable lcm of exponent denominators
    std::vector<unsigned long> denominator_lcms() const {
        std::vector<unsigned long> l(dim_, 1);
        for (const auto& [e, c] : terms_)
            for (std::size_t j = 0; j < dim_; ++j) l[j] = lcm_ui(l[j], denominator_ui(e[j]));
        return l;
    }

    friend bool operator==(const FracPoly& f, const FracPoly& g) {
        return f.dim_ == g.dim_ && f.terms_ == g.terms_;
    }

private:
    void check_dim(const FracPoly& g) const {
        if (dim_ != g.dim_) throw DimensionMismatch("polynomial dimension mismatch");
    }

    std::size_t dim_;
    TermMap terms_;
};

inline FracPoly<FloatMode> to_float(const FracPoly<ExactMode>& f) {
    FracPoly<FloatMode> r(f.dim());
    for (const auto& [e, c] : f.terms())
        r.add_term(e, {to_double(c.re), to_double(c.im)});
    return r;
}

} // namespace fracmom

#endif
