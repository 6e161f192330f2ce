#ifndef FRACMOM_THETA_KERNEL_HPP
#define FRACMOM_THETA_KERNEL_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "fracmom/frac_poly.hpp"

namespace fracmom {

// The fixed p = (p_1,...,p_m) with the cached localization data:
// theta_inv = 1 + sum t_j^2 + sum p_k^2 and the per-variable denominator lcms.
template <class M>
struct ProblemPolys {
    std::size_t n = 0;
    std::vector<FracPoly<M>> polys;
    FracPoly<M> theta_inv{0};
    std::vector<unsigned long> c;
};

template <class M>
ProblemPolys<M> make_problem(std::size_t n, std::vector<FracPoly<M>> polys) {
    for (const auto& p : polys) {
        if (p.dim() != n) throw DimensionMismatch("p_k dimension mismatch");
        if (!p.is_real()) throw DomainError("p_k must have real coefficients");
    }
    ProblemPolys<M> P;
    P.n = n;
    FracPoly<M> ti = FracPoly<M>::constant(n, M::from_rational(Rational(1)));
    for (std::size_t j = 1; j <= n; ++j) {
        auto tj = FracPoly<M>::variable(n, j);
        ti = ti + tj * tj;
    }
    for (const auto& p : polys) ti = ti + p * p;
    P.c = ti.denominator_lcms();
    for (const auto& p : polys) {
        auto l = p.denominator_lcms();
        for (std::size_t j = 0; j < n; ++j) P.c[j] = lcm_ui(P.c[j], l[j]);
    }
    P.theta_inv = std::move(ti);
    P.polys = std::move(polys);
    return P;
}

// theta_p(t) = 1 / theta_inv(t); lies in (0, 1] on R_+^n
template <class M>
double theta_eval(const ProblemPolys<M>& P, const std::vector<double>& t) {
    return 1.0 / P.theta_inv.eval(t).real();
}

inline Rational theta_eval_exact(const ProblemPolys<ExactMode>& P, const RootPoint& t) {
    return 1 / P.theta_inv.eval_exact(t).re;
}

// Element of the extended algebra: polynomial in the auxiliary variable s
// with FracPoly coefficients.
template <class M>
class ExtendedPoly {
public:
    using Coeffs = std::map<unsigned long, FracPoly<M>>;

    explicit ExtendedPoly(std::size_t dim) : dim_(dim) {}

    static ExtendedPoly s_power(FracPoly<M> coeff, unsigned long b) {
        ExtendedPoly q(coeff.dim());
        q.set_coeff(b, std::move(coeff));
        return q;
    }

    std::size_t dim() const { return dim_; }
    const Coeffs& s_coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    unsigned long s_degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    void set_coeff(unsigned long b, FracPoly<M> f) {
        if (f.dim() != dim_) throw DimensionMismatch("coefficient dimension mismatch");
        if (f.is_zero()) coeffs_.erase(b);
        else coeffs_.insert_or_assign(b, std::move(f));
    }

    void add_coeff(unsigned long b, const FracPoly<M>& f) {
        auto it = coeffs_.find(b);
        if (it == coeffs_.end()) set_coeff(b, f);
        else {
            it->second = it->second + f;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    friend ExtendedPoly operator+(const ExtendedPoly& a, const ExtendedPoly& b) {
        a.check_dim(b);
        ExtendedPoly r = a;
        for (const auto& [e, f] : b.coeffs_) r.add_coeff(e, f);
        return r;
    }

    friend ExtendedPoly operator*(const ExtendedPoly& a, const ExtendedPoly& b) {
        a.check_dim(b);
        ExtendedPoly r(a.dim_);
        for (const auto& [ea, fa] : a.coeffs_)
            for (const auto& [eb, fb] : b.coeffs_) r.add_coeff(ea + eb, fa * fb);
        return r;
    }

    friend bool operator==(const ExtendedPoly& a, const ExtendedPoly& b) {
        return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_dim(const ExtendedPoly& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("extended polynomial dimension mismatch");
    }

    std::size_t dim_;
    Coeffs coeffs_;
};

// reinterpret an (n+1)-variable FracPoly (s = variable n+1) as an ExtendedPoly
template <class M>
ExtendedPoly<M> to_extended(const FracPoly<M>& f) {
    if (f.dim() == 0) throw DimensionMismatch("expected at least the s variable");
    std::size_t n = f.dim() - 1;
    ExtendedPoly<M> q(n);
    for (const auto& [e, c] : f.terms()) {
        const Rational& se = e[n];
        if (!is_integer(se)) throw DomainError("fractional power of s");
        std::vector<Rational> te(e.components().begin(), e.components().end() - 1);
        q.add_coeff(se.get_num().get_ui(),
                    FracPoly<M>::monomial(ExponentVector(std::move(te)), c));
    }
    return q;
}

// sigma(t,s) = s * theta_inv(t) - 1, the generator of ker(rho)
template <class M>
ExtendedPoly<M> sigma(const ProblemPolys<M>& P) {
    ExtendedPoly<M> q(P.n);
    q.set_coeff(1, P.theta_inv);
    q.set_coeff(0, -FracPoly<M>::constant(P.n, M::from_rational(Rational(1))));
    return q;
}

// rho(q)(t) = q(t, theta_p(t))
template <class M>
std::complex<double> rho_eval(const ExtendedPoly<M>& q, const ProblemPolys<M>& P,
                              const std::vector<double>& t) {
    if (q.dim() != P.n) throw DimensionMismatch("rho_eval dimension mismatch");
    double th = theta_eval(P, t);
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [b, f] : q.s_coeffs()) acc += f.eval(t) * std::pow(th, static_cast<double>(b));
    return acc;
}

inline ExactComplex rho_eval_exact(const ExtendedPoly<ExactMode>& q,
                                   const ProblemPolys<ExactMode>& P, const RootPoint& t) {
    if (q.dim() != P.n) throw DimensionMismatch("rho_eval dimension mismatch");
    Rational th = theta_eval_exact(P, t);
    ExactComplex acc;
    for (const auto& [b, f] : q.s_coeffs())
        acc += f.eval_exact(t) * ExactComplex(pow_rational(th, b));
    return acc;
}

struct KernelVerdict {
    bool in_kernel;
    // on FALSE: a point t = u^c (componentwise) with rho(q)(t) != 0, when a
    // small one exists
    std::optional<RootPoint> witness;
};

// Membership in ker(rho) = (sigma): after the substitution t_j = u_j^{c_j}
// everything is an integer-exponent polynomial and q in ker(rho) iff
// sum_b C_b(u) * Theta(u)^{B-b} vanishes identically.
inline KernelVerdict kernel_test(const ExtendedPoly<ExactMode>& q,
                                 const ProblemPolys<ExactMode>& P) {
    if (q.dim() != P.n) throw DimensionMismatch("kernel_test dimension mismatch");
    if (q.is_zero()) return {true, std::nullopt};

    // c must clear the denominators of q as well as those of theta_inv
    std::vector<unsigned long> c = P.c;
    for (const auto& [b, f] : q.s_coeffs()) {
        auto l = f.denominator_lcms();
        for (std::size_t j = 0; j < P.n; ++j) c[j] = lcm_ui(c[j], l[j]);
    }

    const unsigned long B = q.s_degree();
    FracPoly<ExactMode> theta_cleared = P.theta_inv.clear_denominators(c);
    // Horner: processing b = 0..B leaves C_b multiplied by Theta^{B-b}
    FracPoly<ExactMode> acc(P.n);
    for (unsigned long b = 0; b <= B; ++b) {
        acc = acc * theta_cleared;
        auto it = q.s_coeffs().find(b);
        if (it != q.s_coeffs().end()) acc = acc + it->second.clear_denominators(c);
    }
    if (acc.is_zero()) return {true, std::nullopt};

    KernelVerdict v{false, std::nullopt};
    auto try_point = [&](const std::vector<Rational>& u) {
        RootPoint t;
        t.roots = u;
        t.powers = c;
        if (!is_zero(rho_eval_exact(q, P, t))) {
            v.witness = std::move(t);
            return true;
        }
        return false;
    };
    // integer grid {0..9}^n first, then random rationals
    std::vector<unsigned long> idx(P.n, 0);
    while (true) {
        std::vector<Rational> u(P.n);
        for (std::size_t j = 0; j < P.n; ++j) u[j] = Rational(static_cast<long>(idx[j]));
        if (try_point(u)) return v;
        std::size_t j = 0;
        while (j < P.n && ++idx[j] == 10) idx[j++] = 0;
        if (j == P.n) break;
    }
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<long> num(0, 99), den(1, 12);
    for (int iter = 0; iter < 1000; ++iter) {
        std::vector<Rational> u(P.n);
        for (auto& x : u) x = make_rational(num(rng), static_cast<unsigned long>(den(rng)));
        if (try_point(u)) return v;
    }
    return v; // FALSE is authoritative even without a small witness
}

} // namespace fracmom

#endif
