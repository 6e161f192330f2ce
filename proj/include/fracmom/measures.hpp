#ifndef FRACMOM_MEASURES_HPP
#define FRACMOM_MEASURES_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracmom/theta_kernel.hpp"

namespace fracmom {

// Finitely supported positive measure on R_+^n. In exact mode the atom
// coordinates are stored as roots: coordinate j equals roots[j]^D for a
// global root power D, so t^alpha stays rational whenever D clears the
// denominators of alpha.
template <class M>
class AtomicMeasure {
public:
    struct Atom {
        std::vector<typename M::Real> coords; // roots in exact mode, points in float mode
        typename M::Real weight;
    };

    AtomicMeasure(std::size_t n, unsigned long root_power = 1) : n_(n), d_(root_power) {
        if (d_ == 0) throw DomainError("root power must be positive");
    }

    std::size_t dim() const { return n_; }
    unsigned long root_power() const { return d_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    void add_atom(std::vector<typename M::Real> coords, typename M::Real weight) {
        if (coords.size() != n_) throw DimensionMismatch("atom dimension mismatch");
        if (!(weight > typename M::Real(0))) throw DomainError("atom weight must be positive");
        for (const auto& x : coords)
            if (x < typename M::Real(0)) throw DomainError("atom coordinate must be non-negative");
        atoms_.push_back({std::move(coords), std::move(weight)});
    }

    RootPoint root_point(std::size_t i) const
        requires M::is_exact
    {
        return RootPoint::uniform(atoms_[i].coords, d_);
    }

    std::vector<double> point(std::size_t i) const {
        std::vector<double> t(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            if constexpr (M::is_exact)
                t[j] = std::pow(to_double(atoms_[i].coords[j]), static_cast<double>(d_));
            else
                t[j] = atoms_[i].coords[j];
        }
        return t;
    }

private:
    std::size_t n_;
    unsigned long d_;
    std::vector<Atom> atoms_;
};

inline AtomicMeasure<FloatMode> to_float(const AtomicMeasure<ExactMode>& mu) {
    AtomicMeasure<FloatMode> r(mu.dim());
    for (std::size_t i = 0; i < mu.atoms().size(); ++i)
        r.add_atom(mu.point(i), to_double(mu.atoms()[i].weight));
    return r;
}

// integral of f against mu, extended linearly from the monomials
template <class M>
typename M::Complex integrate(const AtomicMeasure<M>& mu, const FracPoly<M>& f) {
    if (f.dim() != mu.dim()) throw DimensionMismatch("integrand dimension mismatch");
    typename M::Complex acc{};
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
        if constexpr (M::is_exact)
            acc += f.eval_exact(mu.root_point(i)) * ExactComplex(mu.atoms()[i].weight);
        else
            acc += f.eval(mu.point(i)) * mu.atoms()[i].weight;
    }
    return acc;
}

// gamma_alpha = integral of t^alpha; accepts arbitrary real alpha >= 0
template <class M>
double gamma_moment(const AtomicMeasure<M>& mu, const std::vector<double>& alpha) {
    if (alpha.size() != mu.dim()) throw DimensionMismatch("alpha dimension mismatch");
    for (double a : alpha)
        if (a < 0.0) throw DomainError("negative moment exponent");
    double acc = 0.0;
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
        auto t = mu.point(i);
        double m = 1.0;
        for (std::size_t j = 0; j < mu.dim(); ++j)
            if (alpha[j] != 0.0) m *= std::pow(t[j], alpha[j]);
        acc += M::as_double(mu.atoms()[i].weight) * m;
    }
    return acc;
}

inline Rational gamma_moment_exact(const AtomicMeasure<ExactMode>& mu,
                                   const ExponentVector& alpha) {
    if (alpha.dim() != mu.dim()) throw DimensionMismatch("alpha dimension mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
        auto p = mu.root_point(i);
        Rational m(1);
        for (std::size_t j = 0; j < mu.dim() && m != 0; ++j)
            if (alpha[j] != 0) m *= p.pow_component(j, alpha[j]);
        acc += mu.atoms()[i].weight * m;
    }
    return acc;
}

// delta_{(alpha,beta)} = integral of t^alpha * theta_p(t)^beta
template <class M>
typename M::Real delta_forward(const AtomicMeasure<M>& mu, const ProblemPolys<M>& P,
                               const ExponentVector& alpha, unsigned long beta) {
    if (alpha.dim() != mu.dim() || P.n != mu.dim())
        throw DimensionMismatch("delta_forward dimension mismatch");
    if constexpr (M::is_exact) {
        Rational acc(0);
        for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
            auto p = mu.root_point(i);
            Rational m(1);
            for (std::size_t j = 0; j < mu.dim() && m != 0; ++j)
                if (alpha[j] != 0) m *= p.pow_component(j, alpha[j]);
            if (m != 0 && beta > 0) m *= pow_rational(theta_eval_exact(P, p), beta);
            acc += mu.atoms()[i].weight * m;
        }
        return acc;
    } else {
        double acc = 0.0;
        for (std::size_t i = 0; i < mu.atoms().size(); ++i) {
            auto t = mu.point(i);
            double m = 1.0;
            for (std::size_t j = 0; j < mu.dim(); ++j)
                if (alpha[j] != 0) m *= std::pow(t[j], to_double(alpha[j]));
            if (beta > 0) m *= std::pow(theta_eval(P, t), static_cast<double>(beta));
            acc += mu.atoms()[i].weight * m;
        }
        return acc;
    }
}

struct SupportViolation {
    std::size_t atom;
    std::size_t k; // 1-based index into P.polys
    double value;
};

struct SupportReport {
    bool pass = true;
    std::vector<SupportViolation> violations;
};

// atoms must lie in the closed set where every p_k >= 0 (within tol)
template <class M>
SupportReport support_check(const AtomicMeasure<M>& mu, const ProblemPolys<M>& P, double tol) {
    SupportReport r;
    for (std::size_t i = 0; i < mu.atoms().size(); ++i)
        for (std::size_t k = 0; k < P.polys.size(); ++k) {
            double v;
            if constexpr (M::is_exact)
                v = to_double(P.polys[k].eval_exact(mu.root_point(i)).re);
            else
                v = P.polys[k].eval(mu.point(i)).real();
            if (v < -tol) {
                r.pass = false;
                r.violations.push_back({i, k + 1, v});
            }
        }
    return r;
}

// Atomic measure nu on R^n (log coordinates; points may be negative).
struct LogAtomicMeasure {
    struct Atom {
        std::vector<double> point;
        double weight;
    };
    std::size_t n = 0;
    std::vector<Atom> atoms;

    void add_atom(std::vector<double> point, double weight) {
        if (point.size() != n) throw DimensionMismatch("atom dimension mismatch");
        if (!(weight > 0.0)) throw DomainError("atom weight must be positive");
        atoms.push_back({std::move(point), weight});
    }
};

// change of variable t = exp(-s): turns Laplace data into moment data
inline AtomicMeasure<FloatMode> laplace_pushforward(const LogAtomicMeasure& nu) {
    AtomicMeasure<FloatMode> mu(nu.n);
    for (const auto& a : nu.atoms) {
        std::vector<double> t(nu.n);
        for (std::size_t j = 0; j < nu.n; ++j) t[j] = std::exp(-a.point[j]);
        mu.add_atom(std::move(t), a.weight);
    }
    return mu;
}

} // namespace fracmom

#endif
