#ifndef FRACMOM_TEST_SUPPORT_HPP
#define FRACMOM_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "fracmom/measures.hpp"
#include "fracmom/parser.hpp"

namespace fracmom::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long max_num = 20, unsigned long max_den = 6,
                                bool allow_negative = true) {
    std::uniform_int_distribution<long> num(allow_negative ? -max_num : 0, max_num);
    std::uniform_int_distribution<unsigned long> den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline ExponentVector random_exponent(Rng& rng, std::size_t n, unsigned long max_numerator = 6,
                                      unsigned long max_denominator = 3) {
    std::uniform_int_distribution<unsigned long> num(0, max_numerator);
    std::uniform_int_distribution<unsigned long> den(1, max_denominator);
    std::vector<Rational> comps(n);
    for (auto& c : comps) c = make_rational(static_cast<long>(num(rng)), den(rng));
    return ExponentVector(std::move(comps));
}

template <class M>
FracPoly<M> random_poly(Rng& rng, std::size_t n, std::size_t max_terms = 4,
                        bool complex_coeffs = true) {
    std::uniform_int_distribution<std::size_t> nt(0, max_terms);
    FracPoly<M> f(n);
    std::size_t terms = nt(rng);
    for (std::size_t i = 0; i < terms; ++i) {
        Rational re = random_rational(rng, 9, 4);
        Rational im = complex_coeffs ? random_rational(rng, 9, 4) : Rational(0);
        f.add_term(random_exponent(rng, n),
                   M::make_complex(M::real_from_rational(re), M::real_from_rational(im)));
    }
    return f;
}

inline std::vector<double> random_point(Rng& rng, std::size_t n, double lo = 0.0,
                                        double hi = 10.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> t(n);
    for (auto& x : t) x = d(rng);
    return t;
}

// exact-mode measure with atoms r^D, r rational in [0, max_root]
inline AtomicMeasure<ExactMode> random_exact_measure(Rng& rng, std::size_t n, unsigned long d,
                                                     std::size_t max_atoms = 5,
                                                     long max_root_num = 3) {
    std::uniform_int_distribution<std::size_t> na(1, max_atoms);
    std::uniform_int_distribution<long> num(0, max_root_num * 4);
    std::uniform_int_distribution<long> wnum(1, 8);
    AtomicMeasure<ExactMode> mu(n, d);
    std::size_t atoms = na(rng);
    for (std::size_t i = 0; i < atoms; ++i) {
        std::vector<Rational> roots(n);
        for (auto& r : roots) r = make_rational(num(rng), 4); // r in [0, 3]
        mu.add_atom(std::move(roots), make_rational(wnum(rng), 4));
    }
    return mu;
}

inline bool close(double a, double b, double rel = 1e-12) {
    return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

inline bool close(const std::complex<double>& a, const std::complex<double>& b,
                  double rel = 1e-12) {
    return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

} // namespace fracmom::testing

#endif
