#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fracmom/parser.hpp"
#include "test_support.hpp"

using namespace fracmom;
using namespace fracmom::testing;

namespace {

FracPoly<ExactMode> q(const std::string& s, std::size_t n) {
    return parse_fracpoly<ExactMode>(s, n);
}

} // namespace

TEST_CASE("add: additive inverse cancels to the empty term map") {
    auto f = q("t1^(1/2)", 1);
    auto g = q("-t1^(1/2)", 1);
    CHECK((f + g).is_zero());
}

TEST_CASE("add: like terms merge") {
    CHECK(q("t1 + 1", 1) + q("t1", 1) == q("2*t1 + 1", 1));
}

TEST_CASE("add: distinct exponents union") {
    auto f = q("t1^(1/2) + t2", 2), g = q("t1^(1/3)", 2);
    auto r = f + g;
    CHECK(r.term_count() == 3);
    // oracle: set union of exponent vectors
    std::set<ExponentVector> expect;
    for (const auto& [e, c] : f.terms()) expect.insert(e);
    for (const auto& [e, c] : g.terms()) expect.insert(e);
    CHECK(expect.size() == 3);
    for (const auto& [e, c] : r.terms()) CHECK(expect.count(e) == 1);
}

TEST_CASE("add: dimension mismatch") {
    CHECK_THROWS_AS(q("t1", 1) + q("t1", 2), DimensionMismatch);
}

TEST_CASE("mul: rational exponents add") {
    CHECK(q("t1^(1/2)", 1) * q("t1^(1/2)", 1) == q("t1", 1));
}

TEST_CASE("mul: difference of squares") {
    CHECK(q("t1 + 1", 1) * q("t1 - 1", 1) == q("t1^2 - 1", 1));
}

TEST_CASE("mul: complex conjugate pair") {
    CHECK(q("t1^(1/2) + i", 1) * q("t1^(1/2) - i", 1) == q("t1 + 1", 1));
}

TEST_CASE("mul: term explosion guard") {
    FracPoly<ExactMode> f(1), g(1);
    for (long k = 0; k < 40; ++k) {
        f.add_term(ExponentVector::unit(1, 1, make_rational(k, 7)), ExactComplex(Rational(1)));
        g.add_term(ExponentVector::unit(1, 1, make_rational(k, 11)), ExactComplex(Rational(1)));
    }
    CHECK_THROWS_AS(f.mul(g, 100), ResourceLimit);
}

TEST_CASE("conj_abs_square examples") {
    CHECK(q("t1^(1/2) + i", 1).conj_abs_square() == q("t1 + 1", 1));
    CHECK(q("1", 1).conj_abs_square() == q("1", 1));
    CHECK(q("2i*t1", 1).conj_abs_square() == q("4*t1^2", 1));
}

TEST_CASE("eval examples") {
    CHECK(q("2*t1^(3/2)", 1).eval({4.0}) == std::complex<double>(16.0, 0.0));
    CHECK(q("t1^(1/2)*t2", 2).eval({0.0, 5.0}) == std::complex<double>(0.0, 0.0));
    CHECK(q("1 + t1^2", 1).eval({2.0}) == std::complex<double>(5.0, 0.0));
    CHECK_THROWS_AS(q("t1", 1).eval({-1.0}), DomainError);
}

TEST_CASE("eval: 0^0 = 1 so the constant term survives at the origin") {
    CHECK(q("3 + t1^(1/2)", 1).eval({0.0}) == std::complex<double>(3.0, 0.0));
}

TEST_CASE("clear_denominators examples") {
    CHECK(q("t1^(3/2) - 2", 1).clear_denominators({2}) == q("t1^3 - 2", 1));
    CHECK(q("t1^(1/2)*t2^(1/3)", 2).clear_denominators({2, 3}) == q("t1*t2", 2));
    auto r = q("1 + t1 + t1^2", 1).clear_denominators({2});
    CHECK(r == q("1 + t1^2 + t1^4", 1));
    // evaluation oracle: result at u=2 equals original at 4
    CHECK(r.eval({2.0}).real() == doctest::Approx(21.0));
    CHECK(q("1 + t1 + t1^2", 1).eval({4.0}).real() == doctest::Approx(21.0));
}

TEST_CASE("clear_denominators rejects incompatible scaling") {
    CHECK_THROWS_AS(q("t1^(1/3)", 1).clear_denominators({2}), DomainError);
}

TEST_CASE("exact evaluation at root points") {
    auto f = q("2*t1^(3/2)", 1);
    RootPoint p = RootPoint::uniform({Rational(2)}, 2); // t = 4
    CHECK(f.eval_exact(p).re == Rational(16));
    CHECK_THROWS_AS(q("t1^(1/3)", 1).eval_exact(p), DomainError);
}

TEST_CASE("ring axioms on randomized triples") {
    Rng rng(42);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t n = 1 + (iter % 2);
        auto f = random_poly<ExactMode>(rng, n);
        auto g = random_poly<ExactMode>(rng, n);
        auto h = random_poly<ExactMode>(rng, n);
        CHECK((f + g) + h == f + (g + h));
        CHECK(f + g == g + f);
        CHECK(f * g == g * f);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
    }
}

TEST_CASE("eval is a ring homomorphism") {
    Rng rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 1 + (iter % 2);
        auto f = random_poly<ExactMode>(rng, n);
        auto g = random_poly<ExactMode>(rng, n);
        auto t = random_point(rng, n);
        CHECK(close((f * g).eval(t), f.eval(t) * g.eval(t)));
        CHECK(close((f + g).eval(t), f.eval(t) + g.eval(t)));
    }
}

TEST_CASE("eval homomorphism in float mode") {
    Rng rng(8);
    for (int iter = 0; iter < 40; ++iter) {
        auto f = random_poly<FloatMode>(rng, 2);
        auto g = random_poly<FloatMode>(rng, 2);
        auto t = random_point(rng, 2);
        CHECK(close((f * g).eval(t), f.eval(t) * g.eval(t)));
    }
}

TEST_CASE("conj_abs_square is non-negative on R_+^n") {
    Rng rng(13);
    for (int iter = 0; iter < 40; ++iter) {
        auto f = random_poly<ExactMode>(rng, 2);
        auto s = f.conj_abs_square();
        CHECK(s.is_real());
        auto t = random_point(rng, 2);
        auto v = s.eval(t);
        CHECK(std::abs(v.imag()) <= 1e-9 * (1.0 + std::abs(v.real())));
        CHECK(v.real() >= -1e-9);
    }
}

TEST_CASE("clear_denominators commutes with eval") {
    Rng rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        std::size_t n = 1 + (iter % 2);
        auto f = random_poly<ExactMode>(rng, n);
        auto c = f.denominator_lcms();
        auto g = f.clear_denominators(c);
        auto u = random_point(rng, n, 0.0, 10.0);
        std::vector<double> uc(n);
        for (std::size_t j = 0; j < n; ++j) uc[j] = std::pow(u[j], static_cast<double>(c[j]));
        CHECK(close(g.eval(u), f.eval(uc), 1e-9));
    }
}
