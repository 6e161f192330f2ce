#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fracmom/theta_kernel.hpp"
#include "fracmom/parser.hpp"
#include "test_support.hpp"

using namespace fracmom;
using namespace fracmom::testing;

namespace {

FracPoly<ExactMode> q(const std::string& s, std::size_t n) {
    return parse_fracpoly<ExactMode>(s, n);
}

ProblemPolys<ExactMode> problem(std::size_t n, const std::vector<std::string>& ps) {
    std::vector<FracPoly<ExactMode>> polys;
    for (const auto& s : ps) polys.push_back(q(s, n));
    return make_problem<ExactMode>(n, std::move(polys));
}

ExtendedPoly<ExactMode> ext(const std::string& s, std::size_t n) {
    return to_extended(parse_fracpoly_with_s<ExactMode>(s, n));
}

// random ExtendedPoly with bounded s-degree and exponent denominators
ExtendedPoly<ExactMode> random_extended(Rng& rng, std::size_t n, unsigned long max_sdeg = 3) {
    std::uniform_int_distribution<unsigned long> sd(0, max_sdeg);
    ExtendedPoly<ExactMode> e(n);
    unsigned long top = sd(rng);
    for (unsigned long b = 0; b <= top; ++b)
        e.add_coeff(b, random_poly<ExactMode>(rng, n, 3));
    return e;
}

} // namespace

TEST_CASE("make_problem: empty p-list") {
    auto P = problem(1, {});
    CHECK(P.theta_inv == q("1 + t1^2", 1));
    CHECK(P.c == std::vector<unsigned long>{1});
}

TEST_CASE("make_problem: square of a fractional polynomial") {
    auto P = problem(1, {"t1^(1/2)"});
    CHECK(P.theta_inv == q("1 + t1^2 + t1", 1));
    CHECK(P.c == std::vector<unsigned long>{2});
}

TEST_CASE("make_problem: two variables") {
    auto P = problem(2, {"t1 - t2"});
    CHECK(P.theta_inv == q("1 + 2*t1^2 + 2*t2^2 - 2*t1*t2", 2));
    CHECK(P.c == std::vector<unsigned long>({1, 1}));
}

TEST_CASE("make_problem rejects non-real p_k") {
    CHECK_THROWS_AS(problem(1, {"i*t1"}), DomainError);
}

TEST_CASE("theta_eval examples") {
    auto P0 = problem(1, {});
    CHECK(theta_eval(P0, {0.0}) == doctest::Approx(1.0));
    CHECK(theta_eval(P0, {2.0}) == doctest::Approx(0.2));
    auto P1 = problem(1, {"t1^(1/2)"});
    CHECK(theta_eval(P1, {4.0}) == doctest::Approx(1.0 / 21.0));
    CHECK(theta_eval_exact(P1, RootPoint::uniform({Rational(2)}, 2)) == make_rational(1, 21));
}

TEST_CASE("theta identity: theta * theta_inv = 1") {
    Rng rng(5);
    auto P = problem(2, {"t1 - t2"});
    for (int iter = 0; iter < 50; ++iter) {
        auto t = random_point(rng, 2);
        double v = theta_eval(P, t) * P.theta_inv.eval(t).real();
        CHECK(std::abs(v - 1.0) <= 1e-14 * std::abs(v));
    }
    auto Pq = problem(1, {"t1^(1/2)"});
    RootPoint p = RootPoint::uniform({make_rational(3, 2)}, 2);
    CHECK(theta_eval_exact(Pq, p) * Pq.theta_inv.eval_exact(p).re == 1);
}

TEST_CASE("sigma construction") {
    auto P0 = problem(1, {});
    auto s0 = sigma(P0);
    CHECK(s0 == ext("s*(1 + t1^2) - 1", 1));
    auto P1 = problem(1, {"t1^(1/2)"});
    CHECK(sigma(P1) == ext("s*(1 + t1 + t1^2) - 1", 1));
}

TEST_CASE("rho_eval examples") {
    auto P = problem(1, {});
    CHECK(rho_eval(ext("s", 1), P, {1.0}).real() == doctest::Approx(0.5));
    CHECK(rho_eval(ext("s*t1", 1), P, {2.0}).real() == doctest::Approx(0.4));
    Rng rng(17);
    for (int iter = 0; iter < 100; ++iter) {
        auto t = random_point(rng, 1);
        CHECK(std::abs(rho_eval(sigma(P), P, t)) <= 1e-12);
    }
}

TEST_CASE("kernel_test: sigma generates the kernel") {
    for (auto& P : {problem(1, {}), problem(1, {"t1^(1/2)"}), problem(2, {"t1 - t2"})}) {
        auto v = kernel_test(sigma(P), P);
        CHECK(v.in_kernel);
    }
}

TEST_CASE("kernel_test: hand factorization") {
    auto P = problem(1, {});
    auto qq = ext("s^2*(1 + t1^2)*(1 + t1^2) - 1", 1);
    CHECK(kernel_test(qq, P).in_kernel);
}

TEST_CASE("kernel_test: s is not in the kernel, witness at origin") {
    auto P = problem(1, {});
    auto v = kernel_test(ext("s", 1), P);
    CHECK_FALSE(v.in_kernel);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->component(0) == 0);
    CHECK(rho_eval_exact(ext("s", 1), P, *v.witness).re == 1);
}

TEST_CASE("ideal closure: sigma * q stays in the kernel") {
    Rng rng(23);
    auto P1 = problem(1, {"t1^(1/2)"});
    auto P2 = problem(2, {});
    for (int iter = 0; iter < 100; ++iter) {
        const auto& P = iter % 2 ? P1 : P2;
        auto qq = random_extended(rng, P.n);
        CHECK(kernel_test(sigma(P) * qq, P).in_kernel);
    }
}

TEST_CASE("soundness: FALSE witnesses evaluate to a nonzero value exactly") {
    Rng rng(29);
    auto P = problem(1, {"t1^(1/2)"});
    int falses = 0;
    for (int iter = 0; iter < 50; ++iter) {
        auto qq = random_extended(rng, 1);
        auto v = kernel_test(qq, P);
        if (!v.in_kernel && v.witness) {
            ++falses;
            CHECK_FALSE(is_zero(rho_eval_exact(qq, P, *v.witness)));
        }
    }
    CHECK(falses > 0); // random extended polys are almost never multiples of sigma
}

TEST_CASE("agreement: kernel members vanish under rho at random rational points") {
    Rng rng(31);
    auto P = problem(1, {});
    auto member = sigma(P) * random_extended(rng, 1, 2);
    REQUIRE(kernel_test(member, P).in_kernel);
    std::uniform_int_distribution<long> num(0, 50);
    for (int iter = 0; iter < 1000; ++iter) {
        RootPoint t = RootPoint::uniform({make_rational(num(rng), 5)}, 6);
        CHECK(is_zero(rho_eval_exact(member, P, t)));
    }
}
