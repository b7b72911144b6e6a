#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <mpfr.h>

#include <numbers>

#include "polyred/numroots.hpp"
#include "polyred/parser.hpp"
#include "support.hpp"

using namespace polyred;
using polyred::testing::Gen;
using polyred::testing::multiset_distance;

namespace {
Polynomial P(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Polynomial(std::move(v));
}

std::vector<Complex> values(const std::vector<ComplexRoot>& roots) {
    std::vector<Complex> out;
    for (const auto& r : roots) out.push_back(r.value);
    return out;
}

/// Eigenvalues of the companion matrix in long double.
std::vector<Complex> companion_roots(const Polynomial& f) {
    int n = f.degree();
    Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> m =
        Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    long double lead = f.leading().to_double();
    for (int i = 1; i < n; ++i) m(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) m(i, n - 1) = -static_cast<long double>(f.coeff(static_cast<std::size_t>(i)).to_double()) / lead;
    Eigen::EigenSolver<decltype(m)> es(m, false);
    std::vector<Complex> out;
    for (int i = 0; i < n; ++i) {
        auto v = es.eigenvalues()(i);
        out.emplace_back(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
    return out;
}

/// Real roots of a x^2 + b x + c at 256 bits by the textbook formula.
std::pair<double, double> mpfr_real_quadratic(const Rational& a, const Rational& b, const Rational& c) {
    mpfr_t A, B, C, D, T, r1, r2;
    for (auto* v : {&A, &B, &C, &D, &T, &r1, &r2}) mpfr_init2(*v, 256);
    mpfr_set_q(A, a.value().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(B, b.value().get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(C, c.value().get_mpq_t(), MPFR_RNDN);
    mpfr_mul(D, B, B, MPFR_RNDN);
    mpfr_mul(T, A, C, MPFR_RNDN);
    mpfr_mul_ui(T, T, 4, MPFR_RNDN);
    mpfr_sub(D, D, T, MPFR_RNDN);
    mpfr_sqrt(D, D, MPFR_RNDN);
    mpfr_mul_ui(T, A, 2, MPFR_RNDN);
    mpfr_neg(r1, B, MPFR_RNDN);
    mpfr_add(r1, r1, D, MPFR_RNDN);
    mpfr_div(r1, r1, T, MPFR_RNDN);
    mpfr_neg(r2, B, MPFR_RNDN);
    mpfr_sub(r2, r2, D, MPFR_RNDN);
    mpfr_div(r2, r2, T, MPFR_RNDN);
    std::pair<double, double> out{mpfr_get_d(r1, MPFR_RNDN), mpfr_get_d(r2, MPFR_RNDN)};
    for (auto* v : {&A, &B, &C, &D, &T, &r1, &r2}) mpfr_clear(*v);
    return out;
}

std::vector<Complex> fifth_roots(bool include_one) {
    std::vector<Complex> out;
    for (int k = include_one ? 0 : 1; k < 5; ++k) out.push_back(std::polar(1.0, 2 * std::numbers::pi * k / 5));
    return out;
}
}  // namespace

TEST_CASE("solve_quadratic") {
    auto r = solve_quadratic(Rational(1), Rational(-5), Rational(4));
    CHECK(multiset_distance(values(r), {1.0, 4.0}) == 0.0);
    for (const auto& x : r) CHECK(x.exact.has_value());

    auto i = solve_quadratic(Rational(1), Rational(0), Rational(1));
    CHECK(multiset_distance(values(i), {Complex(0, 1), Complex(0, -1)}) < 1e-15);

    Rational big = Rational(100000000) + Rational(1, 100000000);
    auto w = solve_quadratic(Rational(1), -big, Rational(1));
    auto [o1, o2] = mpfr_real_quadratic(Rational(1), -big, Rational(1));
    std::vector<double> got{w[0].value.real(), w[1].value.real()};
    std::sort(got.begin(), got.end());
    double lo = std::min(o1, o2), hi = std::max(o1, o2);
    CHECK(std::abs(got[0] - lo) <= 1e-15 * lo);
    CHECK(std::abs(got[1] - hi) <= 1e-15 * hi);
    CHECK(lo == doctest::Approx(1e-8).epsilon(1e-12));
}

TEST_CASE("solve_quadratic agrees with a 256-bit oracle on random real cases") {
    Gen gen(51);
    for (int i = 0; i < 300; ++i) {
        auto a = gen.rational(1000, true), b = gen.rational(100000), c = gen.rational(1000);
        if (b * b - Rational(4) * a * c < Rational(0)) continue;
        auto [o1, o2] = mpfr_real_quadratic(a, b, c);
        auto r = solve_quadratic(a, b, c);
        CHECK(multiset_distance(values(r), {o1, o2}) <= 4e-16 * std::max({1.0, std::abs(o1), std::abs(o2)}) +
                                                              1e-15 * std::min(std::abs(o1), std::abs(o2)));
    }
}

TEST_CASE("solve_core examples") {
    auto a = solve_core(P({4, -5, 1}));
    CHECK(multiset_distance(values(a), {1.0, 4.0}) < 1e-14);
    auto b = solve_core(P({-1, 1, 1}));
    CHECK(multiset_distance(values(b), {0.6180339887498949, -1.618033988749895}) < 1e-14);
    auto c = solve_core(P({-1, 0, 0, 0, 0, 1}));
    CHECK(multiset_distance(values(c), fifth_roots(true)) < 1e-13);
    for (const auto& r : c) CHECK(r.residual <= kDefaultTolerance);
}

TEST_CASE("solve_core handles multiple roots") {
    // A double root is resolved to about sqrt(eps), well inside the cluster radius.
    auto f = pow(P({-1, 1}), 2) * P({2, 1});
    auto r = solve_core(f);
    CHECK(r.size() == 3);
    for (const auto& x : r) CHECK(x.residual <= kDefaultTolerance);
    estimate_multiplicities(r);
    int doubles = 0;
    for (const auto& x : r) doubles += x.multiplicity == 2;
    CHECK(doubles == 2);
}

TEST_CASE("solve_core agrees with companion eigenvalues") {
    Gen gen(52);
    for (int i = 0; i < 100; ++i) {
        auto f = gen.poly(static_cast<int>(gen.integer(3, 10)));
        if (f.coeff(0).is_zero()) continue;
        auto ours = values(solve_core(f));
        auto ref = companion_roots(f);
        // Generic random coefficients give simple roots; eigenvalues of a
        // balanced companion matrix are accurate to roughly 1e-9 here.
        CHECK(multiset_distance(ours, ref) < 1e-7 * polyred::testing::scale_of(ref));
    }
}

TEST_CASE("solve_core raises NoConvergence with too few iterations") {
    auto f = P({-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 1});
    CHECK_THROWS_AS(solve_core(f, 1e-10, 1), NoConvergence);
}

TEST_CASE("backmap_roots") {
    std::vector<ComplexRoot> z{{Complex(1), 0, Rational(1)}, {Complex(4), 0, Rational(4)}};
    auto x = backmap_roots(z, backmap::Square{Rational(0)});
    CHECK(multiset_distance(values(x), {1.0, -1.0, 2.0, -2.0}) == 0.0);

    auto q = solve_quadratic(Rational(1), Rational(1), Rational(-1));
    auto m = backmap_roots(q, backmap::MobiusQuad{Rational(1), Rational(1)});
    CHECK(multiset_distance(values(m), fifth_roots(false)) < 1e-14);
    CHECK(multiset_distance(values(m), values(solve_core(P({1, 1, 1, 1, 1})))) < 1e-13);

    std::vector<ComplexRoot> zero{{Complex(0), 0, Rational(0)}};
    auto d = backmap_roots(zero, backmap::Square{Rational(-2)});
    CHECK(values(d) == std::vector<Complex>{-2.0, -2.0});

    CHECK(backmap_roots(z, backmap::Identity{}).size() == 2);
}

TEST_CASE("solve_chain examples") {
    auto r1 = solve_chain(reduce_fully(P({4, 0, -5, 0, 1})));
    CHECK(multiset_distance(values(r1.roots), {1.0, -1.0, 2.0, -2.0}) == 0.0);
    CHECK(r1.max_residual < kDefaultTolerance);

    auto r2 = solve_chain(reduce_fully(P({1, 1, 1, 1, 1})));
    CHECK(multiset_distance(values(r2.roots), fifth_roots(false)) < 1e-12);

    auto f3 = parse_polynomial("(x+1)^3+(x+3)^3+5(2x+4)");
    auto r3 = solve_chain(reduce_fully(f3));
    REQUIRE(r3.roots.size() == 3);
    bool found = false;
    for (const auto& r : r3.roots)
        if (r.exact == Rational(-2)) {
            found = true;
            CHECK(r.residual == 0.0);
            CHECK(r.value == Complex(-2.0));
        }
    CHECK(found);

    auto r4 = solve_chain(reduce_fully(parse_polynomial("(x+1)^4+(x+3)^4-50")));
    CHECK(r4.roots.size() == 4);
    for (const auto& r : r4.roots) CHECK(r.residual < 1e-10);
    CHECK(multiset_distance(values(r4.roots), companion_roots(r4.original)) < 1e-9);
}

TEST_CASE("solve_chain keeps repeated roots") {
    // x^3 is antisymmetric about 0; the quotient x^2 yields a double root.
    auto r = solve_chain(reduce_fully(P({0, 0, 0, 1})));
    CHECK(values(r.roots) == std::vector<Complex>{0.0, 0.0, 0.0});
}

TEST_CASE("pairing under negation and inversion") {
    Gen gen(53);
    for (int i = 0; i < 60; ++i) {
        auto g = gen.poly(static_cast<int>(gen.integer(1, 6)));
        if (g.coeff(0).is_zero()) continue;
        auto even = compose(g, P({0, 0, 1}));
        auto roots = values(solve_chain(reduce_fully(even)).roots);
        std::vector<Complex> negated;
        for (auto z : roots) negated.push_back(-z);
        CHECK(multiset_distance(roots, negated) < 1e-9 * polyred::testing::scale_of(roots));

        auto pal = lift(g, backmap::MobiusQuad{Rational(1), Rational(1)});
        auto proots = values(solve_chain(reduce_fully(pal)).roots);
        std::vector<Complex> inverted;
        for (auto z : proots) inverted.push_back(1.0 / z);
        CHECK(multiset_distance(proots, inverted) < 1e-9 * polyred::testing::scale_of(proots));
    }
}

TEST_CASE("root count and residual bound over random structured inputs") {
    Gen gen(54);
    for (int i = 0; i < 100; ++i) {
        auto g = gen.poly(static_cast<int>(gen.integer(1, 6)));
        auto mu = gen.rational();
        auto f = compose(g, pow(Polynomial{-mu, Rational(1)}, 2));
        auto report = solve_chain(reduce_fully(f));
        CHECK(static_cast<int>(report.roots.size()) == f.degree());
        for (const auto& r : report.roots) CHECK(r.residual <= kDefaultTolerance);
    }
}

TEST_CASE("conversion") {
    auto fc = to_floating(Polynomial{Rational(1, 3), Rational(1)});
    CHECK(fc.poly.coeff(0) == 1.0 / 3.0);
    CHECK(fc.max_relative_error > 0.0);
    CHECK(fc.max_relative_error < 1.2e-16);
    CHECK_THROWS_AS(to_floating(Polynomial{Rational(pow(Rational(10), 400)), Rational(1)}), CoefficientOverflow);
    CHECK(relative_residual(BasicPolynomial<double>{-1.0, 1.0}, Complex(1.0)) == 0.0);
}

TEST_CASE("wide coefficient range does not overflow the starting circle") {
    auto f = parse_polynomial("(1/3(1/3x+10)^4+10)^4-x");
    auto direct = solve_core(f);
    REQUIRE(direct.size() == 16);
    for (const auto& r : direct) {
        CHECK(std::isfinite(r.value.real()));
        CHECK(std::isfinite(r.value.imag()));
        CHECK(r.residual <= kDefaultTolerance);
    }
    auto chain = values(solve_chain(reduce_fully(f)).roots);
    CHECK(multiset_distance(values(direct), chain) < 1e-8 * polyred::testing::scale_of(chain));
}

TEST_CASE("clustered roots of an ill-conditioned input are refined") {
    // Reference values from a 60-digit polynomial root finder.
    auto f = parse_polynomial("(-9/7(-9/7x+3)^4+3)^4-x");
    auto roots = values(solve_core(f));
    for (Complex ref : {Complex(3.3107612099945407, 0.10397478308485505), Complex(3.3107612099945407, -0.10397478308485505),
                        Complex(3.38859575020346, 0.0), Complex(1.296073651452249, 0.0)}) {
        double best = std::numeric_limits<double>::infinity();
        for (auto z : roots) best = std::min(best, std::abs(z - ref));
        CHECK(best < 1e-14);
    }
}
