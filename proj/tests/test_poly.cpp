#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ars/param_fraction.hpp"
#include "ars/polynomial.hpp"
#include "ars/rational.hpp"
#include "ars/variables.hpp"
#include "test_support.hpp"

using namespace ars;
using namespace ars::testing;

using Poly = Polynomial<Rational>;

namespace {

VarsPtr xyz() { return VariableSet::make({"X", "Y", "Z"}); }

Poly var(const VarsPtr& v, size_t i) { return Poly::variable(v, i); }

Poly konst(const VarsPtr& v, long c) { return Poly::constant(v, Rational(c)); }

// F0 = X^2 + Y^3 + Z^7, the running hypersurface example.
Poly f0(const VarsPtr& v) {
    return var(v, 0).pow(2) + var(v, 1).pow(3) + var(v, 2).pow(7);
}

} // namespace

TEST_CASE("rational: exact field arithmetic") {
    Rational a(3, 6);
    CHECK(a == Rational(1, 2));
    CHECK((a + a).is_one());
    CHECK((a - a).is_zero());
    CHECK(a * Rational(2) == Rational(1));
    CHECK(a.inverse() == Rational(2));
    CHECK((-a).sign() == -1);
    CHECK(Rational::parse("-22/7") == Rational(-22, 7));
    CHECK(Rational::factorial(6) == Rational(720));
    CHECK_THROWS_AS(Rational().inverse(), MathError);
    CHECK_THROWS_AS(Rational(1, 0), MathError);
}

TEST_CASE("poly: arithmetic examples") {
    auto v = xyz();
    Poly X = var(v, 0), Y = var(v, 1);

    CHECK((X + Y) + (X - Y) == konst(v, 2) * X);
    CHECK((X + Y) * (X - Y) == X.pow(2) - Y.pow(2));
    CHECK(f0(v) * konst(v, 1) == f0(v));

    // canonicity: cancellation leaves no zero terms behind
    CHECK((X - X).is_zero());
    CHECK((X - X).term_count() == 0);
}

TEST_CASE("poly: mismatched variable lists are rejected") {
    auto v = xyz();
    auto w = VariableSet::make({"X", "Y"});
    CHECK_THROWS_AS(var(v, 0) + var(w, 0), MathError);
    CHECK_THROWS_AS(var(v, 0) * var(w, 1), MathError);
}

TEST_CASE("poly: formal derivative") {
    auto v = xyz();
    Poly X = var(v, 0), Y = var(v, 1);

    CHECK(f0(v).derivative(0) == konst(v, 2) * X);
    CHECK(f0(v).derivative(1) == konst(v, 3) * Y.pow(2));
    CHECK(X.derivative(2).is_zero());
    CHECK_THROWS_AS(X.derivative(7), MathError);
}

TEST_CASE("poly: substitution") {
    auto v = xyz();
    Poly X = var(v, 0), Y = var(v, 1), Z = var(v, 2);

    SUBCASE("identity map fixes F0") {
        CHECK(f0(v).substitute({X, Y, Z}, v) == f0(v));
    }

    SUBCASE("evaluation at X = 0") {
        CHECK(f0(v).substitute({konst(v, 0), Y, Z}, v) == Y.pow(3) + Z.pow(7));
    }

    SUBCASE("Laurent target: X -> X, Y -> Z*X^-1 kills XY - Z") {
        auto lv = VariableSet::make({"X", "Z"}, /*laurent_index=*/0);
        Poly lX = Poly::variable(lv, 0), lZ = Poly::variable(lv, 1);
        Poly x_inv = Poly::term(lv, Monomial({-1, 0}), Rational(1));
        // source ring k[X,Y,Z]; only X and Y occur in the input
        Poly input = X * Y - Z;
        Poly image = input.substitute({lX, lZ * x_inv, lZ}, lv);
        CHECK(image.is_zero());
    }

    SUBCASE("missing image / mixed targets are rejected") {
        CHECK_THROWS_AS(f0(v).substitute({X, Y}, v), MathError);
        auto w = VariableSet::make({"X", "Y"});
        CHECK_THROWS_AS(f0(v).substitute({X, Y, Poly::variable(w, 0)}, v), MathError);
    }
}

TEST_CASE("poly: negative exponents only in the Laurent slot") {
    auto lv = VariableSet::make({"X", "Z"}, 0);
    CHECK_NOTHROW(Poly::term(lv, Monomial({-3, 2}), Rational(1)));
    CHECK_THROWS_AS(Poly::term(lv, Monomial({1, -1}), Rational(1)), MathError);
    auto pv = VariableSet::make({"X", "Z"});
    CHECK_THROWS_AS(Poly::term(pv, Monomial({-1, 0}), Rational(1)), MathError);
}

TEST_CASE("poly: ring axioms on random triples") {
    Rng rng(20260821);
    auto v = xyz();
    for (int round = 0; round < 1000; ++round) {
        Poly a = random_poly(rng, v), b = random_poly(rng, v), c = random_poly(rng, v);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE(a + b == b + a);
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * b == b * a);
        REQUIRE(a * (b + c) == a * b + a * c);
        REQUIRE((a - b) + b == a);
    }
}

TEST_CASE("poly: Leibniz identity on random pairs") {
    Rng rng(424242);
    auto v = xyz();
    for (int round = 0; round < 300; ++round) {
        Poly a = random_poly(rng, v), b = random_poly(rng, v);
        size_t var_index = static_cast<size_t>(random_int(rng, 0, 2));
        REQUIRE((a * b).derivative(var_index) ==
                a * b.derivative(var_index) + b * a.derivative(var_index));
    }
}

TEST_CASE("poly: substitution is a ring homomorphism") {
    Rng rng(777);
    auto v = xyz();
    auto w = VariableSet::make({"S", "T"});
    for (int round = 0; round < 200; ++round) {
        std::vector<Poly> images;
        for (int i = 0; i < 3; ++i) images.push_back(random_poly(rng, w, 3, 2));
        Poly a = random_poly(rng, v, 4, 2), b = random_poly(rng, v, 4, 2);
        REQUIRE((a + b).substitute(images, w) ==
                a.substitute(images, w) + b.substitute(images, w));
        REQUIRE((a * b).substitute(images, w) ==
                a.substitute(images, w) * b.substitute(images, w));
    }
}

TEST_CASE("param fraction: construction and normal form") {
    // t / (2t) == 1/2 after monomial cancellation and content normalization
    ParamPoly t = ParamPoly::parameter(0);
    ParamFraction f(t, t + t);
    CHECK(f == ParamFraction::from_rational(Rational(1, 2)));
    CHECK(f.as_rational().has_value());
    CHECK(*f.as_rational() == Rational(1, 2));

    // denominator is content-normalized with positive leading sign
    ParamFraction g(ParamPoly::constant(Rational(1)), -(t * t).scaled(Rational(4)));
    CHECK(g.denominator().leading_sign() == 1);
    CHECK(g.denominator().content().is_one());

    CHECK_THROWS_AS(ParamFraction(t, ParamPoly()), MathError);
    CHECK_THROWS_AS(ParamFraction::zero().inverse(), MathError);
}

TEST_CASE("param fraction: cross-multiplication equality is a congruence") {
    Rng rng(909090);
    for (int round = 0; round < 300; ++round) {
        ParamFraction a = random_param_fraction(rng, 2);
        ParamFraction b = random_param_fraction(rng, 2);
        ParamPoly p = random_nonzero_param_poly(rng, 2);

        // a' = (num*p)/(den*p) represents the same element
        ParamFraction a2(a.numerator() * p, a.denominator() * p);
        REQUIRE(a == a);
        REQUIRE(a == a2);
        REQUIRE(a2 == a);
        REQUIRE(a + b == a2 + b);
        REQUIRE(a * b == a2 * b);
        REQUIRE(a - a2 == ParamFraction::zero());
        if (!a.is_zero()) REQUIRE(a * a.inverse() == ParamFraction::one());
    }
}

TEST_CASE("param fraction: field axioms on random triples") {
    Rng rng(13579);
    for (int round = 0; round < 300; ++round) {
        ParamFraction a = random_param_fraction(rng, 2);
        ParamFraction b = random_param_fraction(rng, 2);
        ParamFraction c = random_param_fraction(rng, 2);
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("param fraction: evaluation commutes with arithmetic") {
    Rng rng(24680);
    std::vector<Rational> point = {Rational(2), Rational(-3)};
    for (int round = 0; round < 200; ++round) {
        ParamFraction a = random_param_fraction(rng, 2);
        ParamFraction b = random_param_fraction(rng, 2);
        Rational da = a.denominator().evaluate(point);
        Rational db = b.denominator().evaluate(point);
        if (da.is_zero() || db.is_zero()) continue;
        auto ab = (a * b).evaluate(point);
        REQUIRE(*ab.as_rational() == *a.evaluate(point).as_rational() *
                                         *b.evaluate(point).as_rational());
    }
}
