#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ars/hypersurface.hpp"
#include "test_support.hpp"

using namespace ars;
using namespace ars::testing;

using Poly = Polynomial<Rational>;
using R = RElement<Rational>;

namespace {

VarsPtr xyz() { return VariableSet::make({"X", "Y", "Z"}); }

Poly var(const VarsPtr& v, size_t i) { return Poly::variable(v, i); }
Poly konst(const VarsPtr& v, long c) { return Poly::constant(v, Rational(c)); }

Poly f0_poly(const VarsPtr& v) {
    return var(v, 0).pow(2) + var(v, 1).pow(3) + var(v, 2).pow(7);
}

// R0 = Q[X,Y,Z]/(X^2+Y^3+Z^7), designated variable X
HRingPtr<Rational> r0() {
    auto v = xyz();
    return HypersurfaceRing<Rational>::make(v, f0_poly(v), 0);
}

} // namespace

TEST_CASE("hypersurface ring: construction guards") {
    auto v = xyz();
    CHECK_THROWS_AS(HypersurfaceRing<Rational>::make(v, konst(v, 5), 0), InputError);
    // X^2*Y + Y^3: the X^2 coefficient is Y, not a scalar
    CHECK_THROWS_AS(
        HypersurfaceRing<Rational>::make(v, var(v, 0).pow(2) * var(v, 1) + var(v, 1).pow(3), 0),
        InputError);
    // no X at all while X is designated
    CHECK_THROWS_AS(HypersurfaceRing<Rational>::make(v, var(v, 1).pow(3), 0), InputError);
    CHECK_THROWS_AS(HypersurfaceRing<Rational>::make(v, f0_poly(v), 9), InputError);
    auto lv = VariableSet::make({"X", "Y"}, 0);
    CHECK_THROWS_AS(HypersurfaceRing<Rational>::make(
                        lv, Poly::variable(lv, 0) + Poly::variable(lv, 1), 0),
                    InputError);
    // scalar leading coefficient other than 1 is fine
    auto ok = HypersurfaceRing<Rational>::make(v, f0_poly(v).scaled(Rational(-3)), 0);
    CHECK(ok->w_degree() == 2);
}

TEST_CASE("nf_R: examples in R0") {
    auto ring = r0();
    auto v = ring->vars();
    Poly X = var(v, 0), Y = var(v, 1), Z = var(v, 2);

    CHECK(ring->nf(X.pow(2)).representative() == -(Y.pow(3) + Z.pow(7)));
    CHECK(ring->nf(X.pow(3)).representative() == -(X * Y.pow(3) + X * Z.pow(7)));
    CHECK(ring->nf(Y.pow(5)).representative() == Y.pow(5));

    // idempotence on the examples
    CHECK(ring->nf(ring->nf(X.pow(3)).representative()) == ring->nf(X.pow(3)));
}

TEST_CASE("r_arith: examples in R0") {
    auto ring = r0();
    auto v = ring->vars();
    R x = ring->var_class(0), y = ring->var_class(1), z = ring->var_class(2);

    CHECK((x * x).representative() == -(var(v, 1).pow(3) + var(v, 2).pow(7)));
    CHECK((x + (-x)).is_zero());
    R y3z7 = y.pow(3) + z.pow(7);
    CHECK(y3z7 * ring->one() == y3z7);
    CHECK(x * x == -y3z7);
}

TEST_CASE("nf_R is a ring homomorphism, idempotent, on random polynomials") {
    Rng rng(112358);
    auto ring = r0();
    auto v = ring->vars();
    for (int round = 0; round < 200; ++round) {
        Poly p = random_poly(rng, v, 5, 3), q = random_poly(rng, v, 5, 3);
        CHECK(ring->nf(p * q) == ring->nf(p) * ring->nf(q));
        CHECK(ring->nf(p + q) == ring->nf(p) + ring->nf(q));
        CHECK(ring->nf(ring->nf(p).representative()) == ring->nf(p));
        CHECK(ring->nf(p).representative().degree_in(0) < 2);
    }
}

TEST_CASE("divides_in_R: examples and re-verification") {
    auto ring = r0();
    R x = ring->var_class(0), y = ring->var_class(1), z = ring->var_class(2);

    SUBCASE("x divides x*y") {
        auto q = divides_in_R(x, x * y);
        REQUIRE(q);
        CHECK(*q == y);
    }

    SUBCASE("x does not divide y") {
        CHECK(!divides_in_R(x, y));
    }

    SUBCASE("x divides y^3+z^7 with quotient -x") {
        auto q = divides_in_R(x, y.pow(3) + z.pow(7));
        REQUIRE(q);
        CHECK(*q == -x);
    }

    SUBCASE("division by zero is an error") {
        CHECK_THROWS_AS(divides_in_R(ring->zero(), x), MathError);
        CHECK(divides_in_R(x, ring->zero()).has_value());
    }
}

TEST_CASE("divides_in_R: random divisibility instances verify") {
    Rng rng(987654);
    auto ring = r0();
    for (int round = 0; round < 60; ++round) {
        R a = ring->nf(random_nonzero_poly(rng, ring->vars(), 3, 2));
        R c = ring->nf(random_poly(rng, ring->vars(), 3, 2));
        R b = a * c;
        auto q = divides_in_R(a, b);
        REQUIRE(q);
        REQUIRE(a * *q == b); // the quotient need not equal c (zero divisors
                              // are absent, so actually it must — check both)
        REQUIRE(*q == c);
    }
}

TEST_CASE("height2_check: examples") {
    auto ring = r0();
    R x = ring->var_class(0), y = ring->var_class(1), z = ring->var_class(2);

    CHECK(height2_check(x, y));
    CHECK(!height2_check(x, x));
    CHECK(!height2_check(ring->one(), y));
    // y^3+z^7 = -x^2 in R0, so (x, y^3+z^7) = (x): height 1
    CHECK(!height2_check(x, y.pow(3) + z.pow(7)));
    CHECK(height2_check(x * (x - ring->one()), y));
    CHECK_THROWS_AS(height2_check(ring->zero(), y), MathError);

    for (unsigned m = 1; m <= 3; ++m)
        for (unsigned n = 1; n <= 3; ++n) CHECK(height2_check(x.pow(m), y.pow(n)));
}
