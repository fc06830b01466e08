#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "ars/equivariance.hpp"
#include "ars/param_fraction.hpp"
#include "ars/stable_iso.hpp"
#include "test_support.hpp"

using namespace ars;
using namespace ars::testing;

using Poly = Polynomial<Rational>;
using R = RElement<Rational>;
using A = AElement<Rational>;
using Ring = DanielewskiRing<Rational>;
using EE = ExtendedElement<Rational>;

namespace {

VarsPtr xyz() { return VariableSet::make({"X", "Y", "Z"}); }

template <typename K>
HRingPtr<K> r0_over() {
    auto v = xyz();
    using P = Polynomial<K>;
    P f = P::variable(v, 0).pow(2) + P::variable(v, 1).pow(3) + P::variable(v, 2).pow(7);
    return HypersurfaceRing<K>::make(v, f, 0);
}

HRingPtr<Rational> r0() { return r0_over<Rational>(); }

template <typename K>
ARingPtr<K> a_pair(const RElement<K>& r, const RElement<K>& s) {
    return DanielewskiRing<K>::make(r, s);
}

template <typename K>
ARingPtr<K> a_mn(const HRingPtr<K>& base, unsigned m, unsigned n) {
    return DanielewskiRing<K>::make(base->nf(base->var_class(0).representative().pow(m)),
                                    base->nf(base->var_class(1).representative().pow(n)));
}

A random_a(Rng& rng, const ARingPtr<Rational>& ring, int uv_deg, int base_deg, int terms = 4) {
    Ring::TermMap raw;
    int n = random_int(rng, 0, terms);
    for (int t = 0; t < n; ++t) {
        Ring::Key k{random_int(rng, 0, uv_deg), random_int(rng, 0, uv_deg)};
        R c = ring->base()->nf(random_poly(rng, ring->base()->vars(), base_deg, 2));
        A::add_into(raw, k, c);
    }
    return ring->normalize(std::move(raw));
}

EE random_ext(Rng& rng, const ARingPtr<Rational>& ring, int t_deg, int uv_deg, int base_deg) {
    EE out = EE::zero(ring);
    for (int d = 0; d <= t_deg; ++d)
        out = out + EE::variable_T(ring).pow(static_cast<unsigned>(d))
                        .scaled_A(random_a(rng, ring, uv_deg, base_deg, 3));
    return out;
}

// The endomorphism extended to the T-adjoined ring by T -> T.
template <typename K>
ExtendedMap<K> extend_endomorphism(const Endomorphism<K>& phi) {
    using E = ExtendedElement<K>;
    if (!phi.fixes_base()) throw MathError("only base-fixing endomorphisms extend coefficientwise");
    return ExtendedMap<K>{phi.source(), phi.target(), E::from_A(phi.image_u()),
                          E::from_A(phi.image_v()), E::variable_T(phi.target()),
                          ExtendedMap<K>::default_term_ceiling};
}

} // namespace

TEST_CASE("extended elements form a ring over A") {
    Rng rng(20260821u);
    auto base = r0();
    auto ring = a_mn(base, 1, 1);
    R y = base->var_class(1);

    EE t = EE::variable_T(ring);
    EE u = EE::from_A(ring->u());
    EE one = EE::one(ring);

    CHECK(EE::zero(ring).is_zero());
    CHECK(EE::zero(ring).degree() == -1);
    CHECK(t.degree() == 1);
    CHECK(one.degree() == 0);
    CHECK((t * t + u).degree() == 2);
    CHECK(t.coefficient(1) == ring->one());
    CHECK(t.coefficient(0).is_zero());
    CHECK(t.term_count() == 1);

    SUBCASE("binomial identity (T + u)^2 = T^2 + 2uT + u^2") {
        EE lhs = (t + u).pow(2);
        EE rhs = t * t + t.scaled_A(ring->u() + ring->u()) + u * u;
        CHECK(lhs == rhs);
    }

    SUBCASE("coefficients stay canonical: the base relation collapses in a T-coefficient") {
        // x^2 + y^3 + z^7 = 0, so (y^3 + x^2 + z^7) T must vanish.
        R x = base->var_class(0), z = base->var_class(2);
        EE lhs = t.scaled_A(ring->from_base(y * y * y + x * x + z.pow(7)));
        CHECK(lhs.is_zero());
    }

    SUBCASE("randomized ring axioms") {
        for (int i = 0; i < 20; ++i) {
            EE f = random_ext(rng, ring, 2, 2, 2);
            EE g = random_ext(rng, ring, 2, 2, 2);
            EE h = random_ext(rng, ring, 1, 2, 2);
            CHECK(f + g == g + f);
            CHECK(f * g == g * f);
            CHECK((f + g) * h == f * h + g * h);
            CHECK((f * g) * h == f * (g * h));
            CHECK(f - f == EE::zero(ring));
            CHECK(f + (-f) == EE::zero(ring));
        }
    }

    SUBCASE("elements of different rings do not mix") {
        auto other = a_mn(base, 2, 1);
        CHECK_THROWS_AS((void)(t + EE::variable_T(other)), MathError);
    }
}

TEST_CASE("radical comparison on the known pairs") {
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1), z = base->var_class(2);
    R one = base->one();

    SUBCASE("(x, y) vs (x^2, y): only x needs a square") {
        auto rad = radicals_equal(x, y, x * x, y);
        REQUIRE(rad.has_value());
        CHECK(rad->r_other_in_pair.power == 1); // x^2 in (x, y, F)
        CHECK(rad->s_other_in_pair.power == 1);
        CHECK(rad->r_in_other.power == 2); // x^2 in (x^2, y, F), x itself is not
        CHECK(rad->s_in_other.power == 1);
    }

    SUBCASE("(x, y) vs (x, z): y cubes into (x, z) and z needs the seventh power") {
        auto rad = radicals_equal(x, y, x, z);
        REQUIRE(rad.has_value());
        CHECK(rad->s_in_other.power == 3);      // y^3 = -x^2 - z^7 modulo F
        CHECK(rad->s_other_in_pair.power == 7); // z^7 = -x^2 - y^3 modulo F
        CHECK(rad->r_other_in_pair.power == 1);
        CHECK(rad->r_in_other.power == 1);

        // Oracle for the witness identity: multiply the cofactors back out.
        const auto& wit = rad->s_in_other;
        Poly combo = wit.cofactors[0] * x.representative() + wit.cofactors[1] * z.representative() +
                     wit.cofactors[2] * base->relation();
        CHECK(combo == y.representative().pow(3));
    }

    SUBCASE("(x, y) vs (x(x-1), y): fails in exactly one direction") {
        CHECK_FALSE(radicals_equal(x, y, x * (x - one), y).has_value());
        // The other direction on its own is fine: x(x-1) = (x-1) * x.
        auto wit = radical_power_member(
            (x * (x - one)).representative(),
            {x.representative(), y.representative(), base->relation()}, 16, base->ideal_order());
        REQUIRE(wit.has_value());
        CHECK(wit->power == 1);
    }

    SUBCASE("tight budgets give nullopt, not errors") {
        CHECK_FALSE(radicals_equal(x, y, x, z, 2).has_value());
    }

    SUBCASE("zero elements are rejected") {
        CHECK_THROWS_AS(radicals_equal(x, y, base->zero(), y), InputError);
    }
}

TEST_CASE("unit partitions match the hand-computed ones") {
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1), z = base->var_class(2);
    auto ring = a_mn(base, 1, 1); // A_{x,y}

    SUBCASE("target (x, y): the relation itself") {
        auto rad = radicals_equal(x, y, x, y);
        REQUIRE(rad.has_value());
        auto [a, b] = unit_partition(ring, x, y, rad->r_in_other, rad->s_in_other);
        CHECK(a == ring->u());
        CHECK(b == -ring->v());
    }

    SUBCASE("target (x^2, y): the squared relation, regrouped") {
        auto rad = radicals_equal(x, y, x * x, y);
        REQUIRE(rad.has_value());
        auto [a, b] = unit_partition(ring, x * x, y, rad->r_in_other, rad->s_in_other);
        CHECK(a == ring->u() * ring->u());
        // b = y v^2 - 2x uv
        Ring::TermMap raw;
        A::add_into(raw, Ring::Key{0, 2}, y);
        A::add_into(raw, Ring::Key{1, 1}, -(x + x));
        CHECK(b == ring->normalize(std::move(raw)));
        CHECK(a.scaled_base(x * x) + b.scaled_base(y) == ring->one());
    }

    SUBCASE("target (x, z): cubing the relation works out") {
        auto rad = radicals_equal(x, y, x, z);
        REQUIRE(rad.has_value());
        auto [a, b] = unit_partition(ring, x, z, rad->r_in_other, rad->s_in_other);
        CHECK(a.scaled_base(x) + b.scaled_base(z) == ring->one());
        CHECK(a.degree_u() <= 3); // M = 1 + 3 - 1
        CHECK(b.degree_v() <= 3);
    }

    SUBCASE("a lying witness is caught by the identity check") {
        RadicalWitness<Rational> fake_r{
            1,
            {Poly::constant(base->vars(), Rational(1)), Poly(base->vars()), Poly(base->vars())}};
        RadicalWitness<Rational> honest_s{
            1,
            {Poly(base->vars()), Poly::constant(base->vars(), Rational(1)), Poly(base->vars())}};
        // fake_r claims x = 1 * x^2, which is false.
        CHECK_THROWS_AS((void)unit_partition(ring, x * x, y, fake_r, honest_s),
                        InconsistencyError);
    }

    SUBCASE("malformed witnesses are rejected up front") {
        RadicalWitness<Rational> two_cofactors{1, {Poly(base->vars()), Poly(base->vars())}};
        CHECK_THROWS_AS((void)unit_partition(ring, x, y, two_cofactors, two_cofactors),
                        InputError);
    }
}

TEST_CASE("same-ring stable isomorphism is the shear with negated T") {
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1);

    SUBCASE("A_{x,y}: images in closed form") {
        auto ring = a_mn(base, 1, 1);
        auto cert = build_stable_iso(ring, ring);
        CHECK(cert.relations_verified);
        CHECK(cert.roundtrip_verified);
        CHECK(cert.a == ring->u());
        CHECK(cert.b == -ring->v());
        CHECK(cert.a_other == ring->u());
        CHECK(cert.b_other == -ring->v());

        EE t = EE::variable_T(ring);
        CHECK(cert.forward.image_u == t.scaled_A(ring->from_base(y)) + EE::from_A(ring->u()));
        CHECK(cert.forward.image_v == t.scaled_A(ring->from_base(x)) + EE::from_A(ring->v()));
        CHECK(cert.forward.image_T == -t);
        CHECK(cert.backward.image_T == -t);
        CHECK(verify_stable_iso(cert));
    }

    SUBCASE("A_{x^2,y^3}: generic same-ring pair") {
        auto ring = a_mn(base, 2, 3);
        auto cert = build_stable_iso(ring, ring);
        CHECK(cert.relations_verified);
        CHECK(cert.roundtrip_verified);
        CHECK(verify_stable_iso(cert));
    }
}

TEST_CASE("the pair (x, y) and (x^2, y)") {
    Rng rng(97531u);
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1);
    auto src = a_mn(base, 1, 1);
    auto tgt = a_mn(base, 2, 1);
    auto cert = build_stable_iso(src, tgt);

    SUBCASE("the partition in the target is a' = x u', b' = -v'") {
        CHECK(cert.a_other == tgt->u().scaled_base(x));
        CHECK(cert.b_other == -tgt->v());
        CHECK(cert.a == src->u() * src->u());
    }

    SUBCASE("generator images match the closed form") {
        EE tp = EE::variable_T(tgt);
        CHECK(cert.forward.image_u == tp.scaled_A(tgt->from_base(y)) +
                                          EE::from_A(tgt->u().scaled_base(x)));
        CHECK(cert.forward.image_v == tp.scaled_A(tgt->from_base(x)) + EE::from_A(tgt->v()));
        // Relation image x*Theta(u) - y*Theta(v) - 1 recomputed by hand.
        EE rel = cert.forward.image_u.scaled_A(tgt->from_base(x)) -
                 cert.forward.image_v.scaled_A(tgt->from_base(y)) - EE::one(tgt);
        CHECK(rel.is_zero());
        CHECK(verify_stable_iso(cert));
    }

    SUBCASE("roundtrip and homomorphism property on random elements") {
        for (int i = 0; i < 8; ++i) {
            EE h = random_ext(rng, src, 2, 2, 2);
            EE g = random_ext(rng, src, 1, 2, 2);
            EE fh = cert.forward(h);
            CHECK(cert.backward(fh) == h);
            CHECK(cert.forward(h + g) == fh + cert.forward(g));
            CHECK(cert.forward(h * g) == fh * cert.forward(g));
            // Base linearity: c * H maps to c * Theta(H) for base c.
            R c = base->nf(random_poly(rng, base->vars(), 3, 2));
            CHECK(cert.forward(h.scaled_A(src->from_base(c))) ==
                  fh.scaled_A(tgt->from_base(c)));
        }
    }
}

TEST_CASE("the pair (x, y) and (x, z)") {
    Rng rng(86420u);
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1), z = base->var_class(2);
    auto src = a_mn(base, 1, 1);
    auto tgt = a_pair(x, z);
    auto cert = build_stable_iso(src, tgt);

    CHECK(cert.relations_verified);
    CHECK(cert.roundtrip_verified);
    CHECK(cert.radicals.s_in_other.power == 3);
    CHECK(cert.radicals.s_other_in_pair.power == 7);
    CHECK(cert.a.scaled_base(x) + cert.b.scaled_base(z) == src->one());
    CHECK(cert.a_other.scaled_base(x) + cert.b_other.scaled_base(y) == tgt->one());
    CHECK(verify_stable_iso(cert));

    EE h = random_ext(rng, src, 1, 1, 1);
    CHECK(cert.backward(cert.forward(h)) == h);
}

TEST_CASE("grid pairs (x^m, y^n) to (x^m', y^n')") {
    auto base = r0();
    struct P4 {
        unsigned m, n, mp, np;
    };
    for (P4 c : {P4{1, 1, 2, 2}, P4{2, 1, 1, 2}, P4{2, 2, 2, 2}}) {
        CAPTURE(c.m);
        CAPTURE(c.n);
        CAPTURE(c.mp);
        CAPTURE(c.np);
        auto src = a_mn(base, c.m, c.n);
        auto tgt = a_mn(base, c.mp, c.np);
        auto cert = build_stable_iso(src, tgt);
        CHECK(cert.relations_verified);
        CHECK(cert.roundtrip_verified);
        CHECK(verify_stable_iso(cert));
    }
}

TEST_CASE("the section-4 pair is stably isomorphic") {
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1);
    R one = base->one();
    auto src = a_pair(x * (x - one), y);
    auto tgt = a_pair(x * x * (x - one), y);
    auto cert = build_stable_iso(src, tgt);

    CHECK(cert.radicals.r_other_in_pair.power == 1); // x^2(x-1) = x * (x(x-1))
    CHECK(cert.radicals.r_in_other.power == 2);      // (x(x-1))^2 = (x-1) * x^2(x-1)
    CHECK(cert.radicals.s_other_in_pair.power == 1);
    CHECK(cert.radicals.s_in_other.power == 1);
    CHECK(cert.relations_verified);
    CHECK(cert.roundtrip_verified);
    CHECK(cert.a.scaled_base(tgt->r()) + cert.b.scaled_base(tgt->s()) == src->one());
    CHECK(verify_stable_iso(cert));
}

TEST_CASE("budget and ceiling failures") {
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1), z = base->var_class(2);

    SUBCASE("radical power budget too small") {
        auto src = a_mn(base, 1, 1);
        auto tgt = a_pair(x, z);
        CHECK_THROWS_AS((void)build_stable_iso(src, tgt, 2), BudgetError);
    }

    SUBCASE("radicals that differ exhaust the budget") {
        R one = base->one();
        auto src = a_mn(base, 1, 1);
        auto tgt = a_pair(x * (x - one), y);
        CHECK_THROWS_AS((void)build_stable_iso(src, tgt), BudgetError);
    }

    SUBCASE("term ceiling aborts the construction") {
        auto src = a_mn(base, 1, 1);
        auto tgt = a_mn(base, 2, 1);
        CHECK_THROWS_AS((void)build_stable_iso(src, tgt, 16, 2), BudgetError);
    }

    SUBCASE("different base rings do not compare") {
        auto other_vars = xyz();
        Poly g = Poly::variable(other_vars, 0) * Poly::variable(other_vars, 1) -
                 Poly::variable(other_vars, 2);
        auto other_base = HypersurfaceRing<Rational>::make(other_vars, g, 2);
        auto src = a_mn(base, 1, 1);
        auto tgt = a_mn(other_base, 1, 1);
        CHECK_THROWS_AS((void)build_stable_iso(src, tgt), MathError);
    }
}

TEST_CASE("certificates are self-checking") {
    auto base = r0();
    auto src = a_mn(base, 1, 1);
    auto tgt = a_mn(base, 2, 1);
    auto cert = build_stable_iso(src, tgt);
    REQUIRE(verify_stable_iso(cert));

    SUBCASE("tampered partition") {
        auto bad = cert;
        bad.a = bad.a + src->one();
        CHECK_FALSE(verify_stable_iso(bad));
    }

    SUBCASE("tampered generator image") {
        auto bad = cert;
        bad.forward.image_u = bad.forward.image_u + EE::one(tgt);
        CHECK_FALSE(verify_stable_iso(bad));
    }

    SUBCASE("tampered image of T") {
        auto bad = cert;
        bad.backward.image_T = -bad.backward.image_T;
        CHECK_FALSE(verify_stable_iso(bad));
    }

    SUBCASE("tampered radical exponent") {
        auto bad = cert;
        bad.radicals.r_in_other.power += 1;
        CHECK_FALSE(verify_stable_iso(bad));
    }

    SUBCASE("flags are honored") {
        auto bad = cert;
        bad.roundtrip_verified = false;
        CHECK_FALSE(verify_stable_iso(bad));
    }

    SUBCASE("certificates mixing rings fail instead of throwing") {
        auto bad = cert;
        bad.a = tgt->u(); // element of the wrong ring
        CHECK_FALSE(verify_stable_iso(bad));
    }
}

TEST_CASE("translation by exp(zE') composes with the stable isomorphism") {
    auto base = r0();
    R x = base->var_class(0), y = base->var_class(1), z = base->var_class(2);
    auto src = a_mn(base, 1, 1);
    auto tgt = a_mn(base, 2, 1);
    auto cert = build_stable_iso(src, tgt);

    auto te = canonical_E(tgt).scaled_base(z);
    auto nil = certify_locally_nilpotent(te);
    REQUIRE(nil.has_value());
    auto nil_inv = certify_locally_nilpotent(-te);
    REQUIRE(nil_inv.has_value());
    auto psi = extend_endomorphism(exp_derivation(te, *nil));
    auto psi_inv = extend_endomorphism(exp_derivation(-te, *nil_inv));

    auto comp = [&](const EE& h) { return cert.backward(psi(cert.forward(h))); };
    auto comp_inv = [&](const EE& h) { return cert.backward(psi_inv(cert.forward(h))); };

    EE gu = EE::from_A(src->u());
    EE gv = EE::from_A(src->v());
    EE gt = EE::variable_T(src);

    // The composite is an automorphism of the T-extended source ring: it
    // annihilates the defining relation and undoes against its inverse.
    EE rel = comp(gu).scaled_A(src->from_base(x)) - comp(gv).scaled_A(src->from_base(y)) -
             EE::one(src);
    CHECK(rel.is_zero());
    CHECK_FALSE(comp(gu) == gu); // the translation genuinely moves u
    CHECK(comp_inv(comp(gu)) == gu);
    CHECK(comp_inv(comp(gv)) == gv);
    CHECK(comp_inv(comp(gt)) == gt);
}

TEST_CASE("stable isomorphism over the parameter field") {
    using PF = ParamFraction;
    auto base = r0_over<PF>();
    auto src = a_mn(base, 1, 1);
    auto tgt = a_mn(base, 2, 1);
    auto cert = build_stable_iso(src, tgt);
    CHECK(cert.relations_verified);
    CHECK(cert.roundtrip_verified);
    CHECK(verify_stable_iso(cert));
}

TEST_CASE("the Laurent model reports") {
    SUBCASE("the three benchmark parameter tuples verify") {
        for (auto [p, q, m, n] : {std::array<unsigned, 4>{1, 1, 1, 1},
                                  std::array<unsigned, 4>{2, 3, 1, 2},
                                  std::array<unsigned, 4>{1, 2, 2, 1}}) {
            CAPTURE(p);
            CAPTURE(q);
            auto rep = ss1_map_check(p, q, m, n);
            CHECK(rep.base_relation_vanishes);
            CHECK(rep.defining_relation_vanishes);
            CHECK(rep.x_image_is_x);
            CHECK(rep.verified());
            CHECK(rep.p == p);
            CHECK(rep.n == n);
            CHECK(rep.open_item.find("surjectivity") != std::string::npos);
        }
    }

    SUBCASE("zero exponents are rejected") {
        CHECK_THROWS_AS((void)ss1_map_check(0, 1, 1, 1), InputError);
        CHECK_THROWS_AS((void)ss1_map_check(1, 1, 1, 0), InputError);
    }
}
