#ifndef ARS_STABLE_ISO_HPP
#define ARS_STABLE_ISO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ars/danielewski.hpp"
#include "ars/errors.hpp"
#include "ars/groebner.hpp"
#include "ars/hypersurface.hpp"
#include "ars/polynomial.hpp"
#include "ars/rational.hpp"
#include "ars/variables.hpp"

namespace ars {

// Polynomials in one extra variable T with coefficients in A: the working
// home of the stable comparison A[T] versus A'[T']. Coefficients are
// canonical because they are AElements, and zero coefficients are never
// stored, so equality is coefficientwise equality.
template <CoefficientField K>
class ExtendedElement {
  public:
    using CoeffMap = std::map<int32_t, AElement<K>>;

    static ExtendedElement zero(const ARingPtr<K>& ring) { return ExtendedElement(ring, CoeffMap{}); }

    static ExtendedElement one(const ARingPtr<K>& ring) { return from_A(ring->one()); }

    static ExtendedElement variable_T(const ARingPtr<K>& ring) {
        CoeffMap out;
        out.emplace(1, ring->one());
        return ExtendedElement(ring, std::move(out));
    }

    static ExtendedElement from_A(AElement<K> c) {
        ARingPtr<K> ring = c.ring();
        CoeffMap out;
        if (!c.is_zero()) out.emplace(0, std::move(c));
        return ExtendedElement(std::move(ring), std::move(out));
    }

    const ARingPtr<K>& ring() const { return ring_; }
    const CoeffMap& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // -1 for the zero element, by the usual convention.
    int32_t degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

    AElement<K> coefficient(int32_t d) const {
        auto it = coeffs_.find(d);
        return it == coeffs_.end() ? ring_->zero() : it->second;
    }

    size_t term_count() const {
        size_t n = 0;
        for (const auto& [d, c] : coeffs_) n += c.term_count();
        return n;
    }

    ExtendedElement operator-() const {
        CoeffMap out;
        for (const auto& [d, c] : coeffs_) out.emplace(d, -c);
        return ExtendedElement(ring_, std::move(out));
    }

    ExtendedElement operator+(const ExtendedElement& o) const {
        require_same_ring(o);
        CoeffMap out = coeffs_;
        for (const auto& [d, c] : o.coeffs_) add_into(out, d, c);
        return ExtendedElement(ring_, std::move(out));
    }

    ExtendedElement operator-(const ExtendedElement& o) const {
        require_same_ring(o);
        CoeffMap out = coeffs_;
        for (const auto& [d, c] : o.coeffs_) add_into(out, d, -c);
        return ExtendedElement(ring_, std::move(out));
    }

    ExtendedElement operator*(const ExtendedElement& o) const {
        require_same_ring(o);
        CoeffMap out;
        for (const auto& [da, ca] : coeffs_)
            for (const auto& [db, cb] : o.coeffs_) add_into(out, da + db, ca * cb);
        return ExtendedElement(ring_, std::move(out));
    }

    ExtendedElement scaled_A(const AElement<K>& c) const {
        CoeffMap out;
        for (const auto& [d, coeff] : coeffs_) {
            AElement<K> p = coeff * c;
            if (!p.is_zero()) out.emplace(d, std::move(p));
        }
        return ExtendedElement(ring_, std::move(out));
    }

    ExtendedElement pow(unsigned e) const {
        ExtendedElement acc = one(ring_);
        ExtendedElement b = *this;
        while (e > 0) {
            if (e & 1u) acc = acc * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return acc;
    }

    bool operator==(const ExtendedElement& o) const {
        return ring_->same_structure(*o.ring_) && coeffs_ == o.coeffs_;
    }

    void require_same_ring(const ExtendedElement& o) const {
        if (ring_ == o.ring_) return;
        if (!ring_->same_structure(*o.ring_)) throw MathError("elements of different rings");
    }

  private:
    ExtendedElement(ARingPtr<K> ring, CoeffMap coeffs)
        : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {}

    static void add_into(CoeffMap& map, int32_t d, AElement<K> c) {
        if (c.is_zero()) return;
        auto it = map.find(d);
        if (it == map.end()) {
            map.emplace(d, std::move(c));
        } else {
            AElement<K> sum = it->second + c;
            if (sum.is_zero())
                map.erase(it);
            else
                it->second = std::move(sum);
        }
    }

    ARingPtr<K> ring_;
    CoeffMap coeffs_;
};

// Two-sided radical comparison data: minimal powers and cofactors placing
// each member of one pair inside the ideal generated by the other pair
// together with the base relation F. Cofactors live in the ambient
// polynomial ring and are indexed against the generator order
// (first element, second element, F) of the pair they divide into.
template <CoefficientField K>
struct RadicalData {
    RadicalWitness<K> r_other_in_pair; // r'^N in (r, s, F)
    RadicalWitness<K> s_other_in_pair; // s'^N in (r, s, F)
    RadicalWitness<K> r_in_other;      // r^N  in (r', s', F)
    RadicalWitness<K> s_in_other;      // s^N  in (r', s', F)
};

// Equality of radicals, established constructively by four power-membership
// searches within the given budget. nullopt means "not established within
// the budget", never "proved different". Every witness found is re-verified
// by multiplying out its cofactors before it is returned.
template <CoefficientField K>
std::optional<RadicalData<K>> radicals_equal(const RElement<K>& r, const RElement<K>& s,
                                             const RElement<K>& r_other, const RElement<K>& s_other,
                                             unsigned n_max = 16) {
    r.require_same_ring(s);
    r.require_same_ring(r_other);
    r.require_same_ring(s_other);
    if (r.is_zero() || s.is_zero() || r_other.is_zero() || s_other.is_zero())
        throw InputError("radical comparison requires nonzero elements");
    const auto& base = r.ring();
    const Polynomial<K>& f = base->relation();
    std::vector<Polynomial<K>> pair_gens{r.representative(), s.representative(), f};
    std::vector<Polynomial<K>> other_gens{r_other.representative(), s_other.representative(), f};

    auto check = [&](const RElement<K>& g,
                     const std::vector<Polynomial<K>>& gens) -> std::optional<RadicalWitness<K>> {
        auto wit = radical_power_member(g.representative(), gens, n_max, base->ideal_order());
        if (!wit) return std::nullopt;
        Polynomial<K> combo(base->vars());
        for (size_t i = 0; i < gens.size(); ++i) combo = combo + wit->cofactors[i] * gens[i];
        if (!(combo == g.representative().pow(wit->power)))
            throw InternalError("radical witness failed re-verification");
        return wit;
    };

    auto w1 = check(r_other, pair_gens);
    if (!w1) return std::nullopt;
    auto w2 = check(s_other, pair_gens);
    if (!w2) return std::nullopt;
    auto w3 = check(r, other_gens);
    if (!w3) return std::nullopt;
    auto w4 = check(s, other_gens);
    if (!w4) return std::nullopt;
    return RadicalData<K>{std::move(*w1), std::move(*w2), std::move(*w3), std::move(*w4)};
}

// Partition of unity a*t + b*w = 1 inside A, from expanding 1 = (ru - sv)^M
// and rewriting every surviving power of r or s through the supplied radical
// cofactors. wit_r must witness r^Nr in (t, w, F) and wit_s must witness
// s^Ns in (t, w, F), cofactors indexed in exactly that generator order.
// M = Nr + Ns - 1 is the smallest exponent for which every split i + (M - i)
// has i >= Nr or M - i >= Ns, so each term of the expansion can be rewritten.
// The identity is re-verified in A before returning.
template <CoefficientField K>
std::pair<AElement<K>, AElement<K>> unit_partition(const ARingPtr<K>& A, const RElement<K>& t,
                                                   const RElement<K>& w,
                                                   const RadicalWitness<K>& wit_r,
                                                   const RadicalWitness<K>& wit_s) {
    using Key = typename DanielewskiRing<K>::Key;
    const auto& base = A->base();
    t.require_same_ring(A->r());
    w.require_same_ring(A->r());
    if (wit_r.power == 0 || wit_s.power == 0 || wit_r.cofactors.size() != 3 ||
        wit_s.cofactors.size() != 3)
        throw InputError("malformed radical witnesses");

    const unsigned nr = wit_r.power;
    const unsigned ns = wit_s.power;
    const unsigned M = nr + ns - 1;
    const Polynomial<K>& rp = A->r().representative();
    const Polynomial<K>& sp = A->s().representative();

    std::vector<Polynomial<K>> rpow{Polynomial<K>::constant(base->vars(), K::one())};
    std::vector<Polynomial<K>> spow{rpow.front()};
    for (unsigned i = 1; i <= M; ++i) {
        rpow.push_back(rpow[i - 1] * rp);
        spow.push_back(spow[i - 1] * sp);
    }

    typename DanielewskiRing<K>::TermMap raw_a, raw_b;
    Rational binom(1);
    for (unsigned i = 0; i <= M; ++i) {
        if (i > 0)
            binom = binom * Rational(static_cast<long>(M - i + 1)) *
                    Rational(static_cast<long>(i)).inverse();
        const K c = K::from_rational((M - i) % 2 == 0 ? binom : -binom);
        // Rewrite r^i s^(M-i) as (...)*t + (...)*w + (...)*F and drop the
        // F part, which is zero in the base ring.
        Polynomial<K> coeff_a(base->vars());
        Polynomial<K> coeff_b(base->vars());
        if (i >= nr) {
            Polynomial<K> rest = rpow[i - nr] * spow[M - i];
            coeff_a = rest * wit_r.cofactors[0];
            coeff_b = rest * wit_r.cofactors[1];
        } else { // then M - i >= ns, by the choice of M
            Polynomial<K> rest = rpow[i] * spow[M - i - ns];
            coeff_a = rest * wit_s.cofactors[0];
            coeff_b = rest * wit_s.cofactors[1];
        }
        const Key key{static_cast<int32_t>(i), static_cast<int32_t>(M - i)};
        RElement<K> ca = base->nf(coeff_a);
        if (!ca.is_zero()) raw_a.emplace(key, ca.scaled(c));
        RElement<K> cb = base->nf(coeff_b);
        if (!cb.is_zero()) raw_b.emplace(key, cb.scaled(c));
    }

    AElement<K> a = A->normalize(std::move(raw_a));
    AElement<K> b = A->normalize(std::move(raw_b));
    if (!(a.scaled_base(t) + b.scaled_base(w) == A->one()))
        throw InconsistencyError("unit partition failed its defining identity");
    return {std::move(a), std::move(b)};
}

// A base-fixing homomorphism A[T] -> A'[T'], recorded by the images of u, v
// and T; coefficients in the shared base ring transport verbatim. Term
// counts of intermediate results are capped: exceeding the ceiling aborts
// with a budget error instead of exhausting memory.
template <CoefficientField K>
struct ExtendedMap {
    static constexpr size_t default_term_ceiling = 1'000'000;

    ARingPtr<K> source;
    ARingPtr<K> target;
    ExtendedElement<K> image_u;
    ExtendedElement<K> image_v;
    ExtendedElement<K> image_T;
    size_t term_ceiling = default_term_ceiling;

    // Image of an element of A itself (no T involved on the source side).
    ExtendedElement<K> apply_A(const AElement<K>& c) const {
        if (!c.ring()->same_structure(*source))
            throw MathError("element does not belong to the map's source ring");
        std::vector<ExtendedElement<K>> upow{ExtendedElement<K>::one(target)};
        std::vector<ExtendedElement<K>> vpow{upow.front()};
        ExtendedElement<K> acc = ExtendedElement<K>::zero(target);
        for (const auto& [key, coeff] : c.terms()) {
            while (static_cast<int32_t>(upow.size()) <= key.first)
                upow.push_back(guarded(upow.back() * image_u));
            while (static_cast<int32_t>(vpow.size()) <= key.second)
                vpow.push_back(guarded(vpow.back() * image_v));
            ExtendedElement<K> term =
                guarded(upow[static_cast<size_t>(key.first)] * vpow[static_cast<size_t>(key.second)]);
            acc = guarded(acc + term.scaled_A(target->from_base(coeff)));
        }
        return acc;
    }

    ExtendedElement<K> operator()(const ExtendedElement<K>& h) const {
        if (!h.ring()->same_structure(*source))
            throw MathError("element does not belong to the map's source ring");
        std::vector<ExtendedElement<K>> tpow{ExtendedElement<K>::one(target)};
        ExtendedElement<K> acc = ExtendedElement<K>::zero(target);
        for (const auto& [d, c] : h.coefficients()) {
            while (static_cast<int32_t>(tpow.size()) <= d)
                tpow.push_back(guarded(tpow.back() * image_T));
            acc = guarded(acc + guarded(apply_A(c) * tpow[static_cast<size_t>(d)]));
        }
        return acc;
    }

    ExtendedElement<K> guarded(ExtendedElement<K> e) const {
        if (e.term_count() > term_ceiling)
            throw BudgetError("term-count ceiling exceeded while applying the extended map");
        return e;
    }
};

// Everything needed to reproduce and re-check one stable isomorphism
// A[T] ~ A'[T']: the radical witnesses, both partitions of unity, and the
// generator images of both directions. The two flags are always true on
// certificates produced by build_stable_iso; they exist so that serialized
// certificates carry their verification status explicitly.
template <CoefficientField K>
struct StableIsoCertificate {
    ARingPtr<K> source;
    ARingPtr<K> target;
    RadicalData<K> radicals;
    AElement<K> a; // in the source ring: a*r' + b*s' = 1
    AElement<K> b;
    AElement<K> a_other; // in the target ring: a'*r + b'*s = 1
    AElement<K> b_other;
    ExtendedMap<K> forward;  // source[T] -> target[T']
    ExtendedMap<K> backward; // target[T'] -> source[T]
    bool relations_verified = false;
    bool roundtrip_verified = false;
};

namespace detail {

// The defining relation of m.source pushed through m; zero iff m respects it.
template <CoefficientField K>
ExtendedElement<K> relation_image(const ExtendedMap<K>& m) {
    return m.image_u.scaled_A(m.target->from_base(m.source->r())) -
           m.image_v.scaled_A(m.target->from_base(m.source->s())) -
           ExtendedElement<K>::one(m.target);
}

// Generators of ring[T] as extended elements: u, v, T, then the base
// variables, with printable names for error reporting.
template <CoefficientField K>
std::vector<std::pair<std::string, ExtendedElement<K>>> generator_list(const ARingPtr<K>& ring,
                                                                       bool primed) {
    const char* tick = primed ? "'" : "";
    std::vector<std::pair<std::string, ExtendedElement<K>>> out;
    out.emplace_back(std::string("u") + tick, ExtendedElement<K>::from_A(ring->u()));
    out.emplace_back(std::string("v") + tick, ExtendedElement<K>::from_A(ring->v()));
    out.emplace_back(std::string("T") + tick, ExtendedElement<K>::variable_T(ring));
    const auto& names = ring->base()->vars()->names();
    for (size_t k = 0; k < names.size(); ++k)
        out.emplace_back(names[k], ExtendedElement<K>::from_A(ring->from_base(ring->base()->var_class(k))));
    return out;
}

} // namespace detail

// Constructs the stable isomorphism attached to a pair with equal radicals
// and verifies it symbolically before emitting the certificate: both
// relation images vanish and both roundtrips are the identity on every
// generator. Failures of those checks are internal inconsistencies, never
// silent; an exhausted power budget is a budget error.
template <CoefficientField K>
StableIsoCertificate<K> build_stable_iso(const ARingPtr<K>& A, const ARingPtr<K>& A_other,
                                         unsigned n_max = 16,
                                         size_t term_ceiling = ExtendedMap<K>::default_term_ceiling) {
    using EE = ExtendedElement<K>;
    if (!A->base()->same_structure(*A_other->base()))
        throw MathError("stable comparison requires a common base ring");
    auto rad = radicals_equal(A->r(), A->s(), A_other->r(), A_other->s(), n_max);
    if (!rad)
        throw BudgetError("radical comparison did not finish within the power budget");

    auto [a, b] = unit_partition(A, A_other->r(), A_other->s(), rad->r_in_other, rad->s_in_other);
    auto [a_other, b_other] =
        unit_partition(A_other, A->r(), A->s(), rad->r_other_in_pair, rad->s_other_in_pair);

    // Forward direction: u -> s*T' + a', v -> r*T' - b', and T maps to the
    // image of the trivializing element b*u' + a*v' under the same map.
    ExtendedMap<K> fwd{A,
                       A_other,
                       EE::variable_T(A_other).scaled_A(A_other->from_base(A->s())) + EE::from_A(a_other),
                       EE::variable_T(A_other).scaled_A(A_other->from_base(A->r())) - EE::from_A(b_other),
                       EE::zero(A_other),
                       term_ceiling};
    fwd.image_T = fwd.guarded(fwd.apply_A(b) * EE::from_A(A_other->u()) +
                              fwd.apply_A(a) * EE::from_A(A_other->v()));

    ExtendedMap<K> bwd{A_other,
                       A,
                       EE::variable_T(A).scaled_A(A->from_base(A_other->s())) + EE::from_A(a),
                       EE::variable_T(A).scaled_A(A->from_base(A_other->r())) - EE::from_A(b),
                       EE::zero(A),
                       term_ceiling};
    bwd.image_T = bwd.guarded(bwd.apply_A(b_other) * EE::from_A(A->u()) +
                              bwd.apply_A(a_other) * EE::from_A(A->v()));

    if (!detail::relation_image(fwd).is_zero())
        throw InconsistencyError("forward map does not annihilate the defining relation");
    if (!detail::relation_image(bwd).is_zero())
        throw InconsistencyError("backward map does not annihilate the defining relation");

    for (const auto& [name, gen] : detail::generator_list(A, false))
        if (!(bwd(fwd(gen)) == gen))
            throw InconsistencyError("stable isomorphism roundtrip failed on generator " + name);
    for (const auto& [name, gen] : detail::generator_list(A_other, true))
        if (!(fwd(bwd(gen)) == gen))
            throw InconsistencyError("stable isomorphism roundtrip failed on generator " + name);

    return StableIsoCertificate<K>{A,
                                   A_other,
                                   std::move(*rad),
                                   std::move(a),
                                   std::move(b),
                                   std::move(a_other),
                                   std::move(b_other),
                                   std::move(fwd),
                                   std::move(bwd),
                                   true,
                                   true};
}

// Re-derives every stored identity of a certificate from scratch, using
// ring arithmetic only (no basis searches): the four radical witnesses, both
// partitions of unity, the tie between partitions and generator images, both
// relation images, and the full roundtrip on all generators. Arithmetic
// failures (tampered certificates mixing rings) count as verification
// failures; only budget exhaustion propagates.
template <CoefficientField K>
bool verify_stable_iso(const StableIsoCertificate<K>& cert) {
    using EE = ExtendedElement<K>;
    try {
        const auto& A = cert.source;
        const auto& B = cert.target;
        if (!cert.relations_verified || !cert.roundtrip_verified) return false;
        if (!A->base()->same_structure(*B->base())) return false;
        const Polynomial<K>& f = A->base()->relation();

        auto witness_ok = [&](const RadicalWitness<K>& wit, const RElement<K>& g,
                              const RElement<K>& t, const RElement<K>& w) {
            if (wit.power == 0 || wit.cofactors.size() != 3) return false;
            Polynomial<K> combo = wit.cofactors[0] * t.representative() +
                                  wit.cofactors[1] * w.representative() + wit.cofactors[2] * f;
            return combo == g.representative().pow(wit.power);
        };
        if (!witness_ok(cert.radicals.r_other_in_pair, B->r(), A->r(), A->s())) return false;
        if (!witness_ok(cert.radicals.s_other_in_pair, B->s(), A->r(), A->s())) return false;
        if (!witness_ok(cert.radicals.r_in_other, A->r(), B->r(), B->s())) return false;
        if (!witness_ok(cert.radicals.s_in_other, A->s(), B->r(), B->s())) return false;

        if (!(cert.a.scaled_base(B->r()) + cert.b.scaled_base(B->s()) == A->one())) return false;
        if (!(cert.a_other.scaled_base(A->r()) + cert.b_other.scaled_base(A->s()) == B->one()))
            return false;

        // The generator images must be the ones the partitions dictate.
        const auto& fwd = cert.forward;
        const auto& bwd = cert.backward;
        if (!(fwd.image_u ==
              EE::variable_T(B).scaled_A(B->from_base(A->s())) + EE::from_A(cert.a_other)))
            return false;
        if (!(fwd.image_v ==
              EE::variable_T(B).scaled_A(B->from_base(A->r())) - EE::from_A(cert.b_other)))
            return false;
        if (!(fwd.image_T == fwd.apply_A(cert.b) * EE::from_A(B->u()) +
                                 fwd.apply_A(cert.a) * EE::from_A(B->v())))
            return false;
        if (!(bwd.image_u == EE::variable_T(A).scaled_A(A->from_base(B->s())) + EE::from_A(cert.a)))
            return false;
        if (!(bwd.image_v == EE::variable_T(A).scaled_A(A->from_base(B->r())) - EE::from_A(cert.b)))
            return false;
        if (!(bwd.image_T == bwd.apply_A(cert.b_other) * EE::from_A(A->u()) +
                                 bwd.apply_A(cert.a_other) * EE::from_A(A->v())))
            return false;

        if (!detail::relation_image(fwd).is_zero()) return false;
        if (!detail::relation_image(bwd).is_zero()) return false;

        for (const auto& [name, gen] : detail::generator_list(A, false))
            if (!(bwd(fwd(gen)) == gen)) return false;
        for (const auto& [name, gen] : detail::generator_list(B, true))
            if (!(fwd(bwd(gen)) == gen)) return false;
        return true;
    } catch (const BudgetError&) {
        throw;
    } catch (const Error&) {
        return false;
    }
}

// Well-definedness report for the Laurent model of the ring attached to
// (x^m, y^n) over Q[X,Y,Z]/(X^p*Y - Z^q): the substitution X -> X,
// Y -> Z^q*X^-p, Z -> Z, U -> (Y^n*V + 1)*X^-m, V -> V must annihilate both
// defining relations inside Q[X, Z, V, X^-1]. Only well-definedness is
// decided here; the open_item field records what is deliberately left
// unverified instead of claiming an isomorphism.
struct SS1Report {
    unsigned p = 0, q = 0, m = 0, n = 0;
    bool base_relation_vanishes = false;
    bool defining_relation_vanishes = false;
    bool x_image_is_x = false;
    std::string open_item;

    bool verified() const { return base_relation_vanishes && defining_relation_vanishes && x_image_is_x; }
};

inline SS1Report ss1_map_check(unsigned p, unsigned q, unsigned m, unsigned n) {
    if (p < 1 || q < 1 || m < 1 || n < 1)
        throw InputError("all four exponents must be at least 1");
    if ((static_cast<unsigned long long>(p) * n + m) > (1ull << 30) ||
        (static_cast<unsigned long long>(q) * n) > (1ull << 30))
        throw InputError("exponents too large");
    using P = Polynomial<Rational>;

    // Constructing the quotient tower validates monicity in the designated
    // variable Z and the height-2 hypothesis for (x^m, y^n); the relation
    // checks below happen ambiently.
    auto bvars = VariableSet::make({"X", "Y", "Z"});
    const P X = P::variable(bvars, 0);
    const P Y = P::variable(bvars, 1);
    const P Z = P::variable(bvars, 2);
    auto base = HypersurfaceRing<Rational>::make(bvars, X.pow(p) * Y - Z.pow(q), 2);
    DanielewskiRing<Rational>::make(base->nf(X.pow(m)), base->nf(Y.pow(n)));

    auto svars = VariableSet::make({"X", "Y", "Z", "U", "V"});
    auto sv = [&](size_t i) { return P::variable(svars, i); };
    const P f_src = sv(0).pow(p) * sv(1) - sv(2).pow(q);
    const P rel_src =
        sv(0).pow(m) * sv(3) - sv(1).pow(n) * sv(4) - P::constant(svars, Rational(1));

    auto tvars = VariableSet::make({"X", "Z", "V"}, 0); // X carries the negative exponents
    auto lmono = [&](int32_t ex, int32_t ez, int32_t ev) {
        P out(tvars);
        out.add_term(Monomial({ex, ez, ev}), Rational(1));
        return out;
    };
    const auto ip = static_cast<int32_t>(p);
    const auto iq = static_cast<int32_t>(q);
    const auto im = static_cast<int32_t>(m);
    const auto in = static_cast<int32_t>(n);
    const std::vector<P> images{
        lmono(1, 0, 0),                                    // X -> X
        lmono(-ip, iq, 0),                                 // Y -> Z^q * X^-p
        lmono(0, 1, 0),                                    // Z -> Z
        lmono(-(ip * in + im), iq * in, 1) + lmono(-im, 0, 0), // U -> (Y^n*V + 1) * X^-m
        lmono(0, 0, 1),                                    // V -> V
    };

    SS1Report rep;
    rep.p = p;
    rep.q = q;
    rep.m = m;
    rep.n = n;
    rep.base_relation_vanishes = f_src.substitute(images, tvars).is_zero();
    rep.defining_relation_vanishes = rel_src.substitute(images, tvars).is_zero();
    rep.x_image_is_x = sv(0).substitute(images, tvars) == lmono(1, 0, 0);
    rep.open_item = "well-definedness only: the preimage of 1/X is not constructed, so surjectivity "
                    "onto the Laurent ring remains unverified";
    return rep;
}

} // namespace ars

#endif
