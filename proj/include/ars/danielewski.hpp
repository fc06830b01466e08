#ifndef ARS_DANIELEWSKI_HPP
#define ARS_DANIELEWSKI_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ars/errors.hpp"
#include "ars/hypersurface.hpp"

namespace ars {

template <CoefficientField K>
class AElement;

// A_{r,s} = R[U,V]/(rU - sV - 1). Elements are kept in the canonical form
// sum c_ij u^i v^j where every coefficient with i >= 1 lies in W, a fixed
// K-linear complement of rR inside R (W = image of the reduction modulo the
// cached basis of (r, F); see split_off). Demanding only that r not divide
// the coefficients would not pin the form down: divisibility is not closed
// under subtraction, so a coefficient can hide an r-divisible part behind a
// non-divisible one and equal elements can reach distinct such forms.
// Linearity is what forces uniqueness: two canonical representations of one
// element differ by G*(rU - sV - 1), and the coefficient of the highest
// u-power (times the highest v-power) of that product is r*g for a top
// coefficient g of G; it lies in rR and, being a difference of canonical
// coefficients, in W, so it is zero and G = 0. The rewrite of c u^i v^j
// with c = r*q + w into w u^i v^j + q(s v^{j+1} + v^j) u^{i-1} strictly
// lowers the u-degree it touches, so one sweep from the highest u-level
// down terminates with every level >= 1 canonical.
template <CoefficientField K>
class DanielewskiRing : public std::enable_shared_from_this<DanielewskiRing<K>> {
  public:
    using Key = std::pair<int32_t, int32_t>; // (u-exponent, v-exponent)
    using TermMap = std::map<Key, RElement<K>>;

    static std::shared_ptr<const DanielewskiRing> make(RElement<K> r, RElement<K> s) {
        if (r.is_zero() || s.is_zero())
            throw InputError("the pair (r, s) must be nonzero");
        r.require_same_ring(s);
        if (!height2_check(r, s))
            throw HeightTwoError("(r, s) is not a height-2 ideal of the base ring");
        return std::shared_ptr<const DanielewskiRing>(
            new DanielewskiRing(std::move(r), std::move(s)));
    }

    const HRingPtr<K>& base() const { return r_.ring(); }
    const RElement<K>& r() const { return r_; }
    const RElement<K>& s() const { return s_; }

    bool same_structure(const DanielewskiRing& o) const {
        return base()->same_structure(*o.base()) && r_.representative() == o.r_.representative() &&
               s_.representative() == o.s_.representative();
    }

    AElement<K> from_base(const RElement<K>& c) const;
    AElement<K> constant(K c) const { return from_base(base()->constant(std::move(c))); }
    AElement<K> zero() const { return constant(K::zero()); }
    AElement<K> one() const { return constant(K::one()); }
    AElement<K> u() const;
    AElement<K> v() const;

    // Canonical form of a raw bivariate polynomial in u, v over the base.
    AElement<K> normalize(TermMap raw) const;

    // Membership of h in c*A, decided upstairs in the polynomial ring with
    // u, v adjoined as honest variables: h is divisible by c exactly when
    // its lift lies in the ideal (c, rU - sV - 1, F). Used by divide_by_base
    // when coefficientwise division fails; canonical forms can hide
    // divisibility (the normal form of c*G need not have coefficients in
    // c*R), so this is the deciding test, not a fallback heuristic.
    std::optional<AElement<K>> divide_in_extension(const AElement<K>& h,
                                                   const RElement<K>& c) const {
        auto gb = extension_basis(c.representative());
        Polynomial<K> lifted(ext_vars_);
        for (const auto& [k, coeff] : h.terms())
            lifted = lifted + lift(coeff.representative(), k.first, k.second);
        auto mem = ideal_member(lifted, *gb);
        if (!mem) return std::nullopt;
        return slice((*mem)[0]);
    }

  private:
    DanielewskiRing(RElement<K> r, RElement<K> s)
        : r_(std::move(r)),
          s_(std::move(s)),
          ext_vars_(make_ext_vars(r_.ring()->vars())),
          ext_u_(r_.ring()->vars()->count()),
          ext_v_(ext_u_ + 1),
          ext_order_(OrderKind::grevlex, ext_v_ + 1),
          ext_f_(lift(r_.ring()->relation())),
          ext_relation_(lift(r_.representative(), 1, 0) - lift(s_.representative(), 0, 1) -
                        Polynomial<K>::constant(ext_vars_, K::one())) {}

    static VarsPtr make_ext_vars(const VarsPtr& bv) {
        std::vector<std::string> names = bv->names();
        auto taken = [&names](const std::string& n) {
            return std::find(names.begin(), names.end(), n) != names.end();
        };
        std::string u = "u";
        while (taken(u)) u += "_";
        names.push_back(u);
        std::string v = "v";
        while (taken(v)) v += "_";
        names.push_back(v);
        return VariableSet::make(std::move(names));
    }

    // Base polynomial, unchanged, times u^i v^j in the extended variables.
    Polynomial<K> lift(const Polynomial<K>& p, int32_t i = 0, int32_t j = 0) const {
        Polynomial<K> out(ext_vars_);
        for (const auto& [m, c] : p.terms()) {
            std::vector<int32_t> e = m.exponents();
            e.push_back(i);
            e.push_back(j);
            out.add_term(Monomial(std::move(e)), c);
        }
        return out;
    }

    // Regroup an extended polynomial by its u, v exponents and normalize.
    AElement<K> slice(const Polynomial<K>& p) const {
        std::map<Key, Polynomial<K>> parts;
        for (const auto& [m, c] : p.terms()) {
            const auto& e = m.exponents();
            Key k{e[ext_u_], e[ext_v_]};
            std::vector<int32_t> b(e.begin(), e.begin() + ext_u_);
            auto [it, inserted] = parts.try_emplace(k, Polynomial<K>(base()->vars()));
            it->second.add_term(Monomial(std::move(b)), c);
        }
        TermMap raw;
        for (auto& [k, poly] : parts) {
            RElement<K> coeff = base()->nf(poly);
            if (!coeff.is_zero()) raw.emplace(k, std::move(coeff));
        }
        return normalize(std::move(raw));
    }

    // Groebner basis of (divisor, rU - sV - 1, F) in the extended variables,
    // cached per divisor: division always happens against the same handful
    // of base elements (s above all).
    std::shared_ptr<const GroebnerBasis<K>> extension_basis(const Polynomial<K>& rep) const {
        std::lock_guard<std::mutex> lock(ext_mu_);
        for (const auto& [key, gb] : ext_cache_)
            if (key == rep) return gb;
        auto gb = std::make_shared<const GroebnerBasis<K>>(
            buchberger<K>({lift(rep), ext_relation_, ext_f_}, ext_order_));
        ext_cache_.emplace_back(rep, gb);
        return gb;
    }

    RElement<K> r_;
    RElement<K> s_;
    VarsPtr ext_vars_;
    size_t ext_u_;
    size_t ext_v_;
    MonomialOrder ext_order_;
    Polynomial<K> ext_f_;
    Polynomial<K> ext_relation_;
    mutable std::mutex ext_mu_;
    mutable std::vector<std::pair<Polynomial<K>, std::shared_ptr<const GroebnerBasis<K>>>>
        ext_cache_;
};

template <CoefficientField K>
using ARingPtr = std::shared_ptr<const DanielewskiRing<K>>;

template <CoefficientField K>
class AElement {
  public:
    using Key = typename DanielewskiRing<K>::Key;
    using TermMap = typename DanielewskiRing<K>::TermMap;

    const ARingPtr<K>& ring() const { return ring_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
               terms_.begin()->second.is_one();
    }

    size_t term_count() const { return terms_.size(); }

    int32_t degree_u() const {
        int32_t d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }

    int32_t degree_v() const {
        int32_t d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }

    // The canonical coefficients form a K-linear subspace of the base, so
    // negation, sums, and scalar multiples of canonical forms are canonical.
    AElement operator-() const {
        TermMap out;
        for (const auto& [k, c] : terms_) out.emplace(k, -c);
        return AElement(ring_, std::move(out));
    }

    AElement operator+(const AElement& o) const {
        require_same_ring(o);
        TermMap out = terms_;
        for (const auto& [k, c] : o.terms_) add_into(out, k, c);
        return AElement(ring_, std::move(out));
    }

    AElement operator-(const AElement& o) const {
        require_same_ring(o);
        TermMap out = terms_;
        for (const auto& [k, c] : o.terms_) add_into(out, k, -c);
        return AElement(ring_, std::move(out));
    }

    AElement operator*(const AElement& o) const {
        require_same_ring(o);
        TermMap out;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_)
                add_into(out, Key{ka.first + kb.first, ka.second + kb.second}, ca * cb);
        return ring_->normalize(std::move(out));
    }

    // Multiplication by a base element.
    AElement scaled_base(const RElement<K>& c) const {
        TermMap out;
        if (!c.is_zero())
            for (const auto& [k, v] : terms_) {
                RElement<K> p = v * c;
                if (!p.is_zero()) out.emplace(k, std::move(p));
            }
        return ring_->normalize(std::move(out));
    }

    AElement scaled(const K& c) const {
        TermMap out;
        if (!c.is_zero())
            for (const auto& [k, v] : terms_) out.emplace(k, v.scaled(c));
        return AElement(ring_, std::move(out));
    }

    AElement pow(unsigned e) const {
        AElement acc = ring_->one();
        AElement b = *this;
        while (e > 0) {
            if (e & 1u) acc = acc * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return acc;
    }

    bool operator==(const AElement& o) const {
        return ring_->same_structure(*o.ring_) && terms_ == o.terms_;
    }

    void require_same_ring(const AElement& o) const {
        if (ring_ == o.ring_) return;
        if (!ring_->same_structure(*o.ring_)) throw MathError("elements of different rings");
    }

    static void add_into(TermMap& map, const Key& k, const RElement<K>& c) {
        if (c.is_zero()) return;
        auto it = map.find(k);
        if (it == map.end()) {
            map.emplace(k, c);
        } else {
            RElement<K> sum = it->second + c;
            if (sum.is_zero())
                map.erase(it);
            else
                it->second = std::move(sum);
        }
    }

  private:
    friend class DanielewskiRing<K>;
    AElement(ARingPtr<K> ring, TermMap canonical)
        : ring_(std::move(ring)), terms_(std::move(canonical)) {}

    ARingPtr<K> ring_;
    TermMap terms_;
};

template <CoefficientField K>
AElement<K> DanielewskiRing<K>::from_base(const RElement<K>& c) const {
    TermMap out;
    RElement<K> cc = base()->nf(c.representative()); // tolerate foreign-instance bases
    if (!cc.is_zero()) out.emplace(Key{0, 0}, std::move(cc));
    return AElement<K>(this->shared_from_this(), std::move(out));
}

template <CoefficientField K>
AElement<K> DanielewskiRing<K>::u() const {
    TermMap out;
    out.emplace(Key{1, 0}, base()->one());
    // 1 is already a reduced coefficient whenever (r, F) is proper, which
    // height-2 guarantees; normalize anyway for uniformity
    return normalize(std::move(out));
}

template <CoefficientField K>
AElement<K> DanielewskiRing<K>::v() const {
    TermMap out;
    out.emplace(Key{0, 1}, base()->one());
    return AElement<K>(this->shared_from_this(), std::move(out));
}

template <CoefficientField K>
AElement<K> DanielewskiRing<K>::normalize(TermMap raw) const {
    // drop stored zeros (callers may hand us unfiltered maps)
    for (auto it = raw.begin(); it != raw.end();) {
        if (it->second.is_zero())
            it = raw.erase(it);
        else
            ++it;
    }
    // One descending sweep. Keys sort by (u-degree, v-degree), so a reverse
    // walk works down the u-levels, and a rewrite at level i only feeds
    // level i-1, which the walk has not reached yet. New entries go in
    // before the current position advances so none are skipped over.
    auto it = raw.rbegin();
    while (it != raw.rend()) {
        const Key key = it->first;
        if (key.first < 1) break; // all remaining keys are u-free
        auto [q, w] = split_off(r_, it->second);
        if (q.is_zero()) {
            ++it;
            continue;
        }
        // c u^i v^j = w u^i v^j + q (s v^{j+1} + v^j) u^{i-1}
        RElement<K> qs = q * s_;
        AElement<K>::add_into(raw, Key{key.first - 1, key.second + 1}, qs);
        AElement<K>::add_into(raw, Key{key.first - 1, key.second}, q);
        if (w.is_zero()) {
            it = std::make_reverse_iterator(raw.erase(std::next(it).base()));
        } else {
            it->second = std::move(w);
            ++it;
        }
    }
    return AElement<K>(this->shared_from_this(), std::move(raw));
}

// Formal partial derivatives of the canonical representative. These are
// representative-dependent as standalone values; the semantic combinations
// (the kernel test below, the derivation machinery) are what the theory
// actually uses.
template <CoefficientField K>
std::pair<AElement<K>, AElement<K>> partials(const AElement<K>& h) {
    using Key = typename DanielewskiRing<K>::Key;
    typename DanielewskiRing<K>::TermMap du, dv;
    for (const auto& [k, c] : h.terms()) {
        if (k.first >= 1)
            AElement<K>::add_into(du, Key{k.first - 1, k.second},
                                  c.scaled(K::from_rational(Rational(k.first))));
        if (k.second >= 1)
            AElement<K>::add_into(dv, Key{k.first, k.second - 1},
                                  c.scaled(K::from_rational(Rational(k.second))));
    }
    return {h.ring()->normalize(std::move(du)), h.ring()->normalize(std::move(dv))};
}

// s*H_u + r*H_v = 0, which characterizes membership in R (the base) among
// all of A_{r,s}; the derivation E = s d/du + r d/dv has kernel exactly R.
template <CoefficientField K>
bool kernel_test(const AElement<K>& h) {
    auto [hu, hv] = partials(h);
    const auto& ring = h.ring();
    return (hu.scaled_base(ring->s()) + hv.scaled_base(ring->r())).is_zero();
}

// Some iff the canonical form is free of u and v.
template <CoefficientField K>
std::optional<RElement<K>> is_in_R(const AElement<K>& h) {
    using Key = typename DanielewskiRing<K>::Key;
    if (h.is_zero()) return h.ring()->base()->zero();
    if (h.term_count() == 1 && h.terms().begin()->first == Key{0, 0})
        return h.terms().begin()->second;
    return std::nullopt;
}

// Division of H by a base element c. Divisors not known to be coprime to r
// are refused outright (a different failure than "not divisible"): scalars,
// the ring's own s, and anything passing a fresh height-2 test against r
// qualify. Division itself runs in two stages: if every canonical
// coefficient of H is divisible by c in R, those quotients reassemble into
// the quotient directly; otherwise membership of H in c*A is decided
// upstairs (see divide_in_extension), since a canonical form may well hide
// coefficientwise divisibility. Either way a returned quotient has been
// re-verified by one multiplication.
template <CoefficientField K>
std::optional<AElement<K>> divide_by_base(const AElement<K>& h, const RElement<K>& c) {
    if (c.is_zero()) throw MathError("division by zero");
    const auto& ring = h.ring();
    ring->r().require_same_ring(c);
    bool coprime = c.as_constant().has_value() || c == ring->s() ||
                   height2_check(ring->r(), c);
    if (!coprime)
        throw CoprimalityError("divisor is not known to be coprime to r");
    typename DanielewskiRing<K>::TermMap out;
    bool coefficientwise = true;
    for (const auto& [k, coeff] : h.terms()) {
        auto q = divides_in_R(c, coeff);
        if (!q) {
            coefficientwise = false;
            break;
        }
        if (!q->is_zero()) out.emplace(k, std::move(*q));
    }
    std::optional<AElement<K>> g;
    if (coefficientwise)
        g = ring->normalize(std::move(out));
    else
        g = ring->divide_in_extension(h, c);
    if (!g) return std::nullopt;
    if (!(g->scaled_base(c) == h))
        throw InconsistencyError("base division failed re-verification");
    return g;
}

} // namespace ars

#endif
