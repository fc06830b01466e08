#ifndef ARS_HYPERSURFACE_HPP
#define ARS_HYPERSURFACE_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "ars/errors.hpp"
#include "ars/groebner.hpp"
#include "ars/order.hpp"
#include "ars/polynomial.hpp"

namespace ars {

template <CoefficientField K>
class RElement;

// R = k[X1..Xn]/(F) with F monic (up to a scalar) in a designated variable w.
// The quotient is then a free module over the remaining variables, and
// residue classes get unique representatives of w-degree < deg_w(F) by
// division by F alone, in lex order with w in front.
template <CoefficientField K>
class HypersurfaceRing : public std::enable_shared_from_this<HypersurfaceRing<K>> {
  public:
    static std::shared_ptr<const HypersurfaceRing> make(VarsPtr vars, Polynomial<K> f,
                                                        size_t w_index,
                                                        bool irreducible_declared = true) {
        if (!vars) throw InputError("ring without a variable set");
        if (vars->laurent_index() >= 0)
            throw InputError("a quotient ring cannot have a Laurent variable");
        if (w_index >= vars->count()) throw InputError("designated variable out of range");
        require_same_vars(vars, f.vars());
        if (f.is_constant()) throw InputError("defining relation must be nonconstant");
        int32_t d = f.degree_in(w_index);
        if (d < 1)
            throw InputError("defining relation has no term in the designated variable");
        // the w-degree-d part must be a single scalar term c*w^d
        for (const auto& [m, c] : f.terms()) {
            if (m[w_index] != d) continue;
            if (!(m == Monomial::unit(vars->count(), w_index, d)))
                throw InputError("defining relation is not monic in the designated variable");
        }
        return std::shared_ptr<const HypersurfaceRing>(new HypersurfaceRing(
            std::move(vars), std::move(f), w_index, d, irreducible_declared));
    }

    const VarsPtr& vars() const { return vars_; }
    const Polynomial<K>& relation() const { return f_; }
    size_t w_index() const { return w_; }
    int32_t w_degree() const { return deg_w_; }
    bool irreducible_declared() const { return irreducible_; }
    const MonomialOrder& nf_order() const { return nf_order_; }
    const MonomialOrder& ideal_order() const { return ideal_order_; }

    bool same_structure(const HypersurfaceRing& o) const {
        return vars_->same_as(*o.vars_) && f_ == o.f_ && w_ == o.w_;
    }

    RElement<K> nf(const Polynomial<K>& p) const;
    RElement<K> var_class(size_t i) const;
    RElement<K> constant(K c) const;
    RElement<K> zero() const { return constant(K::zero()); }
    RElement<K> one() const { return constant(K::one()); }

    // Groebner basis of (divisor, F), cached per divisor: divisibility tests
    // in R against the same element (typically r or s) are frequent.
    std::shared_ptr<const GroebnerBasis<K>> divisor_basis(const Polynomial<K>& rep) const {
        std::lock_guard<std::mutex> lock(cache_mu_);
        for (const auto& [key, gb] : divisor_cache_)
            if (key == rep) return gb;
        auto gb = std::make_shared<const GroebnerBasis<K>>(
            buchberger<K>({rep, f_}, ideal_order_));
        divisor_cache_.emplace_back(rep, gb);
        return gb;
    }

  private:
    HypersurfaceRing(VarsPtr vars, Polynomial<K> f, size_t w, int32_t deg_w, bool irr)
        : vars_(std::move(vars)),
          f_(std::move(f)),
          w_(w),
          deg_w_(deg_w),
          irreducible_(irr),
          nf_order_(MonomialOrder::lex_first(vars_->count(), w)),
          ideal_order_(OrderKind::grevlex, vars_->count()) {}

    VarsPtr vars_;
    Polynomial<K> f_;
    size_t w_;
    int32_t deg_w_;
    bool irreducible_;
    MonomialOrder nf_order_;
    MonomialOrder ideal_order_;
    mutable std::mutex cache_mu_;
    mutable std::vector<std::pair<Polynomial<K>, std::shared_ptr<const GroebnerBasis<K>>>>
        divisor_cache_;
};

template <CoefficientField K>
using HRingPtr = std::shared_ptr<const HypersurfaceRing<K>>;

// Residue class in R, held by its unique bounded representative.
template <CoefficientField K>
class RElement {
  public:
    const Polynomial<K>& representative() const { return rep_; }
    const HRingPtr<K>& ring() const { return ring_; }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_one() const {
        auto c = rep_.as_constant();
        return c && c->is_one();
    }
    std::optional<K> as_constant() const { return rep_.as_constant(); }

    RElement operator-() const { return RElement(ring_, -rep_); }

    RElement operator+(const RElement& o) const {
        require_same_ring(o);
        return RElement(ring_, rep_ + o.rep_); // w-degree bound is preserved
    }

    RElement operator-(const RElement& o) const {
        require_same_ring(o);
        return RElement(ring_, rep_ - o.rep_);
    }

    RElement operator*(const RElement& o) const {
        require_same_ring(o);
        return ring_->nf(rep_ * o.rep_);
    }

    RElement scaled(const K& c) const { return RElement(ring_, rep_.scaled(c)); }

    RElement pow(unsigned e) const {
        RElement r = ring_->one();
        RElement b = *this;
        while (e > 0) {
            if (e & 1u) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    bool operator==(const RElement& o) const {
        return ring_->same_structure(*o.ring_) && rep_ == o.rep_;
    }

    void require_same_ring(const RElement& o) const {
        if (ring_ == o.ring_) return;
        if (!ring_->same_structure(*o.ring_))
            throw MathError("elements of different rings");
    }

  private:
    friend class HypersurfaceRing<K>;
    RElement(HRingPtr<K> ring, Polynomial<K> canonical) // callers guarantee the bound
        : ring_(std::move(ring)), rep_(std::move(canonical)) {}

    HRingPtr<K> ring_;
    Polynomial<K> rep_;
};

template <CoefficientField K>
RElement<K> HypersurfaceRing<K>::nf(const Polynomial<K>& p) const {
    auto rem = divide_with_cofactors(p, {f_}, nf_order_).remainder;
    return RElement<K>(this->shared_from_this(), std::move(rem));
}

template <CoefficientField K>
RElement<K> HypersurfaceRing<K>::var_class(size_t i) const {
    return nf(Polynomial<K>::variable(vars_, i));
}

template <CoefficientField K>
RElement<K> HypersurfaceRing<K>::constant(K c) const {
    return RElement<K>(this->shared_from_this(),
                       Polynomial<K>::constant(vars_, std::move(c)));
}

// Canonical splitting c = a*q + w along the ideal aR: w is the reduction of
// c modulo the cached basis of (a, F), q the tracked cofactor of a. The map
// c -> w is k-linear and depends only on the residue classes involved, so its
// image is a linear complement of aR in R -- the fact that make normal forms
// built on it unique. Always re-verified by one multiplication in R; a
// failure there would be an implementation bug.
template <CoefficientField K>
std::pair<RElement<K>, RElement<K>> split_off(const RElement<K>& a, const RElement<K>& b) {
    if (a.is_zero()) throw MathError("division by zero in R");
    a.require_same_ring(b);
    const auto& ring = a.ring();
    if (b.is_zero()) return {ring->zero(), ring->zero()};
    auto gb = ring->divisor_basis(a.representative());
    auto div = divide_with_cofactors(b.representative(), gb->basis, gb->order);
    Polynomial<K> q_poly(b.representative().vars());
    for (size_t i = 0; i < gb->basis.size(); ++i) {
        if (div.quotients[i].is_zero() || gb->cofactors[i][0].is_zero()) continue;
        q_poly = q_poly + div.quotients[i] * gb->cofactors[i][0];
    }
    RElement<K> q = ring->nf(q_poly);
    RElement<K> w = ring->nf(div.remainder);
    if (!(a * q + w == b)) throw InconsistencyError("splitting failed re-verification");
    return {std::move(q), std::move(w)};
}

// Divisibility in R with quotient extraction: b in aR iff b reduces to zero
// against the ideal (a, F) upstairs.
template <CoefficientField K>
std::optional<RElement<K>> divides_in_R(const RElement<K>& a, const RElement<K>& b) {
    auto [q, w] = split_off(a, b);
    if (!w.is_zero()) return std::nullopt;
    return q;
}

// Height-2 test for (r, s) in a 2-dimensional R: the ideal (r, s, F) upstairs
// must be proper and define a finite vanishing set.
template <CoefficientField K>
bool height2_check(const RElement<K>& r, const RElement<K>& s) {
    if (r.is_zero() || s.is_zero()) throw MathError("height-2 test requires nonzero inputs");
    r.require_same_ring(s);
    const auto& ring = r.ring();
    auto gb = buchberger<K>({r.representative(), s.representative(), ring->relation()},
                            ring->ideal_order());
    if (!is_proper(gb)) return false;
    return is_zero_dimensional(gb);
}

} // namespace ars

#endif
