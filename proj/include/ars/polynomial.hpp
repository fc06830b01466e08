#ifndef ARS_POLYNOMIAL_HPP
#define ARS_POLYNOMIAL_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ars/errors.hpp"
#include "ars/field.hpp"
#include "ars/variables.hpp"

namespace ars {

// Exact multivariate polynomial over K, canonical: no stored zero
// coefficients. If the variable set designates a Laurent variable, that
// slot (and only that slot) may carry negative exponents.
template <CoefficientField K>
class Polynomial {
  public:
    using TermMap = std::map<Monomial, K>;

    explicit Polynomial(VarsPtr vars) : vars_(std::move(vars)) {
        if (!vars_) throw InputError("polynomial without a variable set");
    }

    static Polynomial zero(VarsPtr vars) { return Polynomial(std::move(vars)); }

    static Polynomial constant(VarsPtr vars, K c) {
        Polynomial p(std::move(vars));
        if (!c.is_zero()) p.terms_.emplace(Monomial(p.vars_->count()), std::move(c));
        return p;
    }

    static Polynomial variable(VarsPtr vars, size_t index) {
        Polynomial p(vars);
        p.terms_.emplace(Monomial::unit(vars->count(), index), K::one());
        return p;
    }

    static Polynomial term(VarsPtr vars, Monomial m, K c) {
        Polynomial p(vars);
        p.check_exponents(m);
        if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    std::optional<K> as_constant() const {
        if (terms_.empty()) return K::zero();
        if (terms_.size() == 1 && terms_.begin()->first.is_one())
            return terms_.begin()->second;
        return std::nullopt;
    }

    int64_t total_degree() const { // zero polynomial reports 0
        int64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    int32_t degree_in(size_t var) const {
        int32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }

    void add_term(const Monomial& m, const K& c) {
        if (c.is_zero()) return;
        check_exponents(m);
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(vars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    Polynomial operator+(const Polynomial& o) const {
        require_same_vars(vars_, o.vars_);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        require_same_vars(vars_, o.vars_);
        Polynomial r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        require_same_vars(vars_, o.vars_);
        Polynomial r(vars_);
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    Polynomial scaled(const K& c) const {
        Polynomial r(vars_);
        if (c.is_zero()) return r;
        for (const auto& [m, k] : terms_) {
            K p = k * c;
            if (!p.is_zero()) r.terms_.emplace(m, std::move(p));
        }
        return r;
    }

    // this * c * m, one fused pass; the workhorse of division loops.
    Polynomial scaled_shifted(const K& c, const Monomial& m) const {
        Polynomial r(vars_);
        if (c.is_zero()) return r;
        for (const auto& [mm, k] : terms_) {
            K p = k * c;
            if (!p.is_zero()) r.terms_.emplace(mm * m, std::move(p));
        }
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(vars_, K::one());
        Polynomial b = *this;
        while (e > 0) {
            if (e & 1u) r = r * b;
            b = (e >>= 1) ? b * b : b;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const {
        return vars_->same_as(*o.vars_) && terms_ == o.terms_;
    }

    // Formal partial derivative; the power rule is valid for negative
    // exponents too, so Laurent variables need no special case.
    Polynomial derivative(size_t var) const {
        if (var >= vars_->count()) throw MathError("derivative: unknown variable");
        Polynomial r(vars_);
        for (const auto& [m, c] : terms_) {
            int32_t e = m[var];
            if (e == 0) continue;
            std::vector<int32_t> exps = m.exponents();
            exps[var] = e - 1;
            r.add_term(Monomial(std::move(exps)), c * K::from_rational(Rational(e)));
        }
        return r;
    }

    // Ring-homomorphism evaluation: every source variable gets an image in
    // a common target ring. Source exponents must be non-negative.
    Polynomial substitute(const std::vector<Polynomial>& images, const VarsPtr& target) const {
        if (images.size() != vars_->count())
            throw MathError("substitute: image missing for some variable");
        for (const auto& img : images)
            if (!img.vars()->same_as(*target))
                throw MathError("substitute: images live in mixed target rings");
        Polynomial acc(target);
        for (const auto& [m, c] : terms_) {
            if (m.has_negative())
                throw MathError("substitute: Laurent source not supported");
            Polynomial t = constant(target, c);
            for (size_t i = 0; i < vars_->count(); ++i)
                if (m[i] > 0) t = t * images[i].pow(static_cast<unsigned>(m[i]));
            acc = acc + t;
        }
        return acc;
    }

    // Leading data w.r.t. an explicit monomial order (not the storage order).
    template <typename Order>
    const std::pair<const Monomial, K>& leading_term(const Order& order) const {
        if (terms_.empty()) throw MathError("leading term of zero polynomial");
        auto best = terms_.begin();
        for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
            if (order.less(best->first, it->first)) best = it;
        return *best;
    }

  private:
    void check_exponents(const Monomial& m) const {
        if (m.size() != vars_->count())
            throw MathError("monomial arity does not match variable list");
        if (m.has_negative()) {
            int li = vars_->laurent_index();
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i] < 0 && static_cast<int>(i) != li)
                    throw MathError("negative exponent outside the Laurent slot");
        }
    }

    VarsPtr vars_;
    TermMap terms_;
};

} // namespace ars

#endif
