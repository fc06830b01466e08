#ifndef ARS_ORDER_HPP
#define ARS_ORDER_HPP

#include <compare>
#include <numeric>
#include <string>
#include <vector>

#include "ars/errors.hpp"
#include "ars/variables.hpp"

namespace ars {

enum class OrderKind { lex, grlex, grevlex };

inline std::string order_kind_name(OrderKind k) {
    switch (k) {
        case OrderKind::lex: return "lex";
        case OrderKind::grlex: return "grlex";
        case OrderKind::grevlex: return "grevlex";
    }
    return "?";
}

inline OrderKind order_kind_from_name(const std::string& s) {
    if (s == "lex") return OrderKind::lex;
    if (s == "grlex") return OrderKind::grlex;
    if (s == "grevlex") return OrderKind::grevlex;
    throw InputError("unknown monomial order: " + s);
}

// Total multiplicative well-order on monomials. perm lists variable
// indices from most to least significant.
class MonomialOrder {
  public:
    MonomialOrder(OrderKind kind, size_t nvars) : kind_(kind), perm_(nvars) {
        std::iota(perm_.begin(), perm_.end(), 0);
    }

    MonomialOrder(OrderKind kind, std::vector<int> perm)
        : kind_(kind), perm_(std::move(perm)) {
        std::vector<bool> seen(perm_.size(), false);
        for (int i : perm_) {
            if (i < 0 || static_cast<size_t>(i) >= perm_.size() || seen[i])
                throw InputError("monomial order permutation is not a permutation");
            seen[i] = true;
        }
    }

    // lex order with the given variable moved to the front; used for
    // normal forms modulo a polynomial monic in that variable.
    static MonomialOrder lex_first(size_t nvars, size_t front) {
        std::vector<int> p;
        p.push_back(static_cast<int>(front));
        for (size_t i = 0; i < nvars; ++i)
            if (i != front) p.push_back(static_cast<int>(i));
        return MonomialOrder(OrderKind::lex, std::move(p));
    }

    OrderKind kind() const { return kind_; }
    const std::vector<int>& permutation() const { return perm_; }
    size_t nvars() const { return perm_.size(); }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
        if (kind_ != OrderKind::lex) {
            int64_t da = a.total_degree(), db = b.total_degree();
            if (da != db) return da <=> db;
        }
        switch (kind_) {
            case OrderKind::lex:
            case OrderKind::grlex:
                for (int i : perm_) {
                    if (a[i] != b[i]) return a[i] <=> b[i];
                }
                return std::strong_ordering::equal;
            case OrderKind::grevlex:
                for (auto it = perm_.rbegin(); it != perm_.rend(); ++it) {
                    int i = *it;
                    // smaller exponent in the least significant slot wins
                    if (a[i] != b[i]) return b[i] <=> a[i];
                }
                return std::strong_ordering::equal;
        }
        return std::strong_ordering::equal;
    }

    bool less(const Monomial& a, const Monomial& b) const {
        return compare(a, b) == std::strong_ordering::less;
    }

    // Ascending comparator for ordered term maps. The order object must
    // outlive the containers using it.
    struct Less {
        const MonomialOrder* order;
        bool operator()(const Monomial& a, const Monomial& b) const {
            return order->less(a, b);
        }
    };
    Less less_fn() const { return Less{this}; }

  private:
    OrderKind kind_;
    std::vector<int> perm_;
};

} // namespace ars

#endif
