#ifndef ARS_VARIABLES_HPP
#define ARS_VARIABLES_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "ars/errors.hpp"

namespace ars {

// Fixed ordered variable list shared by all polynomials of one ring.
// At most one variable (laurent_index) may carry negative exponents.
class VariableSet {
  public:
    static std::shared_ptr<const VariableSet> make(std::vector<std::string> names,
                                                   int laurent_index = -1) {
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw InputError("duplicate variable name: " + names[i]);
        if (laurent_index >= static_cast<int>(names.size()))
            throw InputError("laurent index out of range");
        return std::shared_ptr<const VariableSet>(
            new VariableSet(std::move(names), laurent_index));
    }

    size_t count() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    int laurent_index() const { return laurent_index_; }

    int index_of(std::string_view name) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return static_cast<int>(i);
        return -1;
    }

    bool same_as(const VariableSet& o) const {
        return this == &o || (names_ == o.names_ && laurent_index_ == o.laurent_index_);
    }

  private:
    VariableSet(std::vector<std::string> names, int laurent_index)
        : names_(std::move(names)), laurent_index_(laurent_index) {}

    std::vector<std::string> names_;
    int laurent_index_;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

inline void require_same_vars(const VarsPtr& a, const VarsPtr& b) {
    if (!a || !b || !a->same_as(*b))
        throw MathError("variable-list mismatch between operands");
}

// Exponent vector over a fixed variable list. Negative entries are legal
// only in the designated Laurent slot; Polynomial enforces that.
class Monomial {
  public:
    explicit Monomial(size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int32_t> exps) : e_(std::move(exps)) {}

    static Monomial unit(size_t nvars, size_t var, int32_t exp = 1) {
        Monomial m(nvars);
        m.e_.at(var) = exp;
        return m;
    }

    size_t size() const { return e_.size(); }
    int32_t operator[](size_t i) const { return e_[i]; }
    const std::vector<int32_t>& exponents() const { return e_; }

    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](int32_t x) { return x == 0; });
    }

    int64_t total_degree() const {
        return std::accumulate(e_.begin(), e_.end(), int64_t{0});
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    // Componentwise a <= b; only meaningful for non-negative exponents.
    bool divides(const Monomial& b) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > b.e_[i]) return false;
        return true;
    }

    // b / a, assuming divides().
    Monomial quotient_of(const Monomial& b) const {
        Monomial r = b;
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    bool has_negative() const {
        return std::any_of(e_.begin(), e_.end(), [](int32_t x) { return x < 0; });
    }

    // Storage order only; monomial orders for Groebner work live elsewhere.
    auto operator<=>(const Monomial& o) const = default;

  private:
    std::vector<int32_t> e_;
};

} // namespace ars

#endif
