#ifndef ARS_FIELD_HPP
#define ARS_FIELD_HPP

#include <concepts>

#include "ars/rational.hpp"

namespace ars {

// Contract every coefficient field satisfies: exact arithmetic, exact
// zero test, exact inversion of nonzero elements. All values immutable.
template <typename K>
concept CoefficientField =
    std::regular<K> &&
    requires(const K a, const K b) {
        { a + b } -> std::convertible_to<K>;
        { a - b } -> std::convertible_to<K>;
        { a * b } -> std::convertible_to<K>;
        { -a } -> std::convertible_to<K>;
        { a.inverse() } -> std::convertible_to<K>;
        { a.is_zero() } -> std::convertible_to<bool>;
        { a.is_one() } -> std::convertible_to<bool>;
        { a.sign() } -> std::convertible_to<int>;
        { K::zero() } -> std::convertible_to<K>;
        { K::one() } -> std::convertible_to<K>;
        { K::from_rational(Rational()) } -> std::convertible_to<K>;
        { a.to_string() } -> std::convertible_to<std::string>;
    };

} // namespace ars

#endif
