#ifndef ARS_GROEBNER_HPP
#define ARS_GROEBNER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ars/errors.hpp"
#include "ars/order.hpp"
#include "ars/polynomial.hpp"

namespace ars {

// Buchberger engine with exact cofactor tracking: every element of a basis
// carries the combination of the original generators that produces it, so
// membership answers double as certificates checkable by one multiplication.

template <CoefficientField K>
struct DivisionResult {
    std::vector<Polynomial<K>> quotients; // aligned with the divisor list
    Polynomial<K> remainder;
};

namespace detail {

// Division loops keep the running tail keyed by the active monomial order,
// so the leading term is the last map entry and merges are logarithmic.
template <CoefficientField K>
using OrderedTail = std::map<Monomial, K, MonomialOrder::Less>;

template <CoefficientField K>
OrderedTail<K> to_tail(const Polynomial<K>& p, const MonomialOrder& order) {
    OrderedTail<K> tail(order.less_fn());
    for (const auto& [m, c] : p.terms()) tail.emplace(m, c);
    return tail;
}

template <CoefficientField K>
void tail_sub_scaled(OrderedTail<K>& tail, const Polynomial<K>& p, const K& c,
                     const Monomial& shift) {
    for (const auto& [m, k] : p.terms()) {
        Monomial target = m * shift;
        K delta = k * c;
        auto it = tail.find(target);
        if (it == tail.end()) {
            if (!delta.is_zero()) tail.emplace(std::move(target), -delta);
        } else {
            it->second = it->second - delta;
            if (it->second.is_zero()) tail.erase(it);
        }
    }
}

} // namespace detail

// Multivariate division: f = sum quotients[i]*divisors[i] + remainder, and no
// remainder term is divisible by any divisor's leading monomial. The divisor
// scanned first on each step is the first in list order, which makes the
// result deterministic.
template <CoefficientField K>
DivisionResult<K> divide_with_cofactors(const Polynomial<K>& f,
                                        const std::vector<Polynomial<K>>& divisors,
                                        const MonomialOrder& order) {
    if (divisors.empty()) throw MathError("division by an empty divisor list");
    struct Lead {
        Monomial mono;
        K coeff_inv;
    };
    std::vector<Lead> leads;
    leads.reserve(divisors.size());
    for (const auto& d : divisors) {
        if (d.is_zero()) throw MathError("division by zero polynomial");
        require_same_vars(f.vars(), d.vars());
        const auto& lt = d.leading_term(order);
        leads.push_back(Lead{lt.first, lt.second.inverse()});
    }

    DivisionResult<K> out{std::vector<Polynomial<K>>(divisors.size(), Polynomial<K>(f.vars())),
                          Polynomial<K>(f.vars())};
    auto tail = detail::to_tail(f, order);
    while (!tail.empty()) {
        auto top = std::prev(tail.end());
        const Monomial& mono = top->first;
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            if (!leads[i].mono.divides(mono)) continue;
            Monomial shift = leads[i].mono.quotient_of(mono);
            K scale = top->second * leads[i].coeff_inv;
            out.quotients[i].add_term(shift, scale);
            // the divisor's shifted leading term cancels the head exactly
            detail::tail_sub_scaled(tail, divisors[i], scale, shift);
            reduced = true;
            break;
        }
        if (!reduced) {
            out.remainder.add_term(mono, top->second);
            tail.erase(top);
        }
    }
    return out;
}

template <CoefficientField K>
struct GroebnerBasis {
    std::vector<Polynomial<K>> generators;
    std::vector<Polynomial<K>> basis; // reduced: monic, mutually irreducible
    // basis[i] = sum_j cofactors[i][j] * generators[j], exactly
    std::vector<std::vector<Polynomial<K>>> cofactors;
    MonomialOrder order;
};

// Reduced Groebner basis by Buchberger's algorithm, normal selection
// strategy (smallest S-pair lcm first, ties by index). The output is the
// canonical reduced basis, sorted by leading monomial ascending.
template <CoefficientField K>
GroebnerBasis<K> buchberger(const std::vector<Polynomial<K>>& gens, const MonomialOrder& order) {
    if (gens.empty()) throw MathError("empty generator list");
    const VarsPtr& vars = gens.front().vars();
    for (const auto& g : gens) {
        if (g.is_zero()) throw MathError("zero polynomial among generators");
        require_same_vars(vars, g.vars());
    }

    struct Entry {
        Polynomial<K> poly;
        std::vector<Polynomial<K>> cof;
    };
    std::vector<Entry> work;
    for (size_t i = 0; i < gens.size(); ++i) {
        std::vector<Polynomial<K>> cof(gens.size(), Polynomial<K>(vars));
        cof[i] = Polynomial<K>::constant(vars, K::one());
        work.push_back(Entry{gens[i], std::move(cof)});
    }

    struct Pair {
        Monomial lcm;
        size_t i, j;
    };
    struct PairLess {
        const MonomialOrder* order;
        bool operator()(const Pair& a, const Pair& b) const {
            if (auto c = order->compare(a.lcm, b.lcm); c != 0) return c < 0;
            if (a.i != b.i) return a.i < b.i;
            return a.j < b.j;
        }
    };
    std::set<Pair, PairLess> queue{PairLess{&order}};
    auto push_pairs = [&](size_t k) {
        const Monomial& lk = work[k].poly.leading_term(order).first;
        for (size_t i = 0; i < k; ++i) {
            const Monomial& li = work[i].poly.leading_term(order).first;
            Monomial l = Monomial::lcm(li, lk);
            if (l == li * lk) continue; // coprime leading monomials: S-pair reduces to 0
            queue.insert(Pair{std::move(l), i, k});
        }
    };
    for (size_t k = 1; k < work.size(); ++k) push_pairs(k);

    auto current_polys = [&]() {
        std::vector<Polynomial<K>> ps;
        ps.reserve(work.size());
        for (const auto& e : work) ps.push_back(e.poly);
        return ps;
    };

    while (!queue.empty()) {
        Pair pr = *queue.begin();
        queue.erase(queue.begin());
        const auto& [li, ci] = work[pr.i].poly.leading_term(order);
        const auto& [lj, cj] = work[pr.j].poly.leading_term(order);
        Monomial l = Monomial::lcm(li, lj);
        Polynomial<K> s = work[pr.i].poly.scaled_shifted(ci.inverse(), li.quotient_of(l)) -
                          work[pr.j].poly.scaled_shifted(cj.inverse(), lj.quotient_of(l));
        if (s.is_zero()) continue;
        auto div = divide_with_cofactors(s, current_polys(), order);
        if (div.remainder.is_zero()) continue;

        std::vector<Polynomial<K>> cof(gens.size(), Polynomial<K>(vars));
        auto accumulate = [&](const Entry& e, const Polynomial<K>& factor, bool negate) {
            for (size_t g = 0; g < gens.size(); ++g) {
                if (e.cof[g].is_zero() || factor.is_zero()) continue;
                Polynomial<K> t = factor * e.cof[g];
                cof[g] = negate ? cof[g] - t : cof[g] + t;
            }
        };
        auto mono_poly = [&](const K& c, const Monomial& m) {
            return Polynomial<K>::term(vars, m, c);
        };
        accumulate(work[pr.i], mono_poly(ci.inverse(), li.quotient_of(l)), false);
        accumulate(work[pr.j], mono_poly(cj.inverse(), lj.quotient_of(l)), true);
        for (size_t k = 0; k < work.size(); ++k)
            accumulate(work[k], div.quotients[k], true);

        work.push_back(Entry{div.remainder, std::move(cof)});
        push_pairs(work.size() - 1);
    }

    // Minimalize: drop any element whose leading monomial is divisible by the
    // leading monomial of another survivor.
    std::vector<bool> keep(work.size(), true);
    for (size_t i = 0; i < work.size(); ++i) {
        if (!keep[i]) continue;
        const Monomial& li = work[i].poly.leading_term(order).first;
        for (size_t j = 0; j < work.size(); ++j) {
            if (i == j || !keep[j]) continue;
            const Monomial& lj = work[j].poly.leading_term(order).first;
            if (lj.divides(li) && !(li == lj && j > i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Entry> minimal;
    for (size_t i = 0; i < work.size(); ++i)
        if (keep[i]) minimal.push_back(std::move(work[i]));

    // Inter-reduce tails. Leading monomials are mutually irreducible, so one
    // pass of full normal forms yields the reduced basis; cofactors follow.
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial<K>> others;
        std::vector<size_t> other_index;
        for (size_t j = 0; j < minimal.size(); ++j) {
            if (j == i) continue;
            others.push_back(minimal[j].poly);
            other_index.push_back(j);
        }
        if (!others.empty()) {
            auto div = divide_with_cofactors(minimal[i].poly, others, order);
            minimal[i].poly = div.remainder;
            for (size_t t = 0; t < others.size(); ++t) {
                if (div.quotients[t].is_zero()) continue;
                const auto& used = minimal[other_index[t]];
                for (size_t g = 0; g < gens.size(); ++g) {
                    if (used.cof[g].is_zero()) continue;
                    minimal[i].cof[g] = minimal[i].cof[g] - div.quotients[t] * used.cof[g];
                }
            }
        }
        K lc = minimal[i].poly.leading_term(order).second;
        if (!lc.is_one()) {
            K inv = lc.inverse();
            minimal[i].poly = minimal[i].poly.scaled(inv);
            for (auto& c : minimal[i].cof) c = c.scaled(inv);
        }
    }

    std::sort(minimal.begin(), minimal.end(), [&](const Entry& a, const Entry& b) {
        return order.less(a.poly.leading_term(order).first, b.poly.leading_term(order).first);
    });

    GroebnerBasis<K> out{gens, {}, {}, order};
    for (auto& e : minimal) {
        out.basis.push_back(std::move(e.poly));
        out.cofactors.push_back(std::move(e.cof));
    }
    return out;
}

// Membership with a certificate over the *original* generators: Some(c) with
// f = sum c[i]*generators[i], or nullopt.
template <CoefficientField K>
std::optional<std::vector<Polynomial<K>>> ideal_member(const Polynomial<K>& f,
                                                       const GroebnerBasis<K>& gb) {
    const VarsPtr& vars = f.vars();
    if (f.is_zero()) return std::vector<Polynomial<K>>(gb.generators.size(), Polynomial<K>(vars));
    auto div = divide_with_cofactors(f, gb.basis, gb.order);
    if (!div.remainder.is_zero()) return std::nullopt;
    std::vector<Polynomial<K>> cof(gb.generators.size(), Polynomial<K>(vars));
    for (size_t b = 0; b < gb.basis.size(); ++b) {
        if (div.quotients[b].is_zero()) continue;
        for (size_t g = 0; g < gb.generators.size(); ++g) {
            if (gb.cofactors[b][g].is_zero()) continue;
            cof[g] = cof[g] + div.quotients[b] * gb.cofactors[b][g];
        }
    }
    return cof;
}

template <CoefficientField K>
std::optional<std::vector<Polynomial<K>>> ideal_member(const Polynomial<K>& f,
                                                       const std::vector<Polynomial<K>>& gens,
                                                       const MonomialOrder& order) {
    return ideal_member(f, buchberger(gens, order));
}

template <CoefficientField K>
bool ideal_equal(const std::vector<Polynomial<K>>& gens_i,
                 const std::vector<Polynomial<K>>& gens_j, const MonomialOrder& order) {
    auto gb_i = buchberger(gens_i, order);
    auto gb_j = buchberger(gens_j, order);
    for (const auto& g : gens_i)
        if (!ideal_member(g, gb_j)) return false;
    for (const auto& g : gens_j)
        if (!ideal_member(g, gb_i)) return false;
    return true;
}

template <CoefficientField K>
struct RadicalWitness {
    unsigned power; // minimal N with f^N in the ideal
    std::vector<Polynomial<K>> cofactors;
};

// Minimal N <= n_max with f^N in (gens), found by direct search from N = 1;
// nullopt means "no witness within the budget", never "not in the radical".
template <CoefficientField K>
std::optional<RadicalWitness<K>> radical_power_member(const Polynomial<K>& f,
                                                      const std::vector<Polynomial<K>>& gens,
                                                      unsigned n_max, const MonomialOrder& order) {
    if (n_max < 1) throw InputError("power budget must be at least 1");
    auto gb = buchberger(gens, order);
    Polynomial<K> fpow = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (auto cof = ideal_member(fpow, gb)) return RadicalWitness<K>{n, std::move(*cof)};
        if (n < n_max) fpow = fpow * f;
    }
    return std::nullopt;
}

template <CoefficientField K>
bool is_proper(const GroebnerBasis<K>& gb) {
    for (const auto& g : gb.basis)
        if (g.is_constant()) return false;
    return true;
}

template <CoefficientField K>
bool is_proper(const std::vector<Polynomial<K>>& gens, const MonomialOrder& order) {
    return is_proper(buchberger(gens, order));
}

// Finiteness of the vanishing set, by the staircase criterion: every
// variable must show a pure power among the leading monomials.
template <CoefficientField K>
bool is_zero_dimensional(const GroebnerBasis<K>& gb) {
    if (!is_proper(gb)) throw MathError("zero-dimensionality asked of the unit ideal");
    size_t nvars = gb.generators.front().vars()->count();
    std::vector<bool> covered(nvars, false);
    for (const auto& g : gb.basis) {
        const Monomial& lm = g.leading_term(gb.order).first;
        int pure_var = -1;
        bool pure = true;
        for (size_t v = 0; v < nvars; ++v) {
            if (lm[v] == 0) continue;
            if (pure_var != -1) {
                pure = false;
                break;
            }
            pure_var = static_cast<int>(v);
        }
        if (pure && pure_var != -1) covered[static_cast<size_t>(pure_var)] = true;
    }
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
}

template <CoefficientField K>
bool is_zero_dimensional(const std::vector<Polynomial<K>>& gens, const MonomialOrder& order) {
    return is_zero_dimensional(buchberger(gens, order));
}

} // namespace ars

#endif
