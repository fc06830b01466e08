#ifndef ARS_TESTS_MACAULAY_ORACLE_HPP
#define ARS_TESTS_MACAULAY_ORACLE_HPP

// Brute-force bounded ideal membership by exact linear algebra: a Macaulay
// matrix over the rationals, solved by Gaussian elimination. Deliberately
// naive and independent of the Buchberger engine, so the two can be played
// against each other. Test-only: quadratic-ish and proud of it.

#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "ars/groebner.hpp"
#include "ars/order.hpp"
#include "ars/polynomial.hpp"
#include "ars/rational.hpp"
#include "test_support.hpp"

namespace ars::testing {

inline std::vector<Monomial> monomials_up_to(size_t nvars, int bound) {
    std::vector<Monomial> out;
    std::vector<int32_t> cur(nvars, 0);
    std::function<void(size_t, int)> rec = [&](size_t pos, int room) {
        if (pos == nvars) {
            out.emplace_back(cur);
            return;
        }
        for (int e = 0; e <= room; ++e) {
            cur[pos] = e;
            rec(pos + 1, room - e);
        }
        cur[pos] = 0;
    };
    if (bound >= 0) rec(0, bound);
    return out;
}

// Does f admit cofactors c_i with f = sum c_i*g_i and deg(c_i*g_i) <= bound?
inline bool macaulay_member(const Polynomial<Rational>& f,
                            const std::vector<Polynomial<Rational>>& gens, int bound) {
    size_t nvars = f.vars()->count();
    std::map<Monomial, size_t> row_of;
    auto row_index = [&](const Monomial& m) {
        return row_of.emplace(m, row_of.size()).first->second;
    };

    std::vector<std::vector<std::pair<size_t, Rational>>> cols;
    for (const auto& g : gens) {
        int room = bound - static_cast<int>(g.total_degree());
        for (const auto& m : monomials_up_to(nvars, room)) {
            auto& col = cols.emplace_back();
            for (const auto& [gm, gc] : g.terms()) col.emplace_back(row_index(gm * m), gc);
        }
    }
    for (const auto& [m, c] : f.terms()) row_index(m);

    size_t nrows = row_of.size(), ncols = cols.size();
    std::vector<std::vector<Rational>> a(nrows, std::vector<Rational>(ncols + 1));
    for (size_t j = 0; j < ncols; ++j)
        for (const auto& [r, c] : cols[j]) a[r][j] = a[r][j] + c;
    for (const auto& [m, c] : f.terms()) a[row_of.at(m)][ncols] = c;

    // forward elimination; consistency = no all-zero row with nonzero rhs
    size_t pivot_row = 0;
    for (size_t j = 0; j < ncols && pivot_row < nrows; ++j) {
        size_t p = pivot_row;
        while (p < nrows && a[p][j].is_zero()) ++p;
        if (p == nrows) continue;
        std::swap(a[p], a[pivot_row]);
        Rational inv = a[pivot_row][j].inverse();
        for (size_t jj = j; jj <= ncols; ++jj) a[pivot_row][jj] = a[pivot_row][jj] * inv;
        for (size_t r = pivot_row + 1; r < nrows; ++r) {
            if (a[r][j].is_zero()) continue;
            Rational factor = a[r][j];
            for (size_t jj = j; jj <= ncols; ++jj)
                a[r][jj] = a[r][jj] - factor * a[pivot_row][jj];
        }
        ++pivot_row;
    }
    for (size_t r = pivot_row; r < nrows; ++r)
        if (!a[r][ncols].is_zero()) return false;
    return true;
}

struct AgreementStats {
    int rounds = 0;
    int failures = 0;
    int members = 0;
    int nonmembers = 0;
};

// Plays ideal_member against macaulay_member on random small instances
// (<=3 variables, generator degrees <=3, oracle bound 6). Checks, where each
// side is authoritative:
//   * every membership certificate reproduces f exactly,
//   * oracle-found membership implies a Buchberger certificate,
//   * a Buchberger certificate of degree <=6 implies oracle membership,
//   * f built as an explicit combination must be recognized by both.
inline AgreementStats run_macaulay_agreement(Rng& rng, int rounds) {
    using Poly = Polynomial<Rational>;
    AgreementStats st;
    auto v2 = VariableSet::make({"X", "Y"});
    auto v3 = VariableSet::make({"X", "Y", "Z"});
    MonomialOrder o2(OrderKind::grevlex, 2), o3(OrderKind::grevlex, 3);
    for (int round = 0; round < rounds; ++round) {
        bool three_vars = round % 3 == 0;
        const VarsPtr& vars = three_vars ? v3 : v2;
        const MonomialOrder& order = three_vars ? o3 : o2;

        std::vector<Poly> gens;
        int ngens = random_int(rng, 1, 3);
        for (int i = 0; i < ngens; ++i)
            gens.push_back(random_nonzero_poly_tdeg(rng, vars, 3, 3));

        bool constructed = round % 2 == 0;
        Poly f(vars);
        if (constructed) {
            for (const auto& g : gens) f = f + random_poly_tdeg(rng, vars, 2, 2) * g;
        } else {
            f = random_poly_tdeg(rng, vars, 4, 4);
        }

        auto mem = ideal_member(f, gens, order);
        bool oracle = macaulay_member(f, gens, 6);

        bool ok = true;
        if (constructed && !mem) ok = false;
        if (oracle && !mem) ok = false;
        if (mem) {
            Poly combo(vars);
            int cert_deg = 0;
            for (size_t i = 0; i < gens.size(); ++i) {
                if ((*mem)[i].is_zero()) continue;
                Poly part = (*mem)[i] * gens[i];
                cert_deg = std::max<int>(cert_deg, static_cast<int>(part.total_degree()));
                combo = combo + part;
            }
            if (!(combo == f)) ok = false;
            if (cert_deg <= 6 && !oracle) ok = false;
        }

        if (!ok) ++st.failures;
        mem ? ++st.members : ++st.nonmembers;
        ++st.rounds;
    }
    return st;
}

} // namespace ars::testing

#endif
