#ifndef ARS_CONFIG_HPP
#define ARS_CONFIG_HPP

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ars/danielewski.hpp"
#include "ars/errors.hpp"
#include "ars/expr.hpp"
#include "ars/hypersurface.hpp"
#include "ars/param_fraction.hpp"
#include "ars/polynomial.hpp"
#include "ars/rational.hpp"

namespace ars {

using Json = nlohmann::json;

// A ring description as it appears on disk. Everything the command line
// does is relative to one of these: a hypersurface base ring k[vars]/(F)
// with a designated monic variable, and the pair (r, s) cutting out the
// quotient A = R[U, V]/(rU - sV - 1).
struct RingConfig {
    std::vector<std::string> base_vars;
    std::string relation;
    std::string designated;
    std::string r_expr;
    std::string s_expr;
    std::vector<std::string> params;
    bool irreducible = true;
    bool units_are_scalars = true;

    static RingConfig from_json(const Json& j) {
        if (!j.is_object()) throw InputError("ring config must be a JSON object");
        static const std::vector<std::string> known{
            "vars", "relation", "designated", "r", "s",
            "params", "irreducible", "units_are_scalars"};
        for (const auto& [key, value] : j.items())
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw InputError("ring config has an unknown field '" + key + "'");
        for (const char* req : {"vars", "relation", "designated", "r", "s"})
            if (!j.contains(req))
                throw InputError(std::string("ring config is missing '") + req + "'");

        RingConfig cfg;
        if (!j["vars"].is_array() || j["vars"].empty())
            throw InputError("ring config 'vars' must be a nonempty array of names");
        for (const auto& v : j["vars"]) {
            if (!v.is_string()) throw InputError("ring config 'vars' entries must be strings");
            cfg.base_vars.push_back(v.get<std::string>());
        }
        auto get_string = [&j](const char* key) {
            if (!j[key].is_string())
                throw InputError(std::string("ring config '") + key + "' must be a string");
            return j[key].get<std::string>();
        };
        cfg.relation = get_string("relation");
        cfg.designated = get_string("designated");
        cfg.r_expr = get_string("r");
        cfg.s_expr = get_string("s");
        if (j.contains("params")) {
            if (!j["params"].is_array())
                throw InputError("ring config 'params' must be an array of names");
            for (const auto& p : j["params"]) {
                if (!p.is_string())
                    throw InputError("ring config 'params' entries must be strings");
                cfg.params.push_back(p.get<std::string>());
            }
        }
        auto get_flag = [&j](const char* key, bool fallback) {
            if (!j.contains(key)) return fallback;
            if (!j[key].is_boolean())
                throw InputError(std::string("ring config '") + key + "' must be a boolean");
            return j[key].get<bool>();
        };
        cfg.irreducible = get_flag("irreducible", true);
        cfg.units_are_scalars = get_flag("units_are_scalars", true);
        return cfg;
    }

    static RingConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open ring config '" + path + "'");
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw InputError("ring config '" + path + "' is not valid JSON: " + e.what());
        }
        return from_json(j);
    }

    Json to_json() const {
        Json j;
        j["vars"] = base_vars;
        j["relation"] = relation;
        j["designated"] = designated;
        j["r"] = r_expr;
        j["s"] = s_expr;
        j["params"] = params;
        j["irreducible"] = irreducible;
        j["units_are_scalars"] = units_are_scalars;
        return j;
    }
};

namespace detail {

// Lower-case print names for residue classes; if lower-casing would merge
// two names, fall back to the originals wholesale.
inline std::vector<std::string> residue_names(const std::vector<std::string>& names) {
    std::vector<std::string> lowered;
    lowered.reserve(names.size());
    for (const auto& n : names) lowered.push_back(lower_copy(n));
    std::vector<std::string> sorted = lowered;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return names;
    return lowered;
}

} // namespace detail

// ---- the A <-> ambient chart --------------------------------------------
//
// A-elements travel as polynomials in the extended chart (base variables
// followed by U, V); the slice back regroups by (u, v)-exponents and
// normalizes.

template <CoefficientField K>
AElement<K> a_from_ambient(const ARingPtr<K>& A, const VarsPtr& ext, const Polynomial<K>& p) {
    require_same_vars(p.vars(), ext);
    const auto& base = A->base();
    size_t n = base->vars()->count();
    AElement<K> acc = A->zero();
    std::vector<AElement<K>> upow{A->one()};
    std::vector<AElement<K>> vpow{A->one()};
    for (const auto& [m, c] : p.terms()) {
        int32_t eu = m[n];
        int32_t ev = m[n + 1];
        std::vector<int32_t> be(n, 0);
        for (size_t i = 0; i < n; ++i) be[i] = m[i];
        Polynomial<K> bp = Polynomial<K>::term(base->vars(), Monomial(std::move(be)), c);
        while (static_cast<int32_t>(upow.size()) <= eu) upow.push_back(upow.back() * A->u());
        while (static_cast<int32_t>(vpow.size()) <= ev) vpow.push_back(vpow.back() * A->v());
        acc = acc + A->from_base(base->nf(bp)) * upow[eu] * vpow[ev];
    }
    return acc;
}

template <CoefficientField K>
Polynomial<K> a_to_ambient(const VarsPtr& ext, const AElement<K>& h) {
    size_t n = h.ring()->base()->vars()->count();
    if (ext->count() != n + 2)
        throw InternalError("extended chart does not match the ring");
    Polynomial<K> out(ext);
    for (const auto& [key, coeff] : h.terms()) {
        for (const auto& [m, c] : coeff.representative().terms()) {
            std::vector<int32_t> e(n + 2, 0);
            for (size_t i = 0; i < n; ++i) e[i] = m[i];
            e[n] = key.first;
            e[n + 1] = key.second;
            out.add_term(Monomial(std::move(e)), c);
        }
    }
    return out;
}

// A parsed, constructed ring with its expression contexts: the base ring is
// built eagerly, the Danielewski quotient lazily (so that commands which
// only probe the base — height2 in particular — can run even when the
// quotient would be rejected).
template <CoefficientField K>
struct RingBundle {
    RingConfig cfg;
    std::vector<std::string> params; // config params plus command-line extras
    HRingPtr<K> base;
    RElement<K> r_elem;
    RElement<K> s_elem;
    VarsPtr ext; // base vars plus U, V: the ambient chart for A-expressions
    ExprContext<K> base_ctx;
    ExprContext<K> ext_ctx;
    std::vector<std::string> base_names; // residue print names
    std::vector<std::string> ext_names;
    mutable ARingPtr<K> ring_cache; // built on first use by ring()

    static RingBundle build(const RingConfig& cfg,
                            const std::vector<std::string>& extra_params = {}) {
        std::vector<std::string> params = cfg.params;
        for (const auto& p : extra_params)
            if (std::find(params.begin(), params.end(), p) == params.end())
                params.push_back(p);
        if constexpr (!std::is_same_v<K, ParamFraction>) {
            if (!params.empty())
                throw InternalError("parameters declared over a parameter-free field");
        }

        for (const auto& n : cfg.base_vars)
            if (!detail::valid_identifier(n))
                throw InputError("variable name '" + n + "' is not an identifier");
        {
            auto sorted = cfg.base_vars;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw InputError("variable names must be distinct");
        }

        auto vars = VariableSet::make(cfg.base_vars);
        auto base_ctx = ExprContext<K>::over(vars);
        if constexpr (std::is_same_v<K, ParamFraction>) {
            for (size_t i = 0; i < params.size(); ++i)
                base_ctx.add_constant(params[i], ParamFraction::parameter(i));
        }

        size_t w_index = cfg.base_vars.size();
        for (size_t i = 0; i < cfg.base_vars.size(); ++i)
            if (cfg.base_vars[i] == cfg.designated) w_index = i;
        if (w_index == cfg.base_vars.size())
            throw InputError("designated variable '" + cfg.designated +
                             "' is not one of the declared names");

        Polynomial<K> f = parse_expression<K>(cfg.relation, base_ctx);
        auto base = HypersurfaceRing<K>::make(vars, f, w_index, cfg.irreducible);
        RElement<K> r = base->nf(parse_expression<K>(cfg.r_expr, base_ctx));
        RElement<K> s = base->nf(parse_expression<K>(cfg.s_expr, base_ctx));
        if (r.is_zero() || s.is_zero())
            throw InputError("r and s must be nonzero in the base ring");

        std::vector<std::string> ext_names_raw = cfg.base_vars;
        auto taken = [&ext_names_raw](const std::string& n) {
            return std::find(ext_names_raw.begin(), ext_names_raw.end(), n) !=
                   ext_names_raw.end();
        };
        std::string uname = "U";
        while (taken(uname) || taken(detail::lower_copy(uname))) uname += "_";
        ext_names_raw.push_back(uname);
        std::string vname = "V";
        while (taken(vname) || taken(detail::lower_copy(vname))) vname += "_";
        ext_names_raw.push_back(vname);

        auto ext = VariableSet::make(ext_names_raw);
        auto ext_ctx = ExprContext<K>::over(ext);
        if constexpr (std::is_same_v<K, ParamFraction>) {
            for (size_t i = 0; i < params.size(); ++i)
                ext_ctx.add_constant(params[i], ParamFraction::parameter(i));
        }

        RingBundle b{cfg,
                     std::move(params),
                     std::move(base),
                     std::move(r),
                     std::move(s),
                     std::move(ext),
                     std::move(base_ctx),
                     std::move(ext_ctx),
                     detail::residue_names(cfg.base_vars),
                     detail::residue_names(ext_names_raw)};
        return b;
    }

    // The quotient A_{r,s}; constructing it runs the height-2 gate.
    const ARingPtr<K>& ring() const {
        if (!ring_cache) ring_cache = DanielewskiRing<K>::make(r_elem, s_elem);
        return ring_cache;
    }

    // ---- parsing --------------------------------------------------------

    Polynomial<K> parse_ambient(const std::string& text) const {
        return parse_expression<K>(text, base_ctx);
    }

    RElement<K> parse_base(const std::string& text) const {
        return base->nf(parse_ambient(text));
    }

    AElement<K> parse_a(const std::string& text) const {
        return a_from_ambient(ring(), ext, parse_expression<K>(text, ext_ctx));
    }

    // ---- printing -------------------------------------------------------

    // Ambient polynomials print with the declared (upper-case) names,
    // residue classes with the lower-case ones.
    std::string print_ambient(const Polynomial<K>& p) const {
        return print_polynomial(p, cfg.base_vars, params);
    }

    std::string print_base(const RElement<K>& c) const {
        return print_polynomial(c.representative(), base_names, params);
    }

    std::string print_a(const AElement<K>& h) const {
        return print_polynomial(a_to_ambient(ext, h), ext_names, params);
    }

    // Parse an A-expression into an explicitly given ring (used when two
    // structurally equal configs must share one base instance).
    AElement<K> parse_a_into(const ARingPtr<K>& target_ring, const std::string& text) const {
        return a_from_ambient(target_ring, ext, parse_expression<K>(text, ext_ctx));
    }
};

// Two configs describe the same base ring when their constructions agree
// structurally and their parameter lists coincide.
template <CoefficientField K>
void require_common_base(const RingBundle<K>& a, const RingBundle<K>& b) {
    if (!a.base->same_structure(*b.base))
        throw InputError("the two ring configs must share the same base ring");
    if (a.params != b.params)
        throw InputError("the two ring configs must declare the same parameters");
}

} // namespace ars

#endif
