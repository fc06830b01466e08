#ifndef ARS_EXPR_HPP
#define ARS_EXPR_HPP

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ars/errors.hpp"
#include "ars/field.hpp"
#include "ars/param_fraction.hpp"
#include "ars/polynomial.hpp"
#include "ars/rational.hpp"
#include "ars/variables.hpp"

namespace ars {

// Expression surface for the command line:
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' natural)?
//   atom   := identifier | integer | integer '/' positive-integer
//           | '(' expr ')' | '-' atom
//
// There is no implicit multiplication. Identifiers are case-sensitive; the
// all-lower-case form of a variable name is accepted as an alias for that
// variable (the residue-class spelling), unless that spelling is itself a
// declared name. Parse errors carry 1-based character positions.

namespace detail {

inline std::string lower_copy(const std::string& s) {
    std::string r = s;
    for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return r;
}

inline bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

inline bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline bool valid_identifier(const std::string& s) {
    if (s.empty() || !ident_start(s[0])) return false;
    for (char c : s)
        if (!ident_char(c)) return false;
    return true;
}

} // namespace detail

// Name resolution for the parser: variable names (with lower-case aliases)
// plus named scalar constants (the declared parameters).
template <CoefficientField K>
struct ExprContext {
    VarsPtr vars;
    std::map<std::string, size_t> variables;
    std::map<std::string, K> constants;

    static ExprContext over(VarsPtr vars) {
        ExprContext ctx;
        ctx.vars = std::move(vars);
        const auto& names = ctx.vars->names();
        for (size_t i = 0; i < names.size(); ++i) ctx.variables.emplace(names[i], i);
        for (size_t i = 0; i < names.size(); ++i) {
            std::string alias = detail::lower_copy(names[i]);
            if (alias != names[i]) ctx.variables.emplace(alias, i); // no-op if taken
        }
        return ctx;
    }

    void add_constant(const std::string& name, K value) {
        if (!detail::valid_identifier(name))
            throw InputError("constant name '" + name + "' is not an identifier");
        if (variables.count(name) || constants.count(name))
            throw InputError("constant name '" + name + "' collides with another name");
        constants.emplace(name, std::move(value));
    }
};

template <CoefficientField K>
Polynomial<K> poly_pow(const Polynomial<K>& p, unsigned n) {
    Polynomial<K> acc = Polynomial<K>::constant(p.vars(), K::one());
    Polynomial<K> sq = p;
    while (n > 0) {
        if (n & 1u) acc = acc * sq;
        n >>= 1u;
        if (n > 0) sq = sq * sq;
    }
    return acc;
}

namespace detail {

template <CoefficientField K>
class ExprParser {
  public:
    ExprParser(std::string_view text, const ExprContext<K>& ctx) : text_(text), ctx_(ctx) {}

    Polynomial<K> parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty expression");
        Polynomial<K> p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

  private:
    std::string_view text_;
    const ExprContext<K>& ctx_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("parse error at position " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    Polynomial<K> parse_expr() {
        Polynomial<K> acc = parse_term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + parse_term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - parse_term();
            } else {
                return acc;
            }
        }
    }

    Polynomial<K> parse_term() {
        Polynomial<K> acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') return acc;
            ++pos_;
            acc = acc * parse_factor();
        }
    }

    Polynomial<K> parse_factor() {
        Polynomial<K> base = parse_atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        return poly_pow(base, parse_natural());
    }

    unsigned parse_natural() {
        skip_ws();
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("exponent must be a natural number");
        unsigned long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<unsigned long>(peek() - '0');
            if (v > 1000000) fail("exponent too large");
            ++pos_;
        }
        return static_cast<unsigned>(v);
    }

    Rational parse_integer_literal() {
        Rational v(0);
        const Rational ten(10);
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * ten + Rational(peek() - '0');
            ++pos_;
        }
        return v;
    }

    Polynomial<K> parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial<K> p = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return p;
        }
        if (c == '-') {
            ++pos_;
            return -parse_atom();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational num = parse_integer_literal();
            size_t before = pos_;
            skip_ws();
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                size_t den_pos = pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected a positive integer denominator");
                Rational den = parse_integer_literal();
                if (den.is_zero()) {
                    pos_ = den_pos;
                    fail("denominator must be positive");
                }
                num = num * den.inverse();
            } else {
                pos_ = before;
            }
            return Polynomial<K>::constant(ctx_.vars, K::from_rational(num));
        }
        if (ident_start(c)) {
            size_t start = pos_;
            while (ident_char(peek())) ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (auto it = ctx_.variables.find(name); it != ctx_.variables.end())
                return Polynomial<K>::variable(ctx_.vars, it->second);
            if (auto it = ctx_.constants.find(name); it != ctx_.constants.end())
                return Polynomial<K>::constant(ctx_.vars, it->second);
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace detail

template <CoefficientField K>
Polynomial<K> parse_expression(std::string_view text, const ExprContext<K>& ctx) {
    return detail::ExprParser<K>(text, ctx).parse();
}

// Parse an expression with no variables in scope (constants only) down to a
// single scalar.
template <CoefficientField K>
K parse_scalar_expression(std::string_view text, const std::vector<std::string>& param_names) {
    auto ctx = ExprContext<K>::over(VariableSet::make({}));
    if constexpr (std::is_same_v<K, ParamFraction>) {
        for (size_t i = 0; i < param_names.size(); ++i)
            ctx.add_constant(param_names[i], ParamFraction::parameter(i));
    } else {
        if (!param_names.empty())
            throw InternalError("parameters declared over a parameter-free field");
    }
    auto c = parse_expression(text, ctx).as_constant();
    if (!c) throw InternalError("constant expression parsed to a non-constant");
    return *c;
}

// ------------------------------------------------------------------ printing
//
// The printer emits strings inside the same grammar, deterministically:
// terms in descending monomial (map) order, " + " / " - " separators, "^"
// powers, explicit "*" everywhere. Reparsing a printed string recovers the
// polynomial exactly.
//
// One corner needs care: in "-x^2" the grammar binds the leading minus into
// the atom, so the exponent would apply to (-x). A leading negative term
// therefore keeps an explicit "1*" whenever its first factor carries an
// exponent.

namespace detail {

inline std::string print_monomial_factors(const Monomial& m,
                                          const std::vector<std::string>& names) {
    std::string out;
    for (size_t v = 0; v < names.size(); ++v) {
        int32_t e = m[v];
        if (e == 0) continue;
        if (e < 0)
            throw InputError("negative exponents have no expression form");
        if (!out.empty()) out += "*";
        out += names[v];
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

inline int32_t first_factor_exponent(const Monomial& m, size_t nvars) {
    for (size_t v = 0; v < nvars; ++v)
        if (m[v] != 0) return m[v];
    return 0;
}

// Positive-coefficient body, e.g. "3/4" — the sign is handled by the caller.
inline std::string coeff_body(const Rational& c, const std::vector<std::string>&) {
    return c.to_string();
}

std::string print_param_poly(const ParamPoly& p, const std::vector<std::string>& names);

// Positive-leading-sign body for a parameter coefficient; the fraction must
// have already been normalized to denominator 1 (constant denominators
// normalize away), anything else has no in-grammar spelling.
inline std::string coeff_body(const ParamFraction& c, const std::vector<std::string>& params) {
    if (!(c.denominator() == ParamPoly::constant(Rational(1))))
        throw InputError("coefficient has a parameter denominator; "
                         "print it as a numerator/denominator pair instead");
    if (auto q = c.numerator().as_rational()) return q->to_string();
    return "(" + print_param_poly(c.numerator(), params) + ")";
}

} // namespace detail

template <CoefficientField K>
std::string print_polynomial(const Polynomial<K>& p, const std::vector<std::string>& names,
                             const std::vector<std::string>& param_names = {}) {
    if (names.size() != p.vars()->count())
        throw InputError("print names do not match the variable count");
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool neg = c.sign() < 0;
        K mag = neg ? -c : c;
        std::string mono = detail::print_monomial_factors(m, names);
        std::string body;
        if (mono.empty()) {
            body = detail::coeff_body(mag, param_names);
        } else if (mag.is_one()) {
            bool keep_one =
                first && neg && detail::first_factor_exponent(m, names.size()) > 1;
            body = keep_one ? "1*" + mono : mono;
        } else {
            body = detail::coeff_body(mag, param_names) + "*" + mono;
        }
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    return out;
}

namespace detail {

inline std::string print_param_poly(const ParamPoly& p, const std::vector<std::string>& names) {
    auto vars = VariableSet::make(names);
    Polynomial<Rational> q(vars);
    for (const auto& [k, c] : p.terms()) {
        if (k.size() > names.size())
            throw InputError("parameter index out of range for the declared names");
        std::vector<int32_t> e(names.size(), 0);
        for (size_t i = 0; i < k.size(); ++i) e[i] = k[i];
        q.add_term(Monomial(std::move(e)), c);
    }
    return print_polynomial(q, names);
}

} // namespace detail

// A standalone scalar as a {numerator, denominator} pair of expressions;
// this covers values (conjugation multipliers, recognized translation
// amounts) whose denominator genuinely involves parameters.
inline std::pair<std::string, std::string> scalar_strings(const Rational& c,
                                                          const std::vector<std::string>&) {
    return {c.to_string(), "1"};
}

inline std::pair<std::string, std::string> scalar_strings(
    const ParamFraction& c, const std::vector<std::string>& params) {
    if (c.is_zero()) return {"0", "1"};
    return {detail::print_param_poly(c.numerator(), params),
            detail::print_param_poly(c.denominator(), params)};
}

} // namespace ars

#endif
