#ifndef ARS_PARAM_FRACTION_HPP
#define ARS_PARAM_FRACTION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ars/errors.hpp"
#include "ars/rational.hpp"

namespace ars {

// Polynomial in the scalar parameters with rational coefficients. Keys are
// exponent vectors with trailing zeros trimmed, so the representation does
// not depend on how many parameters are in scope; a constant is the empty
// key. Parameter exponents are never negative.
class ParamPoly {
  public:
    using Key = std::vector<int32_t>;
    using TermMap = std::map<Key, Rational>;

    ParamPoly() = default;

    static ParamPoly constant(const Rational& c) {
        ParamPoly p;
        if (!c.is_zero()) p.terms_.emplace(Key{}, c);
        return p;
    }

    static ParamPoly parameter(size_t index) {
        ParamPoly p;
        Key k(index + 1, 0);
        k[index] = 1;
        p.terms_.emplace(std::move(k), Rational(1));
        return p;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::optional<Rational> as_rational() const {
        if (terms_.empty()) return Rational();
        if (terms_.size() == 1 && terms_.begin()->first.empty())
            return terms_.begin()->second;
        return std::nullopt;
    }

    void add_term(Key k, const Rational& c) {
        if (c.is_zero()) return;
        trim(k);
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ParamPoly operator-() const {
        ParamPoly r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }

    ParamPoly operator+(const ParamPoly& o) const {
        ParamPoly r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }

    ParamPoly operator-(const ParamPoly& o) const {
        ParamPoly r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }

    ParamPoly operator*(const ParamPoly& o) const {
        ParamPoly r;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) r.add_term(key_mul(ka, kb), ca * cb);
        return r;
    }

    ParamPoly scaled(const Rational& c) const {
        ParamPoly r;
        if (c.is_zero()) return r;
        for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
        return r;
    }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

    // Positive rational g with (1/g)*this integer-coefficient of gcd 1.
    Rational content() const {
        if (terms_.empty()) throw MathError("content of zero polynomial");
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [k, c] : terms_) {
            num_gcd = gcd(num_gcd, c.numerator());
            den_lcm = lcm(den_lcm, c.denominator());
        }
        return Rational(mpq_class(num_gcd, den_lcm));
    }

    // Sign of the coefficient on the largest key; the tie-breaking order is
    // the map's own (deterministic) key comparison.
    int leading_sign() const {
        if (terms_.empty()) return 0;
        return terms_.rbegin()->second.sign();
    }

    // Componentwise minimum over all keys (missing entries count as 0); the
    // largest parameter-monomial dividing every term.
    Key common_monomial() const {
        if (terms_.empty()) return {};
        size_t width = 0;
        for (const auto& [k, c] : terms_) width = std::max(width, k.size());
        Key lo(width, 0);
        bool first = true;
        for (const auto& [k, c] : terms_) {
            for (size_t i = 0; i < width; ++i) {
                int32_t e = i < k.size() ? k[i] : 0;
                lo[i] = first ? e : std::min(lo[i], e);
            }
            first = false;
        }
        trim(lo);
        return lo;
    }

    // Exact division by a parameter monomial that divides every term.
    ParamPoly shifted_down(const Key& a) const {
        if (a.empty()) return *this;
        ParamPoly r;
        for (const auto& [k, c] : terms_) {
            Key nk(std::max(k.size(), a.size()), 0);
            for (size_t i = 0; i < nk.size(); ++i) {
                nk[i] = (i < k.size() ? k[i] : 0) - (i < a.size() ? a[i] : 0);
                if (nk[i] < 0) throw MathError("monomial does not divide every term");
            }
            trim(nk);
            r.terms_.emplace(std::move(nk), c);
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational acc;
        for (const auto& [k, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < k.size(); ++i) {
                if (k[i] == 0) continue;
                if (i >= point.size()) throw MathError("evaluate: missing parameter value");
                for (int32_t j = 0; j < k[i]; ++j) t = t * point[i];
            }
            acc = acc + t;
        }
        return acc;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        // Largest key first reads naturally (leading term leftmost).
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [k, c] = *it;
            std::string mag = (c.sign() < 0 ? (-c) : c).to_string();
            if (out.empty())
                out += c.sign() < 0 ? "-" : "";
            else
                out += c.sign() < 0 ? " - " : " + ";
            bool coeff_shown = false;
            if (mag != "1" || k.empty()) {
                out += mag;
                coeff_shown = true;
            }
            for (size_t i = 0; i < k.size(); ++i) {
                if (k[i] == 0) continue;
                if (coeff_shown) out += "*";
                out += i < names.size() ? names[i] : "p" + std::to_string(i);
                if (k[i] != 1) out += "^" + std::to_string(k[i]);
                coeff_shown = true;
            }
        }
        return out;
    }

  private:
    static void trim(Key& k) {
        while (!k.empty() && k.back() == 0) k.pop_back();
    }

    static Key key_mul(const Key& a, const Key& b) {
        Key r(std::max(a.size(), b.size()), 0);
        for (size_t i = 0; i < r.size(); ++i)
            r[i] = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        return r; // exponents are non-negative, so no trailing zero can appear
    }

    TermMap terms_;
};

// Element of the fraction field of the parameter polynomial ring. Kept in a
// weak canonical form: the denominator has integer coefficients with gcd 1
// and positive leading sign, and no parameter monomial divides both
// numerator and denominator. Full polynomial gcd reduction is deliberately
// not attempted, so equality goes through cross-multiplication.
class ParamFraction {
  public:
    ParamFraction() : num_(), den_(ParamPoly::constant(Rational(1))) {}

    ParamFraction(ParamPoly num, ParamPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw MathError("division by zero");
        normalize();
    }

    static ParamFraction zero() { return ParamFraction(); }
    static ParamFraction one() { return from_rational(Rational(1)); }

    static ParamFraction from_rational(const Rational& q) {
        ParamFraction f;
        f.num_ = ParamPoly::constant(q);
        return f;
    }

    static ParamFraction parameter(size_t index) {
        ParamFraction f;
        f.num_ = ParamPoly::parameter(index);
        return f;
    }

    const ParamPoly& numerator() const { return num_; }
    const ParamPoly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    int sign() const { return num_.leading_sign(); }

    ParamFraction operator-() const {
        ParamFraction r = *this;
        r.num_ = -r.num_;
        return r;
    }

    ParamFraction operator+(const ParamFraction& o) const {
        if (den_ == o.den_) return ParamFraction(num_ + o.num_, den_);
        return ParamFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }

    ParamFraction operator-(const ParamFraction& o) const {
        if (den_ == o.den_) return ParamFraction(num_ - o.num_, den_);
        return ParamFraction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }

    ParamFraction operator*(const ParamFraction& o) const {
        return ParamFraction(num_ * o.num_, den_ * o.den_);
    }

    ParamFraction inverse() const {
        if (num_.is_zero()) throw MathError("division by zero");
        return ParamFraction(den_, num_);
    }

    bool operator==(const ParamFraction& o) const {
        return num_ * o.den_ == o.num_ * den_;
    }

    std::optional<Rational> as_rational() const {
        auto n = num_.as_rational();
        auto d = den_.as_rational();
        if (n && d) return *n * d->inverse();
        return std::nullopt;
    }

    ParamFraction evaluate(const std::vector<Rational>& point) const {
        Rational d = den_.evaluate(point);
        if (d.is_zero()) throw MathError("parameter value makes a denominator vanish");
        return from_rational(num_.evaluate(point) * d.inverse());
    }

    std::string to_string(const std::vector<std::string>& names) const {
        std::string n = num_.to_string(names);
        if (auto d = den_.as_rational(); d && d->is_one()) return n;
        std::string d = den_.to_string(names);
        bool np = num_.terms().size() > 1;
        bool dp = den_.terms().size() > 1;
        return (np ? "(" + n + ")" : n) + "/" + (dp ? "(" + d + ")" : d);
    }

    std::string to_string() const { return to_string({"t0", "t1", "t2", "t3"}); }

  private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = ParamPoly::constant(Rational(1));
            return;
        }
        ParamPoly::Key a = num_.common_monomial();
        ParamPoly::Key b = den_.common_monomial();
        ParamPoly::Key g(std::min(a.size(), b.size()), 0);
        for (size_t i = 0; i < g.size(); ++i) g[i] = std::min(a[i], b[i]);
        while (!g.empty() && g.back() == 0) g.pop_back();
        if (!g.empty()) {
            num_ = num_.shifted_down(g);
            den_ = den_.shifted_down(g);
        }
        Rational c = den_.content();
        if (den_.leading_sign() < 0) c = -c;
        Rational ci = c.inverse();
        num_ = num_.scaled(ci);
        den_ = den_.scaled(ci);
    }

    ParamPoly num_;
    ParamPoly den_;
};

} // namespace ars

#endif
