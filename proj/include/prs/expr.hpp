#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "prs/cech.hpp"

namespace prs {

// Whitespace-insensitive field expressions:
//   expr     := term (('+'|'-') term)*
//   term     := rational? factor* gen
//   factor   := 'u1^'int | 'xi^'int | 'wp^('int')' | 'E^'int
//   gen      := 'd_xi' | 'd_u' | 'd_xi^d_u'
//   rational := int['/'int]
// This covers every field shape the engine works with, e.g.
//   "1/u1 d_u"            ->  (1/u1) d/du1          (written u1^-1 d_u)
//   "3 u1^-2 xi^1 d_xi"   ->  3 xi/u1^2 d/dxi
//   "wp^(1) xi^2 d_xi^d_u" -> wp' xi^2 dxi^du
struct FieldExpr {
    enum class Gen { DXi, DU, DXiDU };
    struct Term {
        Rat coef = Rat(1);
        int u1 = 0;
        int xi = 0;
        int e = 0;
        std::vector<int> wps;  // wp-derivative orders, multiplied together
        Gen gen = Gen::DXi;
    };
    std::vector<Term> terms;

    bool is_bivector() const {
        for (const auto& t : terms)
            if (t.gen != Gen::DXiDU) return false;
        return !terms.empty();
    }

    bool is_vector() const {
        for (const auto& t : terms)
            if (t.gen == Gen::DXiDU) return false;
        return !terms.empty();
    }
};

namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    FieldExpr parse() {
        FieldExpr e;
        skip_ws();
        bool neg = eat_sign();
        e.terms.push_back(parse_term(neg));
        skip_ws();
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c != '+' && c != '-') throw invalid_parameters_error(err("expected '+' or '-'"));
            ++pos_;
            skip_ws();
            bool n2 = (c == '-');
            if (eat_sign()) n2 = !n2;
            e.terms.push_back(parse_term(n2));
            skip_ws();
        }
        return e;
    }

private:
    bool eat_sign() {
        bool neg = false;
        while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            if (s_[pos_] == '-') neg = !neg;
            ++pos_;
            skip_ws();
        }
        return neg;
    }

    FieldExpr::Term parse_term(bool negated) {
        FieldExpr::Term t;
        skip_ws();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) t.coef = parse_rational();
        if (negated) t.coef = -t.coef;
        for (;;) {
            skip_ws();
            if (try_eat("u1^")) {
                t.u1 += parse_int();
            } else if (try_eat("xi^")) {
                t.xi += parse_int();
            } else if (try_eat("wp^(")) {
                t.wps.push_back(parse_int());
                expect(')');
            } else if (try_eat("E^")) {
                t.e += parse_int();
            } else if (try_eat("d_xi^d_u")) {
                t.gen = FieldExpr::Gen::DXiDU;
                return t;
            } else if (try_eat("d_xi")) {
                t.gen = FieldExpr::Gen::DXi;
                return t;
            } else if (try_eat("d_u")) {
                t.gen = FieldExpr::Gen::DU;
                return t;
            } else {
                throw invalid_parameters_error(err("expected a factor or generator"));
            }
        }
    }

    Rat parse_rational() {
        Int num = parse_int_raw();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            // only a slash followed by digits is a denominator
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                return make_rat(num, parse_int_raw());
            pos_ = save;
        }
        return Rat(num);
    }

    int parse_int() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = (s_[pos_++] == '-');
        Int v = parse_int_raw();
        if (v > 1000000) throw invalid_parameters_error(err("exponent too large"));
        int r = static_cast<int>(v);
        return neg ? -r : r;
    }

    Int parse_int_raw() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            throw invalid_parameters_error(err("expected digits"));
        Int v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return v;
    }

    bool try_eat(const char* lit) {
        std::size_t l = std::string(lit).size();
        if (s_.compare(pos_, l, lit) == 0) {
            pos_ += l;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            throw invalid_parameters_error(err(std::string("expected '") + c + "'"));
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    std::string err(const std::string& what) const {
        return "parse error at position " + std::to_string(pos_) + ": " + what;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline FieldExpr parse_field_expr(const std::string& s) { return detail::ExprParser(s).parse(); }

// realize a parsed expression as chart coefficients, expanding wp factors at
// the given elliptic parameters
inline TwistedLaurent term_coefficient(const FieldExpr::Term& t, const EllipticParams& params, int top) {
    LaurentSeries s = LaurentSeries::monomial(t.coef, t.u1);
    for (int k : t.wps) {
        if (k < 0) throw invalid_parameters_error("wp derivative order must be >= 0");
        s = s * elliptic_to_series(EllipticFunction::wp_derivative(k), params, top + k + 4);
    }
    return TwistedLaurent::part(t.e, s.truncated_top(top));
}

inline VectorField build_vector(const FieldExpr& e, const EllipticParams& params, int top) {
    if (!e.is_vector()) throw invalid_parameters_error("expression is not a vector field");
    std::vector<TwistedLaurent> g(3);
    TwistedLaurent f;
    for (const auto& t : e.terms) {
        TwistedLaurent c = term_coefficient(t, params, top);
        if (t.gen == FieldExpr::Gen::DU) {
            if (t.xi != 0) throw ill_formed_section_error("d_u coefficient must have xi-degree 0");
            f = f + c;
        } else {
            if (t.xi < 0 || t.xi > 2)
                throw ill_formed_section_error("d_xi coefficient must have xi-degree 0..2");
            g[t.xi] = g[t.xi] + c;
        }
    }
    return VectorField(XiPoly(std::move(g)), std::move(f));
}

inline Bivector build_bivector(const FieldExpr& e, const EllipticParams& params, int top) {
    if (!e.is_bivector()) throw invalid_parameters_error("expression is not a bivector field");
    std::vector<TwistedLaurent> h(3);
    for (const auto& t : e.terms) {
        if (t.xi < 0 || t.xi > 2)
            throw ill_formed_section_error("bivector coefficient must have xi-degree 0..2");
        h[t.xi] = h[t.xi] + term_coefficient(t, params, top);
    }
    return Bivector(XiPoly(std::move(h)));
}

} // namespace prs
