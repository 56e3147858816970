#pragma once

#include <string>
#include <vector>

#include "prs/twisted.hpp"

namespace prs {

// Polynomial in the fiber coordinate xi with TwistedLaurent coefficients.
// Intermediate bracket arithmetic may exceed degree 2; the section types
// below enforce the caps at construction.
class XiPoly {
public:
    XiPoly() = default;
    explicit XiPoly(std::vector<TwistedLaurent> coeffs) : c_(std::move(coeffs)) { trim(); }

    static XiPoly monomial(TwistedLaurent coeff, int xi_deg) {
        std::vector<TwistedLaurent> v(xi_deg + 1);
        v[xi_deg] = std::move(coeff);
        return XiPoly(std::move(v));
    }

    static XiPoly zero() { return XiPoly(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    TwistedLaurent coeff(int j) const {
        if (j < 0 || j >= static_cast<int>(c_.size())) return TwistedLaurent();
        return c_[j];
    }

    const std::vector<TwistedLaurent>& coeffs() const { return c_; }

    bool is_zero_in_window() const {
        for (const auto& t : c_)
            if (!t.is_zero_in_window()) return false;
        return true;
    }

    XiPoly operator-() const {
        XiPoly r = *this;
        for (auto& t : r.c_) t = -t;
        return r;
    }

    friend XiPoly operator+(const XiPoly& a, const XiPoly& b) {
        std::vector<TwistedLaurent> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j < a.c_.size()) v[j] = v[j] + a.c_[j];
            if (j < b.c_.size()) v[j] = v[j] + b.c_[j];
        }
        return XiPoly(std::move(v));
    }

    friend XiPoly operator-(const XiPoly& a, const XiPoly& b) { return a + (-b); }

    friend XiPoly operator*(const XiPoly& a, const XiPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return XiPoly();
        std::vector<TwistedLaurent> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        return XiPoly(std::move(v));
    }

    XiPoly scaled(const Rat& k) const {
        XiPoly r = *this;
        for (auto& t : r.c_) t = t.scaled(k);
        return r;
    }

    XiPoly scaled(const TwistedLaurent& k) const {
        XiPoly r = *this;
        for (auto& t : r.c_) t = t * k;
        return r;
    }

    XiPoly dxi() const {  // partial in xi
        if (c_.size() <= 1) return XiPoly();
        std::vector<TwistedLaurent> v(c_.size() - 1);
        for (std::size_t j = 1; j < c_.size(); ++j) v[j - 1] = c_[j].scaled(Rat(static_cast<int>(j)));
        return XiPoly(std::move(v));
    }

    XiPoly du(const Rat& t0) const {  // partial in u1, with the twist rule
        XiPoly r = *this;
        for (auto& t : r.c_) t = twisted_derivative(t, t0);
        return r;
    }

    XiPoly truncated_top(int top) const {
        XiPoly r = *this;
        for (auto& t : r.c_) t = t.truncated_top(top);
        r.trim();
        return r;
    }

    friend bool operator==(const XiPoly& a, const XiPoly& b) {
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        for (std::size_t j = 0; j < n; ++j)
            if (!(a.coeff(static_cast<int>(j)) == b.coeff(static_cast<int>(j)))) return false;
        return true;
    }

    std::string str(const std::string& gen) const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
    }

    std::vector<TwistedLaurent> c_;
};

inline void enforce_cap(const XiPoly& p, int cap, const char* what) {
    for (int j = cap + 1; j <= p.degree(); ++j) {
        if (!p.coeff(j).is_zero_in_window())
            throw ill_formed_section_error(std::string(what) + ": xi-degree " + std::to_string(j) +
                                           " exceeds cap " + std::to_string(cap));
    }
}

inline XiPoly capped(XiPoly p, int cap, const char* what) {
    enforce_cap(p, cap, what);
    std::vector<TwistedLaurent> v;
    for (int j = 0; j <= std::min(cap, p.degree()); ++j) v.push_back(p.coeff(j));
    return XiPoly(std::move(v));
}

// (g0 + g1 xi + g2 xi^2) d/dxi + f d/du on one chart
struct VectorField {
    XiPoly xi_part;        // degree <= 2
    TwistedLaurent u_part; // xi-degree 0

    VectorField() = default;
    VectorField(XiPoly xi, TwistedLaurent u)
        : xi_part(capped(std::move(xi), 2, "vector field d/dxi coefficient")), u_part(std::move(u)) {}

    static VectorField d_u() { return VectorField(XiPoly(), TwistedLaurent::constant(Rat(1))); }
    static VectorField d_xi(int xi_deg = 0) {
        return VectorField(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), xi_deg), TwistedLaurent());
    }

    bool is_zero_in_window() const { return xi_part.is_zero_in_window() && u_part.is_zero_in_window(); }

    VectorField operator-() const { return VectorField(-xi_part, -u_part); }
    friend VectorField operator+(const VectorField& a, const VectorField& b) {
        return VectorField(a.xi_part + b.xi_part, a.u_part + b.u_part);
    }
    friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }
    VectorField scaled(const Rat& k) const { return VectorField(xi_part.scaled(k), u_part.scaled(k)); }

    friend bool operator==(const VectorField& a, const VectorField& b) {
        return a.xi_part == b.xi_part && a.u_part == b.u_part;
    }

    std::string str() const;
};

// h d/dxi ^ d/du with deg_xi(h) <= 2
struct Bivector {
    XiPoly h;

    Bivector() = default;
    explicit Bivector(XiPoly h_) : h(capped(std::move(h_), 2, "bivector coefficient")) {}

    bool is_zero_in_window() const { return h.is_zero_in_window(); }

    Bivector operator-() const { return Bivector(-h); }
    friend Bivector operator+(const Bivector& a, const Bivector& b) { return Bivector(a.h + b.h); }
    friend Bivector operator-(const Bivector& a, const Bivector& b) { return a + (-b); }
    Bivector scaled(const Rat& k) const { return Bivector(h.scaled(k)); }

    friend bool operator==(const Bivector& a, const Bivector& b) { return a.h == b.h; }

    std::string str() const;
};

// On a surface every trivector vanishes; the bracket of two bivectors can
// only ever be this.
struct ZeroTrivector {};

// [v, w] in chart coordinates. t0 is the ambient twist parameter (zero on
// untwisted surfaces).
inline VectorField lie_bracket(const VectorField& v, const VectorField& w, const Rat& t0 = Rat(0)) {
    // xi component: v(w_xi) - w(v_xi)
    XiPoly vx = v.xi_part * w.xi_part.dxi() + w.xi_part.du(t0).scaled(v.u_part) -
                (w.xi_part * v.xi_part.dxi() + v.xi_part.du(t0).scaled(w.u_part));
    // u component: v(w_u) - w(v_u); both have xi-degree 0
    TwistedLaurent vu = twisted_derivative(w.u_part, t0) * v.u_part -
                        twisted_derivative(v.u_part, t0) * w.u_part;
    return VectorField(capped(std::move(vx), 2, "lie bracket"), std::move(vu));
}

// Schouten bracket of a bivector with a vector field,
//   [h dxi^du, g dxi + f du] = (h (dxi g + du f) - f du h - g dxi h) dxi^du,
// the sign convention pinned by the product-surface instance.
inline Bivector schouten_bv(const Bivector& L, const VectorField& v, const Rat& t0 = Rat(0)) {
    XiPoly term = L.h * (v.xi_part.dxi() + XiPoly::monomial(twisted_derivative(v.u_part, t0), 0)) -
                  L.h.du(t0).scaled(v.u_part) - v.xi_part * L.h.dxi();
    return Bivector(capped(std::move(term), 2, "schouten bracket"));
}

// wedge^3 Theta = 0 on a surface
inline ZeroTrivector schouten_bb(const Bivector&, const Bivector&) { return ZeroTrivector{}; }

inline std::string XiPoly::str(const std::string& gen) const {
    std::string out;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero_in_window()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + c_[j].str() + ")";
        if (j > 0) out += "*xi^" + std::to_string(j);
        out += "*" + gen;
    }
    return out;
}

inline std::string VectorField::str() const {
    std::string a = xi_part.str("d_xi");
    std::string b = u_part.is_exact_zero() ? "" : "(" + u_part.str() + ")*d_u";
    if (a.empty() && b.empty()) return "0";
    if (a.empty()) return b;
    if (b.empty()) return a;
    return a + " + " + b;
}

inline std::string Bivector::str() const {
    std::string s = h.str("d_xi^d_u");
    return s.empty() ? "0" : s;
}

} // namespace prs
