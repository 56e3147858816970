#pragma once

#include <string>
#include <vector>

#include "prs/laurent.hpp"

namespace prs {

// Modulus data for the field of elliptic functions with poles only at the
// base point p. The period omega never appears: everything downstream is
// uniform in the modulus, so (g2, g3) are free rationals subject to a
// nonzero discriminant.
struct EllipticParams {
    Rat g2, g3;

    EllipticParams(Rat g2_, Rat g3_) : g2(std::move(g2_)), g3(std::move(g3_)) {
        if (discriminant() == 0)
            throw invalid_parameters_error("degenerate elliptic parameters: g2^3 - 27*g3^2 = 0");
    }

    Rat discriminant() const { return g2 * g2 * g2 - 27 * g3 * g3; }

    friend bool operator==(const EllipticParams& a, const EllipticParams& b) {
        return a.g2 == b.g2 && a.g3 == b.g3;
    }
};

// Laurent expansion of the Weierstrass p-function at the puncture,
//   wp = u1^-2 + sum_{k>=2} a_k u1^{2k-2},
// a2 = g2/20, a3 = g3/28, and a_k for k >= 4 by the quadratic recursion that
// the differential equation (wp')^2 = 4 wp^3 - g2 wp - g3 forces.
inline LaurentSeries wp_expansion(const EllipticParams& params, int order) {
    if (order < -2) throw invalid_parameters_error("wp_expansion needs order >= -2");
    std::vector<Rat> a(2, Rat(0));  // a[0], a[1] unused
    int kmax = order / 2 + 2;
    a.resize(std::max(kmax + 1, 4), Rat(0));
    if (kmax >= 2) a[2] = params.g2 / 20;
    if (kmax >= 3) a[3] = params.g3 / 28;
    for (int k = 4; k <= kmax; ++k) {
        Rat s(0);
        for (int j = 2; j <= k - 2; ++j) s += a[j] * a[k - j];
        a[k] = Rat(3) * s / Rat((2 * k + 1) * (k - 3));
    }
    std::map<int, Rat> c;
    c[-2] = 1;
    for (int k = 2; k <= kmax; ++k)
        if (2 * k - 2 <= order && a[k] != 0) c[2 * k - 2] = a[k];
    return LaurentSeries(std::move(c), -2, order);
}

// Finite combination  constant + sum_k wp_coeffs[k] * wp^(k).
struct EllipticFunction {
    Rat constant;
    std::vector<Rat> wp_coeffs;  // entry k multiplies the k-th derivative of wp

    EllipticFunction() : constant(0) {}
    explicit EllipticFunction(Rat c) : constant(std::move(c)) {}

    static EllipticFunction one() { return EllipticFunction(Rat(1)); }

    static EllipticFunction wp_derivative(int k, const Rat& scale = Rat(1)) {
        EllipticFunction f;
        f.wp_coeffs.assign(k + 1, Rat(0));
        f.wp_coeffs[k] = scale;
        return f;
    }

    bool is_zero() const {
        if (constant != 0) return false;
        for (const Rat& c : wp_coeffs)
            if (c != 0) return false;
        return true;
    }

    EllipticFunction scaled(const Rat& k) const {
        EllipticFunction r = *this;
        r.constant *= k;
        for (Rat& c : r.wp_coeffs) c *= k;
        return r;
    }

    friend EllipticFunction operator+(const EllipticFunction& a, const EllipticFunction& b) {
        EllipticFunction r = a;
        r.constant += b.constant;
        if (r.wp_coeffs.size() < b.wp_coeffs.size()) r.wp_coeffs.resize(b.wp_coeffs.size(), Rat(0));
        for (std::size_t k = 0; k < b.wp_coeffs.size(); ++k) r.wp_coeffs[k] += b.wp_coeffs[k];
        return r;
    }

    std::string str() const;
};

// Expansions of wp, wp', ..., wp^(max_k), each trusted at least through
// `top`. Shared by the cochain assembly so the recursion runs once.
class WpTable {
public:
    WpTable(const EllipticParams& params, int max_k, int top) : params_(params) {
        derivs_.reserve(max_k + 1);
        derivs_.push_back(wp_expansion(params, top + max_k));
        for (int k = 1; k <= max_k; ++k) derivs_.push_back(derivs_.back().derivative());
    }

    const EllipticParams& params() const { return params_; }
    int max_k() const { return static_cast<int>(derivs_.size()) - 1; }

    const LaurentSeries& wp_deriv(int k) const {
        if (k < 0 || k > max_k())
            throw invalid_parameters_error("wp derivative order outside table");
        return derivs_[static_cast<std::size_t>(k)];
    }

    LaurentSeries expand(const EllipticFunction& f) const {
        LaurentSeries s = LaurentSeries::monomial(f.constant, 0);
        for (std::size_t k = 0; k < f.wp_coeffs.size(); ++k)
            if (f.wp_coeffs[k] != 0) s = s + wp_deriv(static_cast<int>(k)).scaled(f.wp_coeffs[k]);
        return s;
    }

private:
    EllipticParams params_;
    std::vector<LaurentSeries> derivs_;
};

inline LaurentSeries elliptic_to_series(const EllipticFunction& f, const EllipticParams& params,
                                        int order) {
    const int kmax = static_cast<int>(f.wp_coeffs.size());
    WpTable table(params, std::max(kmax, 1), order);
    return table.expand(f).truncated_top(order);
}

// coefficient of u1^-1; the quantity that drives every cohomology-class
// reduction on the overlap
inline Rat residue(const LaurentSeries& pp) { return pp.coeff(-1); }

// Realize a principal part by a combination of wp-derivatives. wp^(k) has
// the single principal term (-1)^k (k+1)! u1^{-k-2}, so the solve is
// triangular. A nonzero residue is unrealizable: there is no elliptic
// function of order one.
inline EllipticFunction realize_principal_part(const LaurentSeries& pp, const EllipticParams& params) {
    if (pp.is_zero_in_window()) return EllipticFunction();
    for (const auto& [e, v] : pp.coeffs()) {
        if (e >= 0)
            throw invalid_parameters_error("principal part has a non-negative exponent u1^" +
                                           std::to_string(e));
    }
    if (residue(pp) != 0)
        throw order_one_pole_error("principal part has nonzero residue; no elliptic function of order 1");

    const int depth = -pp.valuation();
    EllipticFunction f;
    f.wp_coeffs.assign(std::max(depth - 1, 0), Rat(0));
    // subtract matched leading terms from deepest to shallowest
    LaurentSeries rest = pp;
    WpTable table(params, std::max(depth - 2, 0), 0);
    for (int d = depth; d >= 2; --d) {
        Rat c = rest.coeff(-d);
        if (c == 0) continue;
        const int k = d - 2;
        Rat lead(1);  // (-1)^k (k+1)!
        for (int i = 2; i <= k + 1; ++i) lead *= i;
        if (k % 2 == 1) lead = -lead;
        const Rat x = c / lead;
        f.wp_coeffs[k] = x;
        rest = rest - table.wp_deriv(k).scaled(x);
    }
    if (rest.coeff(-1) != 0)
        throw order_one_pole_error("realization leaves a residue term");
    return f;
}

inline std::string EllipticFunction::str() const {
    std::string out;
    auto append = [&](const Rat& c, const std::string& sym) {
        if (c == 0) return;
        Rat a = c;
        if (out.empty()) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a > 0) ? " + " : " - ";
            if (a < 0) a = -a;
        }
        if (sym.empty()) {
            out += rat_str(a);
        } else {
            if (a != 1) out += rat_str(a) + "*";
            out += sym;
        }
    };
    append(constant, "");
    for (std::size_t k = 0; k < wp_coeffs.size(); ++k)
        append(wp_coeffs[k], "wp^(" + std::to_string(k) + ")");
    return out.empty() ? "0" : out;
}

} // namespace prs
