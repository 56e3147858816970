#pragma once

#include <map>
#include <string>
#include <utility>

#include "prs/laurent.hpp"

namespace prs {

// Laurent series graded by integer powers of the formal exponential
// generator E, a stand-in for e^{t0/u1}. Multiplication adds E-degrees; the
// derivation rule
//
//   d/du1 (E^m * L) = E^m * (L' - m*(t0/u1^2)*L)
//
// encodes the chain rule on e^{t0/u1} without ever expanding the essential
// singularity. Elements that are genuinely functions on a chart carry only
// the E-degree-0 part.
class TwistedLaurent {
public:
    TwistedLaurent() = default;

    explicit TwistedLaurent(LaurentSeries plain) {
        if (!plain.is_exact_zero()) parts_[0] = std::move(plain);
    }

    static TwistedLaurent part(int e_degree, LaurentSeries series) {
        TwistedLaurent t;
        if (!series.is_exact_zero()) t.parts_[e_degree] = std::move(series);
        return t;
    }

    static TwistedLaurent monomial(const Rat& c, int u_exp, int e_degree = 0) {
        return part(e_degree, LaurentSeries::monomial(c, u_exp));
    }

    static TwistedLaurent constant(const Rat& c) { return monomial(c, 0); }

    const std::map<int, LaurentSeries>& parts() const { return parts_; }

    bool is_exact_zero() const { return parts_.empty(); }

    bool is_zero_in_window() const {
        for (const auto& [e, s] : parts_)
            if (!s.is_zero_in_window()) return false;
        return true;
    }

    bool untwisted() const {
        for (const auto& [e, s] : parts_)
            if (e != 0 && !s.is_zero_in_window()) return false;
        return true;
    }

    // absent parts are exactly zero
    LaurentSeries e_part(int e_degree) const {
        auto it = parts_.find(e_degree);
        return it == parts_.end() ? LaurentSeries() : it->second;
    }

    TwistedLaurent operator-() const {
        TwistedLaurent r;
        for (const auto& [e, s] : parts_) r.parts_[e] = -s;
        return r;
    }

    friend TwistedLaurent operator+(const TwistedLaurent& a, const TwistedLaurent& b) {
        TwistedLaurent r = a;
        for (const auto& [e, s] : b.parts_) {
            auto it = r.parts_.find(e);
            if (it == r.parts_.end())
                r.parts_[e] = s;
            else
                it->second = it->second + s;
        }
        r.normalize();
        return r;
    }

    friend TwistedLaurent operator-(const TwistedLaurent& a, const TwistedLaurent& b) { return a + (-b); }

    friend TwistedLaurent operator*(const TwistedLaurent& a, const TwistedLaurent& b) {
        TwistedLaurent r;
        for (const auto& [ea, sa] : a.parts_) {
            for (const auto& [eb, sb] : b.parts_) {
                LaurentSeries prod = sa * sb;
                if (prod.is_exact_zero()) continue;
                auto it = r.parts_.find(ea + eb);
                if (it == r.parts_.end())
                    r.parts_[ea + eb] = std::move(prod);
                else
                    it->second = it->second + prod;
            }
        }
        r.normalize();
        return r;
    }

    TwistedLaurent scaled(const Rat& k) const {
        TwistedLaurent r;
        if (k == 0) return r;
        for (const auto& [e, s] : parts_) r.parts_[e] = s.scaled(k);
        return r;
    }

    TwistedLaurent shifted(int u_exp) const {
        TwistedLaurent r;
        for (const auto& [e, s] : parts_) r.parts_[e] = s.shifted(u_exp);
        return r;
    }

    TwistedLaurent truncated_top(int top) const {
        TwistedLaurent r;
        for (const auto& [e, s] : parts_) r.parts_[e] = s.truncated_top(top);
        r.normalize();
        return r;
    }

    // only single-part elements are units here; that covers every transition
    // determinant the gluing recipes produce
    TwistedLaurent inverted_to(int top) const {
        std::size_t live = 0;
        int deg = 0;
        for (const auto& [e, s] : parts_) {
            if (!s.is_zero_in_window()) {
                ++live;
                deg = e;
            }
        }
        if (live != 1)
            throw singular_transition_error("inverse requires a single nonzero E-degree");
        return part(-deg, parts_.at(deg).inverted_to(top));
    }

    friend bool operator==(const TwistedLaurent& a, const TwistedLaurent& b) {
        for (const auto& [e, s] : a.parts_)
            if (!(s == b.e_part(e))) return false;
        for (const auto& [e, s] : b.parts_)
            if (!(s == a.e_part(e))) return false;
        return true;
    }

    std::string str() const {
        if (parts_.empty()) return "0";
        std::string out;
        for (const auto& [e, s] : parts_) {
            if (!out.empty()) out += " + ";
            if (e != 0) out += "E^" + std::to_string(e) + "*(" + s.str() + ")";
            else out += s.str();
        }
        return out;
    }

private:
    void normalize() {
        for (auto it = parts_.begin(); it != parts_.end();) {
            if (it->second.is_exact_zero())
                it = parts_.erase(it);
            else
                ++it;
        }
    }

    std::map<int, LaurentSeries> parts_;
};

// d/du1 with twist parameter t0 (operation of the exactalg module)
inline LaurentSeries series_derivative(const LaurentSeries& a) { return a.derivative(); }

inline LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) { return a * b; }

inline TwistedLaurent twisted_derivative(const TwistedLaurent& a, const Rat& t0) {
    TwistedLaurent r;
    for (const auto& [m, s] : a.parts()) {
        LaurentSeries d = s.derivative();
        if (m != 0) d = d - s.shifted(-2).scaled(Rat(m) * t0);
        r = r + TwistedLaurent::part(m, std::move(d));
    }
    return r;
}

} // namespace prs
