#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "prs/rational.hpp"

namespace prs {

// Truncated Laurent series in the local coordinate u1 with an explicit trust
// window [lo, hi]:
//
//   exponent < lo   : coefficient is known to be zero
//   lo <= e <= hi   : coefficient is known and stored (zeros omitted)
//   exponent > hi   : coefficient is unknown (truncated away)
//
// hi == kTopInf marks a series known exactly to arbitrarily high order
// (Laurent polynomials). Reading an unknown coefficient throws; nothing is
// ever silently treated as zero beyond the window.
class LaurentSeries {
public:
    static constexpr int kTopInf = 1 << 28;

    // exact zero
    LaurentSeries() : lo_(kTopInf), hi_(kTopInf) {}

    LaurentSeries(std::map<int, Rat> coeffs, int lo, int hi)
        : c_(std::move(coeffs)), lo_(lo), hi_(hi) {
        normalize();
    }

    static LaurentSeries zero() { return LaurentSeries(); }

    // exact monomial c*u1^e
    static LaurentSeries monomial(const Rat& c, int e) {
        LaurentSeries s;
        s.lo_ = e;
        s.hi_ = kTopInf;
        if (c != 0) s.c_[e] = c;
        return s;
    }

    static LaurentSeries constant(const Rat& c) { return monomial(c, 0); }

    bool degenerate() const { return lo_ > hi_; }
    bool is_exact() const { return hi_ >= kTopInf; }
    bool is_exact_zero() const { return c_.empty() && is_exact(); }
    // zero everywhere it is trusted (possibly unknown beyond)
    bool is_zero_in_window() const { return c_.empty(); }

    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const std::map<int, Rat>& coeffs() const { return c_; }

    Rat coeff(int e) const {
        if (e < lo_) return Rat(0);  // below the window everything is known zero
        if (e > hi_) throw untrusted_window_error("coefficient above trust window: u1^" + std::to_string(e));
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    bool trusted_at(int e) const { return e < lo_ || e <= hi_; }

    // smallest exponent with nonzero coefficient; requires a nonzero series
    int valuation() const {
        if (c_.empty()) throw untrusted_window_error("valuation of zero-in-window series");
        return c_.begin()->first;
    }

    LaurentSeries operator-() const {
        LaurentSeries r = *this;
        for (auto& [e, v] : r.c_) v = -v;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_exact_zero()) return b;
        if (b.is_exact_zero()) return a;
        LaurentSeries r;
        r.lo_ = std::min(a.lo_, b.lo_);
        r.hi_ = std::min(a.hi_, b.hi_);
        r.c_ = a.c_;
        for (const auto& [e, v] : b.c_) {
            auto [it, fresh] = r.c_.emplace(e, v);
            if (!fresh) it->second += v;
        }
        r.normalize();
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        if (a.is_exact_zero() || b.is_exact_zero()) return LaurentSeries();
        LaurentSeries r;
        r.lo_ = add_clamped(a.lo_, b.lo_);
        r.hi_ = std::min(add_clamped(a.lo_, b.hi_), add_clamped(a.hi_, b.lo_));
        if (r.lo_ > r.hi_) {  // degenerate product window
            r.c_.clear();
            return r;
        }
        for (const auto& [ea, va] : a.c_) {
            for (const auto& [eb, vb] : b.c_) {
                int e = ea + eb;
                if (e > r.hi_) continue;
                auto [it, fresh] = r.c_.emplace(e, va * vb);
                if (!fresh) it->second += va * vb;
            }
        }
        r.normalize();
        return r;
    }

    LaurentSeries scaled(const Rat& k) const {
        if (k == 0) {
            LaurentSeries z;  // exact zero kills the unknown tail
            return z;
        }
        LaurentSeries r = *this;
        for (auto& [e, v] : r.c_) v *= k;
        return r;
    }

    // termwise d/du1
    LaurentSeries derivative() const {
        if (is_exact_zero()) return LaurentSeries();
        LaurentSeries r;
        r.lo_ = lo_ == kTopInf ? kTopInf : lo_ - 1;
        r.hi_ = hi_ >= kTopInf ? kTopInf : hi_ - 1;
        for (const auto& [e, v] : c_) {
            if (e == 0) continue;
            r.c_[e - 1] = v * e;
        }
        r.normalize();
        return r;
    }

    LaurentSeries shifted(int k) const {  // multiply by u1^k
        if (is_exact_zero()) return LaurentSeries();
        LaurentSeries r;
        r.lo_ = add_clamped(lo_, k);
        r.hi_ = hi_ >= kTopInf ? kTopInf : hi_ + k;
        for (const auto& [e, v] : c_) r.c_[e + k] = v;
        return r;
    }

    // forget knowledge above `top` (no-op where already narrower; an exact
    // zero has nothing to forget)
    LaurentSeries truncated_top(int top) const {
        if (is_exact_zero()) return *this;
        LaurentSeries r = *this;
        if (r.hi_ <= top) return r;
        r.hi_ = top;
        r.c_.erase(r.c_.upper_bound(top), r.c_.end());
        r.normalize();
        return r;
    }

    // multiplicative inverse, trusted at most through `top`
    LaurentSeries inverted_to(int top) const {
        if (c_.empty()) throw singular_transition_error("inverting a series with no visible nonzero term");
        int v = valuation();
        const Rat lead = c_.begin()->second;
        if (c_.size() == 1 && is_exact()) return monomial(1 / lead, -v);
        // relative precision available from the input
        int rel = is_exact() ? (top + v >= 0 ? top + v : 0) : hi_ - v;
        rel = std::min(rel, top + v);
        if (rel < 0) {
            LaurentSeries r;
            r.lo_ = -v;
            r.hi_ = -v - 1;  // degenerate: caller asked beyond what is knowable
            return r;
        }
        // s = series / (lead*u^v) - 1, supported on (0, rel]
        std::map<int, Rat> s;
        for (auto it = std::next(c_.begin()); it != c_.end(); ++it) {
            int d = it->first - v;
            if (d <= rel) s[d] = it->second / lead;
        }
        // r = 1/(1+s) by recursion r_k = -sum_{j>=1} s_j r_{k-j}
        std::map<int, Rat> r;
        r[0] = Rat(1);
        for (int k = 1; k <= rel; ++k) {
            Rat acc(0);
            for (const auto& [j, sv] : s) {
                if (j > k) break;
                auto it = r.find(k - j);
                if (it != r.end()) acc -= sv * it->second;
            }
            if (acc != 0) r[k] = acc;
        }
        std::map<int, Rat> out;
        for (const auto& [e, val] : r) out[e - v] = val / lead;
        return LaurentSeries(std::move(out), -v, -v + rel);
    }

    // equality of trusted content on the overlap of the two windows
    friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
        int hi = std::min(a.hi_, b.hi_);
        for (const auto& [e, v] : a.c_) {
            if (e > hi) break;
            if (v != b.coeff_or_zero(e)) return false;
        }
        for (const auto& [e, v] : b.c_) {
            if (e > hi) break;
            if (v != a.coeff_or_zero(e)) return false;
        }
        return true;
    }

    std::string str(const std::string& var = "u1") const;

private:
    static int add_clamped(long long a, long long b) {
        long long s = a + b;
        if (s >= kTopInf) return kTopInf;
        if (s <= -kTopInf) return -kTopInf;
        return static_cast<int>(s);
    }

    Rat coeff_or_zero(int e) const {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }

    void normalize() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (it->second == 0 || it->first > hi_)
                it = c_.erase(it);
            else
                ++it;
        }
        if (!c_.empty()) {
            if (c_.begin()->first < lo_)
                throw invalid_parameters_error("series coefficient below its declared window");
            lo_ = std::max(lo_, c_.begin()->first);  // zeros below the first term are known
        } else if (is_exact()) {
            lo_ = kTopInf;  // canonical exact zero
        }
    }

    std::map<int, Rat> c_;
    int lo_, hi_;
};

inline std::string LaurentSeries::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, v] : c_) {
        Rat a = v;
        if (!first) {
            out += (a > 0) ? " + " : " - ";
            if (a < 0) a = -a;
        } else if (a < 0) {
            out += "-";
            a = -a;
        }
        first = false;
        const bool unit = (a == 1);
        if (e == 0) {
            out += rat_str(a);
        } else {
            if (!unit) out += rat_str(a) + "*";
            out += var + "^" + std::to_string(e);
        }
    }
    return out;
}

} // namespace prs
