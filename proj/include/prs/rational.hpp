#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "prs/errors.hpp"

namespace prs {

// Exact rational scalar. boost's cpp_rational keeps values in lowest terms
// with a positive denominator, which is exactly the invariant we need; no
// rounding occurs anywhere in the engine.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw invalid_parameters_error("rational with zero denominator");
    return Rat(std::move(num)) / Rat(std::move(den));
}

inline Rat make_rat(long long num, long long den) { return make_rat(Int(num), Int(den)); }

inline Rat rat_pow(const Rat& base, int e) {
    if (e < 0) {
        if (base == 0) throw invalid_parameters_error("0^negative");
        return 1 / rat_pow(base, -e);
    }
    Rat r = 1, b = base;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

// Parses "p", "-p", "p/q". Throws invalid_parameters_error on junk.
inline Rat parse_rat(const std::string& s) {
    auto bad = [&]() -> invalid_parameters_error {
        return invalid_parameters_error("cannot parse rational: '" + s + "'");
    };
    std::size_t i = 0;
    auto read_int = [&]() -> Int {
        bool neg = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
        Int v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
        return neg ? Int(-v) : v;
    };
    Int num = read_int();
    if (i == s.size()) return Rat(num);
    if (s[i] != '/') throw bad();
    ++i;
    Int den = read_int();
    if (i != s.size()) throw bad();
    return make_rat(num, den);
}

inline std::string rat_str(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Deterministic sampler for generic coefficient draws. Numerators and
// denominators land in [1,97]; the splitmix64 stream makes runs with equal
// seeds byte-identical.
class RatSampler {
public:
    explicit RatSampler(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // nonzero positive rational with num, den in [1, 97]
    Rat next_rat() {
        long long num = 1 + static_cast<long long>(next_u64() % 97);
        long long den = 1 + static_cast<long long>(next_u64() % 97);
        return make_rat(num, den);
    }

    // possibly-negative variant used by property tests
    Rat next_signed_rat() {
        Rat r = next_rat();
        return (next_u64() & 1) ? Rat(-r) : r;
    }

    int next_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

} // namespace prs
