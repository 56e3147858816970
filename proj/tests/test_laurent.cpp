#include "doctest.h"

#include "prs/twisted.hpp"

using namespace prs;

namespace {

LaurentSeries random_series(RatSampler& smp, int lo, int hi, int terms) {
    std::map<int, Rat> c;
    for (int i = 0; i < terms; ++i) c[smp.next_int(lo, hi)] = smp.next_signed_rat();
    return LaurentSeries(std::move(c), lo, hi);
}

} // namespace

TEST_CASE("series multiplication matches hand convolution and window rule") {
    LaurentSeries a({{0, Rat(1)}, {1, Rat(1)}}, 0, 5);   // 1 + u1, trusted [0,5]
    LaurentSeries b({{0, Rat(1)}, {1, Rat(-1)}}, 0, 5);  // 1 - u1
    LaurentSeries p = a * b;
    CHECK(p.coeff(0) == 1);
    CHECK(p.coeff(1) == 0);
    CHECK(p.coeff(2) == -1);
    CHECK(p.hi() == 5);
    CHECK(p.lo() == 0);

    // inverse monomials
    CHECK(LaurentSeries::monomial(Rat(1), -1) * LaurentSeries::monomial(Rat(1), 1) ==
          LaurentSeries::constant(Rat(1)));

    // (u1^-2 + (1/5) u1^2) * u1^-1, windows [-2,2] x exact -> [-3,1]
    LaurentSeries f({{-2, Rat(1)}, {2, make_rat(1, 5)}}, -2, 2);
    LaurentSeries g = LaurentSeries::monomial(Rat(1), -1);
    LaurentSeries prod = f * g;
    CHECK(prod.lo() == -3);
    CHECK(prod.hi() == 1);
    CHECK(prod.coeff(-3) == 1);
    CHECK(prod.coeff(1) == make_rat(1, 5));
    CHECK(prod.coeff(-2) == 0);
}

TEST_CASE("reads outside the trust window fail loudly") {
    LaurentSeries f({{-2, Rat(1)}}, -2, 3);
    CHECK(f.coeff(3) == 0);
    CHECK_THROWS_AS(f.coeff(4), untrusted_window_error);
    CHECK(f.coeff(-5) == 0);  // below the window everything is known zero
    LaurentSeries collapsed({}, 5, 2);  // truncation ate the whole window
    CHECK(collapsed.coeff(0) == 0);     // still known zero below lo
    CHECK_THROWS_AS(collapsed.coeff(7), untrusted_window_error);
}

TEST_CASE("derivative shifts the window down by one") {
    CHECK(LaurentSeries::monomial(Rat(1), -1).derivative() == LaurentSeries::monomial(Rat(-1), -2));
    CHECK(LaurentSeries::constant(Rat(7)).derivative().is_zero_in_window());

    LaurentSeries f({{-2, Rat(1)}, {1, Rat(3)}}, -2, 4);  // u^-2 + 3u
    LaurentSeries d = f.derivative();
    CHECK(d.coeff(-3) == -2);
    CHECK(d.coeff(0) == 3);
    CHECK(d.hi() == 3);
}

TEST_CASE("multiplication is commutative, associative, distributive in-window") {
    RatSampler smp(11);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentSeries a = random_series(smp, -3, 6, 4);
        LaurentSeries b = random_series(smp, -2, 5, 4);
        LaurentSeries c = random_series(smp, 0, 7, 3);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("Leibniz rule holds on random series") {
    RatSampler smp(13);
    for (int trial = 0; trial < 20; ++trial) {
        LaurentSeries a = random_series(smp, -4, 8, 5);
        LaurentSeries b = random_series(smp, -2, 8, 5);
        CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
    }
}

TEST_CASE("series inversion against multiplication") {
    LaurentSeries f({{-1, Rat(2)}, {0, Rat(1)}, {3, make_rat(1, 7)}}, -1, 9);
    LaurentSeries inv = f.inverted_to(6);
    LaurentSeries prod = f * inv;
    CHECK(prod.coeff(0) == 1);
    for (int e = 1; e <= 5; ++e) CHECK(prod.coeff(e) == 0);

    CHECK_THROWS_AS(LaurentSeries().inverted_to(3), singular_transition_error);
}

TEST_CASE("twisted derivative implements the exponential factor rule") {
    // d/du1 of E^1*1 with t0=1 -> E^1*(-u1^-2)
    TwistedLaurent e1 = TwistedLaurent::monomial(Rat(1), 0, 1);
    TwistedLaurent d = twisted_derivative(e1, Rat(1));
    CHECK(d == TwistedLaurent::monomial(Rat(-1), -2, 1));

    // at E-degree 0 it is the plain derivative
    TwistedLaurent f(LaurentSeries({{-2, Rat(1)}, {1, Rat(3)}}, -2, 6));
    CHECK(twisted_derivative(f, Rat(5)) == TwistedLaurent(LaurentSeries({{-2, Rat(1)}, {1, Rat(3)}}, -2, 6).derivative()));

    // d/du1 of E^-1*u1 with t0=2 -> E^-1*(1 + 2 u1^-1)
    TwistedLaurent g = TwistedLaurent::monomial(Rat(1), 1, -1);
    TwistedLaurent dg = twisted_derivative(g, Rat(2));
    CHECK(dg == TwistedLaurent::part(-1, LaurentSeries({{-1, Rat(2)}, {0, Rat(1)}}, -1, LaurentSeries::kTopInf)));
}

TEST_CASE("twisted Leibniz over TwistedLaurent multiplication") {
    RatSampler smp(17);
    const Rat t0 = make_rat(3, 2);
    for (int trial = 0; trial < 12; ++trial) {
        TwistedLaurent a = TwistedLaurent::part(smp.next_int(-1, 1), random_series(smp, -3, 7, 4)) +
                           TwistedLaurent::part(0, random_series(smp, -2, 7, 3));
        TwistedLaurent b = TwistedLaurent::part(smp.next_int(-1, 1), random_series(smp, -2, 7, 4));
        TwistedLaurent lhs = twisted_derivative(a * b, t0);
        TwistedLaurent rhs = twisted_derivative(a, t0) * b + a * twisted_derivative(b, t0);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("globally meaningful elements are E-degree 0") {
    TwistedLaurent plain(LaurentSeries::constant(Rat(2)));
    CHECK(plain.untwisted());
    TwistedLaurent mixed = plain + TwistedLaurent::monomial(Rat(1), 0, 2);
    CHECK(!mixed.untwisted());
}
