#include "doctest.h"

#include "prs/atlas.hpp"

using namespace prs;

namespace {

EllipticParams test_params() { return EllipticParams(make_rat(3, 7), make_rat(5, 2)); }

VectorField random_vector(RatSampler& smp, int lo, int hi) {
    std::map<int, Rat> c0, c1, c2, cu;
    for (int i = 0; i < 3; ++i) {
        c0[smp.next_int(lo, hi)] = smp.next_signed_rat();
        c1[smp.next_int(lo, hi)] = smp.next_signed_rat();
        c2[smp.next_int(lo, hi)] = smp.next_signed_rat();
        cu[smp.next_int(lo, hi)] = smp.next_signed_rat();
    }
    std::vector<TwistedLaurent> g{TwistedLaurent(LaurentSeries(std::move(c0), lo, hi)),
                                  TwistedLaurent(LaurentSeries(std::move(c1), lo, hi)),
                                  TwistedLaurent(LaurentSeries(std::move(c2), lo, hi))};
    return VectorField(XiPoly(std::move(g)), TwistedLaurent(LaurentSeries(std::move(cu), lo, hi)));
}

Bivector random_bivector(RatSampler& smp, int lo, int hi) {
    std::vector<TwistedLaurent> h(3);
    for (int j = 0; j < 3; ++j) {
        std::map<int, Rat> c;
        c[smp.next_int(lo, hi)] = smp.next_signed_rat();
        c[smp.next_int(lo, hi)] = smp.next_signed_rat();
        h[j] = TwistedLaurent(LaurentSeries(std::move(c), lo, hi));
    }
    return Bivector(XiPoly(std::move(h)));
}

std::vector<SurfaceFamily> all_families() {
    return {SurfaceFamily::s0(test_params()), SurfaceFamily::twisted(make_rat(2, 3), test_params()),
            SurfaceFamily::sn(1, test_params()), SurfaceFamily::sn(3, test_params()),
            SurfaceFamily::a0(test_params()), SurfaceFamily::am1(test_params())};
}

} // namespace

TEST_CASE("transition data matches the gluing recipes") {
    auto p = test_params();
    Transition s0 = transition(SurfaceFamily::s0(p));
    CHECK(s0.alpha == TwistedLaurent::constant(Rat(1)));
    CHECK(s0.beta.is_exact_zero());

    Transition sn = transition(SurfaceFamily::sn(2, p));
    CHECK(sn.alpha == TwistedLaurent::monomial(Rat(1), 2));

    Transition a0 = transition(SurfaceFamily::a0(p));
    CHECK(a0.beta == TwistedLaurent::monomial(Rat(1), -1));
    CHECK(a0.alpha == TwistedLaurent::constant(Rat(1)));

    Transition tw = transition(SurfaceFamily::twisted(make_rat(2, 3), p));
    CHECK(tw.alpha == TwistedLaurent::monomial(Rat(1), 0, 1));
    CHECK(tw.twist == make_rat(2, 3));

    CHECK_THROWS_AS(SurfaceFamily::twisted(Rat(0), p), invalid_parameters_error);
    CHECK_THROWS_AS(SurfaceFamily::sn(0, p), invalid_parameters_error);
}

TEST_CASE("frame pushforwards match the chain rules on each gluing") {
    auto p = test_params();

    // Sn: d_xi1 -> u1^n d_xi
    for (int n : {1, 2, 3}) {
        Transition tr = transition(SurfaceFamily::sn(n, p));
        VectorField v = push_vector(tr, VectorField::d_xi(), 12);
        CHECK(v.xi_part.coeff(0) == TwistedLaurent::monomial(Rat(1), n));
        CHECK(v.u_part.is_exact_zero());
        Bivector L = push_bivector(tr, Bivector(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), 0)), 12);
        CHECK(L.h.coeff(0) == TwistedLaurent::monomial(Rat(1), n));
    }

    // A0: d_u1 -> -(1/u1^2) d_xi + d_u,  d_xi1^d_u1 -> d_xi^d_u
    Transition a0 = transition(SurfaceFamily::a0(p));
    VectorField du = push_vector(a0, VectorField::d_u(), 12);
    CHECK(du.xi_part.coeff(0) == TwistedLaurent::monomial(Rat(-1), -2));
    CHECK(du.u_part == TwistedLaurent::constant(Rat(1)));
    Bivector b0 = push_bivector(a0, Bivector(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), 0)), 12);
    CHECK(b0.h.coeff(0) == TwistedLaurent::constant(Rat(1)));

    // S0 is the identity on every field
    Transition s0 = transition(SurfaceFamily::s0(p));
    RatSampler smp(61);
    VectorField w = random_vector(smp, -2, 4);
    CHECK(push_vector(s0, w, 10) == w);

    // Twisted: xi1 d_xi1 ^ d_u1 -> xi d_xi ^ d_u (the E factors cancel)
    Transition tw = transition(SurfaceFamily::twisted(make_rat(2, 3), p));
    Bivector xib(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), 1));
    Bivector pushed = push_bivector(tw, xib, 12);
    CHECK(pushed.h.coeff(1) == TwistedLaurent::constant(Rat(1)));
    CHECK(pushed.h.coeff(0).is_zero_in_window());
    CHECK(pushed.h.coeff(2).is_zero_in_window());

    // Am1 frame factor: d_xi1 ^ d_u1 -> u1 d_xi ^ d_u
    Transition am1 = transition(SurfaceFamily::am1(p));
    Bivector bm = push_bivector(am1, Bivector(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), 0)), 12);
    CHECK(bm.h.coeff(0) == TwistedLaurent::monomial(Rat(1), 1));
}

TEST_CASE("twisted vector pushforward reproduces the exponential chain rule") {
    auto p = test_params();
    Rat t0 = make_rat(2, 3);
    Transition tw = transition(SurfaceFamily::twisted(t0, p));
    // d_xi1 -> E d_xi
    VectorField v = push_vector(tw, VectorField::d_xi(), 10);
    CHECK(v.xi_part.coeff(0) == TwistedLaurent::monomial(Rat(1), 0, 1));
    // d_u1 -> -(t0/u1^2) E xi1 ... expressed on chart 0: -(t0/u1^2) xi d_xi + d_u
    VectorField w = push_vector(tw, VectorField::d_u(), 10);
    CHECK(w.u_part == TwistedLaurent::constant(Rat(1)));
    CHECK(w.xi_part.coeff(1) == TwistedLaurent::monomial(-t0, -2));
    CHECK(w.xi_part.coeff(0).is_zero_in_window());
}

TEST_CASE("push round trip is the identity within the window") {
    RatSampler smp(67);
    for (const auto& fam : all_families()) {
        Transition tr = transition(fam);
        for (int trial = 0; trial < 3; ++trial) {
            VectorField v = random_vector(smp, -2, 6);
            VectorField back = push_vector(tr.inverse(), push_vector(tr, v, 20), 14);
            CHECK(back == v);
            Bivector L = random_bivector(smp, -2, 6);
            Bivector lback = push_bivector(tr.inverse(), push_bivector(tr, L, 20), 14);
            CHECK(lback == L);
        }
    }
}

TEST_CASE("pushforward is functorial for both brackets") {
    RatSampler smp(71);
    for (const auto& fam : all_families()) {
        Transition tr = transition(fam);
        const Rat t0 = fam.twist();
        VectorField v = random_vector(smp, -1, 5);
        VectorField w = random_vector(smp, -1, 5);
        Bivector L = random_bivector(smp, -1, 5);

        VectorField lhs = push_vector(tr, lie_bracket(v, w, t0), 10);
        VectorField rhs = lie_bracket(push_vector(tr, v, 24), push_vector(tr, w, 24), t0);
        CHECK(lhs == rhs);

        Bivector blhs = push_bivector(tr, schouten_bv(L, v, t0), 10);
        Bivector brhs = schouten_bv(push_bivector(tr, L, 24), push_vector(tr, v, 24), t0);
        CHECK(blhs == brhs);
    }
}

TEST_CASE("E-degree-0 content stays E-degree 0 through the twisted transition") {
    auto p = test_params();
    Transition tw = transition(SurfaceFamily::twisted(make_rat(5, 7), p));
    // xi d_xi and d_u blocks are the ones that stay at E-degree 0
    VectorField xidxi = VectorField::d_xi(1);
    CHECK(push_vector(tw, xidxi, 10).xi_part.coeff(1).untwisted());
    VectorField du = push_vector(tw, VectorField::d_u(), 10);
    CHECK(du.xi_part.coeff(1).untwisted());
    CHECK(du.u_part.untwisted());
    Bivector xib(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), 1));
    CHECK(push_bivector(tw, xib, 10).h.coeff(1).untwisted());
}
