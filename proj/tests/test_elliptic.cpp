#include "doctest.h"

#include "prs/elliptic.hpp"

using namespace prs;

namespace {

// independent oracle: residual of the defining equation through the trusted
// window must vanish
void check_ode_residual(const EllipticParams& p, int order) {
    LaurentSeries wp = wp_expansion(p, order);
    LaurentSeries dwp = wp.derivative();
    LaurentSeries res = dwp * dwp - wp * wp * wp * LaurentSeries::constant(Rat(4)) +
                        wp.scaled(p.g2) + LaurentSeries::constant(p.g3);
    REQUIRE(!res.degenerate());
    CHECK(res.is_zero_in_window());
    CHECK(res.hi() >= order - 4);  // enough of the window survives to mean something
}

} // namespace

TEST_CASE("wp expansion starts at the double pole with the forced coefficients") {
    EllipticParams p(make_rat(3, 7), make_rat(5, 2));
    LaurentSeries wp = wp_expansion(p, 8);
    CHECK(wp.coeff(-2) == 1);
    CHECK(wp.coeff(-1) == 0);
    CHECK(wp.coeff(0) == 0);
    CHECK(wp.coeff(1) == 0);
    CHECK(wp.coeff(2) == p.g2 / 20);
    CHECK(wp.coeff(3) == 0);
    CHECK(wp.coeff(4) == p.g3 / 28);
    for (int e = -2; e <= 8; ++e)
        if (e % 2 != 0) CHECK(wp.coeff(e) == 0);

    // (g2,g3) = (20,28) makes the first two tail coefficients 1
    LaurentSeries w2 = wp_expansion(EllipticParams(Rat(20), Rat(28)), 4);
    CHECK(w2.coeff(2) == 1);
    CHECK(w2.coeff(4) == 1);
}

TEST_CASE("wp expansion satisfies its differential equation") {
    check_ode_residual(EllipticParams(Rat(20), Rat(28)), 14);
    RatSampler smp(31);
    for (int i = 0; i < 5; ++i) {
        Rat g2 = smp.next_signed_rat(), g3 = smp.next_signed_rat();
        if (g2 * g2 * g2 - 27 * g3 * g3 == 0) continue;
        check_ode_residual(EllipticParams(g2, g3), 12);
    }
}

TEST_CASE("degenerate parameters are rejected") {
    CHECK_THROWS_AS(EllipticParams(Rat(3), Rat(1)), invalid_parameters_error);  // 27 - 27 = 0
    CHECK_THROWS_AS(EllipticParams(Rat(0), Rat(0)), invalid_parameters_error);
}

TEST_CASE("elliptic_to_series expands combinations") {
    EllipticParams p(make_rat(3, 7), make_rat(5, 2));
    EllipticFunction wp = EllipticFunction::wp_derivative(0);
    CHECK(elliptic_to_series(wp, p, 6) == wp_expansion(p, 6));

    EllipticFunction dwp = EllipticFunction::wp_derivative(1);
    LaurentSeries s = elliptic_to_series(dwp, p, 4);
    CHECK(s.coeff(-3) == -2);
    CHECK(s.coeff(-2) == 0);
    CHECK(s.coeff(-1) == 0);

    EllipticFunction one = EllipticFunction::one();
    CHECK(elliptic_to_series(one, p, 3) == LaurentSeries::constant(Rat(1)));
}

TEST_CASE("residue extraction") {
    CHECK(residue(LaurentSeries::monomial(Rat(1), -2)) == 0);
    LaurentSeries f({{-1, Rat(3)}, {0, Rat(5)}}, -1, 2);
    CHECK(residue(f) == 3);

    EllipticParams p(make_rat(3, 7), make_rat(5, 2));
    for (int k = 0; k <= 4; ++k)
        CHECK(residue(elliptic_to_series(EllipticFunction::wp_derivative(k), p, 2)) == 0);

    LaurentSeries truncated({{-3, Rat(1)}}, -3, -2);
    CHECK_THROWS_AS(residue(truncated), untrusted_window_error);
}

TEST_CASE("realize_principal_part on the pinned cases") {
    EllipticParams p(make_rat(3, 7), make_rat(5, 2));

    EllipticFunction f = realize_principal_part(LaurentSeries::monomial(Rat(1), -2), p);
    CHECK(f.constant == 0);
    REQUIRE(f.wp_coeffs.size() == 1);
    CHECK(f.wp_coeffs[0] == 1);  // wp itself

    CHECK_THROWS_AS(realize_principal_part(LaurentSeries::monomial(Rat(1), -1), p),
                    order_one_pole_error);

    EllipticFunction g = realize_principal_part(LaurentSeries::monomial(Rat(6), -4), p);
    REQUIRE(g.wp_coeffs.size() == 3);
    CHECK(g.wp_coeffs[2] == 1);  // wp''
    CHECK(g.wp_coeffs[0] == 0);
    CHECK(g.wp_coeffs[1] == 0);
}

TEST_CASE("realize_principal_part is a linear right inverse") {
    EllipticParams p(make_rat(9, 5), make_rat(2, 3));
    RatSampler smp(37);
    for (int trial = 0; trial < 10; ++trial) {
        std::map<int, Rat> c;
        int depth = smp.next_int(2, 8);
        for (int d = depth; d >= 2; --d)
            if (smp.next_int(0, 1)) c[-d] = smp.next_signed_rat();
        if (c.empty()) c[-2] = Rat(1);
        LaurentSeries pp(std::move(c), -depth, -1);
        EllipticFunction f = realize_principal_part(pp, p);
        LaurentSeries expanded = elliptic_to_series(f, p, 0);
        for (int d = 1; d <= depth; ++d) CHECK(expanded.coeff(-d) == pp.coeff(-d));

        // linearity against a second principal part
        LaurentSeries pp2 = LaurentSeries::monomial(make_rat(3, 4), -3);
        Rat a = smp.next_signed_rat();
        EllipticFunction lhs = realize_principal_part(pp.scaled(a) + pp2, p);
        EllipticFunction rhs = realize_principal_part(pp, p).scaled(a) + realize_principal_part(pp2, p);
        CHECK(elliptic_to_series(lhs, p, 4) == elliptic_to_series(rhs, p, 4));
    }
}
