#include "doctest.h"

#include "prs/families.hpp"

using namespace prs;

namespace {

EllipticParams test_params() { return EllipticParams(make_rat(3, 7), make_rat(5, 2)); }

struct Registered {
    PoissonStructure P;
    RegisteredKind kind;
};

std::vector<Registered> registered_cases() {
    auto p = test_params();
    return {
        {PoissonStructure::make(SurfaceFamily::s0(p), {Rat(1), Rat(2), Rat(3)}), RegisteredKind::S0Moebius},
        {PoissonStructure::make(SurfaceFamily::twisted(make_rat(2, 3), p), {Rat(7)}),
         RegisteredKind::TwistedShift},
        {PoissonStructure::make(SurfaceFamily::sn(2, p), {make_rat(3, 4), Rat(1), make_rat(2, 5)}),
         RegisteredKind::SnScale},
        {PoissonStructure::make(SurfaceFamily::sn(1, p), {Rat(0), Rat(1)}), RegisteredKind::S1Scale},
        {PoissonStructure::make(SurfaceFamily::a0(p), {make_rat(5, 6)}), RegisteredKind::A0Moebius},
        {PoissonStructure::make(SurfaceFamily::am1(p), {}), RegisteredKind::Am1Base},
    };
}

} // namespace

TEST_CASE("registered families exist exactly for the unobstructed classes") {
    auto p = test_params();
    for (const auto& c : registered_cases()) {
        SurfaceCohomology ctx(c.P.family, Truncation::defaults(c.P.family));
        auto f = registered_family_on(c.P, ctx);
        REQUIRE(f.has_value());
        CHECK(f->kind == c.kind);
    }
    {
        SurfaceFamily f = SurfaceFamily::sn(2, p);
        SurfaceCohomology ctx(f, Truncation::defaults(f));
        CHECK(!registered_family_on(PoissonStructure::make(f, {Rat(0), Rat(0), Rat(0)}), ctx));
        CHECK(!registered_family_on(PoissonStructure::make(f, {Rat(0), Rat(1), Rat(2)}), ctx));
    }
    {
        SurfaceFamily f = SurfaceFamily::s0(p);
        SurfaceCohomology ctx(f, Truncation::defaults(f));
        CHECK(!registered_family_on(PoissonStructure::make(f, {Rat(0), Rat(0), Rat(0)}), ctx));
    }
}

TEST_CASE("Lambda is well-defined on every registered family") {
    for (const auto& c : registered_cases()) {
        SurfaceCohomology ctx(c.P.family, Truncation::defaults(c.P.family));
        auto f = registered_family_on(c.P, ctx);
        REQUIRE(f.has_value());
        CHECK(verify_lambda_welldefined(*f, 5));
    }
}

TEST_CASE("the S0 family frame factor matches the pushforward engine") {
    // dxi^du = ((-C't xi1 + u1)^2 / (u1^2 + B't u1 + A'C't^2)) dxi1^du1,
    // checked by pushing the constant bivector through the full transition
    // and expanding the right-hand side independently
    auto p = test_params();
    auto P = PoissonStructure::make(SurfaceFamily::s0(p), {Rat(1), Rat(2), Rat(3)});
    SurfaceCohomology ctx(P.family, Truncation::defaults(P.family));
    auto F = registered_family_on(P, ctx);
    REQUIRE(F.has_value());
    RatSampler smp(89);
    for (int trial = 0; trial < 4; ++trial) {
        Rat t = smp.next_signed_rat(), t1 = smp.next_signed_rat();
        auto slice = detail::family_slice(*F, t, t1, 16);
        const Rat Ap = P.coeffs[0] + t1 * F->F[0];
        const Rat Bp = P.coeffs[1] + t1 * F->F[1];
        const Rat Cp = P.coeffs[2] + t1 * F->F[2];
        // left: engine pushforward of dxi^du through the inverse transition
        Bivector pushed = Pusher(slice.tr.inverse(), 8, 48)
                              .bivector(Bivector(XiPoly::monomial(TwistedLaurent::constant(Rat(1)), 0)));
        // right: (-C't xi1 + u1)^2 * det^-1 expanded directly
        XiPoly num(std::vector<TwistedLaurent>{TwistedLaurent::monomial(Rat(1), 1),
                                               TwistedLaurent::constant(-Cp * t)});
        TwistedLaurent det = TwistedLaurent::monomial(Rat(1), 2) +
                             TwistedLaurent::monomial(Bp * t, 1) +
                             TwistedLaurent::constant(Ap * Cp * t * t);
        XiPoly rhs = (num * num).scaled(det.inverted_to(30));
        CHECK(pushed.h == rhs.truncated_top(8));
    }
}

TEST_CASE("the A0 family coefficient identity holds as cleared polynomials") {
    // (t xi1 + u1)^2 - t (u1 xi1 + 1)^2 == (1 - t xi1^2)(u1^2 - t)
    RatSampler smp(97);
    for (int trial = 0; trial < 6; ++trial) {
        Rat t = smp.next_signed_rat();
        TwistedLaurent u1 = TwistedLaurent::monomial(Rat(1), 1);
        XiPoly lhs1(std::vector<TwistedLaurent>{u1, TwistedLaurent::constant(t)});
        XiPoly lhs2(std::vector<TwistedLaurent>{TwistedLaurent::constant(Rat(1)), u1});
        XiPoly lhs = lhs1 * lhs1 - (lhs2 * lhs2).scaled(t);
        XiPoly one_minus(std::vector<TwistedLaurent>{TwistedLaurent::constant(Rat(1)), TwistedLaurent(),
                                                     TwistedLaurent::constant(-t)});
        XiPoly rhs = one_minus.scaled(u1 * u1 - TwistedLaurent::constant(t));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("family slices at the origin reproduce the base surface") {
    for (const auto& c : registered_cases()) {
        SurfaceCohomology ctx(c.P.family, Truncation::defaults(c.P.family));
        auto F = registered_family_on(c.P, ctx);
        REQUIRE(F.has_value());
        auto slice = detail::family_slice(*F, Rat(0), Rat(0), 14);
        // transitions agree as Moebius actions: probe fields push identically
        Transition base = transition(c.P.family);
        VectorField probe(XiPoly::monomial(TwistedLaurent::monomial(Rat(1), 0), 1),
                          TwistedLaurent::constant(Rat(2)));
        CHECK(push_vector(slice.tr, probe, 8) == push_vector(base, probe, 8));
        // Lambda slice at origin equals the base bivector on chart 0
        Bivector lam0 = c.P.chart0_bivector(8);
        CHECK(slice.h0.truncated_top(8) == lam0.h);
    }
}

TEST_CASE("Kodaira-Spencer matrices have full rank for every registered family") {
    for (const auto& c : registered_cases()) {
        SurfaceCohomology ctx(c.P.family, Truncation::defaults(c.P.family));
        auto F = registered_family_on(c.P, ctx);
        REQUIRE(F.has_value());
        auto pc = poisson_cohomology_on(c.P, ctx);
        KSMatrix ks = ks_matrix_on(*F, ctx);
        CHECK(ks.m.rows() == pc.hp1);
        CHECK(ks.m.cols() == static_cast<int>(F->params.size()));
        CHECK(rank(ks.m) == pc.hp1);
        CHECK(ks_is_isomorphism_on(*F, ctx));
    }
}

TEST_CASE("verdicts match the reference table on representative structures") {
    auto p = test_params();
    struct Case {
        PoissonStructure P;
        Verdict v;
    };
    std::vector<Case> cases = {
        {PoissonStructure::make(SurfaceFamily::s0(p), {Rat(0), Rat(0), Rat(0)}), Verdict::Obstructed},
        {PoissonStructure::make(SurfaceFamily::s0(p), {Rat(1), Rat(0), Rat(0)}), Verdict::Unobstructed},
        {PoissonStructure::make(SurfaceFamily::twisted(make_rat(2, 3), p), {Rat(7)}),
         Verdict::Unobstructed},
        {PoissonStructure::make(SurfaceFamily::sn(2, p), {Rat(0), Rat(0), Rat(0)}), Verdict::Obstructed},
        {PoissonStructure::make(SurfaceFamily::sn(1, p), {Rat(0), Rat(1)}), Verdict::Unobstructed},
        {PoissonStructure::make(SurfaceFamily::sn(2, p), {Rat(0), Rat(1), make_rat(2, 7)}),
         Verdict::Obstructed},
        {PoissonStructure::make(SurfaceFamily::sn(2, p), {make_rat(5, 3), Rat(1), Rat(0)}),
         Verdict::Unobstructed},
        {PoissonStructure::make(SurfaceFamily::a0(p), {make_rat(3, 8)}), Verdict::Unobstructed},
        {PoissonStructure::make(SurfaceFamily::am1(p), {}), Verdict::Unobstructed},
    };
    for (const auto& c : cases) {
        SurfaceCohomology ctx(c.P.family, Truncation::defaults(c.P.family));
        CHECK(verdict_on(c.P, ctx) == c.v);
    }
}

TEST_CASE("truncation-signature wrappers for families and verdicts") {
    auto p = test_params();
    SurfaceFamily f = SurfaceFamily::sn(2, p);
    Truncation tr = Truncation::defaults(f);
    auto P = PoissonStructure::make(f, {make_rat(3, 4), Rat(1), make_rat(2, 5)});
    auto F = registered_family(P, tr);
    REQUIRE(F.has_value());
    CHECK(ks_is_isomorphism(*F, tr));
    CHECK(ks_matrix(*F, tr).m.cols() == 2);
    CHECK(verdict(P, tr) == Verdict::Unobstructed);
    CHECK(verdict(PoissonStructure::make(f, {Rat(0), Rat(0), Rat(0)}), tr) == Verdict::Obstructed);
}
