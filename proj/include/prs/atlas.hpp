#pragma once

#include <string>

#include "prs/elliptic.hpp"
#include "prs/polyvector.hpp"

namespace prs {

// The five gluing recipes for ruled surfaces over an elliptic curve. Chart 0
// covers (X - p) x P^1 with coordinates (u, xi); chart 1 covers the disk
// around p with (u1, xi1), identified by [u] = p + u1 and the family's
// Moebius rule below.
enum class FamilyKind { S0, Twisted, Sn, A0, Am1 };

struct SurfaceFamily {
    FamilyKind kind;
    Rat t0;  // twist parameter; nonzero only for Twisted
    int n;   // degree; meaningful only for Sn
    EllipticParams elliptic;

    static SurfaceFamily s0(EllipticParams e) { return SurfaceFamily{FamilyKind::S0, Rat(0), 0, std::move(e)}; }

    static SurfaceFamily twisted(Rat t0, EllipticParams e) {
        if (t0 == 0) throw invalid_parameters_error("twisted family needs t0 != 0");
        return SurfaceFamily{FamilyKind::Twisted, std::move(t0), 0, std::move(e)};
    }

    static SurfaceFamily sn(int n, EllipticParams e) {
        if (n < 1) throw invalid_parameters_error("S_n needs n >= 1");
        return SurfaceFamily{FamilyKind::Sn, Rat(0), n, std::move(e)};
    }

    static SurfaceFamily a0(EllipticParams e) { return SurfaceFamily{FamilyKind::A0, Rat(0), 0, std::move(e)}; }

    static SurfaceFamily am1(EllipticParams e) { return SurfaceFamily{FamilyKind::Am1, Rat(0), 0, std::move(e)}; }

    // truncation bookkeeping treats every non-S_n family like n = 1
    int effective_n() const { return kind == FamilyKind::Sn ? n : 1; }

    Rat twist() const { return kind == FamilyKind::Twisted ? t0 : Rat(0); }

    std::string label() const {
        switch (kind) {
            case FamilyKind::S0: return "S0";
            case FamilyKind::Twisted: return "S in S_0 twisted";
            case FamilyKind::Sn: return "S" + std::to_string(n);
            case FamilyKind::A0: return "A0";
            case FamilyKind::Am1: return "A-1";
        }
        return "?";
    }
};

// xi = (alpha*xi1 + beta)/(gamma*xi1 + delta) with TwistedLaurent entries in
// u1. Affine and linear gluings are stored in the same shape so one
// substitution engine serves every family, including the deformed
// transitions of the analytic families.
struct Transition {
    TwistedLaurent alpha, beta, gamma, delta;
    Rat twist;  // derivation parameter for E-carrying entries

    TwistedLaurent det() const { return alpha * delta - beta * gamma; }

    // reverses the roles of the charts (adjugate data)
    Transition inverse() const { return Transition{delta, -beta, -gamma, alpha, twist}; }
};

inline Transition transition(const SurfaceFamily& fam) {
    const TwistedLaurent one = TwistedLaurent::constant(Rat(1));
    const TwistedLaurent zero;
    switch (fam.kind) {
        case FamilyKind::S0:
            return Transition{one, zero, zero, one, Rat(0)};
        case FamilyKind::Twisted:
            return Transition{TwistedLaurent::monomial(Rat(1), 0, 1), zero, zero, one, fam.t0};
        case FamilyKind::Sn:
            return Transition{TwistedLaurent::monomial(Rat(1), fam.n), zero, zero, one, Rat(0)};
        case FamilyKind::A0:
            return Transition{one, TwistedLaurent::monomial(Rat(1), -1), zero, one, Rat(0)};
        case FamilyKind::Am1:
            return Transition{TwistedLaurent::monomial(Rat(1), 1), TwistedLaurent::monomial(Rat(1), -1),
                              zero, one, Rat(0)};
    }
    throw invalid_parameters_error("unknown family");
}

// Pushforward across a transition. For a field written in the source chart,
// substituting the inverse Moebius map and clearing the denominator to
// degree two gives, with P1 = -gamma*xi + alpha and P2 = delta*xi - beta,
//
//   g(xi1) dxi1         = det^-1  (g0 P1^2 + g1 P2 P1 + g2 P2^2) dxi
//   f(u1)  du1          = f du + f det^-2 (q0 P1^2 + q1 P2 P1 + q2 P2^2) dxi
//   h(xi1) dxi1 ^ du1   = det^-1  (h0 P1^2 + h1 P2 P1 + h2 P2^2) dxi ^ du
//
// where (q0,q1,q2) collect the u1-derivative of the transition. The result
// is again polynomial of degree <= 2 in the target xi; anything else would
// mean the Moebius data was invalid.
class Pusher {
public:
    Pusher(const Transition& tr, int top, int inv_slack = 96)
        : twist_(tr.twist), top_(top) {
        const XiPoly p1 = XiPoly(std::vector<TwistedLaurent>{tr.alpha, -tr.gamma});
        const XiPoly p2 = XiPoly(std::vector<TwistedLaurent>{-tr.beta, tr.delta});
        p1p1_ = p1 * p1;
        p2p1_ = p2 * p1;
        p2p2_ = p2 * p2;
        TwistedLaurent det = tr.det();
        if (det.is_zero_in_window()) throw singular_transition_error("transition determinant vanishes");
        det_inv_ = det.inverted_to(top + inv_slack);
        det_inv2_ = det_inv_ * det_inv_;
        const TwistedLaurent da = twisted_derivative(tr.alpha, twist_);
        const TwistedLaurent db = twisted_derivative(tr.beta, twist_);
        const TwistedLaurent dc = twisted_derivative(tr.gamma, twist_);
        const TwistedLaurent dd = twisted_derivative(tr.delta, twist_);
        q0_ = db * tr.delta - tr.beta * dd;
        q1_ = da * tr.delta + db * tr.gamma - tr.alpha * dd - tr.beta * dc;
        q2_ = da * tr.gamma - tr.alpha * dc;
    }

    Rat twist() const { return twist_; }

    XiPoly cleared_quadratic(const TwistedLaurent& c0, const TwistedLaurent& c1,
                             const TwistedLaurent& c2) const {
        return p1p1_.scaled(c0) + p2p1_.scaled(c1) + p2p2_.scaled(c2);
    }

    VectorField vector(const VectorField& v) const {
        XiPoly g = cleared_quadratic(v.xi_part.coeff(0), v.xi_part.coeff(1), v.xi_part.coeff(2))
                       .scaled(det_inv_);
        if (!v.u_part.is_exact_zero()) {
            XiPoly qf = cleared_quadratic(q0_, q1_, q2_).scaled(v.u_part).scaled(det_inv2_);
            g = g + qf;
        }
        return VectorField(g.truncated_top(top_), v.u_part.truncated_top(top_));
    }

    Bivector bivector(const Bivector& L) const {
        XiPoly h = cleared_quadratic(L.h.coeff(0), L.h.coeff(1), L.h.coeff(2)).scaled(det_inv_);
        return Bivector(h.truncated_top(top_));
    }

private:
    Rat twist_;
    int top_;
    XiPoly p1p1_, p2p1_, p2p2_;
    TwistedLaurent det_inv_, det_inv2_;
    TwistedLaurent q0_, q1_, q2_;
};

// Source-chart field -> target-chart expression on the overlap, trusted
// through `top`.
inline VectorField push_vector(const Transition& tr, const VectorField& v_chart1, int top) {
    return Pusher(tr, top).vector(v_chart1);
}

inline Bivector push_bivector(const Transition& tr, const Bivector& L_chart1, int top) {
    return Pusher(tr, top).bivector(L_chart1);
}

} // namespace prs
