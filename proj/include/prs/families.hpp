#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prs/poissonco.hpp"

namespace prs {

// The explicit Poisson analytic families attached to each unobstructed
// coefficient class, reduced to what the engine needs: the parameterized
// transition, the parameterized Lambda, and their first-order data at the
// origin. Deformation directions are drawn from {tau, t, t1}; tau is the
// base elliptic modulus direction whose class is the axiomatic
// (1/u1) d/du1.
enum class RegisteredKind { S0Moebius, TwistedShift, SnScale, S1Scale, A0Moebius, Am1Base };

enum class KsColumn { TauAxiom, TransitionDeriv, LambdaDeriv };

struct FamilyDefinition {
    RegisteredKind kind;
    PoissonStructure base;
    std::vector<std::pair<std::string, KsColumn>> params;
    std::vector<Rat> F;  // S0 only: the complement direction (F1,F2,F3)

    std::string name() const {
        switch (kind) {
            case RegisteredKind::S0Moebius: return "S0 Moebius family";
            case RegisteredKind::TwistedShift: return "twist shift family";
            case RegisteredKind::SnScale: return "S_n scaling family";
            case RegisteredKind::S1Scale: return "S_1 scaling family";
            case RegisteredKind::A0Moebius: return "A0 Moebius family";
            case RegisteredKind::Am1Base: return "A-1 base family";
        }
        return "?";
    }
};

// a family is registered exactly for the unobstructed coefficient
// classes; everywhere else there is nothing to register
inline std::optional<FamilyDefinition> registered_family_on(const PoissonStructure& P,
                                                            const SurfaceCohomology& ctx) {
    auto nonzero = [](const Rat& r) { return r != 0; };
    switch (P.family.kind) {
        case FamilyKind::S0: {
            if (!(nonzero(P.coeffs[0]) || nonzero(P.coeffs[1]) || nonzero(P.coeffs[2])))
                return std::nullopt;
            // pick the complement direction (F1,F2,F3) from the computed
            // cokernel of the induced H0 map
            auto pc = poisson_cohomology_on(P, ctx);
            if (pc.coker_indices.size() != 1)
                throw inconsistent_family_error("S0 with nonzero Lambda should have a line cokernel");
            const GlobalSection& g = ctx.w2.h0_basis()[pc.coker_indices[0]];
            std::vector<Rat> F(3, Rat(0));
            for (int s = 0; s < 3; ++s) {
                if (!g.chart0[s].wp_coeffs.empty())
                    for (const Rat& c : g.chart0[s].wp_coeffs)
                        if (c != 0) throw inconsistent_family_error("S0 H0(w2) basis is not constant");
                F[s] = g.chart0[s].constant;
            }
            return FamilyDefinition{RegisteredKind::S0Moebius, P,
                                    {{"tau", KsColumn::TauAxiom},
                                     {"t", KsColumn::TransitionDeriv},
                                     {"t1", KsColumn::LambdaDeriv}},
                                    std::move(F)};
        }
        case FamilyKind::Twisted:
            return FamilyDefinition{RegisteredKind::TwistedShift, P,
                                    {{"tau", KsColumn::TauAxiom},
                                     {"t", KsColumn::TransitionDeriv},
                                     {"t1", KsColumn::LambdaDeriv}},
                                    {}};
        case FamilyKind::Sn:
            if (P.coeffs[0] != 0)
                return FamilyDefinition{RegisteredKind::SnScale, P,
                                        {{"tau", KsColumn::TauAxiom}, {"t", KsColumn::LambdaDeriv}},
                                        {}};
            if (P.family.n == 1 && P.coeffs[1] != 0)
                return FamilyDefinition{RegisteredKind::S1Scale, P,
                                        {{"tau", KsColumn::TauAxiom}, {"t", KsColumn::LambdaDeriv}},
                                        {}};
            return std::nullopt;  // the obstructed classes carry no family
        case FamilyKind::A0:
            return FamilyDefinition{RegisteredKind::A0Moebius, P,
                                    {{"tau", KsColumn::TauAxiom},
                                     {"t", KsColumn::TransitionDeriv},
                                     {"t1", KsColumn::LambdaDeriv}},
                                    {}};
        case FamilyKind::Am1:
            if (!P.is_zero()) return std::nullopt;
            return FamilyDefinition{RegisteredKind::Am1Base, P, {{"tau", KsColumn::TauAxiom}}, {}};
    }
    return std::nullopt;
}

namespace detail {

struct FamilySlice {
    Transition tr;   // transition at the sampled parameters
    XiPoly h0;       // Lambda coefficient on chart 0
    XiPoly h1;       // Lambda coefficient on chart 1
};

// concrete family data at sampled (t, t1)
inline FamilySlice family_slice(const FamilyDefinition& F, const Rat& t, const Rat& t1, int top) {
    const PoissonStructure& P = F.base;
    const TwistedLaurent u1 = TwistedLaurent::monomial(Rat(1), 1);
    const TwistedLaurent one = TwistedLaurent::constant(Rat(1));
    auto c = [](const Rat& r) { return TwistedLaurent::constant(r); };
    auto poly = [](TwistedLaurent a0, TwistedLaurent a1, TwistedLaurent a2) {
        return XiPoly(std::vector<TwistedLaurent>{std::move(a0), std::move(a1), std::move(a2)});
    };
    switch (F.kind) {
        case RegisteredKind::S0Moebius: {
            const Rat A = P.coeffs[0] + t1 * F.F[0];
            const Rat B = P.coeffs[1] + t1 * F.F[1];
            const Rat C = P.coeffs[2] + t1 * F.F[2];
            Transition tr{u1 + c(B * t), c(A * t), c(-C * t), u1, Rat(0)};
            XiPoly h = poly(c(A), c(B), c(C));
            return FamilySlice{tr, h, h};
        }
        case RegisteredKind::TwistedShift: {
            // E stands for e^{(t0+t)/u1}; the identity never differentiates it
            Transition tr{TwistedLaurent::monomial(Rat(1), 0, 1), {}, {}, one, P.family.t0 + t};
            const Rat A = P.coeffs[0] + t1;
            XiPoly h = poly({}, c(A), {});
            return FamilySlice{tr, h, h};
        }
        case RegisteredKind::SnScale: {
            Transition tr{TwistedLaurent::monomial(Rat(1), P.family.n), {}, {}, one, Rat(0)};
            auto slots = P.chart0_slots();
            LaurentSeries a_u = elliptic_to_series(slots[2], P.family.elliptic, top);
            XiPoly h0 = poly({}, c(P.coeffs[0] + t), TwistedLaurent(a_u));
            XiPoly h1 = poly({}, c(P.coeffs[0] + t), TwistedLaurent(a_u.shifted(P.family.n)));
            return FamilySlice{tr, h0, h1};
        }
        case RegisteredKind::S1Scale: {
            Transition tr{u1, {}, {}, one, Rat(0)};
            const Rat c0 = P.coeffs[1];
            XiPoly h0 = poly({}, c(t), c(c0));
            XiPoly h1 = poly({}, c(t), TwistedLaurent::monomial(c0, 1));
            return FamilySlice{tr, h0, h1};
        }
        case RegisteredKind::A0Moebius: {
            Transition tr{u1, one, c(t), u1, Rat(0)};
            const Rat a = P.coeffs[0] + t1;
            XiPoly h = poly(c(a), {}, c(-a * t));
            return FamilySlice{tr, h, h};
        }
        case RegisteredKind::Am1Base: {
            Transition tr = transition(P.family);
            return FamilySlice{tr, XiPoly(), XiPoly()};
        }
    }
    throw invalid_parameters_error("unknown registered family");
}

// cleared-denominator well-definedness identity at one parameter sample:
//   sum_j h0_j (alpha x + beta)^j (gamma x + delta)^{2-j} == det * h1
inline bool slice_well_defined(const FamilySlice& s) {
    const XiPoly pa = XiPoly(std::vector<TwistedLaurent>{s.tr.beta, s.tr.alpha});
    const XiPoly pd = XiPoly(std::vector<TwistedLaurent>{s.tr.delta, s.tr.gamma});
    XiPoly lhs = (pd * pd).scaled(s.h0.coeff(0)) + (pa * pd).scaled(s.h0.coeff(1)) +
                 (pa * pa).scaled(s.h0.coeff(2));
    XiPoly rhs = s.h1.scaled(s.tr.det());
    return lhs == rhs;
}

inline std::vector<Rat> coker_coordinates(const RatMatrix& map_h0, const std::vector<int>& comp,
                                          const std::vector<Rat>& w) {
    RatMatrix ext(map_h0.rows(), map_h0.cols() + static_cast<int>(comp.size()));
    for (int i = 0; i < map_h0.rows(); ++i)
        for (int j = 0; j < map_h0.cols(); ++j) ext.at(i, j) = map_h0.at(i, j);
    for (std::size_t k = 0; k < comp.size(); ++k) ext.at(comp[k], map_h0.cols() + static_cast<int>(k)) = 1;
    auto sol = solve_any(ext, w);
    if (!sol) throw inconsistent_family_error("bivector class escapes image + complement");
    return std::vector<Rat>(sol->begin() + map_h0.cols(), sol->end());
}

// overlap cocycle dT/dt at the parameter origin, chart-corrected into the
// chart-1 frame
inline SlotSeries transition_derivative_cocycle(const FamilyDefinition& F) {
    SlotSeries s(4);
    switch (F.kind) {
        case RegisteredKind::S0Moebius:
            s[0] = TwistedLaurent::monomial(F.base.coeffs[0], -1);
            s[1] = TwistedLaurent::monomial(F.base.coeffs[1], -1);
            s[2] = TwistedLaurent::monomial(F.base.coeffs[2], -1);
            break;
        case RegisteredKind::TwistedShift:
            s[1] = TwistedLaurent::monomial(Rat(1), -1);
            break;
        case RegisteredKind::A0Moebius:
            s[1] = TwistedLaurent::monomial(Rat(-1), -2);
            s[2] = TwistedLaurent::monomial(Rat(-1), -1);
            break;
        default:
            throw inconsistent_family_error("family has no transition derivative direction");
    }
    return s;
}

// dLambda/d(direction) at the origin as chart-0 slot functions
inline std::vector<EllipticFunction> lambda_derivative(const FamilyDefinition& F) {
    std::vector<EllipticFunction> h(3);
    switch (F.kind) {
        case RegisteredKind::S0Moebius:
            for (int sidx = 0; sidx < 3; ++sidx) h[sidx] = EllipticFunction(F.F[sidx]);
            break;
        case RegisteredKind::TwistedShift:
        case RegisteredKind::SnScale:
        case RegisteredKind::S1Scale:
            h[1] = EllipticFunction(Rat(1));  // xi dxi^du
            break;
        case RegisteredKind::A0Moebius:
            h[0] = EllipticFunction(Rat(1));  // dxi^du
            break;
        default:
            throw inconsistent_family_error("family has no Lambda derivative direction");
    }
    return h;
}

} // namespace detail

// Complete polynomial-identity test for the well-definedness of Lambda over
// the whole parameter space: the cleared identity has total degree at most 3
// in each parameter, so checking it on a 5x5 rational grid proves it.
inline bool verify_lambda_welldefined(const FamilyDefinition& F, int samples = 5) {
    const int count = std::max(samples, 5);
    const int top = 2 * F.base.family.effective_n() + 10;
    const bool has_t1 = F.params.size() == 3;
    for (int i = 0; i < count; ++i) {
        for (int j = 0; j < (has_t1 ? count : 1); ++j) {
            const Rat t = make_rat(i, 1 + (i % 3));  // distinct rational nodes
            const Rat t1 = make_rat(j, 1 + (j % 2));
            detail::FamilySlice s = detail::family_slice(F, t, t1, top);
            if (s.tr.det().is_zero_in_window()) continue;  // singular sample: skip, grid has spares
            if (!detail::slice_well_defined(s)) return false;
        }
    }
    return true;
}

// rows: the hp1 basis (cokernel part of H0, then kernel part of H1);
// columns: the family's deformation directions
struct KSMatrix {
    RatMatrix m;
    std::vector<std::string> param_names;
};

inline KSMatrix ks_matrix_on(const FamilyDefinition& F, const SurfaceCohomology& ctx) {
    const PoissonCohomology pc = poisson_cohomology_on(F.base, ctx);
    const int coker_dim = static_cast<int>(pc.coker_indices.size());
    const int ker_dim = static_cast<int>(pc.h1_kernel.size());
    const int reps = ctx.theta.h1_dim();

    RatMatrix kernel_mat(reps, ker_dim);
    for (int j = 0; j < ker_dim; ++j)
        for (int i = 0; i < reps; ++i) kernel_mat.at(i, j) = pc.h1_kernel[j][i];

    auto kernel_coords = [&](const std::vector<Rat>& rep_coords) {
        auto sol = solve_any(kernel_mat, rep_coords);
        if (!sol)
            throw inconsistent_family_error("derivative cocycle is not in ker(H1 -> H1)");
        return *sol;
    };

    KSMatrix ks{RatMatrix(coker_dim + ker_dim, static_cast<int>(F.params.size())), {}};
    for (std::size_t p = 0; p < F.params.size(); ++p) {
        ks.param_names.push_back(F.params[p].first);
        std::vector<Rat> col(coker_dim + ker_dim, Rat(0));
        switch (F.params[p].second) {
            case KsColumn::TauAxiom: {
                // the base-direction class is (1/u1) d/du1, the first rep
                std::vector<Rat> rep_coords(reps, Rat(0));
                rep_coords[0] = 1;
                auto y = kernel_coords(rep_coords);
                for (int i = 0; i < ker_dim; ++i) col[coker_dim + i] = y[i];
                break;
            }
            case KsColumn::TransitionDeriv: {
                SlotSeries cocycle = detail::transition_derivative_cocycle(F);
                auto rep_coords = ctx.theta.reduce_class(cocycle);
                auto image = pc.map_h1.apply(rep_coords);
                for (const Rat& x : image)
                    if (x != 0)
                        throw inconsistent_family_error(
                            "transition derivative cocycle not in ker(induced H1 map)");
                auto y = kernel_coords(rep_coords);
                for (int i = 0; i < ker_dim; ++i) col[coker_dim + i] = y[i];
                break;
            }
            case KsColumn::LambdaDeriv: {
                auto h = detail::lambda_derivative(F);
                std::vector<TwistedLaurent> c(3);
                for (int s = 0; s < 3; ++s)
                    c[s] = TwistedLaurent(elliptic_to_series(h[s], F.base.family.elliptic, ctx.tr.N));
                const Transition inv = transition(F.base.family).inverse();
                Bivector pushed = Pusher(inv, ctx.tr.N, 4 * F.base.family.effective_n() + 24)
                                      .bivector(Bivector(XiPoly(std::move(c))));
                auto w = detail::H0W2Coordinates(ctx).coords(pushed);
                auto cc = detail::coker_coordinates(pc.map_h0, pc.coker_indices, w);
                for (int i = 0; i < coker_dim; ++i) col[i] = cc[i];
                break;
            }
        }
        for (int i = 0; i < coker_dim + ker_dim; ++i) ks.m.at(i, static_cast<int>(p)) = col[i];
    }
    return ks;
}

inline bool ks_is_isomorphism_on(const FamilyDefinition& F, const SurfaceCohomology& ctx) {
    const PoissonCohomology pc = poisson_cohomology_on(F.base, ctx);
    const KSMatrix ks = ks_matrix_on(F, ctx);
    return rank(ks.m) == pc.hp1;
}

enum class Verdict { Obstructed, Unobstructed, Inconclusive };

inline std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Obstructed: return "obstructed";
        case Verdict::Unobstructed: return "unobstructed";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

// Obstructed on a bracket-pairing witness; unobstructed only on a verified family
// with full-rank Kodaira-Spencer map. Witness absence alone proves nothing.
inline Verdict verdict_on(const PoissonStructure& P, const SurfaceCohomology& ctx) {
    if (obstruction_witness_on(P, ctx)) return Verdict::Obstructed;
    auto fam = registered_family_on(P, ctx);
    if (fam && verify_lambda_welldefined(*fam) && ks_is_isomorphism_on(*fam, ctx))
        return Verdict::Unobstructed;
    return Verdict::Inconclusive;
}

// convenience forms taking a truncation
inline std::optional<FamilyDefinition> registered_family(const PoissonStructure& P, const Truncation& tr) {
    return registered_family_on(P, SurfaceCohomology(P.family, tr));
}

inline KSMatrix ks_matrix(const FamilyDefinition& F, const Truncation& tr) {
    return ks_matrix_on(F, SurfaceCohomology(F.base.family, tr));
}

inline bool ks_is_isomorphism(const FamilyDefinition& F, const Truncation& tr) {
    return ks_is_isomorphism_on(F, SurfaceCohomology(F.base.family, tr));
}

inline Verdict verdict(const PoissonStructure& P, const Truncation& tr) {
    return verdict_on(P, SurfaceCohomology(P.family, tr));
}

} // namespace prs
