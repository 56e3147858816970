#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prs/cech.hpp"

namespace prs {

// A holomorphic Poisson structure on one of the five families, held as the
// family-specific coefficient vector of its normal form:
//   S0:      (A, B, C)            Lambda = (A + B xi + C xi^2) dxi^du
//   Twisted: (A)                  Lambda = A xi dxi^du
//   Sn:      (a0, c0..c_{n-1})    Lambda = (a0 xi + A(u) xi^2) dxi^du
//   A0:      (a0)                 Lambda = a0 dxi^du
//   Am1:     ()                   Lambda = 0
// with A(u) = c0 + c1 wp + c2 wp' + ... + c_{n-1} wp^(n-2).
struct PoissonStructure {
    SurfaceFamily family;
    std::vector<Rat> coeffs;

    static std::size_t expected_arity(const SurfaceFamily& fam) {
        switch (fam.kind) {
            case FamilyKind::S0: return 3;
            case FamilyKind::Twisted: return 1;
            case FamilyKind::Sn: return static_cast<std::size_t>(fam.n) + 1;
            case FamilyKind::A0: return 1;
            case FamilyKind::Am1: return 0;
        }
        return 0;
    }

    static PoissonStructure make(SurfaceFamily fam, std::vector<Rat> coeffs) {
        if (coeffs.size() != expected_arity(fam))
            throw invalid_parameters_error("Poisson coefficient vector has arity " +
                                           std::to_string(coeffs.size()) + ", expected " +
                                           std::to_string(expected_arity(fam)));
        return PoissonStructure{std::move(fam), std::move(coeffs)};
    }

    bool is_zero() const {
        for (const Rat& c : coeffs)
            if (c != 0) return false;
        return true;
    }

    // h-coefficients of Lambda on chart 0, one elliptic function per xi-slot
    std::vector<EllipticFunction> chart0_slots() const {
        std::vector<EllipticFunction> h(3);
        switch (family.kind) {
            case FamilyKind::S0:
                h[0] = EllipticFunction(coeffs[0]);
                h[1] = EllipticFunction(coeffs[1]);
                h[2] = EllipticFunction(coeffs[2]);
                break;
            case FamilyKind::Twisted:
                h[1] = EllipticFunction(coeffs[0]);
                break;
            case FamilyKind::Sn: {
                h[1] = EllipticFunction(coeffs[0]);
                EllipticFunction a(coeffs[1]);
                for (int k = 1; k < family.n; ++k)
                    a = a + EllipticFunction::wp_derivative(k - 1, coeffs[k + 1]);
                h[2] = a;
                break;
            }
            case FamilyKind::A0:
                h[0] = EllipticFunction(coeffs[0]);
                break;
            case FamilyKind::Am1:
                break;
        }
        return h;
    }

    Bivector chart0_bivector(int top) const {
        auto h = chart0_slots();
        std::vector<TwistedLaurent> c(3);
        for (int s = 0; s < 3; ++s)
            c[s] = TwistedLaurent(elliptic_to_series(h[s], family.elliptic, top));
        return Bivector(XiPoly(std::move(c)));
    }

    // Lambda written on the overlap in chart-1 coordinates
    Bivector overlap_bivector(int top) const {
        const Transition inv = transition(family).inverse();
        const int slack = 4 * family.effective_n() + 24;
        return Pusher(inv, top, slack).bivector(chart0_bivector(top + 2 * family.effective_n() + 8));
    }

    std::string str() const { return chart0_bivector(4).str(); }
};

// Both sheaf cohomologies of one surface at one truncation; everything the
// Poisson layer needs.
struct SurfaceCohomology {
    SurfaceFamily fam;
    Truncation tr;
    CechComplex theta;
    CechComplex w2;

    SurfaceCohomology(const SurfaceFamily& f, const Truncation& t)
        : fam(f), tr(t), theta(f, Sheaf::Theta, t), w2(f, Sheaf::Wedge2Theta, t) {}
};

namespace detail {

// coordinates of holomorphic chart-1 bivectors in the chart-1 sides of the
// H^0(wedge^2 Theta) basis, solved exactly on a shared row window
class H0W2Coordinates {
public:
    explicit H0W2Coordinates(const SurfaceCohomology& ctx) {
        const auto& basis = ctx.w2.h0_basis();
        dim_ = static_cast<int>(basis.size());
        cap_ = ctx.tr.N - 2;
        for (const auto& g : basis)
            for (const auto& t : g.chart1)
                for (const auto& [m, ser] : t.parts())
                    if (!ser.is_zero_in_window()) cap_ = std::min(cap_, ser.hi());
        if (dim_ > 0 && cap_ < 2 * dim_)
            throw untrusted_window_error("chart-1 window too small to coordinatize H0(w2)");
        mat_ = RatMatrix(3 * (cap_ + 1), dim_);
        for (int j = 0; j < dim_; ++j) {
            const SlotSeries& s = basis[j].chart1;
            for (int slot = 0; slot < 3; ++slot) {
                const LaurentSeries part = s[slot].e_part(0);
                for (int e = 0; e <= cap_; ++e) mat_.at(slot * (cap_ + 1) + e, j) = part.coeff(e);
            }
        }
        if (dim_ > 0 && rank(mat_) != dim_)
            throw untrusted_window_error("H0(w2) chart-1 restrictions are dependent in the window");
    }

    std::vector<Rat> coords(const Bivector& b) const {
        SlotSeries s = slots_of(b);
        // the bracket may be trusted on a narrower window than the basis;
        // restrict the solve accordingly and insist it stays determined
        int ecap = cap_;
        for (int slot = 0; slot < 3; ++slot) {
            if (!s[slot].untwisted())
                throw untrusted_window_error("bivector with twisted content cannot be global");
            const LaurentSeries part = s[slot].e_part(0);
            if (!part.is_zero_in_window() && part.valuation() < 0)
                throw untrusted_window_error("bivector with poles cannot be global");
            if (!part.is_exact_zero()) ecap = std::min(ecap, part.hi());
        }
        if (ecap < 0) throw untrusted_window_error("no trusted window left to coordinatize a bivector");
        RatMatrix sub(3 * (ecap + 1), dim_);
        std::vector<Rat> rhs(3 * (ecap + 1), Rat(0));
        for (int slot = 0; slot < 3; ++slot) {
            const LaurentSeries part = s[slot].e_part(0);
            for (int e = 0; e <= ecap; ++e) {
                rhs[slot * (ecap + 1) + e] = part.coeff(e);
                for (int j = 0; j < dim_; ++j)
                    sub.at(slot * (ecap + 1) + e, j) = mat_.at(slot * (cap_ + 1) + e, j);
            }
        }
        if (dim_ > 0 && rank(sub) != dim_)
            throw untrusted_window_error("window too narrow to coordinatize against H0(w2)");
        auto sol = solve_any(sub, rhs);
        if (!sol) throw untrusted_window_error("bivector is not in the span of H0(w2) in-window");
        return *sol;
    }

private:
    int dim_ = 0;
    int cap_ = 0;
    RatMatrix mat_;
};

} // namespace detail

// matrix of [Lambda, -]: H^0(Theta) -> H^0(wedge^2 Theta), computed on the
// chart-1 sides where every coefficient is a plain power series
inline RatMatrix induced_map_h0_on(const PoissonStructure& P, const SurfaceCohomology& ctx) {
    const Rat t0 = P.family.twist();
    const auto& basis_theta = ctx.theta.h0_basis();
    const auto& basis_w2 = ctx.w2.h0_basis();
    detail::H0W2Coordinates coords(ctx);
    const Bivector lambda1 = [&] {
        // chart-1 side of Lambda: push the chart-0 expression once
        const Transition inv = transition(P.family).inverse();
        const int top = ctx.tr.N;
        return Pusher(inv, top, 4 * P.family.effective_n() + 24)
            .bivector(P.chart0_bivector(top + 2 * P.family.effective_n() + 8));
    }();

    RatMatrix m(static_cast<int>(basis_w2.size()), static_cast<int>(basis_theta.size()));
    for (std::size_t j = 0; j < basis_theta.size(); ++j) {
        Bivector br = schouten_bv(lambda1, basis_theta[j].chart1_vector(), t0);
        if (basis_w2.empty()) {
            if (!br.is_zero_in_window())
                throw untrusted_window_error("bracket lands outside the trivial H0(w2)");
            continue;
        }
        auto col = coords.coords(br);
        for (std::size_t i = 0; i < col.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = col[i];
    }
    return m;
}

// matrix of [Lambda, -]: H^1(Theta) -> H^1(wedge^2 Theta) via reduce_class
// of the overlap brackets
inline RatMatrix induced_map_h1_on(const PoissonStructure& P, const SurfaceCohomology& ctx) {
    const Rat t0 = P.family.twist();
    const int bracket_top = ctx.fam.effective_n() + 8;
    const Bivector lambda_ov = P.overlap_bivector(bracket_top);
    const auto& reps = ctx.theta.h1_reps();
    RatMatrix m(ctx.w2.h1_dim(), static_cast<int>(reps.size()));
    for (std::size_t j = 0; j < reps.size(); ++j) {
        Bivector br = schouten_bv(lambda_ov, vector_of(reps[j]), t0);
        auto cls = ctx.w2.reduce_class(slots_of(br));
        for (std::size_t i = 0; i < cls.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = cls[i];
    }
    return m;
}

// dimensions and labeled basis data of the hypercohomology of the complex
// Theta -> wedge^2 Theta induced by [Lambda, -]
struct PoissonCohomology {
    int hp0, hp1, hp2;
    RatMatrix map_h0, map_h1;
    std::vector<int> coker_indices;            // complement of im(map_h0) in the H0(w2) basis
    std::vector<std::vector<Rat>> h1_kernel;   // kernel basis of map_h1 in rep coordinates
};

inline PoissonCohomology poisson_cohomology_on(const PoissonStructure& P, const SurfaceCohomology& ctx) {
    PoissonCohomology pc{0, 0, 0, induced_map_h0_on(P, ctx), induced_map_h1_on(P, ctx), {}, {}};
    const int rank_h0 = rank(pc.map_h0);
    pc.hp0 = ctx.theta.h0_dim() - rank_h0;
    auto [r0, comp] = cokernel_complement(pc.map_h0);
    if (r0 != rank_h0) throw untrusted_window_error("rank disagreement in induced H0 map");
    pc.coker_indices = comp;
    pc.h1_kernel = kernel_basis(pc.map_h1);
    pc.hp1 = static_cast<int>(comp.size() + pc.h1_kernel.size());
    pc.hp2 = ctx.w2.h1_dim() - rank(pc.map_h1);
    return pc;
}

// First-order obstruction search: a over the H0(w2) basis, b over a kernel
// basis of the induced H^1 map, lexicographic. Finding a pair whose bracket
// class escapes the image proves obstructedness; finding none proves
// nothing.
struct ObstructionWitness {
    int a_index;                 // into H0(w2) basis
    std::vector<Rat> b_coords;   // kernel combination in H1(Theta) rep coordinates
    std::vector<Rat> bracket_class;
};

inline std::optional<ObstructionWitness> obstruction_witness_on(const PoissonStructure& P,
                                                                const SurfaceCohomology& ctx) {
    const Rat t0 = P.family.twist();
    const RatMatrix map_h1 = induced_map_h1_on(P, ctx);
    const auto kernel = kernel_basis(map_h1);
    const auto& basis_w2 = ctx.w2.h0_basis();
    const auto& reps = ctx.theta.h1_reps();
    for (std::size_t ai = 0; ai < basis_w2.size(); ++ai) {
        const Bivector a_ov = basis_w2[ai].chart1_bivector();
        for (const auto& kvec : kernel) {
            SlotSeries b(slot_count(Sheaf::Theta));
            for (std::size_t r = 0; r < reps.size(); ++r)
                b = slots_add(b, slots_scale(reps[r], kvec[r]));
            Bivector br = schouten_bv(a_ov, vector_of(b), t0);
            auto cls = ctx.w2.reduce_class(slots_of(br));
            if (!in_column_space(map_h1, cls))
                return ObstructionWitness{static_cast<int>(ai), kvec, cls};
        }
    }
    return std::nullopt;
}

// convenience forms that build their own cohomology context
inline RatMatrix induced_map_h0(const PoissonStructure& P, const Truncation& tr) {
    return induced_map_h0_on(P, SurfaceCohomology(P.family, tr));
}

inline RatMatrix induced_map_h1(const PoissonStructure& P, const Truncation& tr) {
    return induced_map_h1_on(P, SurfaceCohomology(P.family, tr));
}

inline PoissonCohomology poisson_cohomology(const PoissonStructure& P, const Truncation& tr) {
    return poisson_cohomology_on(P, SurfaceCohomology(P.family, tr));
}

inline std::optional<ObstructionWitness> obstruction_witness(const PoissonStructure& P,
                                                             const Truncation& tr) {
    return obstruction_witness_on(P, SurfaceCohomology(P.family, tr));
}

} // namespace prs
