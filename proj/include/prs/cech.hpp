#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prs/atlas.hpp"
#include "prs/matrix.hpp"

namespace prs {

enum class Sheaf { Theta, Wedge2Theta };

// slots 0..2 carry xi^j coefficients; Theta adds slot 3 = d/du
inline int slot_count(Sheaf s) { return s == Sheaf::Theta ? 4 : 3; }

// Truncation state: M bounds the pole depth of overlap sections, N the
// holomorphic order on chart 1, K the user-facing elliptic derivative cap.
// The cochain ansatz itself ties its elliptic depth to M so that the
// quotient stays finite-dimensional in a self-consistent way; K only floors
// it. Stabilization doubles all three and demands unchanged dimensions.
struct Truncation {
    int M, N, K;

    static Truncation defaults(const SurfaceFamily& fam) {
        const int n = fam.effective_n();
        return Truncation{2 * n + 6, 2 * n + 6, n + 2};
    }

    Truncation doubled() const { return Truncation{2 * M, 2 * N, 2 * K}; }

    void validate(const SurfaceFamily& fam) const {
        const int n = fam.effective_n();
        if (M < n + 3) throw invalid_parameters_error("truncation: M must be at least n+3");
        if (N < M) throw invalid_parameters_error("truncation: N must be at least M");
        if (K < n) throw invalid_parameters_error("truncation: K must be at least n");
    }
};

// A section over the overlap (or one chart), stored slotwise:
//   Theta:        [xi^0 d_xi, xi^1 d_xi, xi^2 d_xi, d_u]
//   Wedge2Theta:  [xi^0, xi^1, xi^2] * d_xi^d_u
using SlotSeries = std::vector<TwistedLaurent>;

inline SlotSeries slots_of(const VectorField& v) {
    return {v.xi_part.coeff(0), v.xi_part.coeff(1), v.xi_part.coeff(2), v.u_part};
}

inline SlotSeries slots_of(const Bivector& b) { return {b.h.coeff(0), b.h.coeff(1), b.h.coeff(2)}; }

inline VectorField vector_of(const SlotSeries& s) {
    return VectorField(XiPoly(std::vector<TwistedLaurent>{s[0], s[1], s[2]}), s[3]);
}

inline Bivector bivector_of(const SlotSeries& s) {
    return Bivector(XiPoly(std::vector<TwistedLaurent>{s[0], s[1], s[2]}));
}

inline SlotSeries slot_monomial(Sheaf sheaf, int slot, const Rat& c, int u_exp) {
    SlotSeries s(slot_count(sheaf));
    s[slot] = TwistedLaurent::monomial(c, u_exp);
    return s;
}

inline SlotSeries slots_add(const SlotSeries& a, const SlotSeries& b) {
    SlotSeries r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline SlotSeries slots_scale(const SlotSeries& a, const Rat& k) {
    SlotSeries r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].scaled(k);
    return r;
}

// chart-0 basis label: ell = 0 is the constant 1, ell >= 1 is wp^(ell-1)
struct C0Label {
    int slot;
    int ell;
};

// A global section of the sheaf: elliptic-coefficient expression on chart 0
// and its holomorphic expression on chart 1.
struct GlobalSection {
    std::vector<EllipticFunction> chart0;  // per slot
    SlotSeries chart1;                     // trusted through N

    VectorField chart1_vector() const { return vector_of(chart1); }
    Bivector chart1_bivector() const { return bivector_of(chart1); }

    std::string chart0_str(Sheaf sheaf) const {
        static const char* theta_gen[4] = {"d_xi", "xi*d_xi", "xi^2*d_xi", "d_u"};
        static const char* w2_gen[3] = {"d_xi^d_u", "xi*d_xi^d_u", "xi^2*d_xi^d_u"};
        std::string out;
        for (std::size_t s = 0; s < chart0.size(); ++s) {
            if (chart0[s].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + chart0[s].str() + ")*";
            out += (sheaf == Sheaf::Theta) ? theta_gen[s] : w2_gen[s];
        }
        return out.empty() ? "0" : out;
    }
};

namespace detail {

// Canonical H^1 representatives per family: the classical small-pole
// monomial bases (plus one composite cocycle on A0), used to present the
// quotient whenever they fit the ansatz (they always do).
inline std::vector<SlotSeries> canonical_h1_reps(const SurfaceFamily& fam, Sheaf sheaf) {
    std::vector<SlotSeries> reps;
    auto mono = [&](int slot, const Rat& c, int e) { return slot_monomial(sheaf, slot, c, e); };
    if (sheaf == Sheaf::Theta) {
        switch (fam.kind) {
            case FamilyKind::S0:
                reps = {mono(3, Rat(1), -1), mono(0, Rat(1), -1), mono(1, Rat(1), -1),
                        mono(2, Rat(1), -1)};
                break;
            case FamilyKind::Twisted:
                reps = {mono(3, Rat(1), -1), mono(1, Rat(1), -1)};
                break;
            case FamilyKind::Sn:
                reps.push_back(mono(3, Rat(1), -1));
                reps.push_back(mono(0, Rat(1), -(fam.n + 1)));
                for (int k = 1; k <= fam.n - 1; ++k) reps.push_back(mono(0, Rat(1), -k));
                break;
            case FamilyKind::A0: {
                reps.push_back(mono(3, Rat(1), -1));
                SlotSeries s(slot_count(sheaf));
                s[2] = TwistedLaurent::monomial(Rat(-1), -1);
                s[1] = TwistedLaurent::monomial(Rat(-1), -2);
                reps.push_back(std::move(s));
                break;
            }
            case FamilyKind::Am1:
                reps = {mono(3, Rat(1), -1)};
                break;
        }
    } else {
        switch (fam.kind) {
            case FamilyKind::S0:
                reps = {mono(0, Rat(1), -1), mono(1, Rat(1), -1), mono(2, Rat(1), -1)};
                break;
            case FamilyKind::Twisted:
                reps = {mono(1, Rat(1), -1)};
                break;
            case FamilyKind::Sn:
                reps.push_back(mono(1, Rat(1), -1));
                reps.push_back(mono(0, Rat(1), -(fam.n + 1)));
                for (int k = 1; k <= fam.n - 1; ++k) reps.push_back(mono(0, Rat(1), -k));
                break;
            case FamilyKind::A0:
                reps = {mono(2, Rat(1), -1)};
                break;
            case FamilyKind::Am1:
                break;
        }
    }
    return reps;
}

} // namespace detail

// The two-chart Cech complex of Theta or wedge^2 Theta at a truncation.
//
// C^0 pairs a chart-0 section (coefficients in {1, wp, wp', ...} up to pole
// depth M per slot) with a chart-1 section (power series through N). C^1
// holds overlap sections. The coboundary push(theta_0) - theta_1 splits:
// chart-1 monomials cancel holomorphic overlap content exactly, so kernels
// and cokernels live entirely in the pole block of the pushed chart-0
// columns — that block is what gets eliminated. For the twisted family the
// matrix is block-diagonal in E-degree; nonzero-E blocks must carry no
// kernel (their columns are forced to vanish, which is how e^{t0/u1} kills
// the xi^0 and xi^2 coefficients), and by the same mechanism they add no
// cokernel.
class CechComplex {
public:
    CechComplex(SurfaceFamily fam, Sheaf sheaf, Truncation tr)
        : fam_(std::move(fam)), sheaf_(sheaf), tr_(tr) {
        tr_.validate(fam_);
        build();
    }

    const SurfaceFamily& family() const { return fam_; }
    Sheaf sheaf() const { return sheaf_; }
    const Truncation& truncation() const { return tr_; }

    int h0_dim() const { return static_cast<int>(h0_basis_.size()); }
    int h1_dim() const { return static_cast<int>(h1_reps_.size()); }

    const std::vector<GlobalSection>& h0_basis() const { return h0_basis_; }
    const std::vector<SlotSeries>& h1_reps() const { return h1_reps_; }

    // coordinates of a cocycle in the canonical representatives, modulo the
    // image of the coboundary
    std::vector<Rat> reduce_class(const SlotSeries& cocycle) const {
        const int slots = slot_count(sheaf_);
        if (static_cast<int>(cocycle.size()) != slots)
            throw invalid_parameters_error("cocycle slot count does not match the sheaf");
        std::vector<Rat> b(pole_rows_, Rat(0));
        for (int s = 0; s < slots; ++s) {
            for (const auto& [m, series] : cocycle[s].parts()) {
                if (m != 0) {
                    if (!series.is_zero_in_window())
                        throw untrusted_window_error("cocycle has nonzero E-degree content");
                    continue;
                }
                if (!series.is_zero_in_window() && series.valuation() < -deep_[s])
                    throw untrusted_window_error("cocycle pole exceeds the ansatz window");
            }
            const LaurentSeries part = cocycle[s].e_part(0);
            for (int d = deep_[s]; d >= 1; --d) b[pole_row_index(s, d)] = part.coeff(-d);
        }
        auto sol = solve_any(reduce_matrix_, b);
        if (!sol) throw untrusted_window_error("cocycle is not reducible within the window");
        return std::vector<Rat>(sol->begin(), sol->begin() + h1_dim());
    }

    // matrix of the full coboundary delta: C^0 -> C^1 in the ansatz bases
    // (chart-0 columns first, then chart-1 monomial columns)
    RatMatrix coboundary_matrix_full() const;

    // internals shared with the Poisson layer
    const RatMatrix& pole_matrix() const { return pole_matrix_; }
    int pole_depth(int slot) const { return deep_[slot]; }

    // column index of a chart-0 ansatz element in the E-degree-0 block
    std::optional<int> label_index(int slot, int ell) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i].slot == slot && labels_[i].ell == ell) return static_cast<int>(i);
        return std::nullopt;
    }
    int label_count() const { return static_cast<int>(labels_.size()); }

private:
    void build();
    int pole_row_index(int slot, int depth) const { return row_base_[slot] + (depth - 1); }

    SlotSeries push_label_combination(const std::vector<Rat>& coeffs, const WpTable& wt,
                                      const Pusher& pusher) const;

    SurfaceFamily fam_;
    Sheaf sheaf_;
    Truncation tr_;

    std::vector<C0Label> labels_;                 // E-degree-0 columns
    std::map<int, std::vector<C0Label>> e_labels_;  // nonzero-E columns per degree
    std::vector<SlotSeries> pushed_;              // per labels_ entry, matrix precision
    std::map<int, std::vector<SlotSeries>> e_pushed_;

    std::vector<int> deep_;                  // E-degree-0 pole depth per slot
    std::map<int, std::vector<int>> e_deep_; // pole depth per nonzero E-degree
    std::vector<int> row_base_;              // first row of each slot block
    int pole_rows_ = 0;

    RatMatrix pole_matrix_;    // pole rows x E0 chart-0 columns
    RatMatrix reduce_matrix_;  // [h1 reps | pole matrix]
    int rank_ = 0;

    std::vector<GlobalSection> h0_basis_;
    std::vector<SlotSeries> h1_reps_;
    std::vector<int> computed_complement_rows_;
};

inline void CechComplex::build() {
    const int slots = slot_count(sheaf_);
    const int n = fam_.effective_n();
    const int matrix_top = 1;  // columns are only read through u1^0
    const int exp_top = matrix_top + 2 * n + 8;

    const Transition tr0 = transition(fam_);
    const Transition inv = tr0.inverse();
    Pusher pusher(inv, matrix_top, tr_.M + 2 * n + 16);

    // The transition shifts pole depths between slots by fixed amounts.
    // Probe each source slot with a pole of order 2 and read the worst gain,
    // then cap that slot's elliptic depth at M minus the gain: every pushed
    // column bottoms out at depth M and the truncated quotient stays the
    // honest one.
    std::vector<int> shift(slots, 0);
    for (int s = 0; s < slots; ++s) {
        TwistedLaurent probe = TwistedLaurent::monomial(Rat(1), -2);
        SlotSeries pushed;
        if (sheaf_ == Sheaf::Theta) {
            VectorField f = (s < 3) ? VectorField(XiPoly::monomial(probe, s), TwistedLaurent())
                                    : VectorField(XiPoly(), probe);
            pushed = slots_of(pusher.vector(f));
        } else {
            pushed = slots_of(pusher.bivector(Bivector(XiPoly::monomial(probe, s))));
        }
        for (const auto& part : pushed)
            for (const auto& [m, ser] : part.parts())
                if (!ser.is_zero_in_window() && ser.valuation() < 0)
                    shift[s] = std::max(shift[s], -ser.valuation() - 2);
    }

    int max_k = 0;
    for (int s = 0; s < slots; ++s) max_k = std::max(max_k, tr_.M - shift[s] - 2);
    WpTable wt(fam_.elliptic, std::max(max_k, 1), exp_top);

    // push every chart-0 ansatz element and sort columns by E-degree
    for (int s = 0; s < slots; ++s) {
        const int cap = tr_.M - shift[s];  // deepest elliptic pole in this slot
        for (int ell = 0; ell <= cap - 1; ++ell) {
            TwistedLaurent coeff(ell == 0 ? LaurentSeries::constant(Rat(1)) : wt.wp_deriv(ell - 1));
            SlotSeries pushed;
            if (sheaf_ == Sheaf::Theta) {
                VectorField field = (s < 3)
                                        ? VectorField(XiPoly::monomial(coeff, s), TwistedLaurent())
                                        : VectorField(XiPoly(), coeff);
                pushed = slots_of(pusher.vector(field));
            } else {
                pushed = slots_of(pusher.bivector(Bivector(XiPoly::monomial(coeff, s))));
            }
            // a column must live in a single E-degree
            int degree = 0;
            bool seen = false;
            for (const auto& part : pushed)
                for (const auto& [m, ser] : part.parts()) {
                    if (ser.is_zero_in_window()) continue;
                    if (seen && m != degree)
                        throw untrusted_window_error("coboundary column mixes E-degrees");
                    degree = m;
                    seen = true;
                }
            if (degree == 0) {
                labels_.push_back({s, ell});
                pushed_.push_back(std::move(pushed));
            } else {
                e_labels_[degree].push_back({s, ell});
                e_pushed_[degree].push_back(std::move(pushed));
            }
        }
    }

    h1_reps_ = detail::canonical_h1_reps(fam_, sheaf_);

    // pole depth per (E-degree, slot): row blocks exist only where the
    // pushed ansatz or the canonical representatives actually have content.
    // That is how the twisted family's xi^0 / xi^2 slots stay confined to
    // their E-degree +-1 blocks.
    deep_.assign(slots, 0);
    auto absorb_depth = [&](std::vector<int>& dst, const SlotSeries& sec, int degree) {
        for (int s = 0; s < slots; ++s) {
            const LaurentSeries part = sec[s].e_part(degree);
            if (!part.is_zero_in_window() && part.valuation() < 0)
                dst[s] = std::max(dst[s], -part.valuation());
        }
    };
    for (const auto& p : pushed_) absorb_depth(deep_, p, 0);
    for (const auto& r : h1_reps_) absorb_depth(deep_, r, 0);
    for (const auto& [d, vec] : e_pushed_) {
        e_deep_[d].assign(slots, 0);
        for (const auto& p : vec) absorb_depth(e_deep_[d], p, d);
    }

    row_base_.assign(slots, 0);
    pole_rows_ = 0;
    for (int s = 0; s < slots; ++s) {
        row_base_[s] = pole_rows_;
        pole_rows_ += deep_[s];
    }

    // E-degree-0 pole block
    pole_matrix_ = RatMatrix(pole_rows_, static_cast<int>(labels_.size()));
    for (std::size_t col = 0; col < labels_.size(); ++col)
        for (int s = 0; s < slots; ++s) {
            const LaurentSeries part = pushed_[col][s].e_part(0);
            for (int d = 1; d <= deep_[s]; ++d)
                pole_matrix_.at(pole_row_index(s, d), static_cast<int>(col)) = part.coeff(-d);
        }

    // nonzero-E blocks: rows down to u1^0 force both the pole parts and the
    // constant terms, so these blocks may not contribute any kernel
    for (const auto& [degree, cols] : e_pushed_) {
        const std::vector<int>& dd = e_deep_.at(degree);
        int rows = 0;
        std::vector<int> base(slots, 0);
        for (int s = 0; s < slots; ++s) {
            base[s] = rows;
            rows += dd[s] + 1;  // exponents -deep .. 0
        }
        RatMatrix block(rows, static_cast<int>(cols.size()));
        for (std::size_t col = 0; col < cols.size(); ++col)
            for (int s = 0; s < slots; ++s) {
                const LaurentSeries part = cols[col][s].e_part(degree);
                for (int d = 0; d <= dd[s]; ++d)
                    block.at(base[s] + d, static_cast<int>(col)) = part.coeff(-dd[s] + d);
            }
        if (!kernel_basis(block).empty())
            throw untrusted_window_error("nonzero E-degree block has a kernel; enlarge the truncation");
    }

    // H^0: kernel of the pole block, decoded through a deeper push
    auto kernel = kernel_basis(pole_matrix_);
    rank_ = static_cast<int>(labels_.size() - kernel.size());
    {
        WpTable wt_decode(fam_.elliptic, max_k, tr_.N + 2 * n + 8);
        Pusher decode(inv, tr_.N, tr_.M + 2 * n + 16);
        for (const auto& vec : kernel) {
            GlobalSection g;
            g.chart0.assign(slots, EllipticFunction());
            for (std::size_t col = 0; col < labels_.size(); ++col) {
                if (vec[col] == 0) continue;
                const auto& [s, ell] = labels_[col];
                g.chart0[s] = g.chart0[s] + (ell == 0 ? EllipticFunction(vec[col])
                                                      : EllipticFunction::wp_derivative(ell - 1, vec[col]));
            }
            g.chart1 = push_label_combination(vec, wt_decode, decode);
            for (int s = 0; s < slots; ++s) {
                if (!g.chart1[s].untwisted())
                    throw untrusted_window_error("global section has twisted chart-1 side");
                const LaurentSeries plain = g.chart1[s].e_part(0);
                if (!plain.is_zero_in_window() && plain.valuation() < 0)
                    throw untrusted_window_error("global section decode left a pole");
            }
            h0_basis_.push_back(std::move(g));
        }
    }

    // H^1: cokernel of the pole block; the canonical representatives must span
    // a complement of the image
    auto [rk, complement] = cokernel_complement(pole_matrix_);
    if (rk != rank_) throw untrusted_window_error("rank mismatch between kernel and cokernel passes");
    computed_complement_rows_ = complement;
    if (static_cast<int>(h1_reps_.size()) != static_cast<int>(complement.size()))
        throw untrusted_window_error("canonical H^1 representatives do not match the computed dimension");

    reduce_matrix_ = RatMatrix(pole_rows_, h1_dim() + static_cast<int>(labels_.size()));
    for (int r = 0; r < h1_dim(); ++r)
        for (int s = 0; s < slots; ++s) {
            const LaurentSeries part = h1_reps_[r][s].e_part(0);
            for (int d = 1; d <= deep_[s]; ++d)
                reduce_matrix_.at(pole_row_index(s, d), r) = part.coeff(-d);
        }
    for (int c = 0; c < pole_matrix_.cols(); ++c)
        for (int r = 0; r < pole_rows_; ++r)
            reduce_matrix_.at(r, h1_dim() + c) = pole_matrix_.at(r, c);
    if (rank(reduce_matrix_) != rank_ + h1_dim())
        throw untrusted_window_error("canonical H^1 representatives are dependent modulo coboundaries");
}

inline SlotSeries CechComplex::push_label_combination(const std::vector<Rat>& coeffs,
                                                      const WpTable& wt, const Pusher& pusher) const {
    const int slots = slot_count(sheaf_);
    // assemble one chart-0 field with combined coefficients, then push once
    std::vector<LaurentSeries> combined(slots);
    for (std::size_t col = 0; col < labels_.size(); ++col) {
        if (coeffs[col] == 0) continue;
        const auto& [s, ell] = labels_[col];
        const LaurentSeries base =
            (ell == 0) ? LaurentSeries::constant(Rat(1)) : wt.wp_deriv(ell - 1);
        combined[s] = combined[s] + base.scaled(coeffs[col]);
    }
    if (sheaf_ == Sheaf::Theta) {
        VectorField f(XiPoly(std::vector<TwistedLaurent>{TwistedLaurent(combined[0]),
                                                         TwistedLaurent(combined[1]),
                                                         TwistedLaurent(combined[2])}),
                      TwistedLaurent(combined[3]));
        return slots_of(pusher.vector(f));
    }
    Bivector b(XiPoly(std::vector<TwistedLaurent>{TwistedLaurent(combined[0]),
                                                  TwistedLaurent(combined[1]),
                                                  TwistedLaurent(combined[2])}));
    return slots_of(pusher.bivector(b));
}

inline RatMatrix CechComplex::coboundary_matrix_full() const {
    const int slots = slot_count(sheaf_);
    const int n = fam_.effective_n();
    const Transition inv = transition(fam_).inverse();
    WpTable wt(fam_.elliptic, tr_.M - 2, tr_.N + 2 * n + 8);
    Pusher pusher(inv, tr_.N, tr_.M + 2 * n + 16);

    // row layout: per E-degree block, per slot, exponents -full_deep..N
    std::vector<int> full_deep = deep_;
    for (const auto& [d, dd] : e_deep_)
        for (int s = 0; s < slots; ++s) full_deep[s] = std::max(full_deep[s], dd[s]);
    std::vector<int> degrees{0};
    for (const auto& [d, v] : e_labels_) degrees.push_back(d);
    std::map<int, int> block_base;
    int rows = 0;
    for (int d : degrees) {
        block_base[d] = rows;
        for (int s = 0; s < slots; ++s) rows += full_deep[s] + tr_.N + 1;
    }
    auto row_of = [&](int degree, int slot, int exp) {
        int r = block_base.at(degree);
        for (int s = 0; s < slot; ++s) r += full_deep[s] + tr_.N + 1;
        return r + (exp + full_deep[slot]);
    };

    const int c0_cols = static_cast<int>(labels_.size());
    int ec_cols = 0;
    for (const auto& [d, v] : e_labels_) ec_cols += static_cast<int>(v.size());
    const int c1_cols = slots * (tr_.N + 1);
    RatMatrix m(rows, c0_cols + ec_cols + c1_cols);

    auto fill_column = [&](int col, const SlotSeries& pushed) {
        for (int s = 0; s < slots; ++s)
            for (const auto& [deg, ser] : pushed[s].parts())
                for (const auto& [e, c] : ser.coeffs())
                    if (e >= -full_deep[s] && e <= tr_.N) m.at(row_of(deg, s, e), col) = c;
    };

    // chart-0 columns at decode precision
    int col = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i, ++col) {
        std::vector<Rat> unit(labels_.size(), Rat(0));
        unit[i] = 1;
        fill_column(col, push_label_combination(unit, wt, pusher));
    }
    for (const auto& [deg, labs] : e_labels_) {
        for (const auto& lab : labs) {
            TwistedLaurent coeff(lab.ell == 0 ? LaurentSeries::constant(Rat(1))
                                              : wt.wp_deriv(lab.ell - 1));
            SlotSeries pushed;
            if (sheaf_ == Sheaf::Theta) {
                VectorField f = (lab.slot < 3)
                                    ? VectorField(XiPoly::monomial(coeff, lab.slot), TwistedLaurent())
                                    : VectorField(XiPoly(), coeff);
                pushed = slots_of(pusher.vector(f));
            } else {
                pushed = slots_of(pusher.bivector(Bivector(XiPoly::monomial(coeff, lab.slot))));
            }
            fill_column(col++, pushed);
        }
    }
    // chart-1 columns restrict with a minus sign and live at E-degree 0
    for (int s = 0; s < slots; ++s)
        for (int e = 0; e <= tr_.N; ++e) m.at(row_of(0, s, e), col++) = Rat(-1);
    return m;
}

// operation-level entry points
inline RatMatrix coboundary_matrix(const SurfaceFamily& fam, Sheaf sheaf, const Truncation& tr) {
    return CechComplex(fam, sheaf, tr).coboundary_matrix_full();
}

inline std::vector<GlobalSection> h0(const SurfaceFamily& fam, Sheaf sheaf, const Truncation& tr) {
    return CechComplex(fam, sheaf, tr).h0_basis();
}

inline CechComplex h1(const SurfaceFamily& fam, Sheaf sheaf, const Truncation& tr) {
    return CechComplex(fam, sheaf, tr);
}

struct StabilizeResult {
    int h0_dim, h1_dim;
    bool certified;
};

inline StabilizeResult stabilize(const SurfaceFamily& fam, Sheaf sheaf, const Truncation& tr) {
    CechComplex base(fam, sheaf, tr);
    CechComplex twice(fam, sheaf, tr.doubled());
    return StabilizeResult{base.h0_dim(), base.h1_dim(),
                           base.h0_dim() == twice.h0_dim() && base.h1_dim() == twice.h1_dim()};
}

} // namespace prs
