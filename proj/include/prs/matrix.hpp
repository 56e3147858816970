#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "prs/rational.hpp"

namespace prs {

// Dense matrix over the exact rationals; carrier for every kernel and
// cokernel computation in the engine.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    RatMatrix transposed() const {
        RatMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        std::vector<Rat> y(rows_, Rat(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
        return y;
    }

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

namespace detail {

// Fraction-free (Bareiss) row echelon form. Rows are first scaled to
// coprime integers; the elimination keeps every intermediate entry an exact
// minor, so the divisions below are exact and coefficient growth stays
// polynomial instead of exponential.
struct Echelon {
    std::vector<std::vector<Int>> m;   // echelon rows (integer)
    std::vector<int> pivot_col;        // pivot column of echelon row k
    int rank = 0;
    int cols = 0;
};

inline Echelon bareiss_echelon(const RatMatrix& mat) {
    const int rows = mat.rows(), cols = mat.cols();
    Echelon e;
    e.cols = cols;
    e.m.assign(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i) {
        Int l = 1;
        for (int j = 0; j < cols; ++j) l = lcm(l, denominator(mat.at(i, j)));
        Int g = 0;
        for (int j = 0; j < cols; ++j) {
            e.m[i][j] = numerator(mat.at(i, j)) * (l / denominator(mat.at(i, j)));
            g = gcd(g, e.m[i][j]);
        }
        if (g > 1)
            for (int j = 0; j < cols; ++j) e.m[i][j] /= g;
    }

    Int prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // pivot choice: fewest nonzeros, then smallest magnitude
        int piv = -1;
        std::size_t best_nnz = 0;
        for (int i = r; i < rows; ++i) {
            if (e.m[i][c] == 0) continue;
            std::size_t nnz = 0;
            for (int j = c; j < cols; ++j)
                if (e.m[i][j] != 0) ++nnz;
            if (piv < 0 || nnz < best_nnz ||
                (nnz == best_nnz && abs(e.m[i][c]) < abs(e.m[piv][c]))) {
                piv = i;
                best_nnz = nnz;
            }
        }
        if (piv < 0) continue;
        std::swap(e.m[r], e.m[piv]);
        const Int p = e.m[r][c];
        for (int i = r + 1; i < rows; ++i) {
            const Int f = e.m[i][c];
            for (int j = c; j < cols; ++j) {
                Int v = p * e.m[i][j] - f * e.m[r][j];
                e.m[i][j] = v / prev;  // exact by the minor identity
            }
        }
        prev = p;
        e.pivot_col.push_back(c);
        ++r;
    }
    e.rank = r;
    return e;
}

} // namespace detail

inline int rank(const RatMatrix& m) { return detail::bareiss_echelon(m).rank; }

// Integer-normalized vector: coprime entries, first nonzero positive.
inline void normalize_vector(std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& x : v) l = lcm(l, denominator(x));
    Int g = 0;
    std::vector<Int> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = numerator(v[i]) * (l / denominator(v[i]));
        g = gcd(g, w[i]);
    }
    if (g == 0) return;
    int sign = 0;
    for (const Int& x : w) {
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rat(w[i] / g) * sign;
}

// Exact basis of the null space of M.
inline std::vector<std::vector<Rat>> kernel_basis(const RatMatrix& m) {
    const int cols = m.cols();
    auto e = detail::bareiss_echelon(m);
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivot_col) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> x(cols, Rat(0));
        x[f] = 1;
        for (int k = e.rank - 1; k >= 0; --k) {
            const int pc = e.pivot_col[k];
            Rat acc(0);
            for (int j = pc + 1; j < cols; ++j)
                if (e.m[k][j] != 0 && x[j] != 0) acc += Rat(e.m[k][j]) * x[j];
            x[pc] = -acc / Rat(e.m[k][pc]);
        }
        normalize_vector(x);
        basis.push_back(std::move(x));
    }
    return basis;
}

// rank of M plus indices of standard basis vectors of the row-index space
// that project to a basis of coker(M) = Q^rows / col(M).
inline std::pair<int, std::vector<int>> cokernel_complement(const RatMatrix& m) {
    auto e = detail::bareiss_echelon(m.transposed());
    std::vector<bool> hit(m.rows(), false);
    for (int c : e.pivot_col) hit[c] = true;
    std::vector<int> complement;
    for (int i = 0; i < m.rows(); ++i)
        if (!hit[i]) complement.push_back(i);
    return {e.rank, complement};
}

// One exact solution of A x = b (free variables set to zero), or nullopt if
// the system is inconsistent.
inline std::optional<std::vector<Rat>> solve_any(const RatMatrix& a, const std::vector<Rat>& b) {
    const int rows = a.rows(), cols = a.cols();
    RatMatrix aug(rows, cols + 1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, cols) = b[i];
    }
    auto e = detail::bareiss_echelon(aug);
    // a pivot in the augmented column means b is outside col(A)
    std::vector<int> pivots;
    for (int c : e.pivot_col) {
        if (c == cols) return std::nullopt;
        pivots.push_back(c);
    }
    std::vector<Rat> x(cols, Rat(0));
    for (int k = static_cast<int>(pivots.size()) - 1; k >= 0; --k) {
        const int pc = pivots[k];
        Rat acc = Rat(e.m[k][cols]);
        for (int j = pc + 1; j < cols; ++j)
            if (e.m[k][j] != 0 && x[j] != 0) acc -= Rat(e.m[k][j]) * x[j];
        x[pc] = acc / Rat(e.m[k][pc]);
    }
    return x;
}

inline bool in_column_space(const RatMatrix& a, const std::vector<Rat>& b) {
    return solve_any(a, b).has_value();
}

} // namespace prs
