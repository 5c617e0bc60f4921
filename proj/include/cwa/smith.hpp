#pragma once

#include "cwa/matrix.hpp"

#include <cstddef>
#include <vector>

namespace cwa {

struct SmithResult {
    // d1 | d2 | ... | dr, all >= 1; rank == factors.size().
    std::vector<Int> factors;
    std::size_t rank = 0;
};

// U * A * V = D with U, V unimodular and D diagonal, factors sorted by
// divisibility. Total in the matrix shape; empty matrices give rank 0.
struct SmithDecomposition {
    Matrix d;
    Matrix row_ops;  // U
    Matrix col_ops;  // V
    SmithResult summary;
};

namespace detail {

inline Int int_abs(const Int& v) { return v < 0 ? -v : v; }

// Position of the nonzero entry of least absolute value in the submatrix
// starting at (s, s); false when that submatrix is zero.
inline bool min_nonzero(const Matrix& m, std::size_t s, std::size_t& bi, std::size_t& bj) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < m.rows(); ++i)
        for (std::size_t j = s; j < m.cols(); ++j) {
            const Int& v = m.at(i, j);
            if (v == 0) continue;
            Int a = int_abs(v);
            if (!found || a < best) {
                found = true;
                best = a;
                bi = i;
                bj = j;
            }
        }
    return found;
}

inline bool pivot_is_lone(const Matrix& m, std::size_t s) {
    for (std::size_t i = s + 1; i < m.rows(); ++i)
        if (m.at(i, s) != 0) return false;
    for (std::size_t j = s + 1; j < m.cols(); ++j)
        if (m.at(s, j) != 0) return false;
    return true;
}

}  // namespace detail

inline SmithDecomposition smith_decompose(const Matrix& a) {
    SmithDecomposition out;
    out.d = a;
    out.row_ops = Matrix::identity(a.rows());
    out.col_ops = Matrix::identity(a.cols());
    Matrix& d = out.d;
    Matrix& u = out.row_ops;
    Matrix& v = out.col_ops;

    const std::size_t nmin = std::min(a.rows(), a.cols());
    for (std::size_t s = 0; s < nmin; ++s) {
        std::size_t bi, bj;
        if (!detail::min_nonzero(d, s, bi, bj)) break;
        if (bi != s) {
            d.swap_rows(s, bi);
            u.swap_rows(s, bi);
        }
        if (bj != s) {
            d.swap_cols(s, bj);
            v.swap_cols(s, bj);
        }

        while (true) {
            // Clear column s below the pivot and row s to its right. Any
            // nonzero remainder becomes the new (smaller) pivot next pass.
            for (std::size_t i = s + 1; i < d.rows(); ++i) {
                if (d.at(i, s) == 0) continue;
                Int q = d.at(i, s) / d.at(s, s);
                if (q != 0) {
                    d.add_row(i, s, -q);
                    u.add_row(i, s, -q);
                }
            }
            for (std::size_t j = s + 1; j < d.cols(); ++j) {
                if (d.at(s, j) == 0) continue;
                Int q = d.at(s, j) / d.at(s, s);
                if (q != 0) {
                    d.add_col(j, s, -q);
                    v.add_col(j, s, -q);
                }
            }
            if (!detail::pivot_is_lone(d, s)) {
                std::size_t ri, rj;
                detail::min_nonzero(d, s, ri, rj);
                if (ri != s) {
                    d.swap_rows(s, ri);
                    u.swap_rows(s, ri);
                }
                if (rj != s) {
                    d.swap_cols(s, rj);
                    v.swap_cols(s, rj);
                }
                continue;
            }
            // Pivot must divide the rest of the submatrix for the
            // divisibility chain; fold in an offending row and retry.
            bool divides = true;
            for (std::size_t i = s + 1; i < d.rows() && divides; ++i)
                for (std::size_t j = s + 1; j < d.cols(); ++j)
                    if (d.at(i, j) % d.at(s, s) != 0) {
                        d.add_row(s, i, 1);
                        u.add_row(s, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }

        if (d.at(s, s) < 0) {
            d.negate_row(s);
            u.negate_row(s);
        }
    }

    for (std::size_t s = 0; s < nmin; ++s) {
        if (d.at(s, s) == 0) break;
        out.summary.factors.push_back(d.at(s, s));
    }
    out.summary.rank = out.summary.factors.size();
    return out;
}

inline SmithResult smith_normal_form(const Matrix& a) {
    return smith_decompose(a).summary;
}

inline std::size_t matrix_rank(const Matrix& a) {
    return smith_normal_form(a).rank;
}

// Basis of the integer kernel of a, one column vector per basis element.
// These are the columns of V matched to zero diagonal entries of D, so the
// basis is primitive (a direct summand of Z^cols).
inline std::vector<std::vector<Int>> kernel_basis(const Matrix& a) {
    SmithDecomposition sd = smith_decompose(a);
    std::vector<std::vector<Int>> basis;
    for (std::size_t j = sd.summary.rank; j < a.cols(); ++j) {
        std::vector<Int> col(a.cols());
        for (std::size_t i = 0; i < a.cols(); ++i) col[i] = sd.col_ops.at(i, j);
        basis.push_back(std::move(col));
    }
    return basis;
}

}  // namespace cwa
