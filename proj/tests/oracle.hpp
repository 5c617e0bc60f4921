#pragma once

// Test-only oracles, deliberately independent of the library's Smith
// reduction: rank by Gaussian elimination over exact rationals, invariant
// factors by gcds of k x k minors (cofactor-expansion determinants).

#include "cwa/chain.hpp"
#include "cwa/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace oracle {

using cwa::Int;
using cwa::Matrix;
using Rat = boost::multiprecision::cpp_rational;

inline std::size_t rank(const Matrix& m) {
    std::vector<std::vector<Rat>> a(m.rows(), std::vector<Rat>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = Rat(m.at(i, j));
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t piv = r;
        while (piv < m.rows() && a[piv][col] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || a[i][col] == 0) continue;
            Rat f = a[i][col] / a[r][col];
            for (std::size_t j = col; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

inline Int det(const std::vector<std::vector<Int>>& a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    if (n == 1) return a[0][0];
    Int sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j] == 0) continue;
        std::vector<std::vector<Int>> minor(n - 1, std::vector<Int>(n - 1));
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) minor[i - 1][cc++] = a[i][c];
        }
        Int term = a[0][j] * det(minor);
        sum += (j % 2 == 0) ? term : -term;
    }
    return sum;
}

inline Int int_abs(const Int& v) { return v < 0 ? -v : v; }
inline Int int_gcd(Int a, Int b) {
    a = int_abs(a);
    b = int_abs(b);
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// gcd of all k x k minors; 0 when every minor vanishes.
inline Int determinantal_divisor(const Matrix& m, std::size_t k) {
    if (k == 0) return 1;
    if (k > m.rows() || k > m.cols()) return 0;
    std::vector<std::size_t> rows(k), cols(k);
    for (std::size_t i = 0; i < k; ++i) rows[i] = i, cols[i] = i;
    Int g = 0;
    auto next = [](std::vector<std::size_t>& idx, std::size_t n) {
        std::size_t k2 = idx.size();
        for (std::size_t i = k2; i-- > 0;) {
            if (idx[i] + (k2 - i) < n) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k2; ++j) idx[j] = idx[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    std::vector<std::size_t> r = rows;
    do {
        std::vector<std::size_t> c = cols;
        do {
            std::vector<std::vector<Int>> sub(k, std::vector<Int>(k));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub[i][j] = m.at(r[i], c[j]);
            g = int_gcd(g, det(sub));
        } while (next(c, m.cols()));
    } while (next(r, m.rows()));
    return g;
}

// Invariant factors f_k = d_k / d_{k-1} from determinantal divisors.
inline std::vector<Int> invariant_factors(const Matrix& m) {
    std::vector<Int> out;
    Int prev = 1;
    for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
        Int dk = determinantal_divisor(m, k);
        if (dk == 0) break;
        out.push_back(dk / prev);
        prev = dk;
    }
    return out;
}

inline cwa::HomologySummary homology(const cwa::ChainComplex& c) {
    cwa::HomologySummary h;
    for (int d = 0; d <= c.max_degree(); ++d) {
        std::size_t rank_d = d >= 1 ? rank(*c.boundary_at(d)) : 0;
        std::size_t rank_up = 0;
        std::vector<Int> tors;
        if (d + 1 <= c.max_degree()) {
            const Matrix& up = *c.boundary_at(d + 1);
            rank_up = rank(up);
            for (const Int& f : invariant_factors(up))
                if (f > 1) tors.push_back(f);
        }
        cwa::HomologyGroup g;
        g.betti = c.count(d) - rank_d - rank_up;
        g.torsion = tors;
        if (!g.trivial()) h.by_degree[d] = g;
    }
    return h;
}

}  // namespace oracle
