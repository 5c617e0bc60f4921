#pragma once

#include "cwa/matrix.hpp"
#include "cwa/smith.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cwa {

/// Graded free integer chain complex with named basis cells.
///
/// Degrees are dense from 0 to the top degree; degrees may be empty.
/// boundary[d] maps degree-d chains to degree-(d-1) chains: rows are
/// indexed by the degree-(d-1) cells, columns by the degree-d cells.
/// boundary[0] is kept with shape (0 x #cells(0)) so indexing is uniform.
///
/// All complexes here are reduced cellular chain complexes: the base point
/// is never a cell, so wedges are direct sums and cones are exact.
struct ChainComplex {
    std::vector<std::vector<std::string>> cells;
    std::vector<Matrix> boundary;

    int max_degree() const { return static_cast<int>(cells.size()) - 1; }

    std::size_t count(int d) const {
        if (d < 0 || d > max_degree()) return 0;
        return cells[static_cast<std::size_t>(d)].size();
    }

    const Matrix* boundary_at(int d) const {
        if (d < 1 || d > max_degree()) return nullptr;
        return &boundary[static_cast<std::size_t>(d)];
    }

    std::size_t total_cells() const {
        std::size_t n = 0;
        for (const auto& v : cells) n += v.size();
        return n;
    }

    bool empty() const { return total_cells() == 0; }

    // Drop trailing empty degrees so equal complexes compare equal.
    void normalize() {
        while (!cells.empty() && cells.back().empty()) {
            cells.pop_back();
            boundary.pop_back();
        }
    }

    bool operator==(const ChainComplex& o) const = default;
};

struct ComplexViolation {
    enum class Kind { shape_mismatch, d2_nonzero, duplicate_id };
    Kind kind;
    int degree = 0;
    std::size_t row = 0, col = 0;
    std::string message;
};

using ComplexReport = std::optional<ComplexViolation>;

inline ComplexReport validate_complex(const ChainComplex& c) {
    if (c.cells.size() != c.boundary.size())
        return ComplexViolation{ComplexViolation::Kind::shape_mismatch, 0, 0, 0,
                                "cells and boundary cover different degree ranges"};
    std::set<std::string> seen;
    for (int d = 0; d <= c.max_degree(); ++d)
        for (const auto& id : c.cells[static_cast<std::size_t>(d)])
            if (!seen.insert(id).second)
                return ComplexViolation{ComplexViolation::Kind::duplicate_id, d, 0, 0,
                                        "duplicate cell id '" + id + "'"};
    for (int d = 0; d <= c.max_degree(); ++d) {
        const Matrix& b = c.boundary[static_cast<std::size_t>(d)];
        std::size_t want_rows = d == 0 ? 0 : c.count(d - 1);
        if (b.rows() != want_rows || b.cols() != c.count(d)) {
            std::ostringstream os;
            os << "boundary(" << d << ") is " << b.rows() << "x" << b.cols() << ", expected "
               << want_rows << "x" << c.count(d);
            return ComplexViolation{ComplexViolation::Kind::shape_mismatch, d, 0, 0, os.str()};
        }
    }
    for (int d = 2; d <= c.max_degree(); ++d) {
        Matrix p = c.boundary[static_cast<std::size_t>(d - 1)] * c.boundary[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t j = 0; j < p.cols(); ++j)
                if (p.at(i, j) != 0) {
                    std::ostringstream os;
                    os << "boundary(" << d - 1 << ")*boundary(" << d << ") has entry " << p.at(i, j)
                       << " at (" << i << "," << j << ")";
                    return ComplexViolation{ComplexViolation::Kind::d2_nonzero, d, i, j, os.str()};
                }
    }
    return std::nullopt;
}

inline void require_valid(const ChainComplex& c, const char* what) {
    if (auto v = validate_complex(c))
        throw Error(std::string(what) + ": invalid complex: " + v->message);
}

/// Incremental assembly by cell id; shields callers from basis-order
/// bookkeeping. Entries must connect a degree-d cell to a degree-(d-1) cell.
class ChainComplexBuilder {
public:
    void add_cell(int degree, const std::string& id) {
        if (degree < 0) throw Error("negative degree");
        if (index_.count(id)) throw Error("duplicate chain cell id '" + id + "'");
        if (static_cast<std::size_t>(degree) >= cells_.size()) cells_.resize(degree + 1);
        index_[id] = {degree, cells_[static_cast<std::size_t>(degree)].size()};
        cells_[static_cast<std::size_t>(degree)].push_back(id);
    }

    bool has_cell(const std::string& id) const { return index_.count(id) != 0; }

    void add_entry(const std::string& row_id, const std::string& col_id, const Int& v) {
        entries_.push_back({row_id, col_id, v});
    }

    ChainComplex build() const {
        ChainComplex c;
        c.cells = cells_;
        c.boundary.reserve(cells_.size());
        for (std::size_t d = 0; d < cells_.size(); ++d)
            c.boundary.emplace_back(d == 0 ? 0 : cells_[d - 1].size(), cells_[d].size());
        for (const auto& e : entries_) {
            auto rit = index_.find(e.row);
            auto cit = index_.find(e.col);
            if (rit == index_.end()) throw Error("unknown row cell '" + e.row + "'");
            if (cit == index_.end()) throw Error("unknown column cell '" + e.col + "'");
            auto [rd, ri] = rit->second;
            auto [cd, ci] = cit->second;
            if (rd != cd - 1)
                throw Error("entry " + e.row + " <- " + e.col + " does not drop degree by one");
            c.boundary[static_cast<std::size_t>(cd)].at(ri, ci) += e.value;
        }
        c.normalize();
        return c;
    }

private:
    struct Entry {
        std::string row, col;
        Int value;
    };
    std::vector<std::vector<std::string>> cells_;
    std::map<std::string, std::pair<int, std::size_t>> index_;
    std::vector<Entry> entries_;
};

/// Degree-0 map of chain complexes. maps[d] has one row per target d-cell
/// and one column per source d-cell; degrees above the source top are
/// unconstrained and not stored.
struct ChainMap {
    ChainComplex source;
    ChainComplex target;
    std::vector<Matrix> maps;

    const Matrix* map_at(int d) const {
        if (d < 0 || static_cast<std::size_t>(d) >= maps.size()) return nullptr;
        return &maps[static_cast<std::size_t>(d)];
    }

    bool operator==(const ChainMap& o) const = default;
};

inline ChainMap zero_chain_map(ChainComplex source, ChainComplex target) {
    ChainMap f;
    f.maps.reserve(source.cells.size());
    for (int d = 0; d <= source.max_degree(); ++d)
        f.maps.emplace_back(target.count(d), source.count(d));
    f.source = std::move(source);
    f.target = std::move(target);
    return f;
}

inline ChainMap identity_chain_map(const ChainComplex& c) {
    ChainMap f = zero_chain_map(c, c);
    for (int d = 0; d <= c.max_degree(); ++d)
        f.maps[static_cast<std::size_t>(d)] = Matrix::identity(c.count(d));
    return f;
}

enum class MapViolationKind { shape, commutation };

struct MapViolation {
    MapViolationKind kind = MapViolationKind::shape;
    int degree = 0;
    std::string message;
};

inline std::optional<MapViolation> validate_map(const ChainMap& f) {
    if (auto v = validate_complex(f.source))
        return MapViolation{MapViolationKind::shape, v->degree, "invalid source: " + v->message};
    if (auto v = validate_complex(f.target))
        return MapViolation{MapViolationKind::shape, v->degree, "invalid target: " + v->message};
    if (f.maps.size() != f.source.cells.size())
        return MapViolation{MapViolationKind::shape, 0, "map does not cover the source degree range"};
    for (int d = 0; d <= f.source.max_degree(); ++d) {
        const Matrix& m = f.maps[static_cast<std::size_t>(d)];
        if (m.rows() != f.target.count(d) || m.cols() != f.source.count(d)) {
            std::ostringstream os;
            os << "map(" << d << ") is " << m.rows() << "x" << m.cols() << ", expected "
               << f.target.count(d) << "x" << f.source.count(d);
            return MapViolation{MapViolationKind::shape, d, os.str()};
        }
    }
    for (int d = 1; d <= f.source.max_degree(); ++d) {
        Matrix lhs = d <= f.target.max_degree()
                         ? *f.target.boundary_at(d) * f.maps[static_cast<std::size_t>(d)]
                         : Matrix(0, f.source.count(d));
        Matrix rhs = f.maps[static_cast<std::size_t>(d - 1)] * *f.source.boundary_at(d);
        if (d > f.target.max_degree()) {
            // Target has no cells at degree d, so the commutation square
            // asserts that rhs is zero through a (0 x n) corner.
            if (!rhs.is_zero())
                return MapViolation{MapViolationKind::commutation, d,
                                    "map does not commute with boundaries at degree " +
                                        std::to_string(d)};
            continue;
        }
        if (!(lhs == rhs))
            return MapViolation{MapViolationKind::commutation, d,
                                "map does not commute with boundaries at degree " +
                                    std::to_string(d)};
    }
    return std::nullopt;
}

inline void require_valid(const ChainMap& f, const char* what) {
    if (auto v = validate_map(f))
        throw Error(std::string(what) + ": invalid chain map: " + v->message);
}

// compose(f, g) = f after g; requires f.source == g.target.
inline ChainMap compose(const ChainMap& f, const ChainMap& g) {
    if (!(f.source == g.target)) throw Error("compose: shape mismatch between f.source and g.target");
    ChainMap r = zero_chain_map(g.source, f.target);
    for (int d = 0; d <= g.source.max_degree(); ++d) {
        const Matrix& gm = g.maps[static_cast<std::size_t>(d)];
        if (const Matrix* fm = f.map_at(d)) {
            r.maps[static_cast<std::size_t>(d)] = *fm * gm;
        }
        // When f has no matrix at d, f.source has no d-cells, so gm has
        // zero rows and the zero matrix already in place is correct.
    }
    return r;
}

namespace detail {

inline std::string unique_id(const std::string& want, const std::set<std::string>& used) {
    if (!used.count(want)) return want;
    for (int k = 2;; ++k) {
        std::string cand = want + "~" + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

}  // namespace detail

struct DirectSum {
    ChainComplex sum;
    ChainMap inj_left;
    ChainMap inj_right;
    // Renaming applied to the right summand's cells (identity when disjoint).
    std::map<std::string, std::string> right_names;
};

inline DirectSum direct_sum(const ChainComplex& c1, const ChainComplex& c2) {
    require_valid(c1, "direct_sum");
    require_valid(c2, "direct_sum");
    DirectSum out;
    std::set<std::string> used;
    int top = std::max(c1.max_degree(), c2.max_degree());
    out.sum.cells.resize(top + 1);
    out.sum.boundary.reserve(top + 1);
    for (int d = 0; d <= c1.max_degree(); ++d)
        for (const auto& id : c1.cells[static_cast<std::size_t>(d)]) {
            out.sum.cells[static_cast<std::size_t>(d)].push_back(id);
            used.insert(id);
        }
    for (int d = 0; d <= c2.max_degree(); ++d)
        for (const auto& id : c2.cells[static_cast<std::size_t>(d)]) {
            std::string nid = detail::unique_id(id, used);
            used.insert(nid);
            out.right_names[id] = nid;
            out.sum.cells[static_cast<std::size_t>(d)].push_back(nid);
        }
    for (int d = 0; d <= top; ++d) {
        std::size_t n1 = c1.count(d), n2 = c2.count(d);
        std::size_t m1 = d > 0 ? c1.count(d - 1) : 0, m2 = d > 0 ? c2.count(d - 1) : 0;
        Matrix b(d == 0 ? 0 : m1 + m2, n1 + n2);
        if (d > 0) {
            if (const Matrix* b1 = c1.boundary_at(d))
                for (std::size_t i = 0; i < b1->rows(); ++i)
                    for (std::size_t j = 0; j < b1->cols(); ++j) b.at(i, j) = b1->at(i, j);
            if (const Matrix* b2 = c2.boundary_at(d))
                for (std::size_t i = 0; i < b2->rows(); ++i)
                    for (std::size_t j = 0; j < b2->cols(); ++j) b.at(m1 + i, n1 + j) = b2->at(i, j);
        }
        out.sum.boundary.push_back(std::move(b));
    }
    out.sum.normalize();
    out.inj_left = zero_chain_map(c1, out.sum);
    for (int d = 0; d <= c1.max_degree(); ++d)
        for (std::size_t j = 0; j < c1.count(d); ++j)
            out.inj_left.maps[static_cast<std::size_t>(d)].at(j, j) = 1;
    out.inj_right = zero_chain_map(c2, out.sum);
    for (int d = 0; d <= c2.max_degree(); ++d)
        for (std::size_t j = 0; j < c2.count(d); ++j)
            out.inj_right.maps[static_cast<std::size_t>(d)].at(c1.count(d) + j, j) = 1;
    return out;
}

/// Algebraic mapping cone of f: X -> Y. Degree-d cells are the target
/// d-cells plus the source (d-1)-cells, shifted. The boundary of a shifted
/// source cell s is f(s) - shift(boundary(s)).
struct MappingCone {
    ChainComplex cone;
    // shifted source cell id -> cone cell id ("sh." prefix, made unique)
    std::map<std::string, std::string> shifted_names;
};

inline MappingCone mapping_cone(const ChainMap& f) {
    require_valid(f, "mapping_cone");
    const ChainComplex& x = f.source;
    const ChainComplex& y = f.target;
    MappingCone out;
    ChainComplexBuilder b;
    std::set<std::string> used;
    for (int d = 0; d <= y.max_degree(); ++d)
        for (const auto& id : y.cells[static_cast<std::size_t>(d)]) {
            b.add_cell(d, id);
            used.insert(id);
        }
    for (int d = 0; d <= x.max_degree(); ++d)
        for (const auto& id : x.cells[static_cast<std::size_t>(d)]) {
            std::string nid = detail::unique_id("sh." + id, used);
            used.insert(nid);
            out.shifted_names[id] = nid;
            b.add_cell(d + 1, nid);
        }
    for (int d = 1; d <= y.max_degree(); ++d) {
        const Matrix& bd = *y.boundary_at(d);
        for (std::size_t i = 0; i < bd.rows(); ++i)
            for (std::size_t j = 0; j < bd.cols(); ++j)
                if (bd.at(i, j) != 0)
                    b.add_entry(y.cells[static_cast<std::size_t>(d - 1)][i],
                                y.cells[static_cast<std::size_t>(d)][j], bd.at(i, j));
    }
    for (int d = 0; d <= x.max_degree(); ++d) {
        const Matrix& fm = f.maps[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < fm.rows(); ++i)
            for (std::size_t j = 0; j < fm.cols(); ++j)
                if (fm.at(i, j) != 0)
                    b.add_entry(y.cells[static_cast<std::size_t>(d)][i],
                                out.shifted_names.at(x.cells[static_cast<std::size_t>(d)][j]),
                                fm.at(i, j));
        if (d >= 1) {
            const Matrix& bd = *x.boundary_at(d);
            for (std::size_t i = 0; i < bd.rows(); ++i)
                for (std::size_t j = 0; j < bd.cols(); ++j)
                    if (bd.at(i, j) != 0)
                        b.add_entry(out.shifted_names.at(x.cells[static_cast<std::size_t>(d - 1)][i]),
                                    out.shifted_names.at(x.cells[static_cast<std::size_t>(d)][j]),
                                    -bd.at(i, j));
        }
    }
    out.cone = b.build();
    return out;
}

/// Reduced homology in one degree: free rank plus torsion coefficients in
/// invariant-factor form (each divides the next, all >= 2).
struct HomologyGroup {
    std::size_t betti = 0;
    std::vector<Int> torsion;

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup& o) const = default;
};

/// Sparse summary: only nontrivial degrees are present, so two summaries
/// compare equal exactly when they agree degree-wise.
struct HomologySummary {
    std::map<int, HomologyGroup> by_degree;

    bool trivial() const { return by_degree.empty(); }

    HomologyGroup at(int d) const {
        auto it = by_degree.find(d);
        return it == by_degree.end() ? HomologyGroup{} : it->second;
    }

    HomologySummary shifted(int k) const {
        HomologySummary s;
        for (const auto& [d, g] : by_degree) s.by_degree[d + k] = g;
        return s;
    }

    bool operator==(const HomologySummary& o) const = default;
};

inline std::string group_to_string(const HomologyGroup& g) {
    if (g.trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (g.betti == 1) {
        os << "Z";
        first = false;
    } else if (g.betti > 1) {
        os << "Z^" << g.betti;
        first = false;
    }
    for (const Int& t : g.torsion) {
        if (!first) os << " + ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

inline HomologySummary homology(const ChainComplex& c) {
    require_valid(c, "homology");
    HomologySummary h;
    for (int d = 0; d <= c.max_degree(); ++d) {
        std::size_t rank_d = d >= 1 ? matrix_rank(*c.boundary_at(d)) : 0;
        SmithResult above = d + 1 <= c.max_degree() ? smith_normal_form(*c.boundary_at(d + 1))
                                                    : SmithResult{};
        HomologyGroup g;
        g.betti = c.count(d) - rank_d - above.rank;
        for (const Int& f : above.factors)
            if (f > 1) g.torsion.push_back(f);
        if (!g.trivial()) h.by_degree[d] = g;
    }
    return h;
}

// Canonical invariant factors of the direct sum of two torsion lists,
// computed as the Smith form of the block diagonal matrix.
inline std::vector<Int> merge_torsion(const std::vector<Int>& a, const std::vector<Int>& b) {
    Matrix m(a.size() + b.size(), a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) m.at(i, i) = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) m.at(a.size() + i, a.size() + i) = b[i];
    std::vector<Int> out;
    for (const Int& f : smith_normal_form(m).factors)
        if (f > 1) out.push_back(f);
    return out;
}

inline HomologySummary sum_summaries(const HomologySummary& a, const HomologySummary& b) {
    HomologySummary s = a;
    for (const auto& [d, g] : b.by_degree) {
        HomologyGroup& t = s.by_degree[d];
        t.betti += g.betti;
        t.torsion = merge_torsion(t.torsion, g.torsion);
    }
    for (auto it = s.by_degree.begin(); it != s.by_degree.end();)
        it = it->second.trivial() ? s.by_degree.erase(it) : std::next(it);
    return s;
}

/// Degree-raising family h[d]: C_d -> C_{d+1} on a single complex,
/// used as an exact witness that two self-maps are chain homotopic.
struct ChainHomotopy {
    ChainComplex on;
    std::vector<Matrix> h;

    bool operator==(const ChainHomotopy&) const = default;
};

inline ChainHomotopy zero_homotopy(ChainComplex c) {
    ChainHomotopy out;
    out.h.reserve(c.cells.size());
    for (int d = 0; d <= c.max_degree(); ++d) out.h.emplace_back(c.count(d + 1), c.count(d));
    out.on = std::move(c);
    return out;
}

/// Verifies id - f = boundary*h + h*boundary degree-wise for a self-map f
/// of h.on; returns the first failing degree.
inline std::optional<int> check_homotopy_witness(const ChainMap& f, const ChainHomotopy& hom) {
    const ChainComplex& c = hom.on;
    if (!(f.source == c) || !(f.target == c)) return -1;
    if (hom.h.size() != c.cells.size()) return -1;
    for (int d = 0; d <= c.max_degree(); ++d) {
        const Matrix& hd = hom.h[static_cast<std::size_t>(d)];
        if (hd.rows() != c.count(d + 1) || hd.cols() != c.count(d)) return d;
        Matrix want = Matrix::identity(c.count(d)) - f.maps[static_cast<std::size_t>(d)];
        Matrix got(c.count(d), c.count(d));
        if (d + 1 <= c.max_degree()) got = got + *c.boundary_at(d + 1) * hd;
        if (d >= 1) got = got + hom.h[static_cast<std::size_t>(d - 1)] * *c.boundary_at(d);
        if (!(want == got)) return d;
    }
    return std::nullopt;
}

/// Subcomplex spanned by the given cells, with its inclusion. Throws if a
/// kept cell's boundary leaves the span.
struct SubComplex {
    ChainComplex complex;
    ChainMap inclusion;
};

inline SubComplex sub_complex(const ChainComplex& c, const std::set<std::string>& keep) {
    require_valid(c, "sub_complex");
    SubComplex out;
    out.complex.cells.resize(c.cells.size());
    std::map<std::string, std::size_t> pos;  // position within its new degree
    for (int d = 0; d <= c.max_degree(); ++d)
        for (const auto& id : c.cells[static_cast<std::size_t>(d)])
            if (keep.count(id)) {
                pos[id] = out.complex.cells[static_cast<std::size_t>(d)].size();
                out.complex.cells[static_cast<std::size_t>(d)].push_back(id);
            }
    out.complex.boundary.reserve(c.cells.size());
    for (int d = 0; d <= c.max_degree(); ++d) {
        Matrix b(d == 0 ? 0 : out.complex.count(d - 1), out.complex.count(d));
        if (d > 0) {
            const Matrix& full = *c.boundary_at(d);
            const auto& rows = c.cells[static_cast<std::size_t>(d - 1)];
            const auto& cols = c.cells[static_cast<std::size_t>(d)];
            for (std::size_t j = 0; j < cols.size(); ++j) {
                if (!keep.count(cols[j])) continue;
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (full.at(i, j) == 0) continue;
                    if (!keep.count(rows[i]))
                        throw Error("sub_complex: boundary of '" + cols[j] +
                                    "' leaves the selected cells at '" + rows[i] + "'");
                    b.at(pos.at(rows[i]), pos.at(cols[j])) = full.at(i, j);
                }
            }
        }
        out.complex.boundary.push_back(std::move(b));
    }
    out.complex.normalize();
    out.inclusion = zero_chain_map(out.complex, c);
    for (int d = 0; d <= out.complex.max_degree(); ++d) {
        const auto& sub = out.complex.cells[static_cast<std::size_t>(d)];
        const auto& full = c.cells[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < sub.size(); ++j) {
            auto it = std::find(full.begin(), full.end(), sub[j]);
            out.inclusion.maps[static_cast<std::size_t>(d)].at(
                static_cast<std::size_t>(it - full.begin()), j) = 1;
        }
    }
    return out;
}

}  // namespace cwa
