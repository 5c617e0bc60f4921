#pragma once

#include "cwa/chain.hpp"

#include <map>
#include <string>

namespace cwa {

/// Bookkeeping for cells of derived cores: which cell of the original core
/// they come from, how many suspensions were applied, and whether the cell
/// was coned on top of that. A suspended cell sits in degree
/// origin + shift, a coned one in degree origin + shift + 1.
struct DerivedCell {
    enum class Kind { suspended, coned };
    std::string origin;
    Kind kind = Kind::suspended;
    int shift = 0;

    bool operator==(const DerivedCell&) const = default;
};

/// A core A presented by its reduced cellular chain complex. dim is the
/// top degree carrying cells, or -1 for the empty core (A = *).
struct CorePresentation {
    std::string name;
    ChainComplex chain;
    int dim = -1;
    // Present on derived cores only; maps a cell id to its origin data.
    std::map<std::string, DerivedCell> provenance;

    bool empty() const { return chain.empty(); }

    bool operator==(const CorePresentation&) const = default;
};

inline CorePresentation make_core(std::string name, ChainComplex chain) {
    require_valid(chain, "make_core");
    chain.normalize();
    CorePresentation c;
    c.name = std::move(name);
    c.dim = chain.max_degree();
    c.chain = std::move(chain);
    return c;
}

/// The classical core S^0: a single 0-cell (reduced, so one cell, not two).
inline CorePresentation s0_core() {
    ChainComplexBuilder b;
    b.add_cell(0, "pt");
    return make_core("S0", b.build());
}

/// S^m as a core: one cell in degree m.
inline CorePresentation sphere_core(int m) {
    ChainComplexBuilder b;
    b.add_cell(m, "pt");
    return make_core("S" + std::to_string(m), b.build());
}

inline std::string suspended_cell_id(const std::string& id, int k) {
    return k == 0 ? id : "s" + std::to_string(k) + "." + id;
}

/// Sigma^k A at chain level: every degree shifts up by k, boundary matrices
/// carried unchanged (no sign twist; homology cannot see the difference).
inline CorePresentation suspend_core(const CorePresentation& a, int k) {
    if (k < 0) throw Error("suspend_core: negative suspension count");
    if (k == 0) return a;
    CorePresentation out;
    out.name = "s" + std::to_string(k) + "." + a.name;
    out.chain.cells.resize(a.chain.cells.size() + static_cast<std::size_t>(k));
    out.chain.boundary.reserve(out.chain.cells.size());
    for (int d = 0; d < k; ++d) out.chain.boundary.emplace_back(0, 0);
    for (int d = 0; d <= a.chain.max_degree(); ++d) {
        for (const auto& id : a.chain.cells[static_cast<std::size_t>(d)]) {
            std::string nid = suspended_cell_id(id, k);
            out.chain.cells[static_cast<std::size_t>(d + k)].push_back(nid);
            DerivedCell dc;
            auto it = a.provenance.find(id);
            if (it != a.provenance.end()) {
                dc = it->second;
                dc.shift += k;
            } else {
                dc.origin = id;
                dc.kind = DerivedCell::Kind::suspended;
                dc.shift = k;
            }
            out.provenance[nid] = dc;
        }
        out.chain.boundary.push_back(d == 0 ? Matrix(0, a.chain.count(0))
                                            : *a.chain.boundary_at(d));
    }
    out.chain.normalize();
    out.dim = out.chain.max_degree();
    return out;
}

inline std::string coned_cell_id(const std::string& id) { return "c." + id; }

/// The reduced cone CA: cells of A plus one coned cell a degree higher per
/// cell of A. boundary(coned e) = e - coned(boundary e); the cone over the
/// omitted base point is itself omitted, which is why a coned 0-cell has
/// boundary equal to the original cell alone. Always acyclic.
inline CorePresentation cone_core(const CorePresentation& a) {
    CorePresentation out;
    out.name = "c." + a.name;
    ChainComplexBuilder b;
    for (int d = 0; d <= a.chain.max_degree(); ++d)
        for (const auto& id : a.chain.cells[static_cast<std::size_t>(d)]) {
            b.add_cell(d, id);
            auto it = a.provenance.find(id);
            out.provenance[id] = it != a.provenance.end()
                                     ? it->second
                                     : DerivedCell{id, DerivedCell::Kind::suspended, 0};
        }
    for (int d = 0; d <= a.chain.max_degree(); ++d)
        for (const auto& id : a.chain.cells[static_cast<std::size_t>(d)]) {
            std::string cid = coned_cell_id(id);
            b.add_cell(d + 1, cid);
            DerivedCell dc = out.provenance.at(id);
            dc.kind = DerivedCell::Kind::coned;
            out.provenance[cid] = dc;
        }
    for (int d = 1; d <= a.chain.max_degree(); ++d) {
        const Matrix& bd = *a.chain.boundary_at(d);
        const auto& rows = a.chain.cells[static_cast<std::size_t>(d - 1)];
        const auto& cols = a.chain.cells[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < bd.rows(); ++i)
            for (std::size_t j = 0; j < bd.cols(); ++j)
                if (bd.at(i, j) != 0) {
                    b.add_entry(rows[i], cols[j], bd.at(i, j));
                    b.add_entry(coned_cell_id(rows[i]), coned_cell_id(cols[j]), -bd.at(i, j));
                }
    }
    for (int d = 0; d <= a.chain.max_degree(); ++d)
        for (const auto& id : a.chain.cells[static_cast<std::size_t>(d)])
            b.add_entry(id, coned_cell_id(id), 1);
    out.chain = b.build();
    out.dim = out.chain.max_degree();
    return out;
}

/// Inclusion Sigma^k A -> C Sigma^k A from the defining pushout of an
/// A-(k+1)-cell: the identity onto the suspended-kind cells of the cone.
inline ChainMap boundary_inclusion(const CorePresentation& a, int k) {
    CorePresentation s = suspend_core(a, k);
    CorePresentation c = cone_core(s);
    ChainMap f = zero_chain_map(s.chain, c.chain);
    for (int d = 0; d <= s.chain.max_degree(); ++d) {
        const auto& sc = s.chain.cells[static_cast<std::size_t>(d)];
        const auto& cc = c.chain.cells[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < sc.size(); ++j)
            for (std::size_t i = 0; i < cc.size(); ++i)
                if (cc[i] == sc[j]) f.maps[static_cast<std::size_t>(d)].at(i, j) = 1;
    }
    return f;
}

}  // namespace cwa
