#pragma once

#include "cwa/presentation.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cwa {

/// Where a flattened B-cell came from: the A-cell of x it subdivides, the
/// cell of the core realization it corresponds to, and the (a, b) pair of
/// the layer-ordering argument (a = layer of the A-cell in x, b = relative
/// layer inside the cone of the suspended realization).
struct FlattenOrigin {
    std::string x_cell;
    std::string realization_cell;
    int pair_a = 0;
    int pair_b = 0;

    bool operator==(const FlattenOrigin&) const = default;
};

struct Flattened {
    CwaPresentation presentation;  // generalized CW(B)
    std::map<std::string, FlattenOrigin> cell_origin;
    // Signed chain-level bijection: x chain cell -> (output chain cell, sign).
    std::map<std::string, std::string> chain_cells;
    std::map<std::string, Int> chain_signs;
};

namespace detail {

// Identification between the chain cells of the realization a_as and the
// cells of x's core: degree-preserving bijection under which the boundary
// matrices agree exactly. Returns a_as-chain-id -> core-cell-id.
inline std::map<std::string, std::string> check_identification(
    const CwaPresentation& x, const CwaPresentation& a_as,
    const std::map<std::string, std::string>& given) {
    ChainComplex realized = underlying_chain(a_as).complex;
    const ChainComplex& core = x.core.chain;
    std::map<std::string, std::string> ident = given;
    if (ident.empty()) {
        if (realized.cells.size() != core.cells.size())
            throw Error("flatten: core realization has a different degree range than the core");
        for (int d = 0; d <= core.max_degree(); ++d) {
            const auto& rc = realized.cells[static_cast<std::size_t>(d)];
            const auto& cc = core.cells[static_cast<std::size_t>(d)];
            if (rc.size() != cc.size())
                throw Error("flatten: core realization cell counts differ at degree " +
                            std::to_string(d));
            for (std::size_t i = 0; i < rc.size(); ++i) ident[rc[i]] = cc[i];
        }
        for (int d = 1; d <= core.max_degree(); ++d)
            if (!(*realized.boundary_at(d) == *core.boundary_at(d)))
                throw Error("flatten: core realization boundary differs at degree " +
                            std::to_string(d));
        return ident;
    }
    // Caller-supplied: check bijectivity, degrees, and boundary agreement.
    std::map<std::string, std::pair<int, std::size_t>> core_pos;
    for (int d = 0; d <= core.max_degree(); ++d) {
        const auto& cc = core.cells[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < cc.size(); ++i) core_pos[cc[i]] = {d, i};
    }
    std::set<std::string> hit;
    if (realized.total_cells() != core.total_cells() || ident.size() != core.total_cells())
        throw Error("flatten: identification is not a bijection");
    for (int d = 0; d <= realized.max_degree(); ++d)
        for (const auto& id : realized.cells[static_cast<std::size_t>(d)]) {
            auto it = ident.find(id);
            if (it == ident.end())
                throw Error("flatten: identification misses chain cell '" + id + "'");
            auto cp = core_pos.find(it->second);
            if (cp == core_pos.end() || cp->second.first != d)
                throw Error("flatten: identification of '" + id + "' is not degree-preserving");
            if (!hit.insert(it->second).second)
                throw Error("flatten: identification is not injective");
        }
    for (int d = 1; d <= realized.max_degree(); ++d) {
        const Matrix& rb = *realized.boundary_at(d);
        const Matrix& cb = *core.boundary_at(d);
        const auto& rrows = realized.cells[static_cast<std::size_t>(d - 1)];
        const auto& rcols = realized.cells[static_cast<std::size_t>(d)];
        for (std::size_t i = 0; i < rb.rows(); ++i)
            for (std::size_t j = 0; j < rb.cols(); ++j) {
                auto rp = core_pos.at(ident.at(rrows[i]));
                auto cp = core_pos.at(ident.at(rcols[j]));
                if (rb.at(i, j) != cb.at(rp.second, cp.second))
                    throw Error("flatten: identification does not match boundaries at degree " +
                                std::to_string(d));
            }
    }
    return ident;
}

}  // namespace detail

/// Rewrites a CW(A)-presentation as a generalized CW(B)-presentation when
/// the core A is realized by a proper finite-dimensional CW(B) a_as. Each
/// A-n-cell is replaced by the relative cells of the cone over the
/// (n-1)-fold suspension of a_as; A-0-cells become verbatim copies of
/// a_as. The underlying chain complex is carried over by a signed
/// bijection, so homology is preserved on the nose.
inline Flattened flatten(const CwaPresentation& x, const CwaPresentation& a_as,
                         const std::map<std::string, std::string>& identification = {}) {
    require_valid(x, "flatten");
    require_valid(a_as, "flatten");
    if (!a_as.proper()) throw Error("flatten: core realization must be proper");
    std::map<std::string, std::string> ident =
        detail::check_identification(x, a_as, identification);
    std::map<std::string, std::string> ident_rev;
    for (const auto& [r, a] : ident) ident_rev[a] = r;

    const CorePresentation& b_core = a_as.core;
    Flattened out;
    PresentationBuilder bld(b_core);

    // Attach entries of every x-cell, resolved to (cell, core cell) pairs.
    UnderlyingChain x_chain = underlying_chain(x);

    int next_layer = 0;
    for (std::size_t k = 0; k < x.layers.size(); ++k) {
        // Collect this x-layer's new cells grouped by internal dimension.
        struct NewCell {
            std::string id;
            int b_dim;
            int internal;
            std::vector<PresentationBuilder::Entry> entries;
            std::string x_cell;
            std::string realization_cell;
        };
        std::vector<NewCell> block;
        for (const auto& e : x.layers[k]) {
            if (e.a_dim == 0) {
                // Verbatim copy of a_as, renamed into e's namespace.
                UnderlyingChain ra = underlying_chain(a_as);
                for (const auto* al : a_as.all_cells()) {
                    NewCell nc;
                    nc.id = e.id + "/" + al->id;
                    nc.b_dim = al->a_dim;
                    nc.internal = al->layer;
                    nc.x_cell = e.id;
                    nc.realization_cell = al->id;
                    for (const auto& en : detail::attach_entries(a_as, *al)) {
                        auto [cell, bcell] = ra.origin.at(en.target_chain_cell);
                        nc.entries.push_back(
                            {chain_cell_id(e.id + "/" + cell, bcell), en.core_cell, en.coeff});
                    }
                    block.push_back(std::move(nc));
                    // Chain bijection: copy cells map with sign +1.
                    for (int d = 0; d <= b_core.chain.max_degree(); ++d)
                        for (const auto& bc : b_core.chain.cells[static_cast<std::size_t>(d)]) {
                            std::string rid = chain_cell_id(al->id, bc);
                            std::string xid = chain_cell_id(e.id, ident.at(rid));
                            out.chain_cells[xid] = chain_cell_id(e.id + "/" + al->id, bc);
                            out.chain_signs[xid] = 1;
                        }
                }
            } else {
                CwaPresentation s = a_as;
                for (int i = 0; i < e.a_dim - 1; ++i) s = suspend(s);
                ConeResult cone_s = cone(s);
                UnderlyingChain s_chain = underlying_chain(s);
                std::map<std::string, std::string> cone_rev;
                for (const auto& [orig, cn] : cone_s.cone_names) cone_rev[cn] = orig;
                std::map<std::string, int> s_dim;
                for (const auto* sc : s.all_cells()) s_dim[sc->id] = sc->a_dim;
                std::map<std::string, int> bdeg;
                for (int d = 0; d <= b_core.chain.max_degree(); ++d)
                    for (const auto& bc : b_core.chain.cells[static_cast<std::size_t>(d)])
                        bdeg[bc] = d;
                // J-signs of the cone embedding on s-chain cells, and the
                // signed chain bijection for e's block.
                auto j_sign = [&](const std::string& s_cell, const std::string& bc) -> Int {
                    if (s_dim.at(s_cell) == 0) return 1;
                    return bdeg.at(bc) % 2 == 0 ? 1 : -1;
                };
                for (const auto* sc : s.all_cells())
                    for (int d = 0; d <= b_core.chain.max_degree(); ++d)
                        for (const auto& bc : b_core.chain.cells[static_cast<std::size_t>(d)]) {
                            std::string rid = chain_cell_id(sc->id, bc);
                            // rid is also an a_as chain id: suspension
                            // keeps cell ids, so the identification applies.
                            std::string xid = chain_cell_id(e.id, ident.at(rid));
                            out.chain_cells[xid] = chain_cell_id(e.id + "/" + sc->id, bc);
                            out.chain_signs[xid] = j_sign(sc->id, bc);
                        }
                // Attach image of e, indexed by the A-core cell of the
                // suspended source: column a -> chain in x's earlier layers.
                std::map<std::string, std::vector<std::pair<std::string, Int>>> g_cols;
                for (const auto& en : detail::attach_entries(x, e))
                    g_cols[en.core_cell].push_back({en.target_chain_cell, en.coeff});
                for (const auto* sc : s.all_cells()) {
                    NewCell nc;
                    nc.id = e.id + "/" + sc->id;
                    nc.b_dim = sc->a_dim + 1;
                    nc.internal = sc->a_dim + 1;
                    nc.x_cell = e.id;
                    nc.realization_cell = sc->id;
                    const std::string& cone_id = cone_s.cone_names.at(sc->id);
                    const AttachedCell* cc = cone_s.presentation.find_cell(cone_id);
                    for (const auto& en : detail::attach_entries(cone_s.presentation, *cc)) {
                        // Rows are chain cells of cone(s): either the s part
                        // (reroute through e's attach) or cone cells of the
                        // same block (relabel into e's namespace).
                        auto dot = en.target_chain_cell.rfind('.');
                        std::string cell_part = en.target_chain_cell.substr(0, dot);
                        std::string bc_part = en.target_chain_cell.substr(dot + 1);
                        auto cr = cone_rev.find(cell_part);
                        if (cr != cone_rev.end()) {
                            nc.entries.push_back({chain_cell_id(e.id + "/" + cr->second, bc_part),
                                                  en.core_cell, en.coeff});
                        } else {
                            std::string a = ident.at(en.target_chain_cell);
                            auto git = g_cols.find(a);
                            if (git == g_cols.end()) continue;
                            for (const auto& [xrow, w] : git->second)
                                nc.entries.push_back({out.chain_cells.at(xrow), en.core_cell,
                                                      en.coeff * w * out.chain_signs.at(xrow)});
                        }
                    }
                    block.push_back(std::move(nc));
                }
            }
        }
        // Assign output layers: one per distinct internal dimension, ascending.
        std::set<int> internals;
        for (const auto& nc : block) internals.insert(nc.internal);
        std::map<int, int> layer_of;
        for (int m : internals) layer_of[m] = next_layer++;
        for (auto& nc : block) {
            out.cell_origin[nc.id] = FlattenOrigin{nc.x_cell, nc.realization_cell,
                                                   static_cast<int>(k), nc.internal};
            if (nc.b_dim == 0)
                bld.wedge_cell(layer_of.at(nc.internal), nc.id);
            else
                bld.cell(layer_of.at(nc.internal), nc.id, nc.b_dim, std::move(nc.entries));
        }
    }
    out.presentation = bld.build();
    return out;
}

/// Input to the layer-ordering argument: a cell, the ids its attach data
/// touches, and the lexicographic certificate pair.
struct LayeredCell {
    std::string id;
    std::set<std::string> support;
    std::pair<int, int> pair;
};

struct LayerOrderResult {
    // Cells newly admitted at each stage: J_1, J_2 minus J_1, ...
    std::vector<std::vector<std::string>> layering;
    bool complete = false;
    std::vector<std::string> cycle;  // a support cycle when not complete
    bool lex_ok = false;
    std::string lex_violation;
};

/// Orders cells by support: stage 1 holds the cells with empty support
/// (constant attaching maps), stage k the cells supported on earlier
/// stages. A cell never admitted certifies a support cycle, which is
/// returned. Also verifies that the (a, b) pairs strictly decrease along
/// every support edge in the lexicographic order with the first
/// coordinate dominant.
inline LayerOrderResult layer_order(const std::vector<LayeredCell>& cells) {
    LayerOrderResult out;
    std::set<std::string> reached;
    std::set<std::string> remaining;
    std::map<std::string, const LayeredCell*> by_id;
    for (const auto& c : cells) {
        remaining.insert(c.id);
        by_id[c.id] = &c;
    }
    while (!remaining.empty()) {
        std::vector<std::string> stage;
        for (const auto& id : remaining) {
            const LayeredCell& c = *by_id.at(id);
            bool ok = true;
            for (const auto& s : c.support)
                if (!reached.count(s)) {
                    ok = false;
                    break;
                }
            if (ok) stage.push_back(id);
        }
        if (stage.empty()) break;
        for (const auto& id : stage) {
            reached.insert(id);
            remaining.erase(id);
        }
        out.layering.push_back(std::move(stage));
    }
    out.complete = remaining.empty();
    if (!out.complete) {
        // Walk unreached support members until a repeat closes a cycle.
        std::vector<std::string> path;
        std::map<std::string, std::size_t> pos;
        std::string cur = *remaining.begin();
        while (!pos.count(cur)) {
            pos[cur] = path.size();
            path.push_back(cur);
            const LayeredCell& c = *by_id.at(cur);
            std::string next;
            for (const auto& s : c.support)
                if (remaining.count(s)) {
                    next = s;
                    break;
                }
            cur = next;
        }
        out.cycle.assign(path.begin() + static_cast<std::ptrdiff_t>(pos.at(cur)), path.end());
    }
    out.lex_ok = true;
    for (const auto& c : cells)
        for (const auto& s : c.support) {
            auto it = by_id.find(s);
            if (it == by_id.end()) continue;
            const auto& ps = it->second->pair;
            if (!(ps < c.pair)) {
                out.lex_ok = false;
                out.lex_violation = "pair of face '" + s + "' does not decrease below '" + c.id +
                                    "'";
                return out;
            }
        }
    return out;
}

/// LayeredCell view of a flatten output: supports from the immediate-face
/// relation, pairs from the recorded origins.
inline std::vector<LayeredCell> layered_cells(const Flattened& f) {
    std::vector<LayeredCell> out;
    FacePoset p = face_poset(f.presentation);
    std::map<std::string, std::set<std::string>> supp;
    for (const auto& [face, cell] : p.immediate) supp[cell].insert(face);
    for (const auto* e : f.presentation.all_cells()) {
        const FlattenOrigin& o = f.cell_origin.at(e->id);
        out.push_back({e->id, supp[e->id], {o.pair_a, o.pair_b}});
    }
    return out;
}

struct CoreChange {
    CwaPresentation y;
    ChainMap phi;  // underlying chain of x -> underlying chain of y
    ChainMap psi;  // the reverse; a chain map whenever beta alpha = id
};

namespace detail {

inline CoreChange build_core_change(const CwaPresentation& x, const CorePresentation& b_core,
                                    const ChainMap& alpha, const ChainMap& beta) {
    require_valid(x, "change_core");
    if (auto v = validate_map(alpha)) throw Error("change_core: invalid alpha: " + v->message);
    if (auto v = validate_map(beta)) throw Error("change_core: invalid beta: " + v->message);
    if (!(alpha.source == x.core.chain) || !(alpha.target == b_core.chain))
        throw Error("change_core: alpha must map the core of x to the new core");
    if (!(beta.source == b_core.chain) || !(beta.target == x.core.chain))
        throw Error("change_core: beta must map the new core back to the core of x");

    const ChainComplex& ac = x.core.chain;
    const ChainComplex& bc = b_core.chain;
    std::map<std::string, std::pair<int, std::size_t>> apos, bpos;
    for (int d = 0; d <= ac.max_degree(); ++d)
        for (std::size_t i = 0; i < ac.count(d); ++i)
            apos[ac.cells[static_cast<std::size_t>(d)][i]] = {d, i};
    for (int d = 0; d <= bc.max_degree(); ++d)
        for (std::size_t i = 0; i < bc.count(d); ++i)
            bpos[bc.cells[static_cast<std::size_t>(d)][i]] = {d, i};

    // y has the same cells over the new core; each attach map is the old
    // one conjugated: phi after g after the suspension of beta.
    PresentationBuilder bld(b_core);
    for (const auto* e : x.all_cells()) {
        if (e->a_dim == 0) {
            bld.wedge_cell(e->layer, e->id);
            continue;
        }
        std::vector<PresentationBuilder::Entry> entries;
        // g columns indexed by A-core cell.
        std::map<std::string, std::vector<std::pair<std::string, Int>>> g_cols;
        UnderlyingChain x_prefix = underlying_chain_prefix(x, static_cast<std::size_t>(e->layer));
        for (const auto& en : detail::attach_entries(x, *e))
            g_cols[en.core_cell].push_back({en.target_chain_cell, en.coeff});
        for (int t = 0; t <= bc.max_degree(); ++t)
            for (const auto& b_cell : bc.cells[static_cast<std::size_t>(t)]) {
                std::size_t bj = bpos.at(b_cell).second;
                for (std::size_t ai = 0; ai < ac.count(t); ++ai) {
                    const Int& beta_ab = beta.maps[static_cast<std::size_t>(t)].at(ai, bj);
                    if (beta_ab == 0) continue;
                    const std::string& a_cell = ac.cells[static_cast<std::size_t>(t)][ai];
                    auto git = g_cols.find(a_cell);
                    if (git == g_cols.end()) continue;
                    for (const auto& [xrow, w] : git->second) {
                        auto [cell2, acell2] = x_prefix.origin.at(xrow);
                        auto [t2, a2i] = apos.at(acell2);
                        for (std::size_t b2i = 0; b2i < bc.count(t2); ++b2i) {
                            const Int& alpha_ba =
                                alpha.maps[static_cast<std::size_t>(t2)].at(b2i, a2i);
                            if (alpha_ba == 0) continue;
                            entries.push_back(
                                {chain_cell_id(cell2, bc.cells[static_cast<std::size_t>(t2)][b2i]),
                                 b_cell, beta_ab * w * alpha_ba});
                        }
                    }
                }
            }
        bld.cell(e->layer, e->id, e->a_dim, std::move(entries));
    }

    CoreChange out;
    out.y = bld.build();
    ChainComplex cx = underlying_chain(x).complex;
    ChainComplex cy = underlying_chain(out.y).complex;
    std::map<std::string, std::pair<int, std::size_t>> xpos, ypos;
    for (int d = 0; d <= cx.max_degree(); ++d)
        for (std::size_t i = 0; i < cx.count(d); ++i)
            xpos[cx.cells[static_cast<std::size_t>(d)][i]] = {d, i};
    for (int d = 0; d <= cy.max_degree(); ++d)
        for (std::size_t i = 0; i < cy.count(d); ++i)
            ypos[cy.cells[static_cast<std::size_t>(d)][i]] = {d, i};
    out.phi = zero_chain_map(cx, cy);
    out.psi = zero_chain_map(cy, cx);
    for (const auto* e : x.all_cells())
        for (int t = 0; t <= ac.max_degree(); ++t)
            for (std::size_t ai = 0; ai < ac.count(t); ++ai)
                for (std::size_t bi = 0; bi < bc.count(t); ++bi) {
                    const std::string& a_cell = ac.cells[static_cast<std::size_t>(t)][ai];
                    const std::string& b_cell = bc.cells[static_cast<std::size_t>(t)][bi];
                    auto xp = xpos.at(chain_cell_id(e->id, a_cell));
                    auto yp = ypos.at(chain_cell_id(e->id, b_cell));
                    const Int& av = alpha.maps[static_cast<std::size_t>(t)].at(bi, ai);
                    if (av != 0)
                        out.phi.maps[static_cast<std::size_t>(xp.first)].at(yp.second, xp.second) =
                            av;
                    const Int& bv = beta.maps[static_cast<std::size_t>(t)].at(ai, bi);
                    if (bv != 0)
                        out.psi.maps[static_cast<std::size_t>(xp.first)].at(xp.second, yp.second) =
                            bv;
                }
    return out;
}

}  // namespace detail

/// Core change along a retraction: beta alpha must equal the identity
/// exactly. The returned maps satisfy psi phi = id on the underlying
/// chain, so the homology of x is a direct summand of the homology of y.
inline CoreChange change_core_retract(const CwaPresentation& x, const CorePresentation& b_core,
                                      const ChainMap& alpha, const ChainMap& beta) {
    if (!(compose(beta, alpha) == identity_chain_map(x.core.chain)))
        throw Error("change_core_retract: beta alpha is not the identity");
    CoreChange out = detail::build_core_change(x, b_core, alpha, beta);
    if (!(compose(out.psi, out.phi) == identity_chain_map(out.phi.source)))
        throw Error("change_core_retract: internal error: psi phi is not the identity");
    return out;
}

struct CoreEquivalence {
    CwaPresentation y;
    ChainMap phi;
};

/// Core change along a chain homotopy equivalence: h_a must witness
/// id - beta alpha and h_b must witness id - alpha beta, both exactly.
/// The same cell-index construction applies and homology is preserved
/// degree-wise (phi is a quasi-isomorphism).
inline CoreEquivalence change_core_equivalence(const CwaPresentation& x,
                                               const CorePresentation& b_core,
                                               const ChainMap& alpha, const ChainMap& beta,
                                               const ChainHomotopy& h_a, const ChainHomotopy& h_b) {
    if (auto d = check_homotopy_witness(compose(beta, alpha), h_a))
        throw Error("change_core_equivalence: h_a fails at degree " + std::to_string(*d));
    if (auto d = check_homotopy_witness(compose(alpha, beta), h_b))
        throw Error("change_core_equivalence: h_b fails at degree " + std::to_string(*d));
    CoreChange built = detail::build_core_change(x, b_core, alpha, beta);
    return CoreEquivalence{std::move(built.y), std::move(built.phi)};
}

}  // namespace cwa
