#pragma once

#include "cwa/core.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cwa {

/// One A-cell of a build script. For a_dim n >= 1, attach is a chain map
/// from suspend_core(A, n-1) into the underlying chain complex of the
/// strictly earlier layers; for n == 0 the cell is a wedge summand and has
/// no attaching data. The constant attaching map is the zero chain map.
struct AttachedCell {
    std::string id;
    int a_dim = 0;
    int layer = 0;
    std::optional<ChainMap> attach;

    bool operator==(const AttachedCell&) const = default;
};

/// Layered build script over a core. A presentation is proper (a CW(A)
/// structure in the strict sense) when every layer-k cell has a_dim k;
/// otherwise it is a generalized presentation where any dimensions may be
/// attached at any step. Cells within a layer are kept sorted by id; this
/// fixes the basis order of every derived chain complex.
struct CwaPresentation {
    CorePresentation core;
    std::vector<std::vector<AttachedCell>> layers;

    bool proper() const {
        for (std::size_t k = 0; k < layers.size(); ++k)
            for (const auto& c : layers[k])
                if (c.a_dim != static_cast<int>(k)) return false;
        return true;
    }

    std::size_t cell_count() const {
        std::size_t n = 0;
        for (const auto& l : layers) n += l.size();
        return n;
    }

    bool empty() const { return cell_count() == 0; }

    std::vector<const AttachedCell*> all_cells() const {
        std::vector<const AttachedCell*> out;
        for (const auto& l : layers)
            for (const auto& c : l) out.push_back(&c);
        return out;
    }

    const AttachedCell* find_cell(const std::string& id) const {
        for (const auto& l : layers)
            for (const auto& c : l)
                if (c.id == id) return &c;
        return nullptr;
    }

    void trim_layers() {
        while (!layers.empty() && layers.back().empty()) layers.pop_back();
    }

    bool operator==(const CwaPresentation&) const = default;
};

inline CwaPresentation empty_presentation(CorePresentation core) {
    CwaPresentation x;
    x.core = std::move(core);
    return x;
}

inline std::string chain_cell_id(const std::string& cell, const std::string& core_cell) {
    return cell + "." + core_cell;
}

/// Underlying reduced chain complex plus the provenance of every chain
/// cell: which A-cell and which core cell it comes from. An A-n-cell
/// contributes one chain cell of degree d+n per degree-d core cell.
struct UnderlyingChain {
    ChainComplex complex;
    std::map<std::string, std::pair<std::string, std::string>> origin;
};

/// Chain complex of the layers strictly below `upto_layer`.
inline UnderlyingChain underlying_chain_prefix(const CwaPresentation& x, std::size_t upto_layer) {
    UnderlyingChain out;
    ChainComplexBuilder b;
    std::size_t top = std::min(upto_layer, x.layers.size());
    const ChainComplex& core = x.core.chain;
    for (std::size_t k = 0; k < top; ++k)
        for (const auto& e : x.layers[k])
            for (int d = 0; d <= core.max_degree(); ++d)
                for (const auto& a : core.cells[static_cast<std::size_t>(d)]) {
                    std::string id = chain_cell_id(e.id, a);
                    b.add_cell(d + e.a_dim, id);
                    out.origin[id] = {e.id, a};
                }
    for (std::size_t k = 0; k < top; ++k)
        for (const auto& e : x.layers[k]) {
            // Own-cell part: the core boundary, negated for coned cells
            // (every cell of positive dimension is a cone over the
            // suspended core; wedge summands carry the core verbatim).
            Int sign = e.a_dim == 0 ? 1 : -1;
            for (int d = 1; d <= core.max_degree(); ++d) {
                const Matrix& bd = *core.boundary_at(d);
                const auto& rows = core.cells[static_cast<std::size_t>(d - 1)];
                const auto& cols = core.cells[static_cast<std::size_t>(d)];
                for (std::size_t i = 0; i < bd.rows(); ++i)
                    for (std::size_t j = 0; j < bd.cols(); ++j)
                        if (bd.at(i, j) != 0)
                            b.add_entry(chain_cell_id(e.id, rows[i]), chain_cell_id(e.id, cols[j]),
                                        sign * bd.at(i, j));
            }
            // Attach part: the image of the suspended core cell under g.
            if (!e.attach) continue;
            const ChainMap& g = *e.attach;
            for (int d = 0; d <= core.max_degree(); ++d) {
                int src_deg = d + e.a_dim - 1;
                const Matrix* gm = g.map_at(src_deg);
                if (!gm || gm->rows() == 0) continue;
                const auto& cols = core.cells[static_cast<std::size_t>(d)];
                const auto& rows = g.target.cells[static_cast<std::size_t>(src_deg)];
                for (std::size_t j = 0; j < cols.size(); ++j)
                    for (std::size_t i = 0; i < rows.size(); ++i)
                        if (gm->at(i, j) != 0)
                            b.add_entry(rows[i], chain_cell_id(e.id, cols[j]), gm->at(i, j));
            }
        }
    out.complex = b.build();
    return out;
}

inline UnderlyingChain underlying_chain(const CwaPresentation& x) {
    return underlying_chain_prefix(x, x.layers.size());
}

struct PresentationViolation {
    enum class Kind { bad_layering, forward_reference, non_commuting_attach, duplicate_id, malformed };
    Kind kind;
    std::string cell;
    int degree = 0;
    std::string message;
};

using PresentationReport = std::optional<PresentationViolation>;

inline PresentationReport validate(const CwaPresentation& x) {
    using K = PresentationViolation::Kind;
    if (auto v = validate_complex(x.core.chain))
        return PresentationViolation{K::malformed, "", v->degree, "core chain invalid: " + v->message};
    if (x.core.dim != x.core.chain.max_degree())
        return PresentationViolation{K::malformed, "", 0, "core dim field disagrees with its chain"};
    std::set<std::string> ids;
    for (std::size_t k = 0; k < x.layers.size(); ++k) {
        const auto& layer = x.layers[k];
        for (std::size_t i = 0; i < layer.size(); ++i) {
            const AttachedCell& e = layer[i];
            if (!ids.insert(e.id).second)
                return PresentationViolation{K::duplicate_id, e.id, 0,
                                             "duplicate cell id '" + e.id + "'"};
            if (i > 0 && !(layer[i - 1].id < e.id))
                return PresentationViolation{K::malformed, e.id, 0,
                                             "cells within a layer must be sorted by id"};
            if (e.layer != static_cast<int>(k))
                return PresentationViolation{K::bad_layering, e.id, 0,
                                             "cell '" + e.id + "' carries layer " +
                                                 std::to_string(e.layer) + " but sits in layer " +
                                                 std::to_string(k)};
            if (e.a_dim < 0)
                return PresentationViolation{K::malformed, e.id, 0, "negative a_dim"};
            if ((e.a_dim == 0) != !e.attach.has_value())
                return PresentationViolation{K::malformed, e.id, 0,
                                             "attach data must be absent exactly for a_dim 0"};
        }
    }
    for (std::size_t k = 0; k < x.layers.size(); ++k) {
        ChainComplex prefix;  // computed lazily per layer
        bool have_prefix = false;
        for (const auto& e : x.layers[k]) {
            if (!e.attach) continue;
            const ChainMap& g = *e.attach;
            ChainComplex want_source = suspend_core(x.core, e.a_dim - 1).chain;
            if (!(g.source == want_source))
                return PresentationViolation{K::malformed, e.id, 0,
                                             "attach source of '" + e.id +
                                                 "' is not the suspended core"};
            if (!have_prefix) {
                prefix = underlying_chain_prefix(x, k).complex;
                have_prefix = true;
            }
            if (!(g.target == prefix)) {
                std::set<std::string> prefix_ids;
                for (const auto& cl : prefix.cells)
                    for (const auto& id : cl) prefix_ids.insert(id);
                for (const auto& cl : g.target.cells)
                    for (const auto& id : cl)
                        if (!prefix_ids.count(id))
                            return PresentationViolation{
                                K::forward_reference, e.id, 0,
                                "attach of '" + e.id + "' references chain cell '" + id +
                                    "' outside the earlier layers"};
                return PresentationViolation{K::malformed, e.id, 0,
                                             "attach target of '" + e.id +
                                                 "' is not the chain complex of earlier layers"};
            }
            if (auto v = validate_map(g)) {
                if (v->kind == MapViolationKind::commutation)
                    return PresentationViolation{K::non_commuting_attach, e.id, v->degree,
                                                 "attach of '" + e.id + "' " + v->message};
                return PresentationViolation{K::malformed, e.id, v->degree,
                                             "attach of '" + e.id + "' " + v->message};
            }
        }
    }
    return std::nullopt;
}

inline void require_valid(const CwaPresentation& x, const char* what) {
    if (auto v = validate(x))
        throw Error(std::string(what) + ": invalid presentation: " + v->message);
}

/// Declarative construction: declare cells with sparse attach entries
/// (target chain cell, core cell, coefficient); build() sorts layers,
/// assembles the attach chain maps against the canonical prefix bases and
/// returns the finished presentation.
class PresentationBuilder {
public:
    struct Entry {
        std::string target_chain_cell;
        std::string core_cell;
        Int coeff;
    };

    explicit PresentationBuilder(CorePresentation core) : core_(std::move(core)) {}

    void wedge_cell(int layer, const std::string& id) { declare(layer, id, 0, {}); }

    void cell(int layer, const std::string& id, int a_dim, std::vector<Entry> entries) {
        declare(layer, id, a_dim, std::move(entries));
    }

    CwaPresentation build() const {
        CwaPresentation x;
        x.core = core_;
        std::vector<Decl> decls = decls_;
        std::stable_sort(decls.begin(), decls.end(), [](const Decl& a, const Decl& b) {
            return a.layer != b.layer ? a.layer < b.layer : a.id < b.id;
        });
        int max_layer = -1;
        for (const auto& d : decls) max_layer = std::max(max_layer, d.layer);
        x.layers.resize(static_cast<std::size_t>(max_layer + 1));
        std::size_t i = 0;
        while (i < decls.size()) {
            int k = decls[i].layer;
            UnderlyingChain prefix = underlying_chain_prefix(x, static_cast<std::size_t>(k));
            std::map<std::string, std::pair<int, std::size_t>> row_index;
            for (int d = 0; d <= prefix.complex.max_degree(); ++d) {
                const auto& cl = prefix.complex.cells[static_cast<std::size_t>(d)];
                for (std::size_t p = 0; p < cl.size(); ++p) row_index[cl[p]] = {d, p};
            }
            std::map<std::string, std::pair<int, std::size_t>> core_index;
            for (int d = 0; d <= core_.chain.max_degree(); ++d) {
                const auto& cl = core_.chain.cells[static_cast<std::size_t>(d)];
                for (std::size_t p = 0; p < cl.size(); ++p) core_index[cl[p]] = {d, p};
            }
            for (; i < decls.size() && decls[i].layer == k; ++i) {
                const Decl& d = decls[i];
                AttachedCell cell;
                cell.id = d.id;
                cell.a_dim = d.a_dim;
                cell.layer = k;
                if (d.a_dim > 0) {
                    ChainMap g = zero_chain_map(suspend_core(core_, d.a_dim - 1).chain,
                                                prefix.complex);
                    for (const Entry& e : d.entries) {
                        auto cit = core_index.find(e.core_cell);
                        if (cit == core_index.end())
                            throw Error("unknown core cell '" + e.core_cell + "'");
                        auto rit = row_index.find(e.target_chain_cell);
                        if (rit == row_index.end())
                            throw Error("attach of '" + d.id + "' targets unknown chain cell '" +
                                        e.target_chain_cell + "'");
                        int col_deg = cit->second.first + d.a_dim - 1;
                        if (rit->second.first != col_deg)
                            throw Error("attach entry of '" + d.id + "' at '" +
                                        e.target_chain_cell + "' has mismatched degree");
                        g.maps[static_cast<std::size_t>(col_deg)].at(rit->second.second,
                                                                     cit->second.second) += e.coeff;
                    }
                    cell.attach = std::move(g);
                } else if (!d.entries.empty()) {
                    throw Error("wedge cell '" + d.id + "' cannot carry attach entries");
                }
                x.layers[static_cast<std::size_t>(k)].push_back(std::move(cell));
            }
        }
        return x;
    }

private:
    struct Decl {
        int layer;
        std::string id;
        int a_dim;
        std::vector<Entry> entries;
    };

    void declare(int layer, const std::string& id, int a_dim, std::vector<Entry> entries) {
        if (layer < 0) throw Error("negative layer");
        if (a_dim < 0) throw Error("negative a_dim");
        for (const auto& d : decls_)
            if (d.id == id) throw Error("duplicate cell id '" + id + "'");
        decls_.push_back({layer, id, a_dim, std::move(entries)});
    }

    CorePresentation core_;
    std::vector<Decl> decls_;
};

namespace detail {

// Sparse entries of a stored attach map, expressed as builder entries
// (target chain cell id, core cell id, coefficient).
inline std::vector<PresentationBuilder::Entry> attach_entries(const CwaPresentation& x,
                                                              const AttachedCell& e) {
    std::vector<PresentationBuilder::Entry> out;
    if (!e.attach) return out;
    const ChainMap& g = *e.attach;
    const ChainComplex& core = x.core.chain;
    for (int d = 0; d <= core.max_degree(); ++d) {
        int src_deg = d + e.a_dim - 1;
        const Matrix* gm = g.map_at(src_deg);
        if (!gm) continue;
        const auto& cols = core.cells[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < gm->rows(); ++i)
                if (gm->at(i, j) != 0)
                    out.push_back({g.target.cells[static_cast<std::size_t>(src_deg)][i], cols[j],
                                   gm->at(i, j)});
    }
    return out;
}

}  // namespace detail

/// Face relation extracted from the attach data: e' is an immediate face
/// of e when some chain cell of e' carries a nonzero coefficient in the
/// attach map of e. Incidences whose coefficients cancel to zero are
/// invisible to this relation (it is a combinatorial proxy, not a
/// point-set statement). The relation is the transitive closure.
struct FacePoset {
    std::set<std::pair<std::string, std::string>> immediate;  // (face, cell)
    std::set<std::pair<std::string, std::string>> relation;   // transitive closure

    bool is_face(const std::string& f, const std::string& of) const {
        return relation.count({f, of}) != 0;
    }
};

inline FacePoset face_poset(const CwaPresentation& x) {
    require_valid(x, "face_poset");
    FacePoset p;
    UnderlyingChain uc = underlying_chain(x);
    for (const auto* e : x.all_cells())
        for (const auto& entry : detail::attach_entries(x, *e)) {
            const std::string& face = uc.origin.at(entry.target_chain_cell).first;
            if (face != e->id) p.immediate.insert({face, e->id});
        }
    // Transitive closure by depth-first walks along immediate edges.
    std::map<std::string, std::vector<std::string>> down;  // cell -> immediate faces
    for (const auto& [f, c] : p.immediate) down[c].push_back(f);
    for (const auto* e : x.all_cells()) {
        std::vector<std::string> stack{e->id};
        std::set<std::string> seen;
        while (!stack.empty()) {
            std::string cur = stack.back();
            stack.pop_back();
            auto it = down.find(cur);
            if (it == down.end()) continue;
            for (const auto& f : it->second)
                if (seen.insert(f).second) {
                    p.relation.insert({f, e->id});
                    stack.push_back(f);
                }
        }
    }
    return p;
}

inline bool is_face_closed(const CwaPresentation& x, const std::set<std::string>& cells) {
    FacePoset p = face_poset(x);
    for (const auto& [f, c] : p.immediate)
        if (cells.count(c) && !cells.count(f)) return false;
    return true;
}

/// Sub-presentation on a face-closed set of cells. Layer indices are kept;
/// attach maps are cut down to the restricted prefixes.
inline CwaPresentation restrict_presentation(const CwaPresentation& x,
                                             const std::set<std::string>& keep) {
    require_valid(x, "restrict_presentation");
    for (const auto& id : keep)
        if (!x.find_cell(id)) throw Error("restrict_presentation: unknown cell '" + id + "'");
    if (!is_face_closed(x, keep))
        throw Error("restrict_presentation: selected cells are not face-closed");
    PresentationBuilder b(x.core);
    for (const auto* e : x.all_cells()) {
        if (!keep.count(e->id)) continue;
        if (e->a_dim == 0)
            b.wedge_cell(e->layer, e->id);
        else
            b.cell(e->layer, e->id, e->a_dim, detail::attach_entries(x, *e));
    }
    CwaPresentation r = b.build();
    return r;
}

/// skeleton(x, n): the cells of a_dim <= n of a proper presentation.
/// n == -1 gives the empty presentation; n < -1 is rejected.
inline CwaPresentation skeleton(const CwaPresentation& x, int n) {
    require_valid(x, "skeleton");
    if (!x.proper()) throw Error("skeleton: presentation is not proper");
    if (n < -1) throw Error("skeleton: n < -1");
    std::set<std::string> keep;
    for (const auto* e : x.all_cells())
        if (e->a_dim <= n) keep.insert(e->id);
    CwaPresentation r = restrict_presentation(x, keep);
    r.trim_layers();
    return r;
}

/// layer_prefix(x, k): layers 0..k of any presentation.
inline CwaPresentation layer_prefix(const CwaPresentation& x, int k) {
    require_valid(x, "layer_prefix");
    if (k < -1) throw Error("layer_prefix: k < -1");
    std::set<std::string> keep;
    for (const auto* e : x.all_cells())
        if (e->layer <= k) keep.insert(e->id);
    CwaPresentation r = restrict_presentation(x, keep);
    r.trim_layers();
    return r;
}

/// Dimension of a proper structure: the top a_dim present, -1 when empty.
/// This is an attribute of the presentation, not of the space it builds.
inline int dimension(const CwaPresentation& x) {
    require_valid(x, "dimension");
    if (!x.proper()) throw Error("dimension: presentation is not proper");
    int n = -1;
    for (const auto* e : x.all_cells()) n = std::max(n, e->a_dim);
    return n;
}

struct WedgeResult {
    CwaPresentation presentation;
    // Renaming applied to x's cells on id collision with y (y kept verbatim).
    std::map<std::string, std::string> left_names;
};

/// Wedge sum: disjoint union of the layer lists. The underlying chain is
/// the direct sum of the two underlying chains.
inline WedgeResult wedge(const CwaPresentation& x, const CwaPresentation& y) {
    require_valid(x, "wedge");
    require_valid(y, "wedge");
    if (!(x.core == y.core)) throw Error("wedge: presentations have different cores");
    WedgeResult out;
    std::set<std::string> used;
    for (const auto* e : y.all_cells()) used.insert(e->id);
    for (const auto* e : x.all_cells()) {
        std::string nid = detail::unique_id(e->id, used);
        used.insert(nid);
        out.left_names[e->id] = nid;
    }
    PresentationBuilder b(x.core);
    for (const auto* e : y.all_cells()) {
        if (e->a_dim == 0)
            b.wedge_cell(e->layer, e->id);
        else
            b.cell(e->layer, e->id, e->a_dim, detail::attach_entries(y, *e));
    }
    UnderlyingChain ux = underlying_chain(x);
    for (const auto* e : x.all_cells()) {
        auto entries = detail::attach_entries(x, *e);
        for (auto& en : entries) {
            auto [cell, core_cell] = ux.origin.at(en.target_chain_cell);
            en.target_chain_cell = chain_cell_id(out.left_names.at(cell), core_cell);
        }
        if (e->a_dim == 0)
            b.wedge_cell(e->layer, out.left_names.at(e->id));
        else
            b.cell(e->layer, out.left_names.at(e->id), e->a_dim, std::move(entries));
    }
    out.presentation = b.build();
    return out;
}

struct PasteResult {
    CwaPresentation presentation;
    // Renaming applied to the kept x-cells (y's cells appear verbatim).
    std::map<std::string, std::string> x_names;
};

/// Pushout of x <- b -> y along a cellular map: y's cells are kept
/// verbatim, the x-cells outside b keep their attach maps with the b-rows
/// pushed through f. f must be a chain map from the underlying chain of
/// the sub-presentation on b to the underlying chain of y, and must be
/// layer-respecting: chain cells of a layer-j b-cell may only hit chain
/// cells of y-cells in layers <= j.
inline PasteResult paste(const CwaPresentation& x, const std::set<std::string>& b_cells,
                         const ChainMap& f, const CwaPresentation& y) {
    require_valid(x, "paste");
    require_valid(y, "paste");
    if (!(x.core == y.core)) throw Error("paste: presentations have different cores");
    CwaPresentation b_sub = restrict_presentation(x, b_cells);  // checks face closure
    UnderlyingChain b_chain = underlying_chain(b_sub);
    UnderlyingChain y_chain = underlying_chain(y);
    if (!(f.source == b_chain.complex))
        throw Error("paste: map source is not the chain complex of the selected subcomplex");
    if (!(f.target == y_chain.complex))
        throw Error("paste: map target is not the underlying chain of y");
    if (auto v = validate_map(f)) throw Error("paste: invalid map: " + v->message);

    std::map<std::string, int> y_cell_layer;
    for (const auto* e : y.all_cells()) y_cell_layer[e->id] = e->layer;
    for (int d = 0; d <= f.source.max_degree(); ++d) {
        const Matrix& m = f.maps[static_cast<std::size_t>(d)];
        const auto& src = f.source.cells[static_cast<std::size_t>(d)];
        const auto& dst = f.target.cells[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < m.cols(); ++j) {
            int src_layer = x.find_cell(b_chain.origin.at(src[j]).first)->layer;
            for (std::size_t i = 0; i < m.rows(); ++i)
                if (m.at(i, j) != 0 &&
                    y_cell_layer.at(y_chain.origin.at(dst[i]).first) > src_layer)
                    throw Error("paste: map is not layer-respecting at chain cell '" + src[j] +
                                "'");
        }
    }

    PasteResult out;
    std::set<std::string> used;
    for (const auto* e : y.all_cells()) used.insert(e->id);
    for (const auto* e : x.all_cells()) {
        if (b_cells.count(e->id)) continue;
        std::string nid = detail::unique_id(e->id, used);
        used.insert(nid);
        out.x_names[e->id] = nid;
    }

    // Column lookup: chain cell of a b-cell -> its image chain under f.
    std::map<std::string, std::size_t> b_col;
    for (int d = 0; d <= f.source.max_degree(); ++d) {
        const auto& src = f.source.cells[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < src.size(); ++j) b_col[src[j]] = j;
    }

    PresentationBuilder bld(x.core);
    for (const auto* e : y.all_cells()) {
        if (e->a_dim == 0)
            bld.wedge_cell(e->layer, e->id);
        else
            bld.cell(e->layer, e->id, e->a_dim, detail::attach_entries(y, *e));
    }
    UnderlyingChain x_chain = underlying_chain(x);
    std::map<std::string, int> x_chain_deg;
    for (int d = 0; d <= x_chain.complex.max_degree(); ++d)
        for (const auto& id : x_chain.complex.cells[static_cast<std::size_t>(d)])
            x_chain_deg[id] = d;
    for (const auto* e : x.all_cells()) {
        if (b_cells.count(e->id)) continue;
        std::vector<PresentationBuilder::Entry> entries;
        for (const auto& en : detail::attach_entries(x, *e)) {
            auto [cell, core_cell] = x_chain.origin.at(en.target_chain_cell);
            if (b_cells.count(cell)) {
                int d = x_chain_deg.at(en.target_chain_cell);
                std::size_t j = b_col.at(en.target_chain_cell);
                const Matrix& m = f.maps[static_cast<std::size_t>(d)];
                const auto& dst = f.target.cells[static_cast<std::size_t>(d)];
                for (std::size_t i = 0; i < m.rows(); ++i)
                    if (m.at(i, j) != 0)
                        entries.push_back({dst[i], en.core_cell, en.coeff * m.at(i, j)});
            } else {
                entries.push_back({chain_cell_id(out.x_names.at(cell), core_cell), en.core_cell,
                                   en.coeff});
            }
        }
        if (e->a_dim == 0)
            bld.wedge_cell(e->layer, out.x_names.at(e->id));
        else
            bld.cell(e->layer, out.x_names.at(e->id), e->a_dim, std::move(entries));
    }
    out.presentation = bld.build();
    out.presentation.trim_layers();
    return out;
}

/// quotient(x, b) = paste along the collapse to the point: b's cells are
/// deleted and the surviving attach rows into b are zeroed.
inline PasteResult quotient(const CwaPresentation& x, const std::set<std::string>& b_cells) {
    CwaPresentation point = empty_presentation(x.core);
    CwaPresentation b_sub = restrict_presentation(x, b_cells);
    ChainMap collapse = zero_chain_map(underlying_chain(b_sub).complex,
                                       underlying_chain(point).complex);
    return paste(x, b_cells, collapse, point);
}

struct ConeResult {
    CwaPresentation presentation;
    // x-cell id -> id of the cone cell erected over it.
    std::map<std::string, std::string> cone_names;
};

/// Reduced cone of a proper presentation. Layer n holds the original
/// n-cells plus one n-cell for every original (n-1)-cell; x is a
/// subcomplex, the cell count doubles, and the result is acyclic.
///
/// The attach map of the cone cell over e hits e's own chain cells and the
/// cone cells over e's attaching image. The per-degree signs below are the
/// unique choice that commutes with the boundaries under the carried-over
/// suspension matrices and the cone convention of underlying_chain.
inline ConeResult cone(const CwaPresentation& x) {
    require_valid(x, "cone");
    if (!x.proper()) throw Error("cone: presentation is not proper");
    ConeResult out;
    std::set<std::string> used;
    for (const auto* e : x.all_cells()) used.insert(e->id);
    for (const auto* e : x.all_cells()) {
        std::string nid = detail::unique_id("c." + e->id, used);
        used.insert(nid);
        out.cone_names[e->id] = nid;
    }
    std::map<std::string, int> a_dim_of;
    for (const auto* e : x.all_cells()) a_dim_of[e->id] = e->a_dim;
    std::map<std::string, int> core_deg;
    for (int d = 0; d <= x.core.chain.max_degree(); ++d)
        for (const auto& a : x.core.chain.cells[static_cast<std::size_t>(d)]) core_deg[a] = d;

    PresentationBuilder b(x.core);
    for (const auto* e : x.all_cells()) {
        if (e->a_dim == 0)
            b.wedge_cell(e->layer, e->id);
        else
            b.cell(e->layer, e->id, e->a_dim, detail::attach_entries(x, *e));
    }
    UnderlyingChain x_chain = underlying_chain(x);
    for (const auto* e : x.all_cells()) {
        std::vector<PresentationBuilder::Entry> entries;
        for (int t = 0; t <= x.core.chain.max_degree(); ++t)
            for (const auto& a : x.core.chain.cells[static_cast<std::size_t>(t)]) {
                if (e->a_dim == 0) {
                    entries.push_back({chain_cell_id(e->id, a), a, 1});
                } else {
                    Int sign = t % 2 == 0 ? 1 : -1;
                    entries.push_back({chain_cell_id(e->id, a), a, sign});
                }
            }
        if (e->a_dim > 0)
            for (const auto& en : detail::attach_entries(x, *e)) {
                auto [cell, core_cell] = x_chain.origin.at(en.target_chain_cell);
                Int sign_u = core_deg.at(en.core_cell) % 2 == 0 ? 1 : -1;
                Int sign_j = 1;
                if (a_dim_of.at(cell) > 0 && core_deg.at(core_cell) % 2 == 1) sign_j = -1;
                entries.push_back({chain_cell_id(out.cone_names.at(cell), core_cell),
                                   en.core_cell, -sign_u * sign_j * en.coeff});
            }
        b.cell(e->layer + 1, out.cone_names.at(e->id), e->a_dim + 1, std::move(entries));
    }
    out.presentation = b.build();
    return out;
}

/// Reduced suspension: same layer combinatorics shifted up by one, every
/// a_dim raised by one, attach matrices carried over. Homology shifts by
/// one degree. The result does not contain x as a subcomplex; the
/// cone-based alternative quotient(cone(x), x) has the same homology.
///
/// Wedge summands turn into 1-cells, which flips the sign convention of
/// their own chain block; entries aimed at those blocks pick up a
/// compensating per-degree sign so every attach still commutes.
inline CwaPresentation suspend(const CwaPresentation& x) {
    require_valid(x, "suspend");
    if (!x.proper()) throw Error("suspend: presentation is not proper");
    std::map<std::string, int> a_dim_of;
    for (const auto* e : x.all_cells()) a_dim_of[e->id] = e->a_dim;
    std::map<std::string, int> core_deg;
    for (int d = 0; d <= x.core.chain.max_degree(); ++d)
        for (const auto& a : x.core.chain.cells[static_cast<std::size_t>(d)]) core_deg[a] = d;
    UnderlyingChain ux = underlying_chain(x);
    PresentationBuilder b(x.core);
    for (const auto* e : x.all_cells()) {
        auto entries = detail::attach_entries(x, *e);
        for (auto& en : entries) {
            auto [cell, core_cell] = ux.origin.at(en.target_chain_cell);
            if (a_dim_of.at(cell) == 0 && core_deg.at(core_cell) % 2 == 1) en.coeff = -en.coeff;
        }
        b.cell(e->layer + 1, e->id, e->a_dim + 1, std::move(entries));
    }
    return b.build();
}

}  // namespace cwa
