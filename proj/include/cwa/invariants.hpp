#pragma once

#include "cwa/rewriting.hpp"

#include <optional>
#include <string>

namespace cwa {

struct Verdict {
    bool pass = false;
    std::string detail;
    std::optional<int> degree;
};

inline Verdict pass_verdict() { return {true, "ok", std::nullopt}; }

/// Reduced Euler characteristic of a chain complex: alternating cell count.
inline long long chain_euler_characteristic(const ChainComplex& c) {
    long long chi = 0;
    for (int d = 0; d <= c.max_degree(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(c.count(d));
    return chi;
}

/// Closed formula: chi(A) times the signed count of A-cells. Each A-n-cell
/// contributes one chain cell of degree d+n per degree-d core cell, which
/// is where the product comes from.
inline long long euler_characteristic(const CwaPresentation& x) {
    require_valid(x, "euler_characteristic");
    long long chi_core = chain_euler_characteristic(x.core.chain);
    long long signed_cells = 0;
    for (const auto* e : x.all_cells()) signed_cells += e->a_dim % 2 == 0 ? 1 : -1;
    return chi_core * signed_cells;
}

/// The two Euler routes must agree; checked from scratch on every call.
inline Verdict check_euler(const CwaPresentation& x) {
    long long closed = euler_characteristic(x);
    long long counted = chain_euler_characteristic(underlying_chain(x).complex);
    if (closed != counted)
        return {false,
                "closed formula " + std::to_string(closed) + " != chain count " +
                    std::to_string(counted),
                std::nullopt};
    return pass_verdict();
}

inline Verdict check_cone_acyclic(const CwaPresentation& x) {
    if (!x.proper()) return {false, "presentation is not proper", std::nullopt};
    HomologySummary h = homology(underlying_chain(cone(x).presentation).complex);
    if (!h.trivial()) {
        int d = h.by_degree.begin()->first;
        return {false, "cone has nontrivial homology in degree " + std::to_string(d), d};
    }
    return pass_verdict();
}

inline Verdict check_suspension_shift(const CwaPresentation& x) {
    if (!x.proper()) return {false, "presentation is not proper", std::nullopt};
    HomologySummary base = homology(underlying_chain(x).complex);
    CwaPresentation s = suspend(x);
    HomologySummary shifted = homology(underlying_chain(s).complex);
    if (!(shifted == base.shifted(1))) {
        for (const auto& [d, g] : shifted.by_degree)
            if (!(base.shifted(1).at(d) == g))
                return {false, "suspension homology differs in degree " + std::to_string(d), d};
        return {false, "suspension homology differs", std::nullopt};
    }
    ConeResult c = cone(x);
    std::set<std::string> orig;
    for (const auto* e : x.all_cells()) orig.insert(e->id);
    HomologySummary quo = homology(underlying_chain(quotient(c.presentation, orig).presentation).complex);
    if (!(quo == shifted))
        return {false, "quotient of the cone by x does not match the suspension", std::nullopt};
    return pass_verdict();
}

/// psi phi must be the identity matrix family, and every Betti number of y
/// must dominate the corresponding Betti number of x.
inline Verdict check_retract_summand(const CwaPresentation& x, const CwaPresentation& y,
                                     const ChainMap& phi, const ChainMap& psi) {
    ChainComplex cx = underlying_chain(x).complex;
    ChainComplex cy = underlying_chain(y).complex;
    if (!(phi.source == cx) || !(phi.target == cy) || !(psi.source == cy) || !(psi.target == cx))
        return {false, "maps do not connect the underlying chains of x and y", std::nullopt};
    if (auto v = validate_map(phi)) return {false, "phi: " + v->message, v->degree};
    if (auto v = validate_map(psi)) return {false, "psi: " + v->message, v->degree};
    ChainMap round = compose(psi, phi);
    ChainMap id = identity_chain_map(cx);
    for (int d = 0; d <= cx.max_degree(); ++d)
        if (!(round.maps[static_cast<std::size_t>(d)] == id.maps[static_cast<std::size_t>(d)]))
            return {false, "psi phi is not the identity in degree " + std::to_string(d), d};
    HomologySummary hx = homology(cx);
    HomologySummary hy = homology(cy);
    for (const auto& [d, g] : hx.by_degree)
        if (hy.at(d).betti < g.betti)
            return {false, "betti of y drops below betti of x in degree " + std::to_string(d), d};
    return pass_verdict();
}

/// Chain-level shadow of dimension invariance: the rewritten presentation
/// tops out exactly at dimension(x) + dimension(a_as).
inline Verdict check_dimension_additivity(const CwaPresentation& x, const CwaPresentation& a_as) {
    if (!x.proper()) return {false, "x is not proper", std::nullopt};
    if (!a_as.proper()) return {false, "core realization is not proper", std::nullopt};
    if (x.empty() || a_as.empty()) return pass_verdict();  // vacuous
    Flattened f = flatten(x, a_as);
    int top = -1;
    for (const auto* e : f.presentation.all_cells()) top = std::max(top, e->a_dim);
    int want = dimension(x) + dimension(a_as);
    if (top != want)
        return {false,
                "flattened top dimension " + std::to_string(top) + " != " + std::to_string(want),
                top};
    return pass_verdict();
}

/// Whether some top-dimensional cell's attach map actually uses a
/// top-degree core cell of the suspended source.
inline bool top_touches_top(const CwaPresentation& x) {
    require_valid(x, "top_touches_top");
    if (x.empty() || x.core.empty()) return false;
    int dim = -1;
    for (const auto* e : x.all_cells()) dim = std::max(dim, e->a_dim);
    for (const auto* e : x.all_cells()) {
        if (e->a_dim != dim) continue;
        if (dim == 0) return true;  // wedge summands carry the whole core
        for (const auto& en : detail::attach_entries(x, *e)) {
            int d = 0;
            for (int t = 0; t <= x.core.chain.max_degree(); ++t)
                for (const auto& a : x.core.chain.cells[static_cast<std::size_t>(t)])
                    if (a == en.core_cell) d = t;
            if (d == x.core.dim) return true;
        }
    }
    return false;
}

/// Contractible-core consequence: an acyclic core forces an acyclic
/// complex. Passes vacuously when the core has homology.
inline Verdict check_contractible_core(const CwaPresentation& x) {
    require_valid(x, "check_contractible_core");
    if (!homology(x.core.chain).trivial()) return pass_verdict();
    HomologySummary h = homology(underlying_chain(x).complex);
    if (!h.trivial()) {
        int d = h.by_degree.begin()->first;
        return {false, "acyclic core but homology in degree " + std::to_string(d), d};
    }
    return pass_verdict();
}

}  // namespace cwa
