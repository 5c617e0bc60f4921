#pragma once

// Seeded random corpus: cores with valid boundaries, presentations with
// commuting attach maps, retract and chain-homotopy-equivalence data.
// Everything is generated constructively (kernel sampling), so no output
// needs post-hoc repair. Deterministic for a fixed seed.

#include "cwa/presentation.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace cwa {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Values derived from raw engine words keep results identical across
    // standard libraries (distributions are not portable).
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    std::uint64_t word() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

namespace gen {

// Random integer combination of lattice basis vectors with all entries
// within |bound|; falls back to zero after a few tries.
inline std::vector<Int> bounded_combination(Rng& rng, const std::vector<std::vector<Int>>& basis,
                                            std::size_t len, long long bound, int tries = 8) {
    std::vector<Int> zero(len, Int(0));
    if (basis.empty()) return zero;
    for (int t = 0; t < tries; ++t) {
        std::vector<Int> v(len, Int(0));
        for (const auto& b : basis) {
            long long c = rng.range(-2, 2);
            if (c == 0) continue;
            for (std::size_t i = 0; i < len; ++i) v[i] += c * b[i];
        }
        bool ok = false, within = true;
        for (const Int& x : v) {
            if (x != 0) ok = true;
            if (x > bound || x < -bound) within = false;
        }
        if (within && ok) return v;
    }
    return zero;
}

}  // namespace gen

/// Samples random chain maps S -> T: the commutation equations are solved
/// once (integer kernel of the constraint system), then each sample is a
/// small random combination of the solution basis. Building the sampler is
/// the expensive part; sampling is cheap.
class ChainMapSampler {
public:
    ChainMapSampler(ChainComplex s, ChainComplex t) : s_(std::move(s)), t_(std::move(t)) {
        offset_.assign(static_cast<std::size_t>(s_.max_degree()) + 2, 0);
        for (int d = 0; d <= s_.max_degree(); ++d)
            offset_[static_cast<std::size_t>(d) + 1] =
                offset_[static_cast<std::size_t>(d)] + t_.count(d) * s_.count(d);
        std::size_t unknowns = offset_.back();
        if (unknowns == 0) return;
        std::size_t rows = 0;
        for (int d = 1; d <= s_.max_degree(); ++d) rows += t_.count(d - 1) * s_.count(d);
        Matrix sys(rows, unknowns);
        std::size_t r = 0;
        for (int d = 1; d <= s_.max_degree(); ++d) {
            const Matrix* bt = t_.boundary_at(d);  // absent when the target stops below d
            const Matrix& bs = *s_.boundary_at(d);
            for (std::size_t i = 0; i < t_.count(d - 1); ++i)
                for (std::size_t j = 0; j < s_.count(d); ++j) {
                    if (bt)
                        for (std::size_t k = 0; k < t_.count(d); ++k)
                            if (bt->at(i, k) != 0)
                                sys.at(r, offset_[static_cast<std::size_t>(d)] + k * s_.count(d) +
                                              j) += bt->at(i, k);
                    for (std::size_t l = 0; l < s_.count(d - 1); ++l)
                        if (bs.at(l, j) != 0)
                            sys.at(r, offset_[static_cast<std::size_t>(d) - 1] + i * s_.count(d - 1) +
                                          l) -= bs.at(l, j);
                    ++r;
                }
        }
        basis_ = kernel_basis(sys);
    }

    ChainMap sample(Rng& rng, long long bound = 3) const {
        ChainMap f = zero_chain_map(s_, t_);
        std::size_t unknowns = offset_.back();
        if (unknowns == 0) return f;
        auto sol = gen::bounded_combination(rng, basis_, unknowns, bound);
        for (std::size_t d = 0; d < f.maps.size(); ++d) {
            Matrix& m = f.maps[d];
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    m.at(i, j) = sol[offset_[d] + i * m.cols() + j];
        }
        return f;
    }

private:
    ChainComplex s_, t_;
    std::vector<std::size_t> offset_;
    std::vector<std::vector<Int>> basis_;
};

inline ChainMap random_chain_map(Rng& rng, const ChainComplex& s, const ChainComplex& t,
                                 long long bound = 3) {
    return ChainMapSampler(s, t).sample(rng, bound);
}

/// Random core with at most max_cells cells in degrees 0..2 and boundary
/// entries within |bound|. Boundaries are built degree by degree, each new
/// column sampled from the kernel of the previous boundary.
inline CorePresentation random_core(Rng& rng, int max_cells = 4, long long bound = 3) {
    int n = static_cast<int>(rng.range(0, max_cells));
    std::vector<int> degs(static_cast<std::size_t>(n));
    for (auto& d : degs) d = static_cast<int>(rng.range(0, 2));
    ChainComplex c;
    c.cells.resize(3);
    for (int i = 0; i < n; ++i)
        c.cells[static_cast<std::size_t>(degs[static_cast<std::size_t>(i)])].push_back(
            "a" + std::to_string(i));
    c.boundary.emplace_back(0, c.cells[0].size());
    Matrix b1(c.cells[0].size(), c.cells[1].size());
    for (std::size_t i = 0; i < b1.rows(); ++i)
        for (std::size_t j = 0; j < b1.cols(); ++j) b1.at(i, j) = rng.range(-bound, bound);
    c.boundary.push_back(b1);
    Matrix b2(c.cells[1].size(), c.cells[2].size());
    auto basis = kernel_basis(b1);
    for (std::size_t j = 0; j < b2.cols(); ++j) {
        auto col = gen::bounded_combination(rng, basis, b1.cols(), bound);
        for (std::size_t i = 0; i < b2.rows(); ++i) b2.at(i, j) = col[i];
    }
    c.boundary.push_back(b2);
    c.normalize();
    return make_core("rnd", c);
}

namespace gen {

inline std::vector<PresentationBuilder::Entry> to_entries(const CorePresentation& core, int a_dim,
                                                          const ChainMap& f) {
    std::vector<PresentationBuilder::Entry> out;
    for (int d = 0; d <= core.chain.max_degree(); ++d) {
        int sd = d + a_dim - 1;
        const Matrix* m = f.map_at(sd);
        if (!m) continue;
        const auto& cols = core.chain.cells[static_cast<std::size_t>(d)];
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < m->rows(); ++i)
                if (m->at(i, j) != 0)
                    out.push_back({f.target.cells[static_cast<std::size_t>(sd)][i], cols[j],
                                   m->at(i, j)});
    }
    return out;
}

}  // namespace gen

/// Random proper presentation: layer k attaches only k-cells.
inline CwaPresentation random_proper_presentation(Rng& rng, const CorePresentation& core,
                                                  int max_cells = 12, long long bound = 3) {
    int budget = static_cast<int>(rng.range(0, max_cells));
    int layers = static_cast<int>(rng.range(1, 4));
    PresentationBuilder b(core);
    CwaPresentation sofar = b.build();
    int id = 0;
    for (int k = 0; k < layers && budget > 0; ++k) {
        int here = static_cast<int>(rng.range(0, std::min<long long>(budget, 4)));
        if (here == 0) continue;
        ChainComplex prefix = underlying_chain(sofar).complex;
        std::optional<ChainMapSampler> sampler;
        if (k > 0) sampler.emplace(suspend_core(core, k - 1).chain, prefix);
        for (int i = 0; i < here; ++i, --budget) {
            std::string name = "e" + std::to_string(id++);
            if (k == 0)
                b.wedge_cell(0, name);
            else
                b.cell(k, name, k, gen::to_entries(core, k, sampler->sample(rng, bound)));
        }
        sofar = b.build();
    }
    return b.build();
}

/// Random generalized presentation: any dimensions at any layer.
inline CwaPresentation random_generalized_presentation(Rng& rng, const CorePresentation& core,
                                                       int max_cells = 12, long long bound = 3) {
    int budget = static_cast<int>(rng.range(0, max_cells));
    int layers = static_cast<int>(rng.range(1, 3));
    PresentationBuilder b(core);
    CwaPresentation sofar = b.build();
    int id = 0;
    for (int k = 0; k < layers && budget > 0; ++k) {
        int here = static_cast<int>(rng.range(k == 0 ? 1 : 0, std::min<long long>(budget, 4)));
        if (here == 0) continue;
        ChainComplex prefix = underlying_chain(sofar).complex;
        std::map<int, ChainMapSampler> samplers;
        for (int i = 0; i < here; ++i, --budget) {
            std::string name = "e" + std::to_string(id++);
            int dim = static_cast<int>(rng.range(0, 3));
            if (dim == 0) {
                b.wedge_cell(k, name);
            } else {
                auto it = samplers.find(dim);
                if (it == samplers.end())
                    it = samplers.emplace(dim, ChainMapSampler(suspend_core(core, dim - 1).chain,
                                                               prefix)).first;
                b.cell(k, name, dim, gen::to_entries(core, dim, it->second.sample(rng, bound)));
            }
        }
        sofar = b.build();
    }
    return b.build();
}

/// Retract data: B = A (+) C with alpha the inclusion and beta the
/// projection extended by a random chain map C -> A, so beta alpha = id.
struct RetractTriple {
    CorePresentation a;
    CorePresentation b;
    ChainMap alpha;
    ChainMap beta;
};

inline RetractTriple random_retract_triple(Rng& rng, long long bound = 3) {
    RetractTriple out;
    out.a = random_core(rng);
    CorePresentation extra = random_core(rng, 3, bound);
    DirectSum ds = direct_sum(out.a.chain, extra.chain);
    out.b = make_core("ret", ds.sum);
    out.alpha = ds.inj_left;
    ChainMap theta = random_chain_map(rng, extra.chain, out.a.chain, bound);
    out.beta = zero_chain_map(out.b.chain, out.a.chain);
    for (int d = 0; d <= out.b.chain.max_degree(); ++d) {
        std::size_t na = out.a.chain.count(d);
        for (std::size_t i = 0; i < na; ++i) out.beta.maps[static_cast<std::size_t>(d)].at(i, i) = 1;
        if (const Matrix* tm = theta.map_at(d))
            for (std::size_t i = 0; i < tm->rows(); ++i)
                for (std::size_t j = 0; j < tm->cols(); ++j)
                    out.beta.maps[static_cast<std::size_t>(d)].at(i, na + j) = tm->at(i, j);
    }
    return out;
}

/// Chain-homotopy-equivalence data built by an elementary expansion:
/// B = A plus a pair p (a cycle) and q with boundary(q) = p. alpha is the
/// inclusion, beta kills the pair, h_b contracts it; beta alpha = id so
/// h_a is zero.
struct EquivalenceQuadruple {
    CorePresentation a;
    CorePresentation b;
    ChainMap alpha;
    ChainMap beta;
    ChainHomotopy h_a;
    ChainHomotopy h_b;
};

inline EquivalenceQuadruple random_expansion_quadruple(Rng& rng) {
    EquivalenceQuadruple out;
    out.a = random_core(rng);
    int d = static_cast<int>(rng.range(0, 2));
    ChainComplexBuilder cb;
    for (int t = 0; t <= out.a.chain.max_degree(); ++t)
        for (const auto& id : out.a.chain.cells[static_cast<std::size_t>(t)]) cb.add_cell(t, id);
    cb.add_cell(d, "xp");
    cb.add_cell(d + 1, "xq");
    for (int t = 1; t <= out.a.chain.max_degree(); ++t) {
        const Matrix& bd = *out.a.chain.boundary_at(t);
        const auto& rows = out.a.chain.cells[static_cast<std::size_t>(t - 1)];
        const auto& cols = out.a.chain.cells[static_cast<std::size_t>(t)];
        for (std::size_t i = 0; i < bd.rows(); ++i)
            for (std::size_t j = 0; j < bd.cols(); ++j)
                if (bd.at(i, j) != 0) cb.add_entry(rows[i], cols[j], bd.at(i, j));
    }
    cb.add_entry("xp", "xq", 1);
    out.b = make_core("exp", cb.build());

    out.alpha = zero_chain_map(out.a.chain, out.b.chain);
    out.beta = zero_chain_map(out.b.chain, out.a.chain);
    for (int t = 0; t <= out.a.chain.max_degree(); ++t) {
        const auto& ac = out.a.chain.cells[static_cast<std::size_t>(t)];
        const auto& bc = out.b.chain.cells[static_cast<std::size_t>(t)];
        for (std::size_t j = 0; j < ac.size(); ++j)
            for (std::size_t i = 0; i < bc.size(); ++i)
                if (bc[i] == ac[j]) {
                    out.alpha.maps[static_cast<std::size_t>(t)].at(i, j) = 1;
                    out.beta.maps[static_cast<std::size_t>(t)].at(j, i) = 1;
                }
    }
    out.h_a = zero_homotopy(out.a.chain);
    out.h_b = zero_homotopy(out.b.chain);
    // h_b sends p to q; everything else to zero.
    {
        const auto& cd = out.b.chain.cells[static_cast<std::size_t>(d)];
        const auto& cd1 = out.b.chain.cells[static_cast<std::size_t>(d + 1)];
        std::size_t pi = 0, qi = 0;
        for (std::size_t i = 0; i < cd.size(); ++i)
            if (cd[i] == "xp") pi = i;
        for (std::size_t i = 0; i < cd1.size(); ++i)
            if (cd1[i] == "xq") qi = i;
        out.h_b.h[static_cast<std::size_t>(d)].at(qi, pi) = 1;
    }
    return out;
}

}  // namespace cwa
