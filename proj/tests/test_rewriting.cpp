#include "cwa/rewriting.hpp"

#include "cwa/generator.hpp"
#include "cwa/invariants.hpp"
#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using cwa::ChainMap;
using cwa::CorePresentation;
using cwa::CwaPresentation;
using cwa::Flattened;
using cwa::HomologyGroup;
using cwa::Int;
using cwa::PresentationBuilder;

namespace {

CorePresentation circle_core() {
    cwa::ChainComplexBuilder b;
    b.add_cell(1, "z");
    return cwa::make_core("S1", b.build());
}

// S0 realized over S0: a single wedge summand.
CwaPresentation s0_as_cw_s0() {
    PresentationBuilder b(cwa::s0_core());
    b.wedge_cell(0, "w");
    return b.build();
}

// The circle realized over S0: one A-1-cell on the base point.
CwaPresentation circle_as_cw_s0() {
    PresentationBuilder b(cwa::s0_core());
    b.cell(1, "e", 1, {});
    return b.build();
}

CwaPresentation circle_over(const CorePresentation& core) {
    PresentationBuilder b(core);
    b.cell(1, "f", 1, {});
    return b.build();
}

// Checks that the recorded chain bijection is a signed isomorphism of
// chain complexes: for all cells u, v, sign(u) sign(v) d_x[v,u] equals
// d_out[image v, image u].
void check_signed_iso(const CwaPresentation& x, const Flattened& f) {
    cwa::ChainComplex cx = cwa::underlying_chain(x).complex;
    cwa::ChainComplex co = cwa::underlying_chain(f.presentation).complex;
    REQUIRE(f.chain_cells.size() == cx.total_cells());
    REQUIRE(co.total_cells() == cx.total_cells());
    std::map<std::string, std::pair<int, std::size_t>> opos;
    for (int d = 0; d <= co.max_degree(); ++d)
        for (std::size_t i = 0; i < co.count(d); ++i)
            opos[co.cells[static_cast<std::size_t>(d)][i]] = {d, i};
    for (int d = 0; d <= cx.max_degree(); ++d) {
        for (std::size_t j = 0; j < cx.count(d); ++j) {
            const std::string& u = cx.cells[static_cast<std::size_t>(d)][j];
            auto [du, iu] = opos.at(f.chain_cells.at(u));
            REQUIRE(du == d);
            if (d == 0) continue;
            for (std::size_t i = 0; i < cx.count(d - 1); ++i) {
                const std::string& v = cx.cells[static_cast<std::size_t>(d - 1)][i];
                auto [dv, iv] = opos.at(f.chain_cells.at(v));
                Int lhs = f.chain_signs.at(u) * f.chain_signs.at(v) *
                          cx.boundary_at(d)->at(i, j);
                Int rhs = co.boundary_at(d)->at(iv, iu);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

}  // namespace

TEST_CASE("flatten") {
    SECTION("identity rewrite over S0") {
        cwa::Rng rng(3);
        CwaPresentation x = cwa::random_proper_presentation(rng, cwa::s0_core());
        Flattened f = cwa::flatten(x, s0_as_cw_s0());
        CHECK_FALSE(cwa::validate(f.presentation).has_value());
        CHECK(f.presentation.cell_count() == x.cell_count());
        CHECK(cwa::homology(cwa::underlying_chain(f.presentation).complex) ==
              cwa::homology(cwa::underlying_chain(x).complex));
        check_signed_iso(x, f);
    }
    SECTION("one A-1-cell over the circle becomes a classical 2-cell model") {
        CwaPresentation x = circle_over(circle_core());
        // Oracle: the underlying chain of x is a single degree-2 cell.
        auto hx = cwa::homology(cwa::underlying_chain(x).complex);
        CHECK(hx.at(2) == HomologyGroup{1, {}});
        Flattened f = cwa::flatten(x, circle_as_cw_s0());
        CHECK_FALSE(cwa::validate(f.presentation).has_value());
        CHECK(cwa::homology(cwa::underlying_chain(f.presentation).complex) == hx);
        // Relative cells of C(S1): one 1-cell and one 2-cell over S0.
        CHECK(f.presentation.cell_count() == 1);
        CHECK(f.presentation.all_cells()[0]->a_dim == 2);
        check_signed_iso(x, f);
    }
    SECTION("one A-n-cell over core S^m flattens to a single (m+n)-cell") {
        CorePresentation s2 = cwa::sphere_core(2);
        PresentationBuilder xb(s2);
        xb.cell(3, "f", 3, {});
        CwaPresentation x = xb.build();
        CwaPresentation s2_real = cwa::suspend(circle_as_cw_s0());
        Flattened f = cwa::flatten(x, s2_real);
        REQUIRE(f.presentation.cell_count() == 1);
        CHECK(f.presentation.all_cells()[0]->a_dim == 5);
        CHECK(cwa::homology(cwa::underlying_chain(f.presentation).complex).at(5) ==
              HomologyGroup{1, {}});
        check_signed_iso(x, f);
    }
    SECTION("flatten preserves homology on a generated corpus") {
        cwa::Rng rng(101);
        for (int t = 0; t < 12; ++t) {
            CwaPresentation a_as = cwa::random_proper_presentation(rng, cwa::s0_core(), 5);
            CorePresentation a = cwa::make_core("A", cwa::underlying_chain(a_as).complex);
            CwaPresentation x = t % 2 == 0 ? cwa::random_proper_presentation(rng, a, 7)
                                           : cwa::random_generalized_presentation(rng, a, 7);
            Flattened f = cwa::flatten(x, a_as);
            CHECK_FALSE(cwa::validate(f.presentation).has_value());
            CHECK(cwa::homology(cwa::underlying_chain(f.presentation).complex) ==
                  cwa::homology(cwa::underlying_chain(x).complex));
            check_signed_iso(x, f);
        }
    }
    SECTION("mismatched realization is rejected") {
        CwaPresentation x = circle_over(circle_core());
        CHECK_THROWS_AS(cwa::flatten(x, s0_as_cw_s0()), cwa::Error);
    }
    SECTION("improper realization is rejected") {
        PresentationBuilder b(cwa::s0_core());
        b.cell(0, "g", 1, {});  // 1-cell in layer 0
        CwaPresentation bad = b.build();
        CHECK_FALSE(bad.proper());
        CHECK_THROWS_AS(cwa::flatten(circle_over(circle_core()), bad), cwa::Error);
    }
}

TEST_CASE("layer_order") {
    SECTION("all-zero attach maps give a single stage") {
        std::vector<cwa::LayeredCell> cells = {
            {"a", {}, {0, 0}}, {"b", {}, {0, 1}}, {"c", {}, {1, 0}}};
        auto r = cwa::layer_order(cells);
        CHECK(r.complete);
        REQUIRE(r.layering.size() == 1);
        CHECK(r.layering[0].size() == 3);
        CHECK(r.lex_ok);
    }
    SECTION("a linear dependency chain gives three stages") {
        std::vector<cwa::LayeredCell> cells = {
            {"c1", {}, {0, 0}}, {"c2", {"c1"}, {0, 1}}, {"c3", {"c2"}, {0, 2}}};
        auto r = cwa::layer_order(cells);
        CHECK(r.complete);
        REQUIRE(r.layering.size() == 3);
        CHECK(r.layering[0] == std::vector<std::string>{"c1"});
        CHECK(r.layering[2] == std::vector<std::string>{"c3"});
        CHECK(r.lex_ok);
    }
    SECTION("cyclic support is rejected with the cycle reported") {
        std::vector<cwa::LayeredCell> cells = {
            {"c1", {"c2"}, {0, 0}}, {"c2", {"c1"}, {0, 1}}, {"c3", {}, {1, 0}}};
        auto r = cwa::layer_order(cells);
        CHECK_FALSE(r.complete);
        REQUIRE(r.cycle.size() == 2);
        std::set<std::string> cyc(r.cycle.begin(), r.cycle.end());
        CHECK(cyc == std::set<std::string>{"c1", "c2"});
    }
    SECTION("flatten outputs order completely with decreasing pairs") {
        cwa::Rng rng(55);
        for (int t = 0; t < 8; ++t) {
            CwaPresentation a_as = cwa::random_proper_presentation(rng, cwa::s0_core(), 5);
            CorePresentation a = cwa::make_core("A", cwa::underlying_chain(a_as).complex);
            CwaPresentation x = cwa::random_proper_presentation(rng, a, 6);
            Flattened f = cwa::flatten(x, a_as);
            auto r = cwa::layer_order(cwa::layered_cells(f));
            CHECK(r.complete);
            CHECK(r.lex_ok);
            std::size_t total = 0;
            for (const auto& st : r.layering) total += st.size();
            CHECK(total == f.presentation.cell_count());
        }
    }
}

TEST_CASE("change_core_retract") {
    SECTION("identity retraction is the identity") {
        CwaPresentation x = circle_as_cw_s0();
        ChainMap id = cwa::identity_chain_map(cwa::s0_core().chain);
        auto r = cwa::change_core_retract(x, cwa::s0_core(), id, id);
        CHECK(r.y == x);
        CHECK(r.phi == cwa::identity_chain_map(cwa::underlying_chain(x).complex));
        CHECK(r.psi == r.phi);
    }
    SECTION("S0 into S0 v S0") {
        cwa::ChainComplexBuilder cb;
        cb.add_cell(0, "b1");
        cb.add_cell(0, "b2");
        CorePresentation b = cwa::make_core("S0vS0", cb.build());
        ChainMap alpha = cwa::zero_chain_map(cwa::s0_core().chain, b.chain);
        alpha.maps[0].at(0, 0) = 1;
        ChainMap beta = cwa::zero_chain_map(b.chain, cwa::s0_core().chain);
        beta.maps[0].at(0, 0) = 1;  // b1 -> pt, b2 -> 0
        CwaPresentation x = circle_as_cw_s0();
        auto r = cwa::change_core_retract(x, b, alpha, beta);
        CHECK_FALSE(cwa::validate(r.y).has_value());
        auto hy = cwa::homology(cwa::underlying_chain(r.y).complex);
        CHECK(hy.at(1).betti >= 1);
        CHECK(cwa::check_retract_summand(x, r.y, r.phi, r.psi).pass);
    }
    SECTION("random retract triples keep x as a summand") {
        cwa::Rng rng(77);
        for (int t = 0; t < 10; ++t) {
            auto triple = cwa::random_retract_triple(rng);
            CwaPresentation x = cwa::random_proper_presentation(rng, triple.a, 7);
            auto r = cwa::change_core_retract(x, triple.b, triple.alpha, triple.beta);
            CHECK_FALSE(cwa::validate(r.y).has_value());
            auto verdict = cwa::check_retract_summand(x, r.y, r.phi, r.psi);
            CHECK(verdict.pass);
        }
    }
    SECTION("failed retract equation is rejected before construction") {
        cwa::ChainComplexBuilder cb;
        cb.add_cell(0, "b1");
        CorePresentation b = cwa::make_core("B", cb.build());
        ChainMap alpha = cwa::zero_chain_map(cwa::s0_core().chain, b.chain);
        ChainMap beta = cwa::zero_chain_map(b.chain, cwa::s0_core().chain);
        CHECK_THROWS_AS(cwa::change_core_retract(circle_as_cw_s0(), b, alpha, beta), cwa::Error);
    }
}

TEST_CASE("change_core_equivalence") {
    SECTION("identities with zero homotopies reproduce x") {
        CwaPresentation x = circle_as_cw_s0();
        ChainMap id = cwa::identity_chain_map(cwa::s0_core().chain);
        auto r = cwa::change_core_equivalence(x, cwa::s0_core(), id, id,
                                              cwa::zero_homotopy(cwa::s0_core().chain),
                                              cwa::zero_homotopy(cwa::s0_core().chain));
        CHECK(r.y == x);
    }
    SECTION("elementary expansions preserve homology exactly") {
        cwa::Rng rng(91);
        for (int t = 0; t < 10; ++t) {
            auto quad = cwa::random_expansion_quadruple(rng);
            CwaPresentation x = cwa::random_proper_presentation(rng, quad.a, 7);
            auto r = cwa::change_core_equivalence(x, quad.b, quad.alpha, quad.beta, quad.h_a,
                                                  quad.h_b);
            CHECK_FALSE(cwa::validate(r.y).has_value());
            CHECK(cwa::homology(cwa::underlying_chain(r.y).complex) ==
                  cwa::homology(cwa::underlying_chain(x).complex));
            // Item (iii): the same data is a retraction, so both
            // conclusions hold together.
            auto rr = cwa::change_core_retract(x, quad.b, quad.alpha, quad.beta);
            CHECK(cwa::check_retract_summand(x, rr.y, rr.phi, rr.psi).pass);
        }
    }
    SECTION("bad homotopy witnesses are rejected with a degree") {
        cwa::Rng rng(5);
        auto quad = cwa::random_expansion_quadruple(rng);
        CwaPresentation x = circle_over(quad.a);
        // The expansion pair is never hit by a zero homotopy.
        cwa::ChainHomotopy broken = cwa::zero_homotopy(quad.b.chain);
        CHECK_THROWS_AS(
            cwa::change_core_equivalence(x, quad.b, quad.alpha, quad.beta, quad.h_a, broken),
            cwa::Error);
    }
}

TEST_CASE("contractible core forces contractible complexes") {
    cwa::Rng rng(123);
    for (int t = 0; t < 8; ++t) {
        CorePresentation a = cwa::cone_core(cwa::random_core(rng));
        CwaPresentation x = cwa::random_proper_presentation(rng, a, 7);
        CHECK(cwa::homology(cwa::underlying_chain(x).complex).trivial());
        CHECK(cwa::check_contractible_core(x).pass);
    }
}
