// Property suite over the random corpus: every constructor emits valid
// data and every operation is closed under validation.

#include "cwa/generator.hpp"
#include "cwa/invariants.hpp"

#include <catch2/catch_amalgamated.hpp>

using cwa::CorePresentation;
using cwa::CwaPresentation;

TEST_CASE("random cores always validate") {
    cwa::Rng rng(1);
    for (int t = 0; t < 40; ++t) {
        CorePresentation a = cwa::random_core(rng);
        CHECK_FALSE(cwa::validate_complex(a.chain).has_value());
        CHECK(a.dim == a.chain.max_degree());
    }
}

TEST_CASE("random chain maps commute") {
    cwa::Rng rng(2);
    int nonzero = 0;
    for (int t = 0; t < 25; ++t) {
        CorePresentation a = cwa::random_core(rng);
        CorePresentation b = cwa::random_core(rng);
        cwa::ChainMap f = cwa::random_chain_map(rng, a.chain, b.chain);
        CHECK_FALSE(cwa::validate_map(f).has_value());
        for (const auto& m : f.maps)
            if (!m.is_zero()) {
                ++nonzero;
                break;
            }
    }
    CHECK(nonzero > 0);  // the sampler is not vacuously returning zeros
}

TEST_CASE("generated presentations validate and operations are closed") {
    cwa::Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        CorePresentation a = cwa::random_core(rng);
        CwaPresentation x = cwa::random_proper_presentation(rng, a, 9);
        REQUIRE_FALSE(cwa::validate(x).has_value());
        CHECK(x.proper());

        auto c = cwa::cone(x);
        CHECK_FALSE(cwa::validate(c.presentation).has_value());
        CwaPresentation s = cwa::suspend(x);
        CHECK_FALSE(cwa::validate(s).has_value());
        auto w = cwa::wedge(x, x);
        CHECK_FALSE(cwa::validate(w.presentation).has_value());

        // Quotient by a random face-closed subset: one pass over the
        // transitively closed relation closes the sample downward.
        std::set<std::string> keep;
        for (const auto* e : x.all_cells())
            if (rng.range(0, 1)) keep.insert(e->id);
        cwa::FacePoset p = cwa::face_poset(x);
        for (const auto& [f, ccell] : p.relation)
            if (keep.count(ccell)) keep.insert(f);
        CHECK(cwa::is_face_closed(x, keep));
        auto q = cwa::quotient(x, keep);
        CHECK_FALSE(cwa::validate(q.presentation).has_value());

        // Skeleta of proper presentations validate as well.
        for (int r = -1; r <= cwa::dimension(x); ++r)
            CHECK_FALSE(cwa::validate(cwa::skeleton(x, r)).has_value());
    }
}

TEST_CASE("generalized presentations validate; face poset stays acyclic") {
    cwa::Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        CorePresentation a = cwa::random_core(rng);
        CwaPresentation x = cwa::random_generalized_presentation(rng, a, 9);
        REQUIRE_FALSE(cwa::validate(x).has_value());
        cwa::FacePoset p = cwa::face_poset(x);
        for (const auto& [f, c] : p.relation) CHECK_FALSE(p.is_face(c, f));
    }
}

TEST_CASE("proper corpus: faces have strictly smaller a_dim") {
    cwa::Rng rng(5);
    for (int t = 0; t < 10; ++t) {
        CwaPresentation x = cwa::random_proper_presentation(rng, cwa::random_core(rng), 9);
        cwa::FacePoset p = cwa::face_poset(x);
        for (const auto& [f, c] : p.relation)
            CHECK(x.find_cell(f)->a_dim < x.find_cell(c)->a_dim);
    }
}

TEST_CASE("core constructions over the random corpus") {
    cwa::Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        CorePresentation a = cwa::random_core(rng);
        // Suspension shifts homology by k, degree-wise.
        for (int k = 0; k <= 4; ++k) {
            CorePresentation s = cwa::suspend_core(a, k);
            CHECK_FALSE(cwa::validate_complex(s.chain).has_value());
            CHECK(cwa::homology(s.chain) == cwa::homology(a.chain).shifted(k));
        }
        // Cones are acyclic and inclusions commute.
        CHECK(cwa::homology(cwa::cone_core(a).chain).trivial());
        for (int k = 0; k <= 2; ++k)
            CHECK_FALSE(cwa::validate_map(cwa::boundary_inclusion(a, k)).has_value());
    }
}

TEST_CASE("chain operations stay valid on the random corpus") {
    cwa::Rng rng(8);
    for (int t = 0; t < 15; ++t) {
        CorePresentation a = cwa::random_core(rng);
        CorePresentation b = cwa::random_core(rng);
        auto ds = cwa::direct_sum(a.chain, b.chain);
        CHECK_FALSE(cwa::validate_complex(ds.sum).has_value());
        CHECK(cwa::homology(ds.sum) ==
              cwa::sum_summaries(cwa::homology(a.chain), cwa::homology(b.chain)));
        auto mc = cwa::mapping_cone(cwa::random_chain_map(rng, a.chain, b.chain));
        CHECK_FALSE(cwa::validate_complex(mc.cone).has_value());
        CHECK(cwa::homology(cwa::mapping_cone(cwa::identity_chain_map(a.chain)).cone).trivial());
    }
}

TEST_CASE("homology of a wedge is the sum of summaries") {
    cwa::Rng rng(6);
    for (int t = 0; t < 8; ++t) {
        CorePresentation a = cwa::random_core(rng);
        CwaPresentation x = cwa::random_proper_presentation(rng, a, 6);
        CwaPresentation y = cwa::random_proper_presentation(rng, a, 6);
        auto w = cwa::wedge(x, y);
        CHECK(cwa::homology(cwa::underlying_chain(w.presentation).complex) ==
              cwa::sum_summaries(cwa::homology(cwa::underlying_chain(x).complex),
                                 cwa::homology(cwa::underlying_chain(y).complex)));
    }
}
