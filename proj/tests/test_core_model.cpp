#include "cwa/core.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

using cwa::ChainComplexBuilder;
using cwa::CorePresentation;
using cwa::DerivedCell;
using cwa::HomologyGroup;
using cwa::Int;

namespace {

CorePresentation circle_core() {
    ChainComplexBuilder b;
    b.add_cell(1, "z");
    return cwa::make_core("circle", b.build());
}

// Interval: one 0-cell u, one 1-cell s with boundary s -> u.
CorePresentation interval_core() {
    ChainComplexBuilder b;
    b.add_cell(0, "u");
    b.add_cell(1, "s");
    b.add_entry("u", "s", 1);
    return cwa::make_core("D1", b.build());
}

}  // namespace

TEST_CASE("suspend_core") {
    SECTION("suspending S0 once gives the circle") {
        CorePresentation s = cwa::suspend_core(cwa::s0_core(), 1);
        CHECK(s.dim == 1);
        CHECK(s.chain.count(0) == 0);
        CHECK(s.chain.count(1) == 1);
        CHECK(cwa::homology(s.chain).at(1) == HomologyGroup{1, {}});
        REQUIRE(s.provenance.count("s1.pt"));
        CHECK(s.provenance.at("s1.pt") ==
              DerivedCell{"pt", DerivedCell::Kind::suspended, 1});
    }
    SECTION("k = 0 is the identity") {
        CHECK(cwa::suspend_core(circle_core(), 0) == circle_core());
    }
    SECTION("homology shifts by k") {
        CorePresentation s = cwa::suspend_core(circle_core(), 2);
        auto h = cwa::homology(s.chain);
        CHECK(h == oracle::homology(s.chain));
        CHECK(h.at(3) == HomologyGroup{1, {}});
        CHECK(h == cwa::homology(circle_core().chain).shifted(2));
    }
    SECTION("boundaries carry over unchanged") {
        CorePresentation s = cwa::suspend_core(interval_core(), 3);
        CHECK_FALSE(cwa::validate_complex(s.chain).has_value());
        CHECK(*s.chain.boundary_at(4) == *interval_core().chain.boundary_at(1));
    }
}

TEST_CASE("cone_core") {
    SECTION("cone of S0 is the interval") {
        CorePresentation c = cwa::cone_core(cwa::s0_core());
        CHECK(c.chain.count(0) == 1);
        CHECK(c.chain.count(1) == 1);
        CHECK(*c.chain.boundary_at(1) == cwa::Matrix{{1}});
        CHECK(cwa::homology(c.chain).trivial());
        CHECK(c.provenance.at("c.pt").kind == DerivedCell::Kind::coned);
    }
    SECTION("cone of the empty core is empty") {
        CorePresentation none = cwa::make_core("empty", cwa::ChainComplex{});
        CHECK(cwa::cone_core(none).chain.empty());
    }
    SECTION("cone of the circle is acyclic") {
        CorePresentation c = cwa::cone_core(circle_core());
        CHECK_FALSE(cwa::validate_complex(c.chain).has_value());
        CHECK(cwa::homology(c.chain).trivial());
        CHECK(oracle::homology(c.chain).trivial());
    }
    SECTION("cone of a suspended interval validates and is acyclic") {
        CorePresentation c = cwa::cone_core(cwa::suspend_core(interval_core(), 2));
        CHECK_FALSE(cwa::validate_complex(c.chain).has_value());
        CHECK(cwa::homology(c.chain).trivial());
        CHECK(c.chain.total_cells() == 4);
    }
}

TEST_CASE("boundary_inclusion") {
    SECTION("S0 at k = 0 is a 1x1 identity in degree 0") {
        cwa::ChainMap f = cwa::boundary_inclusion(cwa::s0_core(), 0);
        CHECK_FALSE(cwa::validate_map(f).has_value());
        CHECK(f.maps[0] == cwa::Matrix::identity(1));
    }
    SECTION("S0 at k = 2 includes the 2-sphere model into its cone") {
        cwa::ChainMap f = cwa::boundary_inclusion(cwa::s0_core(), 2);
        CHECK_FALSE(cwa::validate_map(f).has_value());
        CHECK(f.source.count(2) == 1);
        CHECK(f.target.count(2) == 1);
        CHECK(f.target.count(3) == 1);
    }
    SECTION("commutes for a core with boundary") {
        cwa::ChainMap f = cwa::boundary_inclusion(interval_core(), 1);
        CHECK_FALSE(cwa::validate_map(f).has_value());
    }
    SECTION("cokernel of the inclusion has the homology of the next suspension") {
        // Oracle route: the mapping cone of the inclusion collapses the
        // suspended part, leaving homology shifted by one more degree.
        CorePresentation a = circle_core();
        for (int k = 0; k <= 2; ++k) {
            cwa::ChainMap f = cwa::boundary_inclusion(a, k);
            auto mc = cwa::mapping_cone(f);
            CHECK(cwa::homology(mc.cone) == cwa::homology(cwa::suspend_core(a, k + 1).chain));
        }
    }
}
