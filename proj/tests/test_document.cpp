#include "cwa/document.hpp"

#include "cwa/invariants.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using cwa::DocumentModel;
using cwa::HomologyGroup;
using cwa::Int;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

std::string fixture(const std::string& name) { return read_file(FIXTURE_DIR "/" + name); }

}  // namespace

TEST_CASE("parsing the classical fixtures") {
    DocumentModel doc = cwa::parse_document(fixture("s0_basics.cwa"));
    REQUIRE(doc.cores.count("S0"));
    REQUIRE(doc.complexes.count("circle"));
    REQUIRE(doc.complexes.count("rp2"));
    SECTION("all declared complexes validate") {
        for (const auto& [name, x] : doc.complexes) CHECK_FALSE(cwa::validate(x).has_value());
    }
    SECTION("homology of the declared models") {
        auto h = [&](const std::string& n) {
            return cwa::homology(cwa::underlying_chain(doc.complexes.at(n)).complex);
        };
        CHECK(h("circle").at(1) == HomologyGroup{1, {}});
        CHECK(h("sphere2").at(2) == HomologyGroup{1, {}});
        CHECK(h("rp2").at(1) == HomologyGroup{0, {Int(2)}});
        CHECK(h("rp2").at(2) == HomologyGroup{});
        CHECK(h("disk").trivial());
        CHECK(h("torus").at(1) == HomologyGroup{2, {}});
    }
}

TEST_CASE("round-trip: parse then serialize then parse is stable") {
    for (const std::string name :
         {"s0_basics.cwa", "dn_d1.cwa", "paste_intervals.cwa", "retract_checks.cwa",
          "expansion.cwa"}) {
        DocumentModel doc = cwa::parse_document(fixture(name));
        std::string out = cwa::serialize(doc);
        DocumentModel again = cwa::parse_document(out);
        CHECK(again == doc);
        CHECK(cwa::serialize(again) == out);
    }
}

TEST_CASE("parse errors carry line numbers") {
    SECTION("dangling core reference names the reference") {
        try {
            cwa::parse_document(fixture("bad_reference.cwa"));
            FAIL("expected a parse error");
        } catch (const cwa::ParseError& e) {
            CHECK(std::string(e.what()).find("nowhere") != std::string::npos);
        }
    }
    SECTION("syntax error location") {
        try {
            cwa::parse_document("[core C]\ncell ok dim=0\ncell bad dim=zz\n");
            FAIL("expected a parse error");
        } catch (const cwa::ParseError& e) {
            CHECK(e.line == 3);
        }
    }
    SECTION("matrix shape errors point at the matrix") {
        const char* text =
            "[core C]\ncell u dim=0\ncell s dim=1\ndeg 1: 2 x 1\n1\n1\n";
        CHECK_THROWS_AS(cwa::parse_document(text), cwa::ParseError);
    }
    SECTION("invalid attach data is a semantic error") {
        // d2 != 0 through a non-commuting attach matrix.
        const char* text =
            "[core D1]\ncell u dim=0\ncell s dim=1\ndeg 1: 1 x 1\n1\n"
            "[complex X core=D1]\ncell w dim=0 layer=0\ncell e dim=1 layer=1\n"
            "attach e deg 0: 1 x 1\n1\nattach e deg 1: 1 x 1\n1\n";
        CHECK_NOTHROW(cwa::parse_document(text));
        const char* bad =
            "[core D1]\ncell u dim=0\ncell s dim=1\ndeg 1: 1 x 1\n1\n"
            "[complex X core=D1]\ncell w dim=0 layer=0\ncell e dim=1 layer=1\n"
            "attach e deg 0: 1 x 1\n1\nattach e deg 1: 1 x 1\n2\n";
        CHECK_THROWS_AS(cwa::parse_document(bad), cwa::ParseError);
    }
}

TEST_CASE("declaration order does not change the model") {
    const char* a =
        "[core S0]\ncell pt dim=0\n"
        "[complex X core=S0]\ncell v dim=0 layer=0\ncell e dim=1 layer=1\n"
        "attach e deg 0: 1 x 1\n1\n";
    const char* b =
        "[core S0]\ncell pt dim=0\n"
        "[complex X core=S0]\ncell e dim=1 layer=1\ncell v dim=0 layer=0\n"
        "attach e deg 0: 1 x 1\n1\n";
    CHECK(cwa::parse_document(a) == cwa::parse_document(b));
}

TEST_CASE("maps and homotopies parse against resolved chains") {
    DocumentModel doc = cwa::parse_document(fixture("expansion.cwa"));
    REQUIRE(doc.maps.count("alpha"));
    REQUIRE(doc.maps.count("beta"));
    REQUIRE(doc.homotopies.count("hb"));
    const auto& alpha = doc.maps.at("alpha").map;
    const auto& beta = doc.maps.at("beta").map;
    CHECK(cwa::compose(beta, alpha) == cwa::identity_chain_map(doc.cores.at("A").chain));
    CHECK_FALSE(cwa::check_homotopy_witness(cwa::compose(alpha, beta),
                                            doc.homotopies.at("hb").homotopy)
                    .has_value());
}
