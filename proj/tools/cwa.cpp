// cwa: batch calculator for CW(A)-complex presentations.
//
// Subcommands parse a document, run one construction or check, and print a
// deterministic text report or a new document. Exit codes: 0 on success,
// 1 on parse or validation failure, 2 on a failed check.

#include "cwa/document.hpp"
#include "cwa/generator.hpp"
#include "cwa/invariants.hpp"
#include "cwa/rewriting.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace cwa;

struct Output {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw Error("cannot open output file '" + path + "'");
        os << text;
    }
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

DocumentModel load(const std::string& path) { return parse_document(slurp(path)); }

const CwaPresentation& named_complex(const DocumentModel& doc, const std::string& name) {
    auto it = doc.complexes.find(name);
    if (it == doc.complexes.end()) throw Error("no complex named '" + name + "'");
    return it->second;
}

const NamedMap& named_map(const DocumentModel& doc, const std::string& name) {
    auto it = doc.maps.find(name);
    if (it == doc.maps.end()) throw Error("no map named '" + name + "'");
    return it->second;
}

std::set<std::string> split_cells(const std::string& csv) {
    std::set<std::string> out;
    std::string cur;
    std::istringstream is(csv);
    while (std::getline(is, cur, ','))
        if (!cur.empty()) out.insert(cur);
    return out;
}

void print_homology(std::ostream& os, const ChainComplex& chain, std::optional<int> max_degree) {
    if (chain.empty() && !max_degree) {
        os << "H~_* = 0\n";
        return;
    }
    int top = max_degree ? *max_degree : chain.max_degree();
    HomologySummary h = homology(chain);
    for (int d = 0; d <= top; ++d) os << "H~_" << d << " = " << group_to_string(h.at(d)) << "\n";
}

void print_info(std::ostream& os, const std::string& name, const CwaPresentation& x) {
    os << "[info " << name << "]\n";
    os << "core = " << x.core.name << "\n";
    os << "cells = " << x.cell_count() << "\n";
    os << "layers = " << x.layers.size() << "\n";
    for (std::size_t k = 0; k < x.layers.size(); ++k) {
        os << "layer " << k << ":";
        if (x.layers[k].empty()) os << " -";
        for (const auto& e : x.layers[k]) os << " " << e.id << "(" << e.a_dim << ")";
        os << "\n";
    }
    if (x.proper())
        os << "dimension = " << dimension(x) << "\n";
    else
        os << "dimension = generalized\n";
    os << "euler = " << euler_characteristic(x) << "\n";
}

// Output document for a construction: the core plus the result, keeping
// deterministic canonical serialization.
std::string result_document(const CorePresentation& core, const std::string& name,
                            const CwaPresentation& result) {
    DocumentModel out;
    out.cores.emplace(core.name, core);
    out.complexes.emplace(name, result);
    return serialize(out);
}

int run_check_line(std::ostream& os, const std::string& label, const Verdict& v) {
    os << "check " << label << ": " << (v.pass ? "pass" : "FAIL " + v.detail) << "\n";
    return v.pass ? 0 : 2;
}

int run_fuzz(std::ostream& os, std::uint64_t seed, int count) {
    Rng rng(seed);
    int failures = 0;
    int checks = 0;
    for (int t = 0; t < count; ++t) {
        CorePresentation a = random_core(rng);
        CwaPresentation x = random_proper_presentation(rng, a, 10);
        struct Named {
            const char* name;
            Verdict v;
        };
        Named results[] = {
            {"cone-acyclic", check_cone_acyclic(x)},
            {"suspension-shift", check_suspension_shift(x)},
            {"euler", check_euler(x)},
            {"contractible-core", check_contractible_core(x)},
        };
        for (const auto& r : results) {
            ++checks;
            if (!r.v.pass) {
                ++failures;
                os << "fuzz case " << t << " failed " << r.name << ": " << r.v.detail << "\n";
            }
        }
        CwaPresentation g = random_generalized_presentation(rng, a, 8);
        ++checks;
        if (validate(g)) {
            ++failures;
            os << "fuzz case " << t << " produced an invalid generalized presentation\n";
        }
    }
    os << "fuzz seed=" << seed << " cases=" << count << " checks=" << checks << " failures="
       << failures << "\n";
    return failures == 0 ? 0 : 2;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"CW(A)-complex calculator"};
    app.require_subcommand(1);
    Output output;
    app.add_option("--out", output.path, "write output to this file instead of stdout");

    std::string file, cx, cy, as_name, cells_csv, via, core_as, alpha_name, beta_name, ha_name,
        hb_name, mode = "retract", retract_spec;
    std::optional<int> max_degree;
    std::uint64_t seed = 0;
    int fuzz_count = 25;

    auto* c_validate = app.add_subcommand("validate", "parse and validate a document");
    c_validate->add_option("file", file)->required();

    auto* c_info = app.add_subcommand("info", "cells per layer, dimension, Euler characteristic");
    c_info->add_option("file", file)->required();
    c_info->add_option("--complex", cx, "report only this complex");

    auto* c_hom = app.add_subcommand("homology", "reduced homology of a complex");
    c_hom->add_option("file", file)->required();
    c_hom->add_option("--complex", cx)->required();
    c_hom->add_option("--max-degree", max_degree, "truncate the report at this degree");

    auto* c_cone = app.add_subcommand("cone", "reduced cone of a proper complex");
    c_cone->add_option("file", file)->required();
    c_cone->add_option("--complex", cx)->required();
    c_cone->add_option("--as", as_name, "name of the result complex");

    auto* c_susp = app.add_subcommand("suspend", "reduced suspension of a proper complex");
    c_susp->add_option("file", file)->required();
    c_susp->add_option("--complex", cx)->required();
    c_susp->add_option("--as", as_name);

    auto* c_wedge = app.add_subcommand("wedge", "wedge sum of two complexes over one core");
    c_wedge->add_option("file", file)->required();
    c_wedge->add_option("--left", cx)->required();
    c_wedge->add_option("--right", cy)->required();
    c_wedge->add_option("--as", as_name);

    auto* c_paste = app.add_subcommand("paste", "pushout of x along a subcomplex into y");
    c_paste->add_option("file", file)->required();
    c_paste->add_option("--x", cx)->required();
    c_paste->add_option("--b", cells_csv, "comma-separated cells of the subcomplex")->required();
    c_paste->add_option("--via", via, "map from the subcomplex chain into y")->required();
    c_paste->add_option("--y", cy)->required();
    c_paste->add_option("--as", as_name);

    auto* c_quot = app.add_subcommand("quotient", "collapse a face-closed subcomplex");
    c_quot->add_option("file", file)->required();
    c_quot->add_option("--complex", cx)->required();
    c_quot->add_option("--cells", cells_csv)->required();
    c_quot->add_option("--as", as_name);

    auto* c_flat = app.add_subcommand("flatten", "rewrite over the core of a realization");
    c_flat->add_option("file", file)->required();
    c_flat->add_option("--complex", cx)->required();
    c_flat->add_option("--core-as", core_as, "complex realizing the core")->required();
    c_flat->add_option("--as", as_name);

    auto* c_chg = app.add_subcommand("change-core", "rebuild over a new core along maps");
    c_chg->add_option("file", file)->required();
    c_chg->add_option("--complex", cx)->required();
    c_chg->add_option("--to-core", cy)->required();
    c_chg->add_option("--alpha", alpha_name)->required();
    c_chg->add_option("--beta", beta_name)->required();
    c_chg->add_option("--mode", mode, "retract or equivalence");
    c_chg->add_option("--h-a", ha_name, "homotopy witness on the old core (equivalence)");
    c_chg->add_option("--h-b", hb_name, "homotopy witness on the new core (equivalence)");
    c_chg->add_option("--as", as_name);

    auto* c_check = app.add_subcommand("check", "run consequence checkers");
    std::string chk_cone, chk_susp, chk_euler, chk_contractible, chk_dim;
    c_check->add_option("file", file)->required();
    c_check->add_option("--cone-acyclic", chk_cone, "complex to check");
    c_check->add_option("--suspension-shift", chk_susp, "complex to check");
    c_check->add_option("--euler", chk_euler, "complex to check");
    c_check->add_option("--contractible", chk_contractible, "complex to check");
    c_check->add_option("--dimension-additivity", chk_dim, "complex to check");
    c_check->add_option("--core-as", core_as, "realization for --dimension-additivity");
    c_check->add_option("--retract-summand", retract_spec, "x,y,phi,psi");

    auto* c_fuzz = app.add_subcommand("fuzz", "random property corpus");
    c_fuzz->add_option("--seed", seed, "corpus seed")->required();
    c_fuzz->add_option("--count", fuzz_count, "number of cases");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 1;
    }

    std::ostringstream os;
    int rc = 0;

    if (*c_validate) {
        DocumentModel doc = load(file);
        os << "ok: " << doc.cores.size() << " cores, " << doc.complexes.size() << " complexes, "
           << doc.maps.size() << " maps, " << doc.homotopies.size() << " homotopies\n";
    } else if (*c_info) {
        DocumentModel doc = load(file);
        if (!cx.empty()) {
            print_info(os, cx, named_complex(doc, cx));
        } else {
            bool first = true;
            for (const auto& [name, x] : doc.complexes) {
                if (!first) os << "\n";
                first = false;
                print_info(os, name, x);
            }
        }
    } else if (*c_hom) {
        DocumentModel doc = load(file);
        print_homology(os, underlying_chain(named_complex(doc, cx)).complex, max_degree);
    } else if (*c_cone) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        if (as_name.empty()) as_name = cx + "_cone";
        os << result_document(x.core, as_name, cone(x).presentation);
    } else if (*c_susp) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        if (as_name.empty()) as_name = cx + "_suspend";
        os << result_document(x.core, as_name, suspend(x));
    } else if (*c_wedge) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        const CwaPresentation& y = named_complex(doc, cy);
        if (as_name.empty()) as_name = cx + "_wedge_" + cy;
        os << result_document(x.core, as_name, wedge(x, y).presentation);
    } else if (*c_paste) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        const CwaPresentation& y = named_complex(doc, cy);
        const NamedMap& f = named_map(doc, via);
        std::set<std::string> b = split_cells(cells_csv);
        // The declared map must start from a complex whose chain equals the
        // chain of the selected subcomplex and land in y's chain.
        ChainComplex b_chain = underlying_chain(restrict_presentation(x, b)).complex;
        if (!(f.map.source == b_chain))
            throw Error("map '" + via + "' does not start from the chain of the selected cells");
        if (as_name.empty()) as_name = cx + "_paste_" + cy;
        os << result_document(x.core, as_name, paste(x, b, f.map, y).presentation);
    } else if (*c_quot) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        if (as_name.empty()) as_name = cx + "_quotient";
        os << result_document(x.core, as_name,
                              quotient(x, split_cells(cells_csv)).presentation);
    } else if (*c_flat) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        const CwaPresentation& realization = named_complex(doc, core_as);
        Flattened f = flatten(x, realization);
        if (as_name.empty()) as_name = cx + "_flat";
        os << result_document(realization.core, as_name, f.presentation);
        for (const auto& [id, origin] : f.cell_origin)
            os << "# origin " << id << " <- cell " << origin.x_cell << " of " << cx << ", cell "
               << origin.realization_cell << " of " << core_as << ", pair (" << origin.pair_a
               << "," << origin.pair_b << ")\n";
    } else if (*c_chg) {
        DocumentModel doc = load(file);
        const CwaPresentation& x = named_complex(doc, cx);
        auto cit = doc.cores.find(cy);
        if (cit == doc.cores.end()) throw Error("no core named '" + cy + "'");
        const ChainMap& alpha = named_map(doc, alpha_name).map;
        const ChainMap& beta = named_map(doc, beta_name).map;
        if (as_name.empty()) as_name = cx + "_over_" + cy;
        DocumentModel outdoc;
        outdoc.cores.emplace(x.core.name, x.core);
        outdoc.cores.emplace(cit->second.name, cit->second);
        outdoc.complexes.emplace(cx, x);
        if (mode == "retract") {
            CoreChange r = change_core_retract(x, cit->second, alpha, beta);
            outdoc.complexes.emplace(as_name, r.y);
            outdoc.maps.emplace("phi", NamedMap{cx, as_name, r.phi});
            outdoc.maps.emplace("psi", NamedMap{as_name, cx, r.psi});
        } else if (mode == "equivalence") {
            if (ha_name.empty() || hb_name.empty())
                throw Error("equivalence mode needs --h-a and --h-b");
            auto ha = doc.homotopies.find(ha_name);
            auto hb = doc.homotopies.find(hb_name);
            if (ha == doc.homotopies.end() || hb == doc.homotopies.end())
                throw Error("unknown homotopy name");
            CoreEquivalence r = change_core_equivalence(x, cit->second, alpha, beta,
                                                        ha->second.homotopy, hb->second.homotopy);
            outdoc.complexes.emplace(as_name, r.y);
            outdoc.maps.emplace("phi", NamedMap{cx, as_name, r.phi});
        } else {
            throw Error("unknown mode '" + mode + "'");
        }
        os << serialize(outdoc);
    } else if (*c_check) {
        DocumentModel doc = load(file);
        bool any = false;
        if (!chk_cone.empty()) {
            any = true;
            rc |= run_check_line(os, "cone-acyclic " + chk_cone,
                                 check_cone_acyclic(named_complex(doc, chk_cone)));
        }
        if (!chk_susp.empty()) {
            any = true;
            rc |= run_check_line(os, "suspension-shift " + chk_susp,
                                 check_suspension_shift(named_complex(doc, chk_susp)));
        }
        if (!chk_euler.empty()) {
            any = true;
            rc |= run_check_line(os, "euler " + chk_euler,
                                 check_euler(named_complex(doc, chk_euler)));
        }
        if (!chk_contractible.empty()) {
            any = true;
            rc |= run_check_line(os, "contractible " + chk_contractible,
                                 check_contractible_core(named_complex(doc, chk_contractible)));
        }
        if (!chk_dim.empty()) {
            any = true;
            if (core_as.empty()) throw Error("--dimension-additivity needs --core-as");
            rc |= run_check_line(os, "dimension-additivity " + chk_dim,
                                 check_dimension_additivity(named_complex(doc, chk_dim),
                                                            named_complex(doc, core_as)));
        }
        if (!retract_spec.empty()) {
            any = true;
            std::vector<std::string> parts;
            std::istringstream is(retract_spec);
            std::string p;
            while (std::getline(is, p, ',')) parts.push_back(p);
            if (parts.size() != 4) throw Error("--retract-summand needs x,y,phi,psi");
            rc |= run_check_line(
                os, "retract-summand " + retract_spec,
                check_retract_summand(named_complex(doc, parts[0]), named_complex(doc, parts[1]),
                                      named_map(doc, parts[2]).map,
                                      named_map(doc, parts[3]).map));
        }
        if (!any) throw Error("check: no checker selected");
    } else if (*c_fuzz) {
        rc = run_fuzz(os, seed, fuzz_count);
    }

    output.write(os.str());
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const cwa::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cwa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
