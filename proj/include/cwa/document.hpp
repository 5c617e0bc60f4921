#pragma once

// Line-oriented text format for cores, build scripts, chain maps and
// homotopies. Matrices are row-major signed decimal integers under a
// "deg <d>: <rows> x <cols>" header; all-zero matrices are omitted.
// Matrix indices always refer to the canonical cell order (cores by
// (dim, id), complex cells by (layer, id), chain cells layer-major), so
// declaration order never changes the meaning of a file.

#include "cwa/presentation.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace cwa {

struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct NamedMap {
    std::string from;
    std::string to;
    ChainMap map;

    bool operator==(const NamedMap&) const = default;
};

struct NamedHomotopy {
    std::string on;
    ChainHomotopy homotopy;

    bool operator==(const NamedHomotopy&) const = default;
};

struct DocumentModel {
    std::map<std::string, CorePresentation> cores;
    std::map<std::string, CwaPresentation> complexes;
    std::map<std::string, NamedMap> maps;
    std::map<std::string, NamedHomotopy> homotopies;

    bool operator==(const DocumentModel&) const = default;
};

/// Chain complex a map endpoint refers to: a core's chain or the
/// underlying chain of a complex.
inline ChainComplex resolve_chain(const DocumentModel& doc, const std::string& name) {
    if (auto it = doc.cores.find(name); it != doc.cores.end()) return it->second.chain;
    if (auto it = doc.complexes.find(name); it != doc.complexes.end())
        return underlying_chain(it->second).complex;
    throw Error("unknown core or complex '" + name + "'");
}

namespace fmt_detail {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream is(text);
    std::string raw;
    int n = 0;
    while (std::getline(is, raw)) {
        ++n;
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty() || toks[0][0] == '#') continue;
        lines.push_back({n, std::move(toks)});
    }
    return lines;
}

inline long long parse_int(const Line& l, const std::string& tok, const char* what) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError(l.number, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

inline long long keyed_int(const Line& l, const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0)
        throw ParseError(l.number, "expected " + key + "=<integer>, got '" + tok + "'");
    return parse_int(l, tok.substr(key.size() + 1), "an integer");
}

inline std::string keyed_str(const Line& l, const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0)
        throw ParseError(l.number, "expected " + key + "=<name>, got '" + tok + "'");
    std::string v = tok.substr(key.size() + 1);
    if (v.empty()) throw ParseError(l.number, key + "= must name something");
    return v;
}

// "deg <d>: <r> x <c>" starting at tokens[at]; returns (d, r, c).
struct MatrixHeader {
    int degree;
    std::size_t rows, cols;
};

inline MatrixHeader matrix_header(const Line& l, std::size_t at) {
    if (l.tokens.size() != at + 4 || l.tokens[at].back() != ':')
        throw ParseError(l.number, "expected 'deg <d>: <rows> x <cols>'");
    std::string d = l.tokens[at];
    d.pop_back();
    long long deg = parse_int(l, d, "a degree");
    long long r = parse_int(l, l.tokens[at + 1], "a row count");
    if (l.tokens[at + 2] != "x") throw ParseError(l.number, "expected 'x' between matrix sizes");
    long long c = parse_int(l, l.tokens[at + 3], "a column count");
    if (deg < 0 || r < 0 || c < 0) throw ParseError(l.number, "matrix header values must be >= 0");
    return {static_cast<int>(deg), static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
}

inline Matrix read_rows(const std::vector<Line>& lines, std::size_t& i, const MatrixHeader& h) {
    Matrix m(h.rows, h.cols);
    for (std::size_t r = 0; r < h.rows; ++r) {
        if (i >= lines.size())
            throw ParseError(lines.back().number, "matrix ends before all rows are given");
        const Line& l = lines[i++];
        if (l.tokens.size() != h.cols)
            throw ParseError(l.number, "expected " + std::to_string(h.cols) +
                                           " entries in this matrix row");
        for (std::size_t c = 0; c < h.cols; ++c) {
            const std::string& tok = l.tokens[c];
            try {
                m.at(r, c) = Int(tok);
            } catch (const std::exception&) {
                throw ParseError(l.number, "bad integer '" + tok + "'");
            }
        }
    }
    return m;
}

struct CoreDecl {
    int line;
    std::string name;
    std::vector<std::pair<std::string, int>> cells;          // (id, dim)
    std::map<int, std::pair<int, Matrix>> matrices;          // degree -> (line, matrix)
};

struct CellDecl {
    int line;
    std::string id;
    int dim;
    int layer;
    std::map<int, std::pair<int, Matrix>> attach;  // degree -> (line, matrix)
};

struct ComplexDecl {
    int line;
    std::string name;
    std::string core;
    std::vector<CellDecl> cells;
};

struct MapDecl {
    int line;
    std::string name;
    std::string from, to;
    std::map<int, std::pair<int, Matrix>> matrices;
};

struct HomotopyDecl {
    int line;
    std::string name;
    std::string on;
    std::map<int, std::pair<int, Matrix>> matrices;
};

}  // namespace fmt_detail

inline DocumentModel parse_document(const std::string& text) {
    using namespace fmt_detail;
    std::vector<Line> lines = tokenize(text);
    std::vector<CoreDecl> cores;
    std::vector<ComplexDecl> complexes;
    std::vector<MapDecl> maps;
    std::vector<HomotopyDecl> homotopies;

    std::size_t i = 0;
    enum class In { none, core, complex, map, homotopy } in = In::none;
    while (i < lines.size()) {
        const Line& l = lines[i];
        const std::string& head = l.tokens[0];
        if (head.front() == '[') {
            if (l.tokens.back().back() != ']')
                throw ParseError(l.number, "section header does not end with ']'");
            std::vector<std::string> toks = l.tokens;
            toks.front() = toks.front().substr(1);
            toks.back() = toks.back().substr(0, toks.back().size() - 1);
            if (toks.front().empty() || toks.back().empty())
                throw ParseError(l.number, "malformed section header");
            if (toks[0] == "core" && toks.size() == 2) {
                cores.push_back({l.number, toks[1], {}, {}});
                in = In::core;
            } else if (toks[0] == "complex" && toks.size() == 3) {
                complexes.push_back({l.number, toks[1], keyed_str(l, toks[2], "core"), {}});
                in = In::complex;
            } else if (toks[0] == "map" && toks.size() == 4) {
                maps.push_back({l.number, toks[1], keyed_str(l, toks[2], "from"),
                                keyed_str(l, toks[3], "to"), {}});
                in = In::map;
            } else if (toks[0] == "homotopy" && toks.size() == 3) {
                homotopies.push_back({l.number, toks[1], keyed_str(l, toks[2], "on"), {}});
                in = In::homotopy;
            } else {
                throw ParseError(l.number, "unknown section header");
            }
            ++i;
            continue;
        }
        if (in == In::none) throw ParseError(l.number, "content before any section header");
        if (head == "cell") {
            ++i;
            if (in == In::core) {
                if (l.tokens.size() != 3)
                    throw ParseError(l.number, "core cells are 'cell <id> dim=<n>'");
                if (l.tokens[1].find('.') != std::string::npos)
                    throw ParseError(l.number, "core cell ids must not contain '.'");
                cores.back().cells.push_back(
                    {l.tokens[1], static_cast<int>(keyed_int(l, l.tokens[2], "dim"))});
            } else if (in == In::complex) {
                if (l.tokens.size() != 4)
                    throw ParseError(l.number, "complex cells are 'cell <id> dim=<n> layer=<k>'");
                complexes.back().cells.push_back(
                    {l.number, l.tokens[1], static_cast<int>(keyed_int(l, l.tokens[2], "dim")),
                     static_cast<int>(keyed_int(l, l.tokens[3], "layer")),
                     {}});
            } else {
                throw ParseError(l.number, "'cell' is only valid in core and complex sections");
            }
        } else if (head == "deg") {
            MatrixHeader h = matrix_header(l, 1);
            ++i;
            Matrix m = read_rows(lines, i, h);
            auto put = [&](std::map<int, std::pair<int, Matrix>>& dst) {
                if (!dst.emplace(h.degree, std::make_pair(l.number, std::move(m))).second)
                    throw ParseError(l.number,
                                     "duplicate matrix for degree " + std::to_string(h.degree));
            };
            if (in == In::core)
                put(cores.back().matrices);
            else if (in == In::map)
                put(maps.back().matrices);
            else if (in == In::homotopy)
                put(homotopies.back().matrices);
            else
                throw ParseError(l.number, "bare matrices are not valid in complex sections");
        } else if (head == "attach") {
            if (in != In::complex)
                throw ParseError(l.number, "'attach' is only valid in complex sections");
            if (l.tokens.size() != 7 || l.tokens[2] != "deg")
                throw ParseError(l.number, "expected 'attach <cell> deg <d>: <rows> x <cols>'");
            MatrixHeader h = matrix_header(l, 3);
            ++i;
            Matrix m = read_rows(lines, i, h);
            ComplexDecl& cd = complexes.back();
            fmt_detail::CellDecl* cell = nullptr;
            for (auto& c : cd.cells)
                if (c.id == l.tokens[1]) cell = &c;
            if (!cell)
                throw ParseError(l.number, "attach for undeclared cell '" + l.tokens[1] + "'");
            if (!cell->attach.emplace(h.degree, std::make_pair(l.number, std::move(m))).second)
                throw ParseError(l.number, "duplicate attach matrix for degree " +
                                               std::to_string(h.degree));
        } else {
            throw ParseError(l.number, "unrecognized line '" + head + "'");
        }
    }

    DocumentModel doc;
    std::set<std::string> names;
    auto claim = [&](int line, const std::string& n) {
        if (!names.insert(n).second) throw ParseError(line, "duplicate name '" + n + "'");
    };

    for (auto& cd : cores) {
        claim(cd.line, cd.name);
        std::stable_sort(cd.cells.begin(), cd.cells.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second < b.second : a.first < b.first;
        });
        ChainComplex chain;
        for (const auto& [id, dim] : cd.cells) {
            if (dim < 0) throw ParseError(cd.line, "negative cell dimension in core " + cd.name);
            if (static_cast<std::size_t>(dim) >= chain.cells.size()) chain.cells.resize(dim + 1);
            chain.cells[static_cast<std::size_t>(dim)].push_back(id);
        }
        chain.boundary.reserve(chain.cells.size());
        for (int d = 0; d <= chain.max_degree(); ++d)
            chain.boundary.emplace_back(d == 0 ? 0 : chain.count(d - 1), chain.count(d));
        for (const auto& [d, lm] : cd.matrices) {
            if (d < 1 || d > chain.max_degree())
                throw ParseError(lm.first, "matrix degree out of range for core " + cd.name);
            if (lm.second.rows() != chain.count(d - 1) || lm.second.cols() != chain.count(d))
                throw ParseError(lm.first, "matrix shape does not match the cells of core " +
                                               cd.name);
            chain.boundary[static_cast<std::size_t>(d)] = lm.second;
        }
        if (auto v = validate_complex(chain))
            throw ParseError(cd.line, "core " + cd.name + " is invalid: " + v->message);
        CorePresentation core = make_core(cd.name, std::move(chain));
        doc.cores.emplace(cd.name, std::move(core));
    }

    for (auto& xd : complexes) {
        claim(xd.line, xd.name);
        auto cit = doc.cores.find(xd.core);
        if (cit == doc.cores.end())
            throw ParseError(xd.line, "complex " + xd.name + " references unknown core '" +
                                          xd.core + "'");
        const CorePresentation& core = cit->second;
        std::stable_sort(xd.cells.begin(), xd.cells.end(), [](const auto& a, const auto& b) {
            return a.layer != b.layer ? a.layer < b.layer : a.id < b.id;
        });
        PresentationBuilder bld(core);
        CwaPresentation sofar = bld.build();
        std::size_t ci = 0;
        while (ci < xd.cells.size()) {
            int layer = xd.cells[ci].layer;
            if (layer < 0) throw ParseError(xd.cells[ci].line, "negative layer");
            ChainComplex prefix = underlying_chain(sofar).complex;
            for (; ci < xd.cells.size() && xd.cells[ci].layer == layer; ++ci) {
                const CellDecl& cell = xd.cells[ci];
                if (cell.dim == 0) {
                    if (!cell.attach.empty())
                        throw ParseError(cell.line,
                                         "wedge cell '" + cell.id + "' cannot carry attach data");
                    bld.wedge_cell(layer, cell.id);
                    continue;
                }
                std::vector<PresentationBuilder::Entry> entries;
                for (const auto& [d, lm] : cell.attach) {
                    const Matrix& m = lm.second;
                    int cd2 = d - (cell.dim - 1);
                    std::size_t want_cols =
                        cd2 < 0 ? 0 : core.chain.count(cd2);
                    if (m.rows() != prefix.count(d) || m.cols() != want_cols)
                        throw ParseError(lm.first, "attach matrix shape for cell '" + cell.id +
                                                       "' does not match earlier layers");
                    for (std::size_t r = 0; r < m.rows(); ++r)
                        for (std::size_t c = 0; c < m.cols(); ++c)
                            if (m.at(r, c) != 0)
                                entries.push_back(
                                    {prefix.cells[static_cast<std::size_t>(d)][r],
                                     core.chain.cells[static_cast<std::size_t>(cd2)][c],
                                     m.at(r, c)});
                }
                try {
                    bld.cell(layer, cell.id, cell.dim, std::move(entries));
                } catch (const Error& e) {
                    throw ParseError(cell.line, e.what());
                }
            }
            try {
                sofar = bld.build();
            } catch (const Error& e) {
                throw ParseError(xd.line, e.what());
            }
        }
        CwaPresentation x = sofar;
        if (auto v = validate(x))
            throw ParseError(xd.line, "complex " + xd.name + " is invalid: " + v->message);
        doc.complexes.emplace(xd.name, std::move(x));
    }

    for (auto& md : maps) {
        claim(md.line, md.name);
        ChainComplex src, dst;
        try {
            src = resolve_chain(doc, md.from);
            dst = resolve_chain(doc, md.to);
        } catch (const Error& e) {
            throw ParseError(md.line, "map " + md.name + ": " + e.what());
        }
        ChainMap f = zero_chain_map(std::move(src), std::move(dst));
        for (const auto& [d, lm] : md.matrices) {
            if (d < 0 || static_cast<std::size_t>(d) >= f.maps.size())
                throw ParseError(lm.first, "map degree out of the source range");
            Matrix& slot = f.maps[static_cast<std::size_t>(d)];
            if (lm.second.rows() != slot.rows() || lm.second.cols() != slot.cols())
                throw ParseError(lm.first, "map matrix shape mismatch at degree " +
                                               std::to_string(d));
            slot = lm.second;
        }
        if (auto v = validate_map(f))
            throw ParseError(md.line, "map " + md.name + " is invalid: " + v->message);
        doc.maps.emplace(md.name, NamedMap{md.from, md.to, std::move(f)});
    }

    for (auto& hd : homotopies) {
        claim(hd.line, hd.name);
        ChainComplex on;
        try {
            on = resolve_chain(doc, hd.on);
        } catch (const Error& e) {
            throw ParseError(hd.line, "homotopy " + hd.name + ": " + e.what());
        }
        ChainHomotopy h = zero_homotopy(std::move(on));
        for (const auto& [d, lm] : hd.matrices) {
            if (d < 0 || static_cast<std::size_t>(d) >= h.h.size())
                throw ParseError(lm.first, "homotopy degree out of range");
            Matrix& slot = h.h[static_cast<std::size_t>(d)];
            if (lm.second.rows() != slot.rows() || lm.second.cols() != slot.cols())
                throw ParseError(lm.first, "homotopy matrix shape mismatch at degree " +
                                               std::to_string(d));
            slot = lm.second;
        }
        doc.homotopies.emplace(hd.name, NamedHomotopy{hd.on, std::move(h)});
    }

    return doc;
}

namespace fmt_detail {

inline void write_named_matrix(std::ostream& os, const std::string& prefix, int degree,
                               const Matrix& m) {
    if (m.is_zero()) return;
    os << prefix << "deg " << degree << ": " << m.rows() << " x " << m.cols() << "\n";
    write_matrix(os, m);
}

}  // namespace fmt_detail

inline std::string serialize(const DocumentModel& doc) {
    std::ostringstream os;
    bool first = true;
    auto gap = [&] {
        if (!first) os << "\n";
        first = false;
    };
    for (const auto& [name, core] : doc.cores) {
        gap();
        os << "[core " << name << "]\n";
        for (int d = 0; d <= core.chain.max_degree(); ++d)
            for (const auto& id : core.chain.cells[static_cast<std::size_t>(d)])
                os << "cell " << id << " dim=" << d << "\n";
        for (int d = 1; d <= core.chain.max_degree(); ++d)
            fmt_detail::write_named_matrix(os, "", d, *core.chain.boundary_at(d));
    }
    for (const auto& [name, x] : doc.complexes) {
        gap();
        os << "[complex " << name << " core=" << x.core.name << "]\n";
        for (const auto* e : x.all_cells())
            os << "cell " << e->id << " dim=" << e->a_dim << " layer=" << e->layer << "\n";
        for (const auto* e : x.all_cells()) {
            if (!e->attach) continue;
            for (int d = 0; d <= e->attach->source.max_degree(); ++d)
                fmt_detail::write_named_matrix(os, "attach " + e->id + " ", d,
                                               e->attach->maps[static_cast<std::size_t>(d)]);
        }
    }
    for (const auto& [name, nm] : doc.maps) {
        gap();
        os << "[map " << name << " from=" << nm.from << " to=" << nm.to << "]\n";
        for (std::size_t d = 0; d < nm.map.maps.size(); ++d)
            fmt_detail::write_named_matrix(os, "", static_cast<int>(d), nm.map.maps[d]);
    }
    for (const auto& [name, nh] : doc.homotopies) {
        gap();
        os << "[homotopy " << name << " on=" << nh.on << "]\n";
        for (std::size_t d = 0; d < nh.homotopy.h.size(); ++d)
            fmt_detail::write_named_matrix(os, "", static_cast<int>(d), nh.homotopy.h[d]);
    }
    return os.str();
}

}  // namespace cwa
