#include "tsd/tsd_format.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tsd {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream is(line);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& tok, int line, const char* what) {
    try {
        size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (...) {
        throw TsdParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
    }
}

} // namespace

ParsedTsd parse_tsd(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;

    struct VertexRec {
        int id;
        VertexKind kind;
        std::vector<Dart> rotation;
        int line;
    };
    struct StrandRec {
        int id;
        StrandColor color;
        std::vector<std::pair<Dart, Dart>> edges;
        int line;
    };
    std::vector<VertexRec> vrecs;
    std::vector<StrandRec> srecs;

    bool have_magic = false, have_header = false;
    int claimed_genus = -1, claimed_bridges = -1;
    std::array<int, 3> claimed_k{0, 0, 0};

    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto toks = tokenize(line);
        if (toks.empty()) continue;

        if (!have_magic) {
            if (toks.size() != 2 || toks[0] != "tsd" || toks[1] != "1")
                throw TsdParseError(lineno, "expected format line 'tsd 1'");
            have_magic = true;
            continue;
        }
        if (toks[0] == "surface") {
            if (have_header) throw TsdParseError(lineno, "duplicate surface header");
            if (toks.size() != 9 || toks[1] != "genus" || toks[3] != "k" || toks[7] != "bridges")
                throw TsdParseError(lineno, "expected 'surface genus G k K1 K2 K3 bridges B'");
            claimed_genus = parse_int(toks[2], lineno, "genus");
            for (int i = 0; i < 3; ++i) claimed_k[i] = parse_int(toks[4 + i], lineno, "k value");
            claimed_bridges = parse_int(toks[8], lineno, "bridge count");
            have_header = true;
            continue;
        }
        if (toks[0] == "vertex") {
            if (toks.size() < 4) throw TsdParseError(lineno, "vertex record needs id, kind and darts");
            VertexRec r;
            r.id = parse_int(toks[1], lineno, "vertex id");
            r.line = lineno;
            if (toks[2] == "bridge") r.kind = VertexKind::Bridge;
            else if (toks[2] == "crossing") r.kind = VertexKind::Crossing;
            else if (toks[2] == "marker") r.kind = VertexKind::Marker;
            else throw TsdParseError(lineno, "unknown vertex kind '" + toks[2] + "'");
            for (size_t i = 3; i < toks.size(); ++i)
                r.rotation.push_back(parse_int(toks[i], lineno, "dart id"));
            vrecs.push_back(std::move(r));
            continue;
        }
        if (toks[0] == "strand") {
            if (toks.size() < 4) throw TsdParseError(lineno, "strand record needs id, color and dart pairs");
            StrandRec r;
            r.id = parse_int(toks[1], lineno, "strand id");
            r.line = lineno;
            auto col = StrandColor::from_token(toks[2]);
            if (!col) throw TsdParseError(lineno, "unknown color token '" + toks[2] + "'");
            r.color = *col;
            for (size_t i = 3; i < toks.size(); ++i) {
                auto colon = toks[i].find(':');
                if (colon == std::string::npos)
                    throw TsdParseError(lineno, "edge must be written as DART:DART");
                Dart a = parse_int(toks[i].substr(0, colon), lineno, "dart id");
                Dart b = parse_int(toks[i].substr(colon + 1), lineno, "dart id");
                r.edges.emplace_back(a, b);
            }
            srecs.push_back(std::move(r));
            continue;
        }
        throw TsdParseError(lineno, "unknown record '" + toks[0] + "'");
    }
    if (!have_magic) throw TsdParseError(lineno, "empty input; expected 'tsd 1'");
    if (!have_header) throw TsdParseError(lineno, "missing surface header");
    if (vrecs.empty()) throw TsdParseError(lineno, "no vertex records");

    // Dart universe: every dart exactly once in rotations, exactly once in
    // strand pairs.
    std::map<Dart, int> seen_rotation;  // dart -> line
    int max_dart = -1;
    for (const auto& r : vrecs)
        for (Dart d : r.rotation) {
            if (d < 0) throw TsdParseError(r.line, "negative dart id");
            if (!seen_rotation.emplace(d, r.line).second)
                throw TsdParseError(r.line, "dart " + std::to_string(d) + " appears in two rotations");
            max_dart = std::max(max_dart, d);
        }
    const int n = max_dart + 1;
    if (static_cast<int>(seen_rotation.size()) != n)
        throw TsdParseError(lineno, "dart ids are not dense: " + std::to_string(seen_rotation.size()) +
                                        " darts but largest id is " + std::to_string(max_dart));
    if (n % 2 != 0) throw TsdParseError(lineno, "odd number of darts");

    std::vector<Dart> opp(n, kNoDart);
    std::vector<StrandColor> color(n);
    for (const auto& r : srecs)
        for (auto [a, b] : r.edges) {
            for (Dart d : {a, b}) {
                if (d < 0 || d >= n)
                    throw TsdParseError(r.line, "dart " + std::to_string(d) + " not in any rotation");
                if (opp[d] != kNoDart)
                    throw TsdParseError(r.line, "dart " + std::to_string(d) + " used by two edges");
            }
            if (a == b) throw TsdParseError(r.line, "edge pairs a dart with itself");
            opp[a] = b;
            opp[b] = a;
            color[a] = r.color;
            color[b] = r.color;
        }
    for (Dart d = 0; d < n; ++d)
        if (opp[d] == kNoDart)
            throw TsdParseError(seen_rotation.at(d),
                                "dangling dart " + std::to_string(d) + ": not part of any edge");

    ParsedTsd out;
    std::vector<std::vector<Dart>> rotations;
    for (const auto& r : vrecs) rotations.push_back(r.rotation);
    out.diagram.map = CombinatorialMap::from_rotations(rotations, opp);
    out.diagram.dart_color = std::move(color);
    out.diagram.claimed_k = claimed_k;

    // Record lines by canonical ids (vertices ranked by minimal dart).
    out.vertex_line.assign(out.diagram.map.vertex_count(), -1);
    std::vector<VertexKind> declared(out.diagram.map.vertex_count());
    for (const auto& r : vrecs) {
        int vid = out.diagram.map.vertex_of(r.rotation[0]);
        out.vertex_line[vid] = r.line;
        declared[vid] = r.kind;
    }

    out.report = validate(out.diagram);

    // Declared kinds must match the derived classification.
    for (int v = 0; v < out.diagram.map.vertex_count(); ++v) {
        auto derived = classify_vertex(out.diagram, v);
        if (derived && *derived != declared[v])
            out.header_mismatches.push_back(
                "line " + std::to_string(out.vertex_line[v]) + ": vertex declared " +
                vertex_kind_name(declared[v]) + " but has the structure of a " +
                vertex_kind_name(*derived));
    }
    if (out.report.conditions[0].passed) {
        if (out.report.genus != claimed_genus)
            out.header_mismatches.push_back("header claims genus " + std::to_string(claimed_genus) +
                                            " but the map has genus " + std::to_string(out.report.genus));
        if (out.report.bridges != claimed_bridges)
            out.header_mismatches.push_back("header claims " + std::to_string(claimed_bridges) +
                                            " bridges but the diagram has " +
                                            std::to_string(out.report.bridges));
    }
    for (const auto& r : srecs) out.strand_line.push_back(r.line);
    return out;
}

std::string serialize_tsd(const ShadowDiagram& d) {
    std::ostringstream os;
    os << "tsd 1\n";

    int genus = -1, bridges = -1;
    if (!d.map.empty() && d.map.component_count() == 1) genus = d.map.genus();
    bridges = static_cast<int>(bridge_points(d).size()) / 2;
    os << "surface genus " << genus << " k " << d.claimed_k[0] << " " << d.claimed_k[1] << " "
       << d.claimed_k[2] << " bridges " << bridges << "\n";

    for (int v = 0; v < d.map.vertex_count(); ++v) {
        auto kind = classify_vertex(d, v);
        os << "vertex " << v << " " << (kind ? vertex_kind_name(*kind) : "crossing");
        for (Dart x : d.map.vertex_darts(v)) os << " " << x;
        os << "\n";
    }

    StrandSet strands = StrandSet::extract(d);
    for (const auto& s : strands.all()) {
        os << "strand " << s.id << " " << s.color.token();
        std::vector<Dart> edges = s.edge_darts;
        std::sort(edges.begin(), edges.end());
        for (Dart e : edges) os << " " << e << ":" << d.map.opp(e);
        os << "\n";
    }
    return os.str();
}

} // namespace tsd
