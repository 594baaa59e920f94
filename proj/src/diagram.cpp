#include "tsd/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tsd {

const char* const kAcceptanceScopeNote =
    "accepted: combinatorially well-formed shadow diagram; acceptance does not certify "
    "that the spine closes to a generalized bridge trisection (unlink conditions in the "
    "sector boundaries are not combinatorially decidable)";

std::string StrandColor::token() const {
    if (is_scaffold()) return "scaffold";
    if (kind == StrandKind::Curve) {
        switch (system) {
            case SystemLabel::A: return "alpha";
            case SystemLabel::B: return "beta";
            default: return "gamma";
        }
    }
    switch (system) {
        case SystemLabel::A: return "arc_a";
        case SystemLabel::B: return "arc_b";
        default: return "arc_c";
    }
}

std::optional<StrandColor> StrandColor::from_token(const std::string& tok) {
    if (tok == "alpha") return curve(SystemLabel::A);
    if (tok == "beta") return curve(SystemLabel::B);
    if (tok == "gamma") return curve(SystemLabel::C);
    if (tok == "arc_a") return arc(SystemLabel::A);
    if (tok == "arc_b") return arc(SystemLabel::B);
    if (tok == "arc_c") return arc(SystemLabel::C);
    if (tok == "scaffold") return scaffold();
    return std::nullopt;
}

const char* vertex_kind_name(VertexKind k) {
    switch (k) {
        case VertexKind::Bridge: return "bridge";
        case VertexKind::Crossing: return "crossing";
        default: return "marker";
    }
}

std::vector<std::int32_t> ShadowDiagram::color_codes() const {
    std::vector<std::int32_t> codes(dart_color.size());
    for (size_t i = 0; i < dart_color.size(); ++i) codes[i] = dart_color[i].code();
    return codes;
}

std::vector<std::int32_t> ShadowDiagram::canonical_key() const {
    auto codes = color_codes();
    auto key = map.canonical_key(&codes);
    key.push_back(claimed_k[0]);
    key.push_back(claimed_k[1]);
    key.push_back(claimed_k[2]);
    return key;
}

std::optional<VertexKind> classify_vertex(const ShadowDiagram& d, int vertex) {
    switch (d.map.vertex_valence(vertex)) {
        case 2: return VertexKind::Marker;
        case 3: return VertexKind::Bridge;
        case 4: return VertexKind::Crossing;
        default: return std::nullopt;
    }
}

std::vector<int> bridge_points(const ShadowDiagram& d) {
    std::vector<int> out;
    for (int v = 0; v < d.map.vertex_count(); ++v)
        if (d.map.vertex_valence(v) == 3) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Strand extraction

namespace {

struct DartUF {
    std::vector<int> parent;
    explicit DartUF(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

StrandSet StrandSet::extract(const ShadowDiagram& d, std::string* error) {
    const int n = d.map.dart_count();
    if (static_cast<int>(d.dart_color.size()) != n) throw MapError("color table size mismatch");
    for (Dart x = 0; x < n; ++x)
        if (!(d.dart_color[x] == d.dart_color[d.map.opp(x)]))
            throw MapError("edge colors inconsistent across opp at dart " + std::to_string(x));

    DartUF uf(n);
    for (Dart x = 0; x < n; ++x) uf.unite(x, d.map.opp(x));
    for (int v = 0; v < d.map.vertex_count(); ++v) {
        const auto& rot = d.map.vertex_darts(v);
        if (rot.size() == 2) {
            uf.unite(rot[0], rot[1]);
        } else if (rot.size() == 4) {
            uf.unite(rot[0], rot[2]);
            uf.unite(rot[1], rot[3]);
        }
        // Bridge (valence 3) and malformed vertices join nothing; strands end
        // or the validator rejects.
    }

    StrandSet out;
    out.strand_of_dart_.assign(n, -1);
    std::map<int, int> root_to_id;
    for (Dart x = 0; x < n; ++x) {
        int r = uf.find(x);
        auto [it, fresh] = root_to_id.try_emplace(r, static_cast<int>(out.strands_.size()));
        if (fresh) {
            Strand s;
            s.id = it->second;
            s.color = d.dart_color[x];
            out.strands_.push_back(std::move(s));
        }
        out.strand_of_dart_[x] = it->second;
        Strand& s = out.strands_[it->second];
        if (!(d.dart_color[x] == s.color) && error && error->empty())
            *error = "strand through dart " + std::to_string(x) + " mixes colors " +
                     s.color.token() + " and " + d.dart_color[x].token();
        if (x < d.map.opp(x)) s.edge_darts.push_back(x);
    }

    // Endpoints at bridge vertices; closed otherwise.
    for (auto& s : out.strands_) s.closed = true;
    for (int v = 0; v < d.map.vertex_count(); ++v) {
        if (d.map.vertex_valence(v) != 3) continue;
        for (Dart x : d.map.vertex_darts(v)) {
            Strand& s = out.strands_[out.strand_of_dart_[x]];
            s.closed = false;
            if (s.endpoints[0] < 0) s.endpoints[0] = v;
            else if (s.endpoints[1] < 0) s.endpoints[1] = v;
            else if (error && error->empty())
                *error = "strand " + std::to_string(s.id) + " has more than two endpoints";
        }
    }
    return out;
}

std::vector<Dart> StrandSet::curve_direction(const ShadowDiagram& d, int id) const {
    const Strand& s = strands_[id];
    Dart start = kNoDart;
    for (Dart e : s.edge_darts) start = std::min(start == kNoDart ? e : start, std::min(e, d.map.opp(e)));
    std::vector<Dart> walk;
    Dart w = start;
    do {
        walk.push_back(w);
        Dart arrive = d.map.opp(w);
        const auto& rot = d.map.vertex_darts(d.map.vertex_of(arrive));
        if (rot.size() == 2) {
            w = arrive == rot[0] ? rot[1] : rot[0];
        } else if (rot.size() == 4) {
            auto pos = std::find(rot.begin(), rot.end(), arrive) - rot.begin();
            w = rot[(pos + 2) % 4];
        } else {
            throw PreconditionError("curve traversal hit a strand endpoint");
        }
        if (walk.size() > s.edge_darts.size() + 1) throw MapError("curve traversal does not close");
    } while (w != start);
    return walk;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

ConditionResult pass(std::string name) { return {std::move(name), true, "", -1}; }
ConditionResult fail(std::string name, std::string detail, int witness = -1) {
    return {std::move(name), false, std::move(detail), witness};
}

// Count alternating circuits of two perfect matchings on 0..n-1: cycles of
// the composed permutation come in mirror pairs, one pair per circuit.
int matching_circuits(const std::vector<int>& m1, const std::vector<int>& m2) {
    const int n = static_cast<int>(m1.size());
    std::vector<char> seen(n, 0);
    int cycles = 0;
    for (int p = 0; p < n; ++p) {
        if (seen[p]) continue;
        ++cycles;
        int q = p;
        while (!seen[q]) {
            seen[q] = 1;
            q = m1[m2[q]];
        }
    }
    return cycles / 2;
}

} // namespace

ValidationReport validate(const ShadowDiagram& d) {
    ValidationReport rep;
    auto& C = rep.conditions;
    C.reserve(6);

    // W1: closed connected surface.
    if (d.map.empty()) {
        C.push_back(fail("W1", "empty map"));
    } else if (d.map.component_count() != 1) {
        C.push_back(fail("W1", "map has " + std::to_string(d.map.component_count()) + " components"));
    } else {
        rep.genus = d.map.genus();
        C.push_back(pass("W1"));
    }
    if (!C[0].passed) {
        C.push_back(fail("W2", "not evaluated"));
        C.push_back(fail("W3", "not evaluated"));
        C.push_back(fail("W4", "not evaluated"));
        C.push_back(fail("W5", "not evaluated"));
        C.push_back(fail("W6", "not evaluated"));
        for (int i = 0; i < 3; ++i) rep.k_checks[i] = fail("k" + std::to_string(i + 1), "not evaluated");
        return rep;
    }

    std::string strand_error;
    StrandSet strands = StrandSet::extract(d, &strand_error);

    // Vertex classification. Valences other than 2/3/4 fail W4 (they are
    // neither bridge nor marker, so they must be transverse crossings).
    ConditionResult w4 = pass("W4");
    ConditionResult w6 = pass("W6");
    for (int v = 0; v < d.map.vertex_count() && w4.passed && w6.passed; ++v) {
        const auto& rot = d.map.vertex_darts(v);
        switch (rot.size()) {
            case 2: {
                if (!(d.color(rot[0]) == d.color(rot[1])))
                    w6 = fail("W6", "marker joins different colors", v);
                break;
            }
            case 3:
                break;  // bridge conditions under W3
            case 4: {
                int s02 = strands.strand_of(rot[0]);
                int s13 = strands.strand_of(rot[1]);
                if (strands.strand_of(rot[2]) != s02 || strands.strand_of(rot[3]) != s13) {
                    w4 = fail("W4", "opposite darts do not continue one strand", v);
                    break;
                }
                const StrandColor a = d.color(rot[0]), b = d.color(rot[1]);
                if (s02 == s13) {
                    w4 = fail("W4", "strand crosses itself", v);
                } else if (!a.is_scaffold() && !b.is_scaffold() && a.system == b.system) {
                    w4 = fail("W4", "same-system strands cross", v);
                }
                break;
            }
            default:
                w4 = fail("W4", "vertex valence " + std::to_string(rot.size()) +
                                    " is not a bridge, crossing or marker", v);
        }
    }

    // W3: bridge points.
    ConditionResult w3 = pass("W3");
    auto bridges = bridge_points(d);
    for (int v : bridges) {
        const auto& rot = d.map.vertex_darts(v);
        bool has[3] = {false, false, false};
        bool ok = true;
        for (Dart x : rot) {
            StrandColor col = d.color(x);
            if (col.kind != StrandKind::Arc) {
                ok = false;
                break;
            }
            int sys = static_cast<int>(col.system);
            if (has[sys]) ok = false;
            has[sys] = true;
        }
        if (!(ok && has[0] && has[1] && has[2])) {
            w3 = fail("W3", "bridge point lacks one arc end of each system", v);
            break;
        }
    }
    if (w3.passed && bridges.size() % 2 != 0)
        w3 = fail("W3", "odd number of bridge points");
    rep.bridges = static_cast<int>(bridges.size()) / 2;

    // W2: strand inventory per system.
    ConditionResult w2 = pass("W2");
    if (!strand_error.empty()) w2 = fail("W2", strand_error);
    int curve_count[3] = {0, 0, 0}, arc_count[3] = {0, 0, 0};
    for (const auto& s : strands.all()) {
        if (s.color.is_scaffold()) {
            if (!s.closed && w2.passed)
                w2 = fail("W2", "scaffold strand has an endpoint", s.id);
            continue;
        }
        int sys = static_cast<int>(s.color.system);
        if (s.color.kind == StrandKind::Curve) {
            ++curve_count[sys];
            if (!s.closed && w2.passed)
                w2 = fail("W2", "curve strand has an endpoint", s.id);
        } else {
            ++arc_count[sys];
            if (w2.passed && (s.closed || s.endpoints[0] < 0 || s.endpoints[1] < 0 ||
                              s.endpoints[0] == s.endpoints[1]))
                w2 = fail("W2", "arc strand is not an embedded arc between two bridge points", s.id);
        }
    }
    if (w2.passed) {
        for (int sys = 0; sys < 3 && w2.passed; ++sys) {
            if (curve_count[sys] != rep.genus)
                w2 = fail("W2", std::string("system ") + system_name(static_cast<SystemLabel>(sys)) +
                                    " has " + std::to_string(curve_count[sys]) + " curves, expected " +
                                    std::to_string(rep.genus));
            else if (arc_count[sys] != rep.bridges)
                w2 = fail("W2", std::string("system ") + system_name(static_cast<SystemLabel>(sys)) +
                                    " has " + std::to_string(arc_count[sys]) + " arcs, expected " +
                                    std::to_string(rep.bridges));
        }
    }

    // W5: each curve system is a cut system: cutting along it leaves a
    // connected planar surface with 2g boundary circles.
    ConditionResult w5 = pass("W5");
    if (w2.passed && w3.passed && w4.passed && w6.passed) {
        for (int sys = 0; sys < 3 && w5.passed; ++sys) {
            std::vector<std::vector<Dart>> cycles;
            for (const auto& s : strands.all())
                if (!s.color.is_scaffold() && s.color.kind == StrandKind::Curve &&
                    static_cast<int>(s.color.system) == sys)
                    cycles.push_back(s.edge_darts);
            if (cycles.empty() && rep.genus == 0) continue;
            try {
                BorderedMap cut = cut_along(d.map, cycles);
                if (cut.component_count() != 1)
                    w5 = fail("W5", std::string("system ") + system_name(static_cast<SystemLabel>(sys)) +
                                        ": complement disconnected");
                else if (!cut.all_components_planar())
                    w5 = fail("W5", std::string("system ") + system_name(static_cast<SystemLabel>(sys)) +
                                        ": complement not planar");
                else if (cut.boundary_circle_count() != 2 * rep.genus)
                    w5 = fail("W5", std::string("system ") + system_name(static_cast<SystemLabel>(sys)) +
                                        ": " + std::to_string(cut.boundary_circle_count()) +
                                        " boundary circles, expected " + std::to_string(2 * rep.genus));
            } catch (const PreconditionError& e) {
                w5 = fail("W5", std::string("cut preconditions violated: ") + e.what());
            }
        }
    } else {
        w5 = fail("W5", "not evaluated");
    }

    C.push_back(std::move(w2));
    C.push_back(std::move(w3));
    C.push_back(std::move(w4));
    C.push_back(std::move(w5));
    C.push_back(std::move(w6));

    if (rep.accepted()) {
        for (int i = 1; i <= 3; ++i) {
            bool ok = k_necessary_check(d, i);
            rep.k_checks[i - 1] =
                ok ? pass("k" + std::to_string(i))
                   : fail("k" + std::to_string(i),
                          "claimed k" + std::to_string(i) + "=" + std::to_string(d.claimed_k[i - 1]) +
                              " fails the homological necessary condition");
        }
    } else {
        for (int i = 0; i < 3; ++i)
            rep.k_checks[i] = fail("k" + std::to_string(i + 1), "not evaluated (diagram rejected)");
    }
    return rep;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : conditions) {
        os << c.name << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.passed) {
            os << " (" << c.detail;
            if (c.witness >= 0) os << "; witness " << c.witness;
            os << ")";
        }
        os << "\n";
    }
    for (const auto& c : k_checks) {
        os << c.name << ": " << (c.passed ? "pass" : "FAIL");
        if (!c.passed) os << " (" << c.detail << ")";
        os << "\n";
    }
    if (accepted()) {
        os << kAcceptanceScopeNote << "\n";
        os << "computed genus " << genus << ", bridge number " << bridges << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Matchings, complexity

std::vector<int> endpoint_matching(const ShadowDiagram& d, SystemLabel s) {
    auto bridges = bridge_points(d);
    std::map<int, int> index;
    for (size_t i = 0; i < bridges.size(); ++i) index[bridges[i]] = static_cast<int>(i);
    std::vector<int> match(bridges.size(), -1);
    StrandSet strands = StrandSet::extract(d);
    for (const auto& st : strands.all()) {
        if (st.color.is_scaffold() || st.color.kind != StrandKind::Arc ||
            st.color.system != s)
            continue;
        int p = index.at(st.endpoints[0]);
        int q = index.at(st.endpoints[1]);
        match[p] = q;
        match[q] = p;
    }
    for (int v : match)
        if (v < 0) throw PreconditionError("endpoint matching incomplete; validate first");
    return match;
}

ComplexityTuple make_tuple(int g, std::array<int, 3> k, int b, std::array<int, 3> c) {
    ComplexityTuple t;
    t.g = g;
    t.k = k;
    t.b = b;
    t.c = c;
    t.balanced = (k[0] == k[1] && k[1] == k[2] && c[0] == c[1] && c[1] == c[2]);
    return t;
}

std::string ComplexityTuple::to_string() const {
    std::ostringstream os;
    os << "(" << g << ";" << k[0] << "," << k[1] << "," << k[2] << ";" << b << ";"
       << c[0] << "," << c[1] << "," << c[2] << ")";
    return os.str();
}

ComplexityTuple complexity(const ShadowDiagram& d) {
    ValidationReport rep = validate(d);
    if (!rep.accepted())
        throw PreconditionError("complexity of a rejected diagram:\n" + rep.summary());

    std::array<int, 3> c{0, 0, 0};
    if (rep.bridges > 0) {
        auto ma = endpoint_matching(d, SystemLabel::A);
        auto mb = endpoint_matching(d, SystemLabel::B);
        auto mc = endpoint_matching(d, SystemLabel::C);
        c[0] = matching_circuits(ma, mb);
        c[1] = matching_circuits(mb, mc);
        c[2] = matching_circuits(mc, ma);
    }
    ComplexityTuple t = make_tuple(rep.genus, d.claimed_k, rep.bridges, c);
    t.k_check_passed = rep.k_ok();
    return t;
}

bool is_doubly_pointed(const ShadowDiagram& d) {
    ValidationReport rep = validate(d);
    if (!rep.accepted()) throw PreconditionError("is_doubly_pointed of a rejected diagram");
    return rep.bridges == 1;
}

// ---------------------------------------------------------------------------
// Intersection pairing

IntMatrix intersection_matrix(const ShadowDiagram& d, SystemLabel s, SystemLabel t) {
    if (s == t) throw PreconditionError("intersection matrix needs two distinct systems");
    StrandSet strands = StrandSet::extract(d);

    auto curves_of = [&](SystemLabel sys) {
        std::vector<int> ids;
        for (const auto& st : strands.all())
            if (!st.color.is_scaffold() && st.color.kind == StrandKind::Curve && st.color.system == sys)
                ids.push_back(st.id);
        return ids;  // already ranked by minimal dart via strand ids
    };
    auto s_ids = curves_of(s);
    auto t_ids = curves_of(t);

    // Forward darts of every relevant curve under the canonical orientation.
    std::vector<char> forward(d.map.dart_count(), 0);
    std::vector<int> row_of(strands.count(), -1), col_of(strands.count(), -1);
    for (size_t i = 0; i < s_ids.size(); ++i) row_of[s_ids[i]] = static_cast<int>(i);
    for (size_t j = 0; j < t_ids.size(); ++j) col_of[t_ids[j]] = static_cast<int>(j);
    for (int id : s_ids)
        for (Dart w : strands.curve_direction(d, id)) forward[w] = 1;
    for (int id : t_ids)
        for (Dart w : strands.curve_direction(d, id)) forward[w] = 1;

    IntMatrix m(static_cast<int>(s_ids.size()), static_cast<int>(t_ids.size()));
    for (int v = 0; v < d.map.vertex_count(); ++v) {
        const auto& rot = d.map.vertex_darts(v);
        if (rot.size() != 4) continue;
        int st02 = strands.strand_of(rot[0]);
        int st13 = strands.strand_of(rot[1]);
        for (int flip = 0; flip < 2; ++flip) {
            int srow = flip == 0 ? st02 : st13;
            int scol = flip == 0 ? st13 : st02;
            if (row_of[srow] < 0 || col_of[scol] < 0) continue;
            // Outgoing traversal darts of each curve at this vertex.
            Dart a_dir = kNoDart, x_dir = kNoDart;
            for (Dart x : rot) {
                if (strands.strand_of(x) == srow && forward[x]) a_dir = x;
                if (strands.strand_of(x) == scol && forward[x]) x_dir = x;
            }
            if (a_dir == kNoDart || x_dir == kNoDart) throw MapError("orientation bookkeeping failed");
            int sign = d.map.next(a_dir) == x_dir ? 1 : -1;
            m.at(row_of[srow], col_of[scol]) =
                checked_add(m.at(row_of[srow], col_of[scol]), sign);
        }
    }
    return m;
}

bool k_necessary_check(const ShadowDiagram& d, int sector) {
    if (sector < 1 || sector > 3) throw PreconditionError("sector index must be 1, 2 or 3");
    static constexpr SystemLabel pair_first[3] = {SystemLabel::B, SystemLabel::B, SystemLabel::C};
    static constexpr SystemLabel pair_second[3] = {SystemLabel::A, SystemLabel::C, SystemLabel::A};
    IntMatrix m = intersection_matrix(d, pair_first[sector - 1], pair_second[sector - 1]);
    int g = d.map.genus();
    int k = d.claimed_k[sector - 1];
    if (k < 0 || k > g) return false;
    return snf_is_unit_rank(m, g - k);
}

} // namespace tsd
