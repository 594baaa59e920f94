#include "tsd/catalog.hpp"

#include <sstream>

#include "tsd/builder.hpp"
#include "tsd/invariants.hpp"
#include "tsd/moves.hpp"

namespace tsd {

namespace {

ShadowDiagram make_diagram(const std::vector<std::vector<Dart>>& rotations,
                           const std::vector<Dart>& opp,
                           const std::vector<StrandColor>& edge_colors_by_min_dart,
                           std::array<int, 3> k) {
    ShadowDiagram d;
    d.map = CombinatorialMap::from_rotations(rotations, opp);
    d.dart_color.resize(d.map.dart_count());
    for (Dart x = 0; x < d.map.dart_count(); ++x)
        d.dart_color[x] = edge_colors_by_min_dart[d.map.edge_of(x)];
    d.claimed_k = k;
    return d;
}

// Flat torus with one horizontal and one vertical curve crossing once;
// rotation at the crossing is (east, north, west, south).
ShadowDiagram one_crossing_torus(StrandColor horizontal, StrandColor vertical) {
    return make_diagram({{0, 2, 1, 3}}, {1, 0, 3, 2}, {horizontal, vertical}, {0, 0, 0});
}

// Genus-one diagram with curve slopes 0, infinity and 1: the third curve is
// routed diagonally across both others.
ShadowDiagram three_slope_torus() {
    ShadowDiagram base = one_crossing_torus(StrandColor::curve(SystemLabel::A),
                                            StrandColor::curve(SystemLabel::B));
    return route_curve(base, {0, 2}, StrandColor::curve(SystemLabel::C));
}

// Sphere with two bridge points joined by one arc of each system.
ShadowDiagram theta_sphere() {
    return make_diagram({{0, 2, 4}, {1, 5, 3}}, {1, 0, 3, 2, 5, 4},
                        {StrandColor::arc(SystemLabel::A), StrandColor::arc(SystemLabel::B),
                         StrandColor::arc(SystemLabel::C)},
                        {0, 0, 0});
}

// The complete graph on four bridge points drawn on the sphere; the three
// perfect matchings are the three arc systems.
ShadowDiagram tetrahedron_sphere() {
    // vertices 1..4 at the corners of a square, edge 2-4 routed outside.
    // darts: e12:0,1  e34:2,3  e13:4,5  e24:6,7  e14:8,9  e23:10,11
    return make_diagram(
        {{0, 8, 4}, {6, 1, 10}, {11, 5, 2}, {3, 9, 7}},
        {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10},
        {StrandColor::arc(SystemLabel::A), StrandColor::arc(SystemLabel::A),
         StrandColor::arc(SystemLabel::B), StrandColor::arc(SystemLabel::B),
         StrandColor::arc(SystemLabel::C), StrandColor::arc(SystemLabel::C)},
        {0, 0, 0});
}

// Torus carrying three parallel curves, one per system, made cellular by a
// transverse scaffold circle.
ShadowDiagram parallel_curves_torus() {
    // crossings c1,c2,c3; horizontal loops h1:0,1 h2:2,3 h3:4,5;
    // scaffold s12:6,7 s23:8,9 s31:10,11
    return make_diagram(
        {{0, 6, 1, 11}, {2, 8, 3, 7}, {4, 10, 5, 9}},
        {1, 0, 3, 2, 5, 4, 7, 6, 9, 8, 11, 10},
        {StrandColor::curve(SystemLabel::A), StrandColor::curve(SystemLabel::B),
         StrandColor::curve(SystemLabel::C), StrandColor::scaffold(), StrandColor::scaffold(),
         StrandColor::scaffold()},
        {1, 1, 1});
}

// Sphere with only a scaffold circle: the b = 0 genus-0 diagram.
ShadowDiagram bare_sphere() {
    // scaffold loop crossing itself is not allowed; use a two-vertex bigon.
    return make_diagram({{0, 2}, {1, 3}}, {1, 0, 3, 2},
                        {StrandColor::scaffold(), StrandColor::scaffold()}, {0, 0, 0});
}

// Two disjoint 1-bridge spheres on one central sphere: a pair of theta
// graphs tied together by a scaffold circle crossing each C arc twice
// (a circle must meet each theta an even number of times on a sphere).
ShadowDiagram split_spheres_sphere() {
    auto arc = [](SystemLabel s) { return StrandColor::arc(s); };
    std::vector<Dart> opp(28);
    for (int i = 0; i < 28; i += 2) {
        opp[i] = i + 1;
        opp[i + 1] = i;
    }
    return make_diagram(
        {{0, 2, 4},
         {1, 9, 3},
         {10, 12, 14},
         {11, 19, 13},
         {5, 20, 6, 27},
         {15, 22, 16, 21},
         {17, 23, 18, 24},
         {7, 25, 8, 26}},
        opp,
        {arc(SystemLabel::A), arc(SystemLabel::B), arc(SystemLabel::C), arc(SystemLabel::C),
         arc(SystemLabel::C), arc(SystemLabel::A), arc(SystemLabel::B), arc(SystemLabel::C),
         arc(SystemLabel::C), arc(SystemLabel::C), StrandColor::scaffold(), StrandColor::scaffold(),
         StrandColor::scaffold(), StrandColor::scaffold()},
        {0, 0, 0});
}

// One torus block of the standard genus-3 diagram: two parallel horizontal
// curves and one dual vertical curve.
ShadowDiagram stabilization_block(StrandColor parallel1, StrandColor parallel2, StrandColor dual) {
    ShadowDiagram base = one_crossing_torus(parallel1, dual);
    return route_curve(base, {2}, parallel2);
}

ShadowDiagram s4_genus3_diagram() {
    auto b1 = stabilization_block(StrandColor::curve(SystemLabel::A),
                                  StrandColor::curve(SystemLabel::B),
                                  StrandColor::curve(SystemLabel::C));
    auto b2 = stabilization_block(StrandColor::curve(SystemLabel::B),
                                  StrandColor::curve(SystemLabel::C),
                                  StrandColor::curve(SystemLabel::A));
    auto b3 = stabilization_block(StrandColor::curve(SystemLabel::C),
                                  StrandColor::curve(SystemLabel::A),
                                  StrandColor::curve(SystemLabel::B));
    auto s12 = connect_sum_diagrams(b1, 0, b2, 0);
    auto out = connect_sum_diagrams(s12, 0, b3, 0);
    out.claimed_k = {1, 1, 1};
    return out;
}

// Genus-two bare diagram with all three pairings unimodular: two one-handle
// blocks joined by a tube, with the third system routed through the tube.
ShadowDiagram s2xs2_genus2_diagram() {
    auto t1 = one_crossing_torus(StrandColor::curve(SystemLabel::A),
                                 StrandColor::curve(SystemLabel::B));
    auto t2 = one_crossing_torus(StrandColor::curve(SystemLabel::A),
                                 StrandColor::curve(SystemLabel::B));
    ShadowDiagram g2 = connect_sum_diagrams(t1, 0, t2, 0);

    auto scaffold_or = [&](const ShadowDiagram& d, Dart extra1, Dart extra2) {
        std::vector<char> ok(d.map.dart_count(), 0);
        for (Dart x = 0; x < d.map.dart_count(); ++x)
            if (d.color(x).is_scaffold()) ok[x] = ok[d.map.opp(x)] = 1;
        if (extra1 != kNoDart) ok[extra1] = ok[d.map.opp(extra1)] = 1;
        if (extra2 != kNoDart) ok[extra2] = ok[d.map.opp(extra2)] = 1;
        return ok;
    };
    auto curve_dart = [&](const ShadowDiagram& d, SystemLabel sys, int which) {
        StrandSet strands = StrandSet::extract(d);
        int seen = 0;
        for (const auto& st : strands.all()) {
            if (st.color.is_scaffold() || st.color.kind != StrandKind::Curve ||
                st.color.system != sys)
                continue;
            if (seen++ == which) return *std::min_element(st.edge_darts.begin(), st.edge_darts.end());
        }
        throw MapError("curve lookup failed");
    };

    // First gamma curve: crosses the beta curve of block 1 and the alpha
    // curve of block 2 once each, reaching across the tube on scaffold.
    auto route_through = [&](const ShadowDiagram& d, Dart c1, Dart c2) {
        auto ok = scaffold_or(d, kNoDart, kNoDart);
        auto leg1 = shortest_dual_path(d.map, {d.map.face_of(d.map.opp(c1))},
                                       {d.map.face_of(c2)}, ok);
        if (!leg1) throw MapError("no route for the first leg");
        auto leg2 = shortest_dual_path(d.map, {d.map.face_of(d.map.opp(c2))},
                                       {d.map.face_of(c1)}, ok);
        if (!leg2) throw MapError("no route for the second leg");
        std::vector<Dart> crossings;
        crossings.push_back(c1);
        for (Dart x : leg1->crossings) crossings.push_back(x);
        crossings.push_back(c2);
        for (Dart x : leg2->crossings) crossings.push_back(x);
        // Legs may reuse an edge between them; the router will reject if so.
        return route_curve(d, crossings, StrandColor::curve(SystemLabel::C));
    };

    Dart beta1 = curve_dart(g2, SystemLabel::B, 0);
    Dart alpha2 = curve_dart(g2, SystemLabel::A, 1);
    ShadowDiagram with_g1 = route_through(g2, beta1, alpha2);

    Dart alpha1 = curve_dart(with_g1, SystemLabel::A, 0);
    Dart beta2 = curve_dart(with_g1, SystemLabel::B, 1);
    ShadowDiagram out = route_through(with_g1, alpha1, beta2);
    out.claimed_k = {0, 0, 0};
    return out;
}

ShadowDiagram doubly_point_in_faces(const ShadowDiagram& curves, int f1, int f2) {
    ShadowDiagram d = complete_doubly_pointed(curves, f1, f2, SystemLabel::A);
    d = complete_doubly_pointed(d, SystemLabel::B);
    d = complete_doubly_pointed(d, SystemLabel::C);
    return d;
}

CatalogEntry entry(std::string name, ShadowDiagram d, int g, std::array<int, 3> k, int b,
                   std::array<int, 3> c, int n, std::string note) {
    CatalogEntry e;
    e.name = std::move(name);
    e.diagram = std::move(d);
    e.expected = make_tuple(g, k, b, c);
    e.efficient_claimed = b >= 1;
    e.expected_components = n;
    e.note = std::move(note);
    return e;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;

    out.push_back(entry("unknotted_sphere_S4", theta_sphere(), 0, {0, 0, 0}, 1, {1, 1, 1}, 1,
                        "unknotted 2-sphere in the 4-sphere, 1-bridge position"));

    out.push_back(entry("crosscap_S4", tetrahedron_sphere(), 0, {0, 0, 0}, 2, {1, 1, 1}, 1,
                        "standard cross-cap (unknotted projective plane) in the 4-sphere"));

    ShadowDiagram cp2_curves = three_slope_torus();
    out.push_back(entry("cp2_genus1", cp2_curves, 1, {0, 0, 0}, 0, {0, 0, 0}, 0,
                        "genus-one trisection diagram of the complex projective plane"));
    out.push_back(entry("cp2bar_genus1", mirror_diagram(cp2_curves), 1, {0, 0, 0}, 0, {0, 0, 0}, 0,
                        "mirror genus-one trisection diagram"));

    ShadowDiagram cp1 = doubly_point_in_faces(cp2_curves, 0, 1);
    out.push_back(entry("cp1_in_cp2", cp1, 1, {0, 0, 0}, 1, {1, 1, 1}, 1,
                        "complex line in the projective plane, doubly pointed"));

    ShadowDiagram quadric = doubly_point_in_faces(cp2_curves, 0, 2);
    out.push_back(entry("quadric_in_cp2", quadric, 1, {0, 0, 0}, 1, {1, 1, 1}, 1,
                        "degree-two complex curve in the projective plane, doubly pointed"));

    out.push_back(entry("s1xs3_genus1", parallel_curves_torus(), 1, {1, 1, 1}, 0, {0, 0, 0}, 0,
                        "genus-one trisection diagram of the circle times the 3-sphere"));

    ShadowDiagram s2xs2 = s2xs2_genus2_diagram();
    out.push_back(entry("s2xs2_genus2", s2xs2, 2, {0, 0, 0}, 0, {0, 0, 0}, 0,
                        "genus-two trisection diagram of the sphere product"));

    out.push_back(entry("s2xs2_fiber", doubly_point_in_faces(s2xs2, 0, 1), 2, {0, 0, 0}, 1,
                        {1, 1, 1}, 1, "sphere fiber in the sphere product, doubly pointed"));

    ShadowDiagram c11 = connect_sum_pairs_first_points(cp1, mirror_diagram(cp1));
    out.push_back(entry("c11_twisted", c11, 2, {0, 0, 0}, 1, {1, 1, 1}, 1,
                        "(1,1)-sphere in the twisted sphere bundle, sum of the line with its mirror"));

    ShadowDiagram rp2 = connect_sum_pairs_first_points(cp1, tetrahedron_sphere());
    out.push_back(entry("rp2_in_cp2", rp2, 1, {0, 0, 0}, 2, {1, 1, 1}, 1,
                        "real projective plane in the complex projective plane"));

    out.push_back(entry("s4_genus0", bare_sphere(), 0, {0, 0, 0}, 0, {0, 0, 0}, 0,
                        "genus-zero trisection diagram of the 4-sphere"));

    out.push_back(entry("split_spheres_S4", split_spheres_sphere(), 0, {0, 0, 0}, 2, {2, 2, 2}, 2,
                        "two-component unlink of spheres in the 4-sphere"));

    out.push_back(entry("s4_genus3", s4_genus3_diagram(), 3, {1, 1, 1}, 0, {0, 0, 0}, 0,
                        "standard genus-three trisection diagram of the 4-sphere"));

    return out;
}

} // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_get(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return e;
    std::ostringstream os;
    os << "unknown catalog entry '" << name << "'; known entries:";
    for (const auto& e : catalog_entries()) os << " " << e.name;
    throw PreconditionError(os.str());
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto& e : catalog_entries()) names.push_back(e.name);
    return names;
}

CatalogVerifyResult catalog_verify_all() {
    CatalogVerifyResult res;
    const auto& entries = catalog_entries();
    if (entries.empty()) {
        res.failures.push_back("warning: registry is empty (vacuous pass)");
        return res;
    }
    for (const auto& e : entries) {
        ++res.entries_checked;
        auto bad = [&](const std::string& why) {
            res.ok = false;
            res.failures.push_back(e.name + ": " + why);
        };
        ValidationReport rep = validate(e.diagram);
        if (!rep.accepted()) {
            bad("validation failed\n" + rep.summary());
            continue;
        }
        if (!rep.k_ok()) bad("homological k-check failed");
        ComplexityTuple t = complexity(e.diagram);
        if (!(t == e.expected))
            bad("tuple " + t.to_string() + " != expected " + e.expected.to_string());
        int n = component_count(e.diagram);
        if (n != e.expected_components)
            bad("component count " + std::to_string(n) + " != expected " +
                std::to_string(e.expected_components));
        if (t.b >= 1) {
            std::int64_t chi = euler_char_surface(t);
            std::int64_t chi_expected = euler_char_surface(e.expected);
            if (chi != chi_expected) bad("surface Euler characteristic mismatch");
            if (is_efficient(e.diagram) != e.efficient_claimed) bad("efficiency flag mismatch");
        }
    }
    return res;
}

} // namespace tsd
