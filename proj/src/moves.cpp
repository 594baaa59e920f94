#include "tsd/moves.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "colored_builder.hpp"
#include "tsd/builder.hpp"
#include "tsd/catalog.hpp"
#include "tsd/invariants.hpp"

namespace tsd {

using detail::ColoredBuilder;

std::pair<SystemLabel, SystemLabel> sector_pair(int sector) {
    switch (sector) {
        case 1: return {SystemLabel::A, SystemLabel::B};
        case 2: return {SystemLabel::B, SystemLabel::C};
        case 3: return {SystemLabel::C, SystemLabel::A};
        default: throw MoveError("sector index must be 1, 2 or 3");
    }
}

SystemLabel sector_third(int sector) {
    switch (sector) {
        case 1: return SystemLabel::C;
        case 2: return SystemLabel::A;
        case 3: return SystemLabel::B;
        default: throw MoveError("sector index must be 1, 2 or 3");
    }
}

namespace {

void require_accepted(const ShadowDiagram& d, const char* move) {
    ValidationReport rep = validate(d);
    if (!rep.accepted())
        throw MoveError(std::string(move) + ": input diagram is not accepted:\n" + rep.summary());
}

void require_output_valid(const ShadowDiagram& d, const char* move) {
    ValidationReport rep = validate(d);
    if (!rep.accepted())
        throw MoveError(std::string(move) + ": move template produced an invalid diagram:\n" +
                        rep.summary());
}

// Bridge-point indexing shared by the matching helpers.
std::map<int, int> bridge_index(const ShadowDiagram& d) {
    std::map<int, int> idx;
    for (int v : bridge_points(d)) {
        int i = static_cast<int>(idx.size());
        idx[v] = i;
    }
    return idx;
}

// Disk membership for a sector: component id of each bridge point in the
// union graph of the sector pair's matchings.
std::vector<int> sector_disk_component(const ShadowDiagram& d, int sector) {
    auto [s1, s2] = sector_pair(sector);
    auto m1 = endpoint_matching(d, s1);
    auto m2 = endpoint_matching(d, s2);
    const int n = static_cast<int>(m1.size());
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int p = 0; p < n; ++p) {
        if (comp[p] >= 0) continue;
        std::vector<int> stack{p};
        comp[p] = c;
        while (!stack.empty()) {
            int q = stack.back();
            stack.pop_back();
            for (int r : {m1[q], m2[q]})
                if (comp[r] < 0) {
                    comp[r] = c;
                    stack.push_back(r);
                }
        }
        ++c;
    }
    return comp;
}

} // namespace

// ---------------------------------------------------------------------------
// Mirror

ShadowDiagram mirror_diagram(const ShadowDiagram& d) {
    require_accepted(d, "mirror");
    std::vector<std::vector<Dart>> rotations;
    for (const auto& rot : d.map.vertices()) {
        std::vector<Dart> rev(rot.rbegin(), rot.rend());
        rotations.push_back(std::move(rev));
    }
    std::vector<Dart> opp(d.map.dart_count());
    for (Dart x = 0; x < d.map.dart_count(); ++x) opp[x] = d.map.opp(x);
    ShadowDiagram out;
    out.map = CombinatorialMap::from_rotations(rotations, opp);
    out.dart_color = d.dart_color;
    out.claimed_k = d.claimed_k;
    require_output_valid(out, "mirror");
    return out;
}

// ---------------------------------------------------------------------------
// Perturbation

namespace {

// The faces reachable from `face` without crossing arcs of the two systems
// must form a disk (the perturbation rectangle lives inside it).
bool face_region_is_disk(const ShadowDiagram& d, int face, SystemLabel s1, SystemLabel s2) {
    std::vector<char> cut(d.map.dart_count(), 0);
    for (Dart x = 0; x < d.map.dart_count(); ++x) {
        StrandColor c = d.color(x);
        if (!c.is_scaffold() && c.kind == StrandKind::Arc && (c.system == s1 || c.system == s2))
            cut[x] = 1;
    }
    BorderedMap cutm = cut_along_edges(d.map, cut);
    // Original face -> cut-complex face: interiors are preserved; on the cut
    // side the face orbit contains the trailing copy of each cut dart.
    Dart probe = kNoDart;
    for (Dart x : d.map.face_darts(face))
        if (!cut[x]) {
            probe = x;
            break;
        }
    if (probe == kNoDart) probe = cutm.twin(d.map.face_darts(face)[0]);
    int comp = cutm.complex().component_of(probe);
    return cutm.genus_per_component()[comp] == 0 && cutm.boundary_circles_in_component(comp) == 1;
}

bool systems_interior_disjoint(const ShadowDiagram& d, SystemLabel s1, SystemLabel s2) {
    for (int v = 0; v < d.map.vertex_count(); ++v) {
        const auto& rot = d.map.vertex_darts(v);
        if (rot.size() != 4) continue;
        StrandColor a = d.color(rot[0]), b = d.color(rot[1]);
        auto is_pair_arc = [&](StrandColor c) {
            return !c.is_scaffold() && c.kind == StrandKind::Arc && (c.system == s1 || c.system == s2);
        };
        if (is_pair_arc(a) && is_pair_arc(b)) return false;
    }
    return true;
}

} // namespace

ShadowDiagram perturb(const ShadowDiagram& d, const PerturbSite& site) {
    require_accepted(d, "perturb");
    auto [s1, s2] = sector_pair(site.sector);
    SystemLabel s3 = sector_third(site.sector);

    auto check_site_dart = [&](Dart x, SystemLabel want) {
        if (x < 0 || x >= d.map.dart_count()) throw MoveError("perturb: site dart out of range");
        StrandColor c = d.color(x);
        if (c.is_scaffold() || c.kind != StrandKind::Arc || c.system != want)
            throw MoveError(std::string("perturb: site dart is not on an arc of system ") +
                            system_name(want));
        if (d.map.face_of(x) != site.face)
            throw MoveError("perturb: site dart does not border the chosen face");
    };
    check_site_dart(site.on_first_arc, s1);
    check_site_dart(site.on_second_arc, s2);

    if (!systems_interior_disjoint(d, s1, s2))
        throw MoveError(std::string("perturb: arc systems ") + system_name(s1) + " and " +
                        system_name(s2) +
                        " are not interior-disjoint; standardize first with disk-slides");
    if (!face_region_is_disk(d, site.face, s1, s2))
        throw MoveError("perturb: the chosen face does not lie in a disk cut out by the two arc systems");

    ColoredBuilder cb(d);
    Dart dA = site.on_first_arc, dAbar = d.map.opp(dA);
    Dart dB = site.on_second_arc, dBbar = d.map.opp(dB);
    StrandColor colA = StrandColor::arc(s1), colB = StrandColor::arc(s2), colC = StrandColor::arc(s3);

    // p1 takes the source half of the first arc and the target half of the
    // second; p2 the complementary halves. The third-system arc joins them.
    Dart n1 = cb.new_dart(colA), n2 = cb.new_dart(colA);
    Dart m1 = cb.new_dart(colB), m2 = cb.new_dart(colB);
    Dart c1 = cb.new_dart(colC), c2 = cb.new_dart(colC);
    cb.b.set_opp(dA, n1);
    cb.b.set_opp(dAbar, n2);
    cb.b.set_opp(dBbar, m1);
    cb.b.set_opp(dB, m2);
    cb.b.set_opp(c1, c2);
    cb.b.isolate(n1);                // p1 rotation (n1, m1, c1)
    cb.b.insert_after(n1, m1);
    cb.b.insert_after(m1, c1);
    cb.b.isolate(n2);                // p2 rotation (n2, c2, m2)
    cb.b.insert_after(n2, c2);
    cb.b.insert_after(c2, m2);

    ShadowDiagram out = cb.finalize(d.claimed_k);
    require_output_valid(out, "perturb");
    return out;
}

ShadowDiagram unperturb(const ShadowDiagram& d, int third_arc_strand) {
    require_accepted(d, "unperturb");
    StrandSet strands = StrandSet::extract(d);
    if (third_arc_strand < 0 || third_arc_strand >= strands.count())
        throw MoveError("unperturb: no such strand");
    const Strand& arc = strands.strand(third_arc_strand);
    if (arc.color.is_scaffold() || arc.color.kind != StrandKind::Arc)
        throw MoveError("unperturb: chosen strand is not an arc");
    int sector = arc.color.system == SystemLabel::C ? 1 : (arc.color.system == SystemLabel::A ? 2 : 3);
    auto [s1, s2] = sector_pair(sector);

    const char* mismatch = "unperturb: not an elementary perturbation site";
    if (arc.edge_darts.size() != 1) throw MoveError(mismatch);
    Dart c1 = arc.edge_darts[0], c2 = d.map.opp(c1);
    int p1 = d.map.vertex_of(c1), p2 = d.map.vertex_of(c2);
    if (p1 == p2 || d.map.vertex_valence(p1) != 3 || d.map.vertex_valence(p2) != 3)
        throw MoveError(mismatch);

    // Template rotations: p1 = (c', A, B) and p2 = (c', B, A) cyclically.
    // Mirroring swaps the two endpoint patterns, so try both role
    // assignments of the arc's ends.
    auto sys_of = [&](Dart x) -> std::optional<SystemLabel> {
        StrandColor c = d.color(x);
        if (c.is_scaffold() || c.kind != StrandKind::Arc) return std::nullopt;
        return c.system;
    };
    Dart a1 = d.map.next(c1), b1 = d.map.next(a1);
    Dart b2 = d.map.next(c2), a2 = d.map.next(b2);
    if (sys_of(a1) != s1 || sys_of(b1) != s2 || sys_of(b2) != s2 || sys_of(a2) != s1) {
        std::swap(c1, c2);
        a1 = d.map.next(c1);
        b1 = d.map.next(a1);
        b2 = d.map.next(c2);
        a2 = d.map.next(b2);
        if (sys_of(a1) != s1 || sys_of(b1) != s2 || sys_of(b2) != s2 || sys_of(a2) != s1)
            throw MoveError(mismatch);
        p1 = d.map.vertex_of(c1);
        p2 = d.map.vertex_of(c2);
    }
    if (d.map.edge_of(a1) == d.map.edge_of(a2) || d.map.edge_of(b1) == d.map.edge_of(b2))
        throw MoveError(mismatch);

    // The two bridge points must sit on different sector disks, otherwise
    // removing them cannot lower the disk count.
    auto idx = bridge_index(d);
    auto comp = sector_disk_component(d, sector);
    if (comp[idx.at(p1)] == comp[idx.at(p2)]) throw MoveError(mismatch);

    ColoredBuilder cb(d);
    Dart ua = d.map.opp(a1), wa = d.map.opp(a2);
    Dart ub = d.map.opp(b1), wb = d.map.opp(b2);
    cb.b.kill_vertex(c1);
    cb.b.kill_vertex(c2);
    cb.b.set_opp(ua, wa);
    cb.b.set_opp(ub, wb);

    ShadowDiagram out = cb.finalize(d.claimed_k);
    require_output_valid(out, "unperturb");
    return out;
}

// ---------------------------------------------------------------------------
// Meridional stabilization

ShadowDiagram meridional_stabilize(const ShadowDiagram& d, const MStabSite& site) {
    require_accepted(d, "meridional_stabilize");
    SystemLabel s3 = sector_third(site.sector);

    StrandSet strands = StrandSet::extract(d);
    if (site.arc_strand < 0 || site.arc_strand >= strands.count())
        throw MoveError("meridional_stabilize: no such strand");
    const Strand& arc = strands.strand(site.arc_strand);
    if (arc.color.is_scaffold() || arc.color.kind != StrandKind::Arc || arc.color.system != s3)
        throw MoveError(std::string("meridional_stabilize: stabilizing arc must belong to system ") +
                        system_name(s3));

    // End darts of the arc at its two bridge points.
    Dart cP = kNoDart, cQ = kNoDart;
    for (Dart e : arc.edge_darts)
        for (Dart x : {e, d.map.opp(e)}) {
            if (d.map.vertex_valence(d.map.vertex_of(x)) != 3) continue;
            if (cP == kNoDart) cP = x;
            else cQ = x;
        }
    if (cP == kNoDart || cQ == kNoDart) throw MoveError("meridional_stabilize: arc has no endpoints");
    int P = d.map.vertex_of(cP), Q = d.map.vertex_of(cQ);
    auto idx = bridge_index(d);
    auto comp = sector_disk_component(d, site.sector);
    if (comp[idx.at(P)] == comp[idx.at(Q)])
        throw MoveError("meridional_stabilize: the endpoints of the stabilizing arc lie on the same "
                        "sector disk; they must lie on different disks");

    // Rotation roles at the endpoints.
    Dart u1 = d.map.next(cP), u2 = d.map.next(u1);
    Dart v1 = d.map.next(cQ), v2 = d.map.next(v1);
    auto sys = [&](Dart x) { return d.color(x).system; };
    bool aligned = sys(v1) == sys(u1);  // same cyclic pattern at both ends
    // Pair the stubs by system.
    Dart vu1 = aligned ? v1 : v2;  // Q-dart matching u1's system
    Dart vu2 = aligned ? v2 : v1;

    std::set<int> killed;
    for (Dart e : arc.edge_darts)
        for (Dart x : {e, d.map.opp(e)}) killed.insert(d.map.vertex_of(x));
    // Walk outward from a dart at a dissolved vertex, straight through every
    // further dissolved crossing, to the surviving continuation.
    auto chase = [&](Dart from) {
        Dart cur = d.map.opp(from);
        while (killed.count(d.map.vertex_of(cur))) {
            const auto& rot = d.map.vertex_darts(d.map.vertex_of(cur));
            if (rot.size() != 4) throw MapError("meridional_stabilize: dissolution chase left the arc");
            auto pos = std::find(rot.begin(), rot.end(), cur) - rot.begin();
            cur = d.map.opp(rot[(pos + 2) % 4]);
        }
        return cur;
    };

    // Lane stubs: the surviving continuations of the four merge arcs (a
    // merge arc may itself cross the stabilizing arc, so chase).
    Dart stub_p1 = chase(u1), stub_p2 = chase(u2);
    Dart stub_q1 = chase(vu1), stub_q2 = chase(vu2);
    std::set<Dart> lane_stubs{stub_p1, stub_p2, stub_q1, stub_q2};
    if (lane_stubs.size() != 4)
        throw MoveError("meridional_stabilize: merge arcs collide while dissolving the site");

    StrandColor lane1 = StrandColor::arc(sys(u1));
    StrandColor lane2 = StrandColor::arc(sys(u2));
    StrandColor par1 = StrandColor::curve(sys(u1));
    StrandColor par2 = StrandColor::curve(sys(u2));
    StrandColor belt = StrandColor::curve(s3);

    ColoredBuilder cb(d);

    // Delete the arc. Strands crossing its interior re-fuse straight
    // through, chased across consecutive dissolved crossings; the chains
    // that belong to the merged lanes are re-routed through the tube instead.
    std::vector<Dart> transversal_ends;
    for (Dart e : arc.edge_darts)
        for (Dart x : {e, d.map.opp(e)}) {
            const auto& rot = d.map.vertex_darts(d.map.vertex_of(x));
            if (rot.size() != 4) continue;
            auto pos = std::find(rot.begin(), rot.end(), x) - rot.begin();
            for (Dart t : {rot[(pos + 1) % 4], rot[(pos + 3) % 4]}) {
                Dart far = d.map.opp(t);
                if (!killed.count(d.map.vertex_of(far))) transversal_ends.push_back(far);
            }
        }
    for (int v : killed) cb.b.kill_vertex(d.map.vertex_darts(v)[0]);
    {
        std::set<Dart> done;
        for (Dart far : transversal_ends) {
            if (done.count(far) || lane_stubs.count(far)) continue;
            Dart other = chase(far);
            if (lane_stubs.count(other)) continue;
            cb.b.set_opp(far, other);
            done.insert(far);
            done.insert(other);
        }
    }

    // Tube core: belt crossings for the two merged-arc lanes and the two new
    // compressing curves. Rotation pattern at each crossing is
    // (lane_fwd, belt_up, lane_back, belt_down); lanes run P->Q.
    struct Cross {
        Dart fwd, up, back, down;
    };
    auto new_cross = [&](StrandColor lane_color, StrandColor belt_color) {
        Cross c;
        c.fwd = cb.new_dart(lane_color);
        c.up = cb.new_dart(belt_color);
        c.back = cb.new_dart(lane_color);
        c.down = cb.new_dart(belt_color);
        cb.b.isolate(c.fwd);
        cb.b.insert_after(c.fwd, c.up);
        cb.b.insert_after(c.up, c.back);
        cb.b.insert_after(c.back, c.down);
        return c;
    };

    Cross S1 = new_cross(lane1, belt);
    Cross S2 = new_cross(lane2, belt);
    Cross V1 = new_cross(par1, belt);
    Cross V2 = new_cross(par2, belt);

    // The compressing curves leave the tube as dangling stubs and close up
    // along routed paths below.
    Dart v1p = cb.new_dart(par1), v1q = cb.new_dart(par1);
    Dart v2p = cb.new_dart(par2), v2q = cb.new_dart(par2);
    for (Dart s : {v1p, v1q, v2p, v2q}) cb.b.isolate(s);
    cb.b.set_opp(V1.back, v1p);
    cb.b.set_opp(V1.fwd, v1q);
    cb.b.set_opp(V2.back, v2p);
    cb.b.set_opp(V2.fwd, v2q);

    if (aligned) {
        // Same cyclic pattern at both ends: the orientation-reversing tube
        // gluing forces the two merged arcs to swap lanes once before the
        // belt. Crossing rotation (l1_fwd, l2_fwd, l1_back, l2_back).
        Dart m_l1f = cb.new_dart(lane1), m_l2f = cb.new_dart(lane2);
        Dart m_l1b = cb.new_dart(lane1), m_l2b = cb.new_dart(lane2);
        cb.b.isolate(m_l1f);
        cb.b.insert_after(m_l1f, m_l2f);
        cb.b.insert_after(m_l2f, m_l1b);
        cb.b.insert_after(m_l1b, m_l2b);
        cb.b.set_opp(stub_p1, m_l1b);
        cb.b.set_opp(stub_p2, m_l2b);
        cb.b.set_opp(m_l1f, S1.back);
        cb.b.set_opp(m_l2f, S2.back);
        // Belt order: lane1, lane2, par1, par2.
        cb.b.set_opp(S1.up, S2.down);
        cb.b.set_opp(S2.up, V1.down);
        cb.b.set_opp(V1.up, V2.down);
        cb.b.set_opp(V2.up, S1.down);
    } else {
        cb.b.set_opp(stub_p1, S1.back);
        cb.b.set_opp(stub_p2, S2.back);
        // Belt order: lane1, par1, par2, lane2.
        cb.b.set_opp(S1.up, V1.down);
        cb.b.set_opp(V1.up, V2.down);
        cb.b.set_opp(V2.up, S2.down);
        cb.b.set_opp(S2.up, S1.down);
    }
    cb.b.set_opp(S1.fwd, stub_q1);
    cb.b.set_opp(S2.fwd, stub_q2);

    std::array<int, 3> k = d.claimed_k;
    k[site.sector - 1] += 1;
    std::vector<Dart> remap;
    ShadowDiagram core;
    {
        std::vector<Dart> m;
        core.map = cb.b.finalize(&m);
        core.dart_color.resize(core.map.dart_count());
        for (size_t old = 0; old < m.size(); ++old)
            if (m[old] != kNoDart) core.dart_color[m[old]] = cb.color[old];
        core.claimed_k = k;
        remap = std::move(m);
    }

    // Close each compressing curve through the complement of its own system:
    // shortest dual route from one tube stub to the other. The stub vertices
    // become valence-two markers of the finished curve.
    auto close_parallel = [&](ShadowDiagram diagram, Dart stub_a, Dart stub_b,
                              SystemLabel own) -> ShadowDiagram {
        std::vector<char> crossable(diagram.map.dart_count(), 1);
        for (Dart x = 0; x < diagram.map.dart_count(); ++x) {
            StrandColor c = diagram.color(x);
            if (!c.is_scaffold() && c.system == own) crossable[x] = 0;
        }
        auto path = shortest_dual_path(diagram.map, {diagram.map.face_of(stub_a)},
                                       {diagram.map.face_of(stub_b)}, crossable);
        if (!path)
            throw MoveError("meridional_stabilize: no room to close the new compressing curve of "
                            "system " +
                            std::string(system_name(own)) + "; slide obstructions away first");
        return route_arc(diagram, RouteEnd::at_sector(stub_a), path->crossings,
                         RouteEnd::at_sector(stub_b), StrandColor::curve(own));
    };
    // route_arc never deletes darts, so stub ids survive the first closing.
    ShadowDiagram out = close_parallel(core, remap[v1p], remap[v1q], sys(u1));
    out = close_parallel(out, remap[v2p], remap[v2q], sys(u2));

    require_output_valid(out, "meridional_stabilize");
    ValidationReport rep = validate(out);
    if (!rep.k_ok())
        throw MoveError("meridional_stabilize: routed compressing curves break the homological "
                        "k-condition; slide obstructions away first");
    return out;
}

// ---------------------------------------------------------------------------
// Trisection stabilization and pairwise sums

ShadowDiagram trisection_stabilize(const ShadowDiagram& d, int face) {
    require_accepted(d, "trisection_stabilize");
    if (face < 0 || face >= d.map.face_count())
        throw MoveError("trisection_stabilize: face id out of range");
    const ShadowDiagram& summand = catalog_get("s4_genus3").diagram;
    ShadowDiagram out = connect_sum_diagrams(d, face, summand, 0);
    require_output_valid(out, "trisection_stabilize");
    return out;
}

ShadowDiagram connect_sum_pairs(const ShadowDiagram& d1, const ShadowDiagram& d2, int p1_vertex,
                                int p2_vertex) {
    require_accepted(d1, "connect_sum_pairs");
    require_accepted(d2, "connect_sum_pairs");
    auto check_bridge = [&](const ShadowDiagram& d, int v) {
        if (v < 0 || v >= d.map.vertex_count() || d.map.vertex_valence(v) != 3)
            throw MoveError("connect_sum_pairs: chosen vertex is not a bridge point (b >= 1 required)");
    };
    check_bridge(d1, p1_vertex);
    check_bridge(d2, p2_vertex);

    ColoredBuilder cb(d1);
    const Dart n1 = cb.import(d2);

    // Splice matching systems across the removed points. When the two bridge
    // rotations read the same cyclic system pattern, the orientation-reversing
    // gluing cannot match all three ends in parallel lanes, so two of the
    // spliced arcs cross once inside the sum annulus.
    std::array<Dart, 3> stub1{kNoDart, kNoDart, kNoDart}, stub2{kNoDart, kNoDart, kNoDart};
    auto cyclic_pattern = [](const ShadowDiagram& d, int v, Dart offset) {
        std::array<SystemLabel, 3> pat{};
        const auto& rot = d.map.vertex_darts(v);
        (void)offset;
        int start = 0;
        while (d.color(rot[start]).system != SystemLabel::A) ++start;
        for (int i = 0; i < 3; ++i) pat[i] = d.color(rot[(start + i) % 3]).system;
        return pat;
    };
    bool aligned = cyclic_pattern(d1, p1_vertex, 0) == cyclic_pattern(d2, p2_vertex, n1);
    for (Dart x : d1.map.vertex_darts(p1_vertex))
        stub1[static_cast<int>(d1.color(x).system)] = d1.map.opp(x);
    for (Dart x : d2.map.vertex_darts(p2_vertex))
        stub2[static_cast<int>(d2.color(x).system)] = n1 + d2.map.opp(x);
    cb.b.kill_vertex(d1.map.vertex_darts(p1_vertex)[0]);
    cb.b.kill_vertex(n1 + d2.map.vertex_darts(p2_vertex)[0]);
    for (int s = 0; s < 3; ++s)
        if (stub1[s] == kNoDart || stub2[s] == kNoDart)
            throw MoveError("connect_sum_pairs: bridge point misses an arc end");
    if (!aligned) {
        for (int s = 0; s < 3; ++s) cb.b.set_opp(stub1[s], stub2[s]);
    } else {
        // Arcs of systems B and C swap lanes at one crossing; the crossing's
        // handedness follows the shared cyclic pattern.
        bool abc = cyclic_pattern(d1, p1_vertex, 0)[1] == SystemLabel::B;
        cb.b.set_opp(stub1[0], stub2[0]);
        StrandColor colB = StrandColor::arc(SystemLabel::B), colC = StrandColor::arc(SystemLabel::C);
        Dart bf = cb.new_dart(colB), cbk = cb.new_dart(colC);
        Dart bb = cb.new_dart(colB), cf = cb.new_dart(colC);
        cb.b.isolate(bf);
        if (abc) {                        // rotation (bf, cf, bb, cbk)
            cb.b.insert_after(bf, cf);
            cb.b.insert_after(cf, bb);
            cb.b.insert_after(bb, cbk);
        } else {                          // rotation (bf, cbk, bb, cf)
            cb.b.insert_after(bf, cbk);
            cb.b.insert_after(cbk, bb);
            cb.b.insert_after(bb, cf);
        }
        cb.b.set_opp(stub1[1], bb);
        cb.b.set_opp(stub1[2], cbk);
        cb.b.set_opp(bf, stub2[1]);
        cb.b.set_opp(cf, stub2[2]);
    }

    std::array<int, 3> k;
    for (int i = 0; i < 3; ++i) k[i] = d1.claimed_k[i] + d2.claimed_k[i];
    ShadowDiagram out = cb.finalize(k);
    require_output_valid(out, "connect_sum_pairs");
    return out;
}

ShadowDiagram connect_sum_pairs_first_points(const ShadowDiagram& d1, const ShadowDiagram& d2) {
    auto b1 = bridge_points(d1), b2 = bridge_points(d2);
    if (b1.empty() || b2.empty())
        throw MoveError("connect_sum_pairs: both diagrams need bridge points");
    return connect_sum_pairs(d1, d2, b1.front(), b2.front());
}

// ---------------------------------------------------------------------------
// Disk slides

namespace {

// Walk of the over curve starting with `start` in its own direction, with the
// transversal side-edge at each crossing on the face_of(w) side.
struct OverWalk {
    std::vector<Dart> darts;        // traversal darts
    std::vector<Dart> side_entries; // crossing dart per valence-4 target, face side
};

OverWalk walk_over_with_sides(const ShadowDiagram& d, Dart start) {
    OverWalk out;
    Dart w = start;
    do {
        out.darts.push_back(w);
        Dart arrive = d.map.opp(w);
        const auto& rot = d.map.vertex_darts(d.map.vertex_of(arrive));
        if (rot.size() == 4) {
            // Side edge on face_of(w)'s side: the face orbit of w continues
            // with next(opp(w)).
            out.side_entries.push_back(d.map.face_next(w));
            auto pos = std::find(rot.begin(), rot.end(), arrive) - rot.begin();
            w = rot[(pos + 2) % 4];
        } else if (rot.size() == 2) {
            w = arrive == rot[0] ? rot[1] : rot[0];
        } else {
            throw MoveError("disk_slide: over curve traversal hit a strand endpoint");
        }
        if (out.darts.size() > d.map.dart_count() + 1u)
            throw MapError("disk_slide: over traversal does not close");
    } while (w != start);
    return out;
}

// Try to recognize the slider as a full parallel track of the over curve on
// the foot side, and undo the band sum exactly. Returns nullopt when the
// configuration does not match.
std::optional<ShadowDiagram> try_unslide(const ShadowDiagram& d, const StrandSet& strands,
                                         const SlideSite& site) {
    if (!site.band.empty()) return std::nullopt;
    if (d.map.face_of(site.slider_foot) != d.map.face_of(site.over_foot)) return std::nullopt;

    OverWalk walk = walk_over_with_sides(d, site.over_foot);
    if (walk.side_entries.empty()) return std::nullopt;

    // Candidate detour crossings: the far endpoint of each side edge.
    std::vector<int> xs;
    for (Dart y : walk.side_entries) {
        Dart far = d.map.opp(y);
        int v = d.map.vertex_of(far);
        const auto& rot = d.map.vertex_darts(v);
        if (rot.size() != 4) return std::nullopt;
        auto pos = std::find(rot.begin(), rot.end(), far) - rot.begin();
        Dart across1 = rot[(pos + 1) % 4];
        if (strands.strand_of(across1) != site.slider) return std::nullopt;
        xs.push_back(v);
    }
    std::set<int> uniq(xs.begin(), xs.end());
    if (uniq.size() != xs.size()) return std::nullopt;

    // The slider's detour must consist of single edges x_i -> x_{i+1}
    // (cyclically broken at the re-fused stub pair). At each x_i the slider
    // darts are the pair transverse to the side edge.
    const int m = static_cast<int>(xs.size());
    std::vector<Dart> fwd(m), back(m);
    for (int i = 0; i < m; ++i) {
        const auto& rot = d.map.vertex_darts(xs[i]);
        Dart far = d.map.opp(walk.side_entries[i]);
        auto pos = std::find(rot.begin(), rot.end(), far) - rot.begin();
        back[i] = rot[(pos + 1) % 4];
        fwd[i] = rot[(pos + 3) % 4];
    }
    // Consecutive detour vertices joined directly: opp(fwd[i]) == back[i+1]
    // for all but one gap, whose two loose darts reconnect the main slider.
    int gap = -1;
    for (int i = 0; i < m; ++i) {
        int j = (i + 1) % m;
        if (d.map.opp(fwd[i]) == back[j]) continue;
        if (gap >= 0) return std::nullopt;
        gap = i;
    }
    Dart stub_out = kNoDart, stub_in = kNoDart;
    if (m == 1 && gap == -1) return std::nullopt;  // a closed loop, not a detour
    if (gap < 0) return std::nullopt;
    stub_out = d.map.opp(fwd[gap]);
    stub_in = d.map.opp(back[(gap + 1) % m]);
    if (stub_out == back[(gap + 1) % m]) return std::nullopt;

    // Undo: dissolve the detour crossings, fuse the transversal edges and
    // restore the straight slider edge. A transversal may run directly
    // between two detour crossings, so the fusion chases through every
    // dissolved vertex until it reaches a surviving dart.
    std::set<int> killed(xs.begin(), xs.end());
    auto chase = [&](Dart from) {
        Dart cur = d.map.opp(from);
        while (killed.count(d.map.vertex_of(cur))) {
            const auto& rot = d.map.vertex_darts(d.map.vertex_of(cur));
            auto pos = std::find(rot.begin(), rot.end(), cur) - rot.begin();
            cur = d.map.opp(rot[(pos + 2) % 4]);
        }
        return cur;
    };
    ColoredBuilder cb(d);
    for (int i = 0; i < m; ++i) cb.b.kill_vertex(d.map.opp(walk.side_entries[i]));
    for (int i = 0; i < m; ++i) {
        Dart y = walk.side_entries[i];
        cb.b.set_opp(y, chase(y));
    }
    cb.b.set_opp(stub_out, stub_in);
    ShadowDiagram out = cb.finalize(d.claimed_k);
    require_output_valid(out, "disk_slide (cancelling)");
    return out;
}

} // namespace

ShadowDiagram disk_slide(const ShadowDiagram& d, const SlideSite& site) {
    require_accepted(d, "disk_slide");
    StrandSet strands = StrandSet::extract(d);
    if (site.slider < 0 || site.slider >= strands.count() || site.over < 0 ||
        site.over >= strands.count())
        throw MoveError("disk_slide: no such strand");
    const Strand& slider = strands.strand(site.slider);
    const Strand& over = strands.strand(site.over);
    if (slider.color.is_scaffold() || over.color.is_scaffold())
        throw MoveError("disk_slide: scaffold edges are not slidable");
    if (over.color.kind != StrandKind::Curve)
        throw MoveError("disk_slide: the over strand must be a curve");
    if (slider.color.system != over.color.system)
        throw MoveError("disk_slide: slider and over must belong to the same system");
    if (site.slider == site.over) throw MoveError("disk_slide: a strand cannot slide over itself");

    auto on_strand = [&](Dart x, int id) {
        return x >= 0 && x < d.map.dart_count() && strands.strand_of(x) == id;
    };
    if (!on_strand(site.slider_foot, site.slider))
        throw MoveError("disk_slide: slider foot is not on the slider");
    if (!on_strand(site.over_foot, site.over))
        throw MoveError("disk_slide: over foot is not on the over curve");

    // Band checks: scaffold edges only, coherent face chain.
    int cur = d.map.face_of(site.slider_foot);
    std::set<int> band_edges;
    for (Dart x : site.band) {
        if (x < 0 || x >= d.map.dart_count() || !d.color(x).is_scaffold())
            throw MoveError("disk_slide: band crosses a strand; bands may cross only scaffold edges");
        if (!band_edges.insert(d.map.edge_of(x)).second)
            throw MoveError("disk_slide: band crosses an edge twice");
        if (d.map.face_of(x) != cur) throw MoveError("disk_slide: band face chain broken");
        cur = d.map.face_of(d.map.opp(x));
    }
    if (cur != d.map.face_of(site.over_foot))
        throw MoveError("disk_slide: band does not reach the over curve's face");

    if (auto undone = try_unslide(d, strands, site)) return *undone;

    OverWalk walk = walk_over_with_sides(d, site.over_foot);
    for (Dart y : walk.side_entries)
        if (band_edges.count(d.map.edge_of(y)))
            throw MoveError("disk_slide: band runs through the over curve's crossings; "
                            "choose a different corridor");
        else if (strands.strand_of(y) == site.slider)
            throw MoveError("disk_slide: slider meets the over curve's crossings");

    // Reroute the slider edge through the band and around the parallel copy.
    ColoredBuilder cb(d);
    Dart dS = site.slider_foot, dSbar = d.map.opp(dS);
    StrandColor col = slider.color;

    Dart pending = dS;
    std::vector<Dart> band_far;  // far halves for the return pass
    for (Dart x : site.band) {
        Dart far = d.map.opp(x);
        auto [back, fwd] = cb.make_crossing(x, col);
        cb.b.set_opp(pending, back);
        pending = fwd;
        band_far.push_back(far);
    }
    for (Dart y : walk.side_entries) {
        auto [back, fwd] = cb.make_crossing(y, col);
        cb.b.set_opp(pending, back);
        pending = fwd;
    }
    for (auto it = band_far.rbegin(); it != band_far.rend(); ++it) {
        auto [back, fwd] = cb.make_crossing(*it, col);
        cb.b.set_opp(pending, back);
        pending = fwd;
    }
    cb.b.set_opp(pending, dSbar);

    ShadowDiagram out = cb.finalize(d.claimed_k);
    require_output_valid(out, "disk_slide");
    return out;
}

// ---------------------------------------------------------------------------
// Site enumeration

std::vector<PerturbSite> enumerate_perturb_sites(const ShadowDiagram& d, int sector) {
    std::vector<PerturbSite> out;
    ValidationReport rep = validate(d);
    if (!rep.accepted() || rep.bridges == 0) return out;
    auto [s1, s2] = sector_pair(sector);
    if (!systems_interior_disjoint(d, s1, s2)) return out;

    // One cut along the pair's arcs answers the disk-region test for every
    // face at once.
    std::vector<char> cut(d.map.dart_count(), 0);
    for (Dart x = 0; x < d.map.dart_count(); ++x) {
        StrandColor c = d.color(x);
        if (!c.is_scaffold() && c.kind == StrandKind::Arc && (c.system == s1 || c.system == s2))
            cut[x] = 1;
    }
    BorderedMap cutm = cut_along_edges(d.map, cut);
    auto genus_comp = cutm.genus_per_component();
    auto face_in_disk = [&](int f) {
        Dart probe = kNoDart;
        for (Dart x : d.map.face_darts(f))
            if (!cut[x]) {
                probe = x;
                break;
            }
        if (probe == kNoDart) probe = cutm.twin(d.map.face_darts(f)[0]);
        int comp = cutm.complex().component_of(probe);
        return genus_comp[comp] == 0 && cutm.boundary_circles_in_component(comp) == 1;
    };

    for (int f = 0; f < d.map.face_count(); ++f) {
        std::vector<Dart> first, second;
        for (Dart x : d.map.face_darts(f)) {
            StrandColor c = d.color(x);
            if (c.is_scaffold() || c.kind != StrandKind::Arc) continue;
            if (c.system == s1) first.push_back(x);
            if (c.system == s2) second.push_back(x);
        }
        if (first.empty() || second.empty()) continue;
        if (!face_in_disk(f)) continue;
        std::sort(first.begin(), first.end());
        std::sort(second.begin(), second.end());
        for (Dart a : first)
            for (Dart b : second) out.push_back({sector, f, a, b});
    }
    return out;
}

std::optional<ShadowDiagram> reduce_to_efficient(const ShadowDiagram& d) {
    ComplexityTuple t = complexity(d);
    if (t.b == 0) throw MoveError("reduce_to_efficient: the diagram carries no surface");
    int n = component_count(d);
    if (t.c[0] == n && t.c[1] == n && t.c[2] == n) return d;
    for (int sector = 1; sector <= 3; ++sector) {
        if (t.c[sector - 1] <= n) continue;
        for (const auto& site : enumerate_mstab_sites(d, sector)) {
            auto next = meridional_stabilize(d, site);
            if (auto done = reduce_to_efficient(next)) return done;
        }
    }
    return std::nullopt;
}

std::vector<MStabSite> enumerate_mstab_sites(const ShadowDiagram& d, int sector) {
    std::vector<MStabSite> out;
    ValidationReport rep = validate(d);
    if (!rep.accepted() || rep.bridges == 0) return out;
    SystemLabel s3 = sector_third(sector);
    StrandSet strands = StrandSet::extract(d);
    auto idx = bridge_index(d);
    auto comp = sector_disk_component(d, sector);
    for (const auto& st : strands.all()) {
        if (st.color.is_scaffold() || st.color.kind != StrandKind::Arc || st.color.system != s3)
            continue;
        if (comp[idx.at(st.endpoints[0])] == comp[idx.at(st.endpoints[1])]) continue;
        MStabSite site{sector, st.id};
        // A site is offered only when the whole template goes through (the
        // routed compressing curves can be obstructed).
        try {
            (void)meridional_stabilize(d, site);
        } catch (const MoveError&) {
            continue;
        } catch (const MapError&) {
            continue;
        }
        out.push_back(site);
    }
    return out;
}

} // namespace tsd
