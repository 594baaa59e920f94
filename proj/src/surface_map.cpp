#include "tsd/surface_map.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace tsd {

CombinatorialMap CombinatorialMap::from_rotations(const std::vector<std::vector<Dart>>& rotations,
                                                  const std::vector<Dart>& opp) {
    size_t n = opp.size();
    if (n % 2 != 0) throw MapError("odd number of darts");

    CombinatorialMap m;
    m.next_.assign(n, kNoDart);
    m.prev_.assign(n, kNoDart);
    m.opp_ = opp;

    size_t seen = 0;
    for (const auto& cyc : rotations) {
        if (cyc.empty()) throw MapError("empty vertex rotation");
        for (size_t i = 0; i < cyc.size(); ++i) {
            Dart d = cyc[i];
            Dart e = cyc[(i + 1) % cyc.size()];
            if (d < 0 || static_cast<size_t>(d) >= n) throw MapError("rotation dart out of range");
            if (m.next_[d] != kNoDart) throw MapError("dart appears twice in rotations: " + std::to_string(d));
            m.next_[d] = e;
            ++seen;
        }
    }
    if (seen != n) throw MapError("rotations do not cover all darts");
    for (size_t d = 0; d < n; ++d) {
        Dart e = m.next_[d];
        if (m.prev_[e] != kNoDart) throw MapError("next is not a bijection");
        m.prev_[e] = static_cast<Dart>(d);
    }
    for (size_t d = 0; d < n; ++d) {
        Dart o = opp[d];
        if (o < 0 || static_cast<size_t>(o) >= n) throw MapError("opp dart out of range");
        if (o == static_cast<Dart>(d)) throw MapError("opp has a fixed point at dart " + std::to_string(d));
        if (opp[o] != static_cast<Dart>(d)) throw MapError("opp is not an involution at dart " + std::to_string(d));
    }
    m.build_orbits();
    return m;
}

void CombinatorialMap::build_orbits() {
    const int n = dart_count();
    vertex_id_.assign(n, -1);
    face_id_.assign(n, -1);
    edge_id_.assign(n, -1);
    component_id_.assign(n, -1);
    vertex_orbits_.clear();
    face_orbits_.clear();

    for (Dart d = 0; d < n; ++d) {
        if (vertex_id_[d] >= 0) continue;
        int id = static_cast<int>(vertex_orbits_.size());
        std::vector<Dart> orbit;
        Dart e = d;
        do {
            vertex_id_[e] = id;
            orbit.push_back(e);
            e = next_[e];
        } while (e != d);
        vertex_orbits_.push_back(std::move(orbit));
    }
    n_vertices_ = static_cast<int>(vertex_orbits_.size());

    for (Dart d = 0; d < n; ++d) {
        if (face_id_[d] >= 0) continue;
        int id = static_cast<int>(face_orbits_.size());
        std::vector<Dart> orbit;
        Dart e = d;
        do {
            face_id_[e] = id;
            orbit.push_back(e);
            e = next_[opp_[e]];
        } while (e != d);
        face_orbits_.push_back(std::move(orbit));
    }
    n_faces_ = static_cast<int>(face_orbits_.size());

    int eid = 0;
    for (Dart d = 0; d < n; ++d)
        if (edge_id_[d] < 0) {
            edge_id_[d] = eid;
            edge_id_[opp_[d]] = eid;
            ++eid;
        }

    n_components_ = 0;
    std::vector<Dart> stack;
    for (Dart d = 0; d < n; ++d) {
        if (component_id_[d] >= 0) continue;
        int id = n_components_++;
        stack.push_back(d);
        component_id_[d] = id;
        while (!stack.empty()) {
            Dart e = stack.back();
            stack.pop_back();
            for (Dart f : {next_[e], opp_[e]})
                if (component_id_[f] < 0) {
                    component_id_[f] = id;
                    stack.push_back(f);
                }
        }
    }
}

int CombinatorialMap::euler_characteristic() const {
    return vertex_count() - edge_count() + face_count();
}

int CombinatorialMap::genus() const {
    if (empty()) throw PreconditionError("genus of an empty map");
    if (component_count() != 1) throw PreconditionError("genus requires a connected map");
    int chi = euler_characteristic();
    if ((2 - chi) % 2 != 0) throw MapError("odd Euler characteristic: corrupted map");
    int g = (2 - chi) / 2;
    if (g < 0) throw MapError("negative genus: corrupted map");
    return g;
}

std::vector<int> CombinatorialMap::genus_per_component() const {
    std::vector<int> v(n_components_, 0), e(n_components_, 0), f(n_components_, 0);
    for (const auto& orb : vertex_orbits_) v[component_id_[orb[0]]]++;
    for (const auto& orb : face_orbits_) f[component_id_[orb[0]]]++;
    for (Dart d = 0; d < dart_count(); ++d)
        if (d < opp_[d]) e[component_id_[d]]++;
    std::vector<int> out(n_components_);
    for (int c = 0; c < n_components_; ++c) {
        int chi = v[c] - e[c] + f[c];
        if ((2 - chi) % 2 != 0) throw MapError("odd Euler characteristic: corrupted map");
        out[c] = (2 - chi) / 2;
        if (out[c] < 0) throw MapError("negative genus: corrupted map");
    }
    return out;
}

std::vector<std::int32_t> CombinatorialMap::canonical_key(const std::vector<std::int32_t>* decoration) const {
    const int n = dart_count();
    if (decoration && static_cast<int>(decoration->size()) != n)
        throw MapError("decoration size mismatch");

    // Canonicalize each connected component from every possible root and keep
    // the lexicographically smallest encoding; sort component keys.
    std::vector<std::vector<std::int32_t>> comp_keys(n_components_);
    std::vector<std::int32_t> label(n, -1);
    std::vector<Dart> order;
    order.reserve(n);

    for (int c = 0; c < n_components_; ++c) {
        std::vector<std::int32_t> best;
        for (Dart root = 0; root < n; ++root) {
            if (component_id_[root] != c) continue;
            std::fill(label.begin(), label.end(), -1);
            order.clear();
            label[root] = 0;
            order.push_back(root);
            for (size_t head = 0; head < order.size(); ++head) {
                Dart d = order[head];
                for (Dart e : {next_[d], opp_[d]})
                    if (label[e] < 0) {
                        label[e] = static_cast<std::int32_t>(order.size());
                        order.push_back(e);
                    }
            }
            std::vector<std::int32_t> key;
            key.reserve(order.size() * 3 + 1);
            key.push_back(static_cast<std::int32_t>(order.size()));
            for (Dart d : order) {
                key.push_back(label[next_[d]]);
                key.push_back(label[opp_[d]]);
            }
            if (decoration)
                for (Dart d : order) key.push_back((*decoration)[d]);
            if (best.empty() || key < best) best = std::move(key);
        }
        comp_keys[c] = std::move(best);
    }
    std::sort(comp_keys.begin(), comp_keys.end());
    std::vector<std::int32_t> out;
    out.push_back(n_components_);
    for (auto& k : comp_keys) {
        out.push_back(-1);  // separator
        out.insert(out.end(), k.begin(), k.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cutting

BorderedMap cut_along_edges(const CombinatorialMap& m, const std::vector<char>& cut) {
    const int n = m.dart_count();
    if (static_cast<int>(cut.size()) != n) throw PreconditionError("cut mask size mismatch");
    for (Dart d = 0; d < n; ++d)
        if (cut[d] != cut[m.opp(d)]) throw PreconditionError("cut mask inconsistent across opp");

    // Leading copy of a cut dart keeps its id; trailing copy gets a fresh id.
    std::vector<Dart> minus(n, kNoDart);
    int total = n;
    for (Dart d = 0; d < n; ++d)
        if (cut[d]) minus[d] = total++;

    std::vector<Dart> next(total, kNoDart), prev(total, kNoDart), opp(total, kNoDart);
    std::vector<char> boundary(total, 0), voidside(total, 0);
    std::vector<Dart> twin(total, kNoDart);

    for (Dart d = 0; d < n; ++d) {
        if (!cut[d]) {
            opp[d] = m.opp(d);
        } else {
            // Side copies: {d, minus[opp(d)]} and {minus[d], opp(d)}.
            opp[d] = minus[m.opp(d)];
            opp[minus[d]] = m.opp(d);
            boundary[d] = boundary[minus[d]] = 1;
            twin[d] = minus[d];
            twin[minus[d]] = d;
            voidside[d] = 1;
        }
    }

    auto link = [&](Dart a, Dart b) { next[a] = b; prev[b] = a; };

    for (const auto& rot : m.vertices()) {
        std::vector<int> cut_pos;
        for (size_t i = 0; i < rot.size(); ++i)
            if (cut[rot[i]]) cut_pos.push_back(static_cast<int>(i));
        if (cut_pos.empty()) {
            for (size_t i = 0; i < rot.size(); ++i) link(rot[i], rot[(i + 1) % rot.size()]);
            continue;
        }
        const int r = static_cast<int>(rot.size());
        const int k = static_cast<int>(cut_pos.size());
        for (int j = 0; j < k; ++j) {
            // Gap from cut dart at cut_pos[j] (leading, keeps id) through the
            // intermediate darts to a trailing copy of the next cut dart.
            int p = cut_pos[j];
            int pn = cut_pos[(j + 1) % k];
            Dart lead = rot[p];
            Dart cur = lead;
            for (int i = (p + 1) % r; i != pn; i = (i + 1) % r) {
                link(cur, rot[i]);
                cur = rot[i];
            }
            Dart trail = minus[rot[pn]];
            link(cur, trail);
            link(trail, lead);
        }
    }

    BorderedMap out;
    // Assemble through from_rotations for full structural checking.
    std::vector<std::vector<Dart>> rotations;
    {
        std::vector<char> seen(total, 0);
        for (Dart d = 0; d < total; ++d) {
            if (seen[d]) continue;
            std::vector<Dart> cyc;
            Dart e = d;
            do {
                seen[e] = 1;
                cyc.push_back(e);
                e = next[e];
            } while (e != d);
            rotations.push_back(std::move(cyc));
        }
    }
    out.complex_ = CombinatorialMap::from_rotations(rotations, opp);
    out.boundary_edge_ = std::move(boundary);
    out.twin_ = std::move(twin);
    out.void_side_ = std::move(voidside);

    // Boundary circles: distinct face orbits owning a void-marked dart.
    std::vector<char> circle_face(out.complex_.face_count(), 0);
    for (Dart d = 0; d < total; ++d)
        if (out.void_side_[d]) circle_face[out.complex_.face_of(d)] = 1;
    out.circles_per_component_.assign(out.complex_.component_count(), 0);
    out.n_boundary_circles_ = 0;
    for (int f = 0; f < out.complex_.face_count(); ++f)
        if (circle_face[f]) {
            ++out.n_boundary_circles_;
            out.circles_per_component_[out.complex_.component_of(out.complex_.face_darts(f)[0])]++;
        }
    return out;
}

BorderedMap cut_along(const CombinatorialMap& m, const std::vector<std::vector<Dart>>& cycles) {
    const int n = m.dart_count();
    std::vector<int> cycle_of(n, -1);
    std::vector<char> cut(n, 0);
    for (size_t c = 0; c < cycles.size(); ++c) {
        if (cycles[c].empty()) throw PreconditionError("empty cut cycle");
        for (Dart d : cycles[c]) {
            if (d < 0 || d >= n) throw PreconditionError("cut cycle dart out of range");
            for (Dart e : {d, m.opp(d)}) {
                if (cut[e] && cycle_of[e] != static_cast<int>(c))
                    throw PreconditionError("cut cycles are not edge-disjoint");
                cut[e] = 1;
                cycle_of[e] = static_cast<int>(c);
            }
        }
    }
    // Simplicity: every vertex meeting a cycle carries exactly two of its
    // darts, both from the same cycle; cycles are connected closed walks.
    for (const auto& rot : m.vertices()) {
        int count = 0, which = -1;
        bool mixed = false;
        for (Dart d : rot)
            if (cut[d]) {
                ++count;
                if (which < 0) which = cycle_of[d];
                else if (which != cycle_of[d]) mixed = true;
            }
        if (count == 0) continue;
        if (mixed) throw PreconditionError("cut cycles intersect at a vertex");
        if (count != 2) throw PreconditionError("cut cycle is not simple at a vertex");
    }
    for (const auto& cyc : cycles) {
        // Walk from one dart; a simple closed cycle visits each of its edges once.
        std::vector<char> visited(n, 0);
        Dart start = cyc[0];
        Dart d = start;
        size_t steps = 0;
        do {
            visited[d] = visited[m.opp(d)] = 1;
            // Continue through the far vertex via its other cut dart.
            Dart arrive = m.opp(d);
            Dart e = m.next(arrive);
            while (!cut[e]) e = m.next(e);
            d = e;
            if (++steps > cyc.size() * 2 + 2) throw PreconditionError("cut cycle does not close");
        } while (d != start && m.opp(d) != start);
        for (Dart c : cyc)
            if (!visited[c] || !visited[m.opp(c)]) throw PreconditionError("cut cycle is not connected");
    }
    return cut_along_edges(m, cut);
}

std::vector<int> BorderedMap::genus_per_component() const {
    // Capping each boundary circle recovers the closed complex, so component
    // genus equals the complex's component genus.
    return complex_.genus_per_component();
}

bool BorderedMap::all_components_planar() const {
    for (int g : genus_per_component())
        if (g != 0) return false;
    return true;
}

CombinatorialMap BorderedMap::reglue() const {
    const int n = complex_.dart_count();
    // Trailing copies are the void-unmarked twins. Splice each out of its
    // rotation (next(prev(trail)) = leading twin), re-pair the surviving
    // leading copies across each cut edge, then compact.
    std::vector<Dart> new_next(n, kNoDart);
    for (Dart d = 0; d < n; ++d) new_next[d] = complex_.next(d);
    for (Dart d = 0; d < n; ++d) {
        if (twin_[d] == kNoDart || void_side_[d]) continue;
        new_next[complex_.prev(d)] = twin_[d];
    }
    std::vector<char> dead(n, 0);
    std::vector<Dart> opp(n, kNoDart);
    for (Dart d = 0; d < n; ++d) opp[d] = complex_.opp(d);
    for (Dart d = 0; d < n; ++d) {
        if (twin_[d] == kNoDart || !void_side_[d]) continue;
        // d is a leading copy; its edge partner should become the leading
        // copy at the far end: lead(opp-trail) = twin(opp(d)).
        Dart far_trail = complex_.opp(d);
        Dart far_lead = twin_[far_trail];
        opp[d] = far_lead;
    }
    for (Dart d = 0; d < n; ++d)
        if (twin_[d] != kNoDart && !void_side_[d]) dead[d] = 1;

    // Compact and rebuild.
    std::vector<Dart> remap(n, kNoDart);
    int m2 = 0;
    for (Dart d = 0; d < n; ++d)
        if (!dead[d]) remap[d] = m2++;
    std::vector<Dart> cnext(m2), copp(m2);
    for (Dart d = 0; d < n; ++d) {
        if (dead[d]) continue;
        Dart nx = new_next[d];
        if (dead[nx]) throw MapError("reglue: dangling next");
        cnext[remap[d]] = remap[nx];
        copp[remap[d]] = remap[opp[d]];
    }
    std::vector<std::vector<Dart>> rotations;
    std::vector<char> seen(m2, 0);
    for (Dart d = 0; d < m2; ++d) {
        if (seen[d]) continue;
        std::vector<Dart> cyc;
        Dart e = d;
        do {
            seen[e] = 1;
            cyc.push_back(e);
            e = cnext[e];
        } while (e != d);
        rotations.push_back(std::move(cyc));
    }
    return CombinatorialMap::from_rotations(rotations, copp);
}

// ---------------------------------------------------------------------------
// MapBuilder

MapBuilder::MapBuilder(const CombinatorialMap& m) {
    const int n = m.dart_count();
    next_.resize(n);
    prev_.resize(n);
    opp_.resize(n);
    alive_.assign(n, 1);
    for (Dart d = 0; d < n; ++d) {
        next_[d] = m.next(d);
        prev_[d] = m.prev(d);
        opp_[d] = m.opp(d);
    }
}

Dart MapBuilder::new_dart() {
    Dart d = static_cast<Dart>(next_.size());
    next_.push_back(d);
    prev_.push_back(d);
    opp_.push_back(kNoDart);
    alive_.push_back(1);
    return d;
}

void MapBuilder::insert_after(Dart at, Dart d) {
    Dart nx = next_[at];
    next_[at] = d;
    prev_[d] = at;
    next_[d] = nx;
    prev_[nx] = d;
}

void MapBuilder::detach(Dart d) {
    Dart p = prev_[d], n = next_[d];
    if (p == d) return;
    next_[p] = n;
    prev_[n] = p;
    next_[d] = d;
    prev_[d] = d;
}

std::pair<Dart, Dart> MapBuilder::split_edge(Dart d) {
    Dart db = opp_[d];
    Dart p = new_dart();
    Dart q = new_dart();
    set_opp(d, p);
    set_opp(db, q);
    next_[p] = q;
    prev_[q] = p;
    next_[q] = p;
    prev_[p] = q;
    return {p, q};
}

void MapBuilder::kill(Dart d) {
    detach(d);
    alive_[d] = 0;
}

void MapBuilder::kill_vertex(Dart d) {
    std::vector<Dart> cyc;
    Dart e = d;
    do {
        cyc.push_back(e);
        e = next_[e];
    } while (e != d);
    for (Dart c : cyc) {
        alive_[c] = 0;
        next_[c] = c;
        prev_[c] = c;
    }
}

CombinatorialMap MapBuilder::finalize(std::vector<Dart>* mapping_out) const {
    const int n = raw_size();
    std::vector<Dart> remap(n, kNoDart);
    int m = 0;
    for (Dart d = 0; d < n; ++d)
        if (alive_[d]) remap[d] = m++;
    if (mapping_out) *mapping_out = remap;

    std::vector<Dart> opp(m, kNoDart);
    std::vector<std::vector<Dart>> rotations;
    std::vector<char> seen(n, 0);
    for (Dart d = 0; d < n; ++d) {
        if (!alive_[d] || seen[d]) continue;
        std::vector<Dart> cyc;
        Dart e = d;
        do {
            if (!alive_[e]) throw MapError("builder: dead dart in a live rotation");
            seen[e] = 1;
            cyc.push_back(remap[e]);
            e = next_[e];
        } while (e != d);
        rotations.push_back(std::move(cyc));
    }
    for (Dart d = 0; d < n; ++d) {
        if (!alive_[d]) continue;
        Dart o = opp_[d];
        if (o == kNoDart || !alive_[o]) throw MapError("builder: unpaired dart at finalize");
        opp[remap[d]] = remap[o];
    }
    return CombinatorialMap::from_rotations(rotations, opp);
}

// ---------------------------------------------------------------------------
// Connected sum

namespace {

// Insert a transversal ring crossing the edge of dart d twice, entering first
// from face_of(d). Returns the four ring darts {r1f, r1o, r2o, r2f} where the
// f-side arc is {r1f, r2f}, plus the split inheritance pairs.
struct RingInfo {
    std::array<Dart, 4> ring;
    std::vector<std::pair<Dart, Dart>> inherit;  // (new dart, inherits color of dart)
    Dart f_side_dart;                            // a ring dart whose edge runs inside the target face
};

RingInfo insert_ring(MapBuilder& b, Dart d) {
    auto [p1, q1] = b.split_edge(d);     // x1 rotation (p1, q1); edges {d,p1}, {q1,old opp}
    auto [p2, q2] = b.split_edge(q1);    // x2 rotation (p2, q2); edges {q1,p2}, {q2,old opp}

    // Ring arcs run on the two sides of the edge line; sides must pair
    // straight across (after-p1 slot with after-p2 slot) or the circle
    // degenerates into a diagonal.
    Dart r1f = b.new_dart(), r1o = b.new_dart();
    Dart r2f = b.new_dart(), r2o = b.new_dart();
    b.set_opp(r1f, r2f);
    b.set_opp(r1o, r2o);
    b.insert_after(p1, r1f);   // x1: (p1, r1f, q1, r1o)
    b.insert_after(q1, r1o);
    b.insert_after(p2, r2f);   // x2: (p2, r2f, q2, r2o)
    b.insert_after(q2, r2o);

    RingInfo info;
    info.ring = {r1f, r1o, r2o, r2f};
    info.inherit = {{p1, d}, {q1, d}, {p2, d}, {q2, d}};
    info.f_side_dart = r1f;
    return info;
}

} // namespace

ConnectSumResult connect_sum_maps(const CombinatorialMap& m1, int f1, const CombinatorialMap& m2, int f2) {
    if (f1 < 0 || f1 >= m1.face_count()) throw PreconditionError("face id out of range in first map");
    if (f2 < 0 || f2 >= m2.face_count()) throw PreconditionError("face id out of range in second map");

    const int n1 = m1.dart_count();
    const int n2 = m2.dart_count();

    MapBuilder b(m1);
    // Append m2 with offset n1 and wire its rotations and edges.
    for (Dart d = 0; d < n2; ++d) b.new_dart();
    for (const auto& rot : m2.vertices()) {
        Dart first = n1 + rot[0];
        b.isolate(first);
        Dart at = first;
        for (size_t i = 1; i < rot.size(); ++i) {
            b.insert_after(at, n1 + rot[i]);
            at = n1 + rot[i];
        }
    }
    for (Dart d = 0; d < n2; ++d)
        if (d < m2.opp(d)) b.set_opp(n1 + d, n1 + m2.opp(d));

    // Lowest dart on each chosen face picks the crossing edge.
    Dart d1 = *std::min_element(m1.face_darts(f1).begin(), m1.face_darts(f1).end());
    Dart d2raw = *std::min_element(m2.face_darts(f2).begin(), m2.face_darts(f2).end());
    Dart d2 = n1 + d2raw;

    RingInfo ring1 = insert_ring(b, d1);
    RingInfo ring2 = insert_ring(b, d2);

    // Splice the two f-side ring arcs: cross-pair their darts so the two
    // surfaces join through a tube (chi drops by 2).
    Dart a = ring1.f_side_dart, abar = b.opp(a);
    Dart c = ring2.f_side_dart, cbar = b.opp(c);
    b.set_opp(a, cbar);
    b.set_opp(abar, c);

    std::vector<Dart> remap;
    ConnectSumResult out;
    out.map = b.finalize(&remap);
    out.m1_dart_map.resize(n1);
    for (Dart d = 0; d < n1; ++d) out.m1_dart_map[d] = remap[d];
    out.m2_dart_map.resize(n2);
    for (Dart d = 0; d < n2; ++d) out.m2_dart_map[d] = remap[n1 + d];
    for (auto [nd, old] : ring1.inherit) out.m1_inherit.emplace_back(remap[nd], old);
    // ring2 inherit references builder ids (offset by n1); translate to m2-local.
    for (auto [nd, old] : ring2.inherit) out.m2_inherit.emplace_back(remap[nd], old - n1);
    for (Dart r : ring1.ring) out.ring_darts.push_back(remap[r]);
    for (Dart r : ring2.ring) out.ring_darts.push_back(remap[r]);
    return out;
}

} // namespace tsd
