#include "tsd/builder.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "colored_builder.hpp"

namespace tsd {

using detail::ColoredBuilder;

namespace {

Dart make_endpoint(ColoredBuilder& cb, const RouteEnd& end, StrandColor route_color) {
    Dart s = cb.new_dart(route_color);
    if (end.type == RouteEnd::Type::NewVertexInFace) {
        cb.b.isolate(s);
    } else {
        cb.b.insert_after(end.after, s);
    }
    return s;
}

void check_route_faces(const ShadowDiagram& d, const std::optional<RouteEnd>& from,
                       const std::vector<Dart>& crossings, const std::optional<RouteEnd>& to) {
    auto end_face = [&](const RouteEnd& e) {
        if (e.type == RouteEnd::Type::NewVertexInFace) {
            if (e.face < 0 || e.face >= d.map.face_count())
                throw PreconditionError("route endpoint face id out of range");
            return e.face;
        }
        return d.map.face_of(d.map.next(e.after));
    };
    std::set<int> edges;
    for (Dart c : crossings) {
        if (c < 0 || c >= d.map.dart_count()) throw PreconditionError("route crossing dart out of range");
        if (!edges.insert(d.map.edge_of(c)).second)
            throw PreconditionError("route crosses an edge twice");
    }
    if (crossings.empty()) {
        if (from && to && end_face(*from) != end_face(*to))
            throw PreconditionError("route endpoints lie in different faces");
        return;
    }
    int cur = from ? end_face(*from) : d.map.face_of(d.map.opp(crossings.back()));
    for (Dart c : crossings) {
        if (d.map.face_of(c) != cur)
            throw PreconditionError("route face chain broken at dart " + std::to_string(c));
        cur = d.map.face_of(d.map.opp(c));
    }
    if (to && end_face(*to) != cur) throw PreconditionError("route does not end in its final face");
    if (!from && !to && d.map.face_of(crossings.front()) != cur)
        throw PreconditionError("closed route face chain does not close");
}

} // namespace

ShadowDiagram route_arc(const ShadowDiagram& d, const RouteEnd& from,
                        const std::vector<Dart>& crossings, const RouteEnd& to,
                        StrandColor color) {
    check_route_faces(d, from, crossings, to);
    ColoredBuilder cb(d);
    Dart pending = make_endpoint(cb, from, color);
    for (Dart c : crossings) {
        auto [back, fwd] = cb.make_crossing(c, color);
        cb.b.set_opp(pending, back);
        pending = fwd;
    }
    Dart last = make_endpoint(cb, to, color);
    cb.b.set_opp(pending, last);
    return cb.finalize(d.claimed_k);
}

ShadowDiagram route_curve(const ShadowDiagram& d, const std::vector<Dart>& crossings,
                          StrandColor color) {
    if (crossings.empty())
        throw PreconditionError("a closed route must cross at least one edge");
    check_route_faces(d, std::nullopt, crossings, std::nullopt);
    ColoredBuilder cb(d);
    Dart first_back = kNoDart, pending = kNoDart;
    for (Dart c : crossings) {
        auto [back, fwd] = cb.make_crossing(c, color);
        if (pending == kNoDart) first_back = back;
        else cb.b.set_opp(pending, back);
        pending = fwd;
    }
    cb.b.set_opp(pending, first_back);
    return cb.finalize(d.claimed_k);
}

std::optional<DualPath> shortest_dual_path(const CombinatorialMap& m,
                                           const std::vector<int>& start_faces,
                                           const std::vector<int>& end_faces,
                                           const std::vector<char>& crossable_dart) {
    const int nf = m.face_count();
    std::vector<int> dist(nf, -1);
    std::vector<Dart> via(nf, kNoDart);  // crossing dart entering this face
    std::deque<int> queue;

    std::vector<int> starts = start_faces;
    std::sort(starts.begin(), starts.end());
    starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
    for (int f : starts) {
        dist[f] = 0;
        queue.push_back(f);
    }
    std::vector<char> is_end(nf, 0);
    for (int f : end_faces) is_end[f] = 1;

    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        // Explore crossings out of f in dart order for determinism.
        std::vector<Dart> out(m.face_darts(f));
        std::sort(out.begin(), out.end());
        for (Dart c : out) {
            if (!crossable_dart[c]) continue;
            int g = m.face_of(m.opp(c));
            if (dist[g] < 0) {
                dist[g] = dist[f] + 1;
                via[g] = c;
                queue.push_back(g);
            }
        }
    }

    int best = -1;
    for (int f = 0; f < nf; ++f)
        if (is_end[f] && dist[f] >= 0 && (best < 0 || dist[f] < dist[best])) best = f;
    if (best < 0) return std::nullopt;

    DualPath path;
    path.end_face = best;
    int f = best;
    while (via[f] != kNoDart) {
        path.crossings.push_back(via[f]);
        f = m.face_of(via[f]);
    }
    path.start_face = f;
    std::reverse(path.crossings.begin(), path.crossings.end());
    return path;
}

std::vector<int> find_marked_points(const ShadowDiagram& d) {
    std::vector<int> out;
    for (int v = 0; v < d.map.vertex_count(); ++v) {
        const auto& rot = d.map.vertex_darts(v);
        if (rot.size() == 1) {
            out.push_back(v);
        } else if (rot.size() == 2) {
            StrandColor a = d.color(rot[0]), b = d.color(rot[1]);
            if (a.kind == StrandKind::Arc && b.kind == StrandKind::Arc && a.system != b.system)
                out.push_back(v);
        }
    }
    return out;
}

namespace {

std::vector<char> crossable_for_system(const ShadowDiagram& d, SystemLabel s) {
    std::vector<char> ok(d.map.dart_count(), 1);
    for (Dart x = 0; x < d.map.dart_count(); ++x) {
        StrandColor c = d.color(x);
        if (!c.is_scaffold() && c.system == s) ok[x] = 0;
    }
    return ok;
}

void require_curves_only_state(const ShadowDiagram& d, SystemLabel s) {
    int g = d.map.genus();
    int curves[3] = {0, 0, 0};
    StrandSet strands = StrandSet::extract(d);
    for (const auto& st : strands.all()) {
        if (st.color.is_scaffold()) continue;
        if (st.color.kind == StrandKind::Curve) ++curves[static_cast<int>(st.color.system)];
        else if (st.color.system == s)
            throw PreconditionError("system already has an arc");
    }
    for (int i = 0; i < 3; ++i)
        if (curves[i] != g)
            throw PreconditionError(std::string("system ") + system_name(static_cast<SystemLabel>(i)) +
                                    " does not carry a full cut system");
}

// Sectors of a vertex whose face lies in the given set, as attach darts.
// Sector (c, next(c)) lies in face_of(next(c)).
std::vector<std::pair<int, Dart>> vertex_sectors(const ShadowDiagram& d, int v) {
    std::vector<std::pair<int, Dart>> out;
    for (Dart c : d.map.vertex_darts(v)) out.emplace_back(d.map.face_of(d.map.next(c)), c);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ShadowDiagram complete_doubly_pointed(const ShadowDiagram& curves_only, int face1, int face2,
                                      SystemLabel s) {
    require_curves_only_state(curves_only, s);
    if (!find_marked_points(curves_only).empty())
        throw PreconditionError("marked points already placed; use the vertex overload");
    if (face1 == face2)
        throw PreconditionError(
            "marked points in a common face would float free of the rest of the diagram; "
            "place them in different faces");
    auto crossable = crossable_for_system(curves_only, s);
    auto path = shortest_dual_path(curves_only.map, {face1}, {face2}, crossable);
    if (!path) throw PreconditionError("marked faces are not connected in the system complement");
    return route_arc(curves_only, RouteEnd::in_face(path->start_face), path->crossings,
                     RouteEnd::in_face(path->end_face), StrandColor::arc(s));
}

ShadowDiagram complete_doubly_pointed(const ShadowDiagram& partial, SystemLabel s) {
    require_curves_only_state(partial, s);
    auto points = find_marked_points(partial);
    if (points.size() != 2)
        throw PreconditionError("expected exactly two marked points, found " +
                                std::to_string(points.size()));
    auto crossable = crossable_for_system(partial, s);

    auto sec1 = vertex_sectors(partial, points[0]);
    auto sec2 = vertex_sectors(partial, points[1]);
    std::vector<int> starts, ends;
    for (auto& [f, c] : sec1) starts.push_back(f);
    for (auto& [f, c] : sec2) ends.push_back(f);
    auto path = shortest_dual_path(partial.map, starts, ends, crossable);
    if (!path) throw PreconditionError("marked points are not connected in the system complement");

    auto attach = [](const std::vector<std::pair<int, Dart>>& sectors, int face) {
        for (auto& [f, c] : sectors)
            if (f == face) return c;
        throw PreconditionError("no sector on the chosen face");
    };
    return route_arc(partial, RouteEnd::at_sector(attach(sec1, path->start_face)), path->crossings,
                     RouteEnd::at_sector(attach(sec2, path->end_face)), StrandColor::arc(s));
}

ShadowDiagram connect_sum_diagrams(const ShadowDiagram& d1, int f1, const ShadowDiagram& d2, int f2) {
    ConnectSumResult r = connect_sum_maps(d1.map, f1, d2.map, f2);
    ShadowDiagram out;
    out.map = std::move(r.map);
    out.dart_color.assign(out.map.dart_count(), StrandColor::scaffold());
    for (Dart old = 0; old < d1.map.dart_count(); ++old)
        out.dart_color[r.m1_dart_map[old]] = d1.dart_color[old];
    for (Dart old = 0; old < d2.map.dart_count(); ++old)
        out.dart_color[r.m2_dart_map[old]] = d2.dart_color[old];
    for (auto [nd, old] : r.m1_inherit) out.dart_color[nd] = d1.dart_color[old];
    for (auto [nd, old] : r.m2_inherit) out.dart_color[nd] = d2.dart_color[old];
    for (Dart ring : r.ring_darts) out.dart_color[ring] = StrandColor::scaffold();
    for (int i = 0; i < 3; ++i) out.claimed_k[i] = d1.claimed_k[i] + d2.claimed_k[i];
    return out;
}

} // namespace tsd
