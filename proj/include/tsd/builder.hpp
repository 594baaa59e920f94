#pragma once

#include <optional>
#include <vector>

#include "tsd/diagram.hpp"

namespace tsd {

// Where a routed arc begins or ends.
struct RouteEnd {
    enum class Type { NewVertexInFace, AtVertexAfterDart };
    Type type = Type::NewVertexInFace;
    int face = -1;       // NewVertexInFace: face id of the diagram being routed on
    Dart after = kNoDart; // AtVertexAfterDart: new dart goes into the sector (after, next(after))

    static RouteEnd in_face(int f) { return {Type::NewVertexInFace, f, kNoDart}; }
    static RouteEnd at_sector(Dart after) { return {Type::AtVertexAfterDart, -1, after}; }
};

// Insert a new open strand: it starts at `from`, crosses the listed edges
// transversally (each entry is a dart; the strand enters from face_of(dart)'s
// side) and ends at `to`. Crossed edges must be pairwise distinct, and
// consecutive stations must share the face they claim. Returns the new
// diagram; the routed strand's darts carry `color`.
ShadowDiagram route_arc(const ShadowDiagram& d, const RouteEnd& from,
                        const std::vector<Dart>& crossings, const RouteEnd& to,
                        StrandColor color);

// Insert a closed strand crossing the listed edges in cyclic order (at least
// one crossing: a closed curve must meet the existing graph to stay cellular).
ShadowDiagram route_curve(const ShadowDiagram& d, const std::vector<Dart>& crossings,
                          StrandColor color);

// Shortest dual path between two face sets, crossing only edges allowed by
// `crossable`. Deterministic: breadth-first with faces and darts explored in
// id order, tie-broken toward lower face ids. Returns the crossing darts
// (entering sides included), or nullopt when unreachable.
struct DualPath {
    int start_face = -1;
    int end_face = -1;
    std::vector<Dart> crossings;
};
std::optional<DualPath> shortest_dual_path(const CombinatorialMap& m,
                                           const std::vector<int>& start_faces,
                                           const std::vector<int>& end_faces,
                                           const std::vector<char>& crossable_dart);

// Marked points of a partially built doubly-pointed diagram: vertices of
// valence 1, or valence 2 whose darts are arc ends of different systems.
std::vector<int> find_marked_points(const ShadowDiagram& d);

// Add the arc of system s to a doubly-pointed diagram under construction,
// routed along the shortest dual path in the complement of the s-curves
// (ties toward lower face ids). The two-face overload seeds the first arc by
// creating the marked points; the other overload attaches to the existing
// marked points.
ShadowDiagram complete_doubly_pointed(const ShadowDiagram& curves_only, int face1, int face2,
                                      SystemLabel s);
ShadowDiagram complete_doubly_pointed(const ShadowDiagram& partial, SystemLabel s);

// Connected sum of the underlying surfaces through the chosen faces; colors
// carried across, ring edges scaffold, claimed k added componentwise.
ShadowDiagram connect_sum_diagrams(const ShadowDiagram& d1, int f1, const ShadowDiagram& d2, int f2);

} // namespace tsd
