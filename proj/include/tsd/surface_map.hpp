#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tsd {

// A dart is half of an edge, directed away from its source vertex. Dart ids
// are dense (0..N-1) in every finished map.
using Dart = std::int32_t;
inline constexpr Dart kNoDart = -1;

// Structural corruption (malformed permutation data, ids out of range).
// Distinct from diagram validation failures, which are reported, not thrown.
struct MapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Violated operation precondition (bad cut cycles, bad surgery site, ...).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A closed orientable surface presented as a rotation system: `next` is the
// counterclockwise successor around the source vertex, `opp` the other half
// of the same edge. Orbit conventions, frozen here and in the format docs:
//
//   vertices = orbits of next
//   edges    = orbits of opp      (pairs {d, opp(d)})
//   faces    = orbits of d -> next(opp(d))   (apply opp first, then next)
//
// Vertex/edge/face ids are the ranks of their orbits ordered by minimal
// dart. Maps are immutable after construction; surgeries build new maps.
class CombinatorialMap {
public:
    CombinatorialMap() = default;

    // `rotations`: one cyclic dart list per vertex; `opp`: full pairing.
    // Throws MapError unless opp is a fixed-point-free involution and the
    // rotations are a permutation of 0..N-1.
    static CombinatorialMap from_rotations(const std::vector<std::vector<Dart>>& rotations,
                                           const std::vector<Dart>& opp);

    int dart_count() const { return static_cast<int>(next_.size()); }
    bool empty() const { return next_.empty(); }

    Dart next(Dart d) const { return next_[check(d)]; }
    Dart prev(Dart d) const { return prev_[check(d)]; }
    Dart opp(Dart d) const { return opp_[check(d)]; }
    // Face successor: the frozen convention next(opp(d)).
    Dart face_next(Dart d) const { return next_[opp_[check(d)]]; }

    int vertex_count() const { return n_vertices_; }
    int edge_count() const { return dart_count() / 2; }
    int face_count() const { return n_faces_; }
    int component_count() const { return n_components_; }

    int vertex_of(Dart d) const { return vertex_id_[check(d)]; }
    int face_of(Dart d) const { return face_id_[check(d)]; }
    int edge_of(Dart d) const { return edge_id_[check(d)]; }
    int component_of(Dart d) const { return component_id_[check(d)]; }

    // Orbit representatives and full orbits, in id order.
    const std::vector<std::vector<Dart>>& vertices() const { return vertex_orbits_; }
    const std::vector<std::vector<Dart>>& faces() const { return face_orbits_; }
    // Darts of vertex v in rotation order.
    const std::vector<Dart>& vertex_darts(int v) const { return vertex_orbits_[v]; }
    const std::vector<Dart>& face_darts(int f) const { return face_orbits_[f]; }
    int vertex_valence(int v) const { return static_cast<int>(vertex_orbits_[v].size()); }

    // V - E + F summed over components.
    int euler_characteristic() const;
    // Genus of a closed connected map; throws PreconditionError if the map is
    // disconnected or empty, MapError if chi is odd (corrupted data).
    int genus() const;
    std::vector<int> genus_per_component() const;

    // Lexicographically minimal traversal encoding; equal encodings <=>
    // dart-relabeling isomorphism. `decoration` optionally appends per-dart
    // data (colors) that the isomorphism must preserve.
    std::vector<std::int32_t> canonical_key(const std::vector<std::int32_t>* decoration = nullptr) const;
    bool isomorphic_to(const CombinatorialMap& o) const { return canonical_key() == o.canonical_key(); }

private:
    Dart check(Dart d) const {
        if (d < 0 || d >= dart_count()) throw MapError("dart id out of range: " + std::to_string(d));
        return d;
    }
    void build_orbits();

    std::vector<Dart> next_, prev_, opp_;
    std::vector<int> vertex_id_, face_id_, edge_id_, component_id_;
    std::vector<std::vector<Dart>> vertex_orbits_, face_orbits_;
    int n_vertices_ = 0, n_faces_ = 0, n_components_ = 0;

    friend class MapBuilder;
};

// The cut-open surface: a closed complex in which every duplicated edge is
// marked as boundary, plus enough bookkeeping to walk boundary circles and
// to re-glue. Cutting duplicates each cut edge into a pair of twin boundary
// edges and splits each cut vertex along its rotation.
class BorderedMap {
public:
    const CombinatorialMap& complex() const { return complex_; }

    bool is_boundary_edge(Dart d) const { return boundary_edge_[d]; }
    // Twin boundary dart on the opposite copy of a cut edge (kNoDart for
    // interior darts).
    Dart twin(Dart d) const { return twin_[d]; }

    int component_count() const { return complex_.component_count(); }
    int boundary_circle_count() const { return n_boundary_circles_; }
    int boundary_circles_in_component(int comp) const { return circles_per_component_[comp]; }

    // chi of the bordered surface: chi(complex) - #boundary circles.
    int euler_characteristic() const { return complex_.euler_characteristic() - n_boundary_circles_; }
    // Genus per component from 2 - 2g - b = chi.
    std::vector<int> genus_per_component() const;
    bool all_components_planar() const;

    // Inverse of cut_along_edges: fuses every twin pair back together.
    CombinatorialMap reglue() const;

private:
    CombinatorialMap complex_;
    std::vector<char> boundary_edge_;
    std::vector<Dart> twin_;
    std::vector<char> void_side_;   // darts whose face orbit is a boundary walk
    std::vector<int> circles_per_component_;
    int n_boundary_circles_ = 0;

    friend BorderedMap cut_along_edges(const CombinatorialMap&, const std::vector<char>&);
};

// Cut the surface along an arbitrary set of edges (given as a per-dart mask,
// consistent across opp). Vertices incident to cut edges split into one copy
// per gap between consecutive cut darts in the rotation.
BorderedMap cut_along_edges(const CombinatorialMap& m, const std::vector<char>& cut_dart_mask);

// Cut along pairwise disjoint simple closed edge-cycles (each given by its
// edge set). Checks the cycle preconditions: every touched vertex carries
// exactly two cut darts, and the cut edges decompose into closed cycles.
BorderedMap cut_along(const CombinatorialMap& m, const std::vector<std::vector<Dart>>& cycles);

// Connected sum through faces f1 and f2: a transversal ring is inserted
// across the lowest-id boundary edge of each face and the two rings are
// spliced, so chi(result) = chi(m1) + chi(m2) - 2. Dart mappings let callers
// transport per-dart data; inherit pairs name the new split-edge darts that
// continue an old edge, and ring_darts the freshly created ring edges.
struct ConnectSumResult {
    CombinatorialMap map;
    std::vector<Dart> m1_dart_map;  // old m1 dart -> new dart
    std::vector<Dart> m2_dart_map;
    std::vector<std::pair<Dart, Dart>> m1_inherit;  // (new dart, old m1 dart it extends)
    std::vector<std::pair<Dart, Dart>> m2_inherit;
    std::vector<Dart> ring_darts;
};
ConnectSumResult connect_sum_maps(const CombinatorialMap& m1, int f1, const CombinatorialMap& m2, int f2);

// Mutable scratch representation for surgeries. Dart ids may acquire holes
// while editing; finalize() compacts them (surviving darts keep their
// relative order) and returns the old->new dart mapping.
class MapBuilder {
public:
    MapBuilder() = default;
    explicit MapBuilder(const CombinatorialMap& m);

    int raw_size() const { return static_cast<int>(next_.size()); }
    bool alive(Dart d) const { return d >= 0 && d < raw_size() && alive_[d]; }
    Dart next(Dart d) const { return next_[d]; }
    Dart prev(Dart d) const { return prev_[d]; }
    Dart opp(Dart d) const { return opp_[d]; }

    // New dart, initially a fixed point of everything; returns its id.
    Dart new_dart();
    // Make d a one-dart vertex (rotation fixed point).
    void isolate(Dart d) { next_[d] = d; prev_[d] = d; }
    // Insert dart d into the rotation immediately after dart at (same vertex).
    void insert_after(Dart at, Dart d);
    // Remove dart d from its rotation cycle (d keeps self-loops).
    void detach(Dart d);
    void set_opp(Dart a, Dart b) { opp_[a] = b; opp_[b] = a; }

    // Split the edge {d, opp(d)} by a new degree-2 vertex x; returns the two
    // new darts (p, q) at x with opp(d) = p and opp(old opp) = q, rotation at
    // x = (p, q). The caller typically inserts chord darts between them.
    std::pair<Dart, Dart> split_edge(Dart d);

    // Delete dart (and nothing else); caller maintains consistency.
    void kill(Dart d);
    // Delete a vertex given any dart on it, killing all its darts.
    void kill_vertex(Dart d);

    // Compact ids and build the finished map. `mapping_out`, if non-null,
    // receives old->new ids (kNoDart for killed darts).
    CombinatorialMap finalize(std::vector<Dart>* mapping_out = nullptr) const;

private:
    std::vector<Dart> next_, prev_, opp_;
    std::vector<char> alive_;
};

} // namespace tsd
