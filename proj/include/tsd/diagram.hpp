#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsd/snf.hpp"
#include "tsd/surface_map.hpp"

namespace tsd {

// The three curve-and-arc systems of a shadow diagram, in the fixed spine
// order: A carries the alpha curves and a arcs, B beta/b, C gamma/c.
enum class SystemLabel : std::uint8_t { A = 0, B = 1, C = 2 };

inline const char* system_name(SystemLabel s) {
    switch (s) {
        case SystemLabel::A: return "A";
        case SystemLabel::B: return "B";
        default: return "C";
    }
}

enum class StrandKind : std::uint8_t { Curve = 0, Arc = 1, Scaffold = 2 };

// Per-edge color. Scaffold edges carry no system.
struct StrandColor {
    StrandKind kind = StrandKind::Scaffold;
    SystemLabel system = SystemLabel::A;

    static StrandColor curve(SystemLabel s) { return {StrandKind::Curve, s}; }
    static StrandColor arc(SystemLabel s) { return {StrandKind::Arc, s}; }
    static StrandColor scaffold() { return {StrandKind::Scaffold, SystemLabel::A}; }

    bool is_scaffold() const { return kind == StrandKind::Scaffold; }
    bool operator==(const StrandColor&) const = default;

    // Stable small integer for canonical keys and serialization.
    std::int32_t code() const {
        return is_scaffold() ? 6 : static_cast<std::int32_t>(system) * 2 +
                                       (kind == StrandKind::Arc ? 1 : 0);
    }
    std::string token() const;
    static std::optional<StrandColor> from_token(const std::string& tok);
};

enum class VertexKind : std::uint8_t { Bridge, Crossing, Marker };
const char* vertex_kind_name(VertexKind k);

// A shadow diagram: colored map plus the claimed 1-handlebody genera. The
// k_i are metadata carried along with the diagram; they are not computable
// from the surface data and are only checked against a necessary homological
// condition (see k_necessary_check).
struct ShadowDiagram {
    CombinatorialMap map;
    std::vector<StrandColor> dart_color;  // indexed by dart; equal across opp
    std::array<int, 3> claimed_k{0, 0, 0};

    StrandColor color(Dart d) const { return dart_color[d]; }
    std::vector<std::int32_t> color_codes() const;
    std::vector<std::int32_t> canonical_key() const;
    bool equivalent_to(const ShadowDiagram& o) const { return canonical_key() == o.canonical_key(); }
};

// Maximal same-colored strands. Curves are closed; arcs run between bridge
// points. Strand ids are ranks by minimal dart.
struct Strand {
    int id = -1;
    StrandColor color;
    bool closed = false;
    std::vector<Dart> edge_darts;       // one dart per edge, unordered
    std::array<int, 2> endpoints{-1, -1};  // bridge vertex ids (arcs only)
};

class StrandSet {
public:
    static StrandSet extract(const ShadowDiagram& d, std::string* error = nullptr);

    int count() const { return static_cast<int>(strands_.size()); }
    const Strand& strand(int id) const { return strands_[id]; }
    const std::vector<Strand>& all() const { return strands_; }
    int strand_of(Dart d) const { return strand_of_dart_[d]; }

    // Directed traversal of a closed strand, starting at its minimal dart in
    // that dart's own direction; each entry is the dart traversed.
    std::vector<Dart> curve_direction(const ShadowDiagram& d, int id) const;

private:
    std::vector<Strand> strands_;
    std::vector<int> strand_of_dart_;
};

// One validation condition outcome. `witness` locates the offending vertex
// or strand when the condition fails.
struct ConditionResult {
    std::string name;
    bool passed = true;
    std::string detail;
    int witness = -1;
};

struct ValidationReport {
    std::vector<ConditionResult> conditions;  // W1..W6 in order
    std::array<ConditionResult, 3> k_checks;  // necessary homological checks
    int genus = -1;
    int bridges = -1;  // b

    bool accepted() const {
        for (const auto& c : conditions)
            if (!c.passed) return false;
        return true;
    }
    bool k_ok() const {
        for (const auto& c : k_checks)
            if (!c.passed) return false;
        return true;
    }
    std::string summary() const;
};

// Frozen wording: acceptance certifies combinatorial well-formedness only.
extern const char* const kAcceptanceScopeNote;

// Validates W1-W6 plus the homological k-checks. Throws MapError only for
// structural corruption (color table size mismatch, inconsistent colors
// across opp); everything else lands in the report.
ValidationReport validate(const ShadowDiagram& d);

// Derived vertex classification (by valence and incident colors).
std::optional<VertexKind> classify_vertex(const ShadowDiagram& d, int vertex);
std::vector<int> bridge_points(const ShadowDiagram& d);

// (g;k1,k2,k3;b;c1,c2,c3) with computed and claimed fields.
struct ComplexityTuple {
    int g = 0;
    std::array<int, 3> k{0, 0, 0};
    int b = 0;
    std::array<int, 3> c{0, 0, 0};
    bool balanced = false;
    bool k_check_passed = true;  // warning flag: claimed k failed the SNF test

    bool operator==(const ComplexityTuple& o) const {
        return g == o.g && k == o.k && b == o.b && c == o.c;
    }
    std::string to_string() const;
};

ComplexityTuple make_tuple(int g, std::array<int, 3> k, int b, std::array<int, 3> c);

// Requires an accepted diagram (throws PreconditionError otherwise).
ComplexityTuple complexity(const ShadowDiagram& d);

// Perfect matching on bridge points induced by the arcs of system s:
// match[p] = the partner of bridge point p. Indexed by position in
// bridge_points(d) order.
std::vector<int> endpoint_matching(const ShadowDiagram& d, SystemLabel s);

bool is_doubly_pointed(const ShadowDiagram& d);

// Signed intersection matrix of the curve systems s and t; entry (i,j) sums
// crossing signs of the i-th s-curve with the j-th t-curve. Curves are
// indexed by minimal dart, oriented from their minimal dart forward; the
// sign at a crossing is +1 when the t-curve's outgoing dart immediately
// follows the s-curve's outgoing dart in the vertex rotation.
IntMatrix intersection_matrix(const ShadowDiagram& d, SystemLabel s, SystemLabel t);

// Necessary homological condition on the claimed k_i: the intersection
// pairing of the two cut systems bounding sector i (1:(B,A) 2:(B,C) 3:(C,A))
// must have Smith normal form diag(1,..,1,0,..,0) with exactly g-k_i ones.
bool k_necessary_check(const ShadowDiagram& d, int sector);

} // namespace tsd
