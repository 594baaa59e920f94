#pragma once

// Internal scratch type shared by the construction and move code: a
// MapBuilder plus a parallel per-dart color table.

#include "tsd/diagram.hpp"

namespace tsd::detail {

struct ColoredBuilder {
    MapBuilder b;
    std::vector<StrandColor> color;

    explicit ColoredBuilder(const ShadowDiagram& d) : b(d.map), color(d.dart_color) {}

    Dart new_dart(StrandColor c) {
        Dart x = b.new_dart();
        if (static_cast<size_t>(x) >= color.size()) color.resize(x + 1);
        color[x] = c;
        return x;
    }

    // One transversal crossing: splits the edge of `through` at a new vertex
    // and wires two chord darts so the backward chord sits on
    // face_of(through)'s side. Returns {backward, forward}.
    std::pair<Dart, Dart> make_crossing(Dart through, StrandColor route_color) {
        StrandColor edge_color = color[through];
        auto [p, q] = b.split_edge(through);
        color.resize(b.raw_size());
        color[p] = edge_color;
        color[q] = edge_color;
        Dart s_prev = new_dart(route_color);
        Dart s_next = new_dart(route_color);
        b.insert_after(p, s_prev);  // rotation (p, s_prev, q, s_next)
        b.insert_after(q, s_next);
        return {s_prev, s_next};
    }

    // Append another diagram's darts with an id offset; returns the offset.
    Dart import(const ShadowDiagram& d2) {
        Dart offset = static_cast<Dart>(b.raw_size());
        for (Dart x = 0; x < d2.map.dart_count(); ++x) new_dart(d2.dart_color[x]);
        for (const auto& rot : d2.map.vertices()) {
            Dart first = offset + rot[0];
            b.isolate(first);
            Dart at = first;
            for (size_t i = 1; i < rot.size(); ++i) {
                b.insert_after(at, offset + rot[i]);
                at = offset + rot[i];
            }
        }
        for (Dart x = 0; x < d2.map.dart_count(); ++x)
            if (x < d2.map.opp(x)) b.set_opp(offset + x, offset + d2.map.opp(x));
        return offset;
    }

    ShadowDiagram finalize(std::array<int, 3> claimed_k) const {
        std::vector<Dart> remap;
        ShadowDiagram out;
        out.map = b.finalize(&remap);
        out.dart_color.resize(out.map.dart_count());
        for (size_t old = 0; old < remap.size(); ++old)
            if (remap[old] != kNoDart) out.dart_color[remap[old]] = color[old];
        out.claimed_k = claimed_k;
        return out;
    }
};

} // namespace tsd::detail
