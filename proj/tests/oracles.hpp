#pragma once

// Brute-force reference implementations kept independent of the library
// kernel. These recompute orbit counts, cut-surface data and disk counts
// from first principles so that kernel results can be cross-checked.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "tsd/surface_map.hpp"

namespace oracle {

// Face count by direct enumeration of next(opp(.)) orbits, written against
// raw permutation tables rather than the CombinatorialMap accessors.
int face_orbit_count(const std::vector<tsd::Dart>& next, const std::vector<tsd::Dart>& opp);

// Euler characteristic recomputed from raw tables.
int euler_characteristic(const std::vector<tsd::Dart>& next, const std::vector<tsd::Dart>& opp);

// Cut-surface data recomputed by an independent corner-walk construction:
// every dart-end incident to a cut edge is treated as a slit and boundary
// circles are traced corner by corner.
struct CutSummary {
    int components = 0;
    int boundary_circles = 0;
    std::vector<int> genus_per_component;
    bool all_planar() const {
        for (int g : genus_per_component)
            if (g) return false;
        return true;
    }
};
CutSummary brute_force_cut(const tsd::CombinatorialMap& m, const std::vector<char>& cut_dart_mask);

// Union-find on a small universe.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) { return parent_[x] == x ? x : parent_[x] = find(parent_[x]); }
    void unite(int a, int b) { parent_[find(a)] = find(b); }
    int class_count() {
        std::set<int> roots;
        for (int i = 0; i < static_cast<int>(parent_.size()); ++i) roots.insert(find(i));
        return static_cast<int>(roots.size());
    }

private:
    std::vector<int> parent_;
};

// Disk count for one sector: patches are glued along the two given perfect
// matchings on bridge points and the resulting components counted.
int patch_glue_disk_count(const std::vector<int>& match1, const std::vector<int>& match2);

// Component count of the union graph of all three matchings.
int union_component_count(const std::vector<int>& ma, const std::vector<int>& mb,
                          const std::vector<int>& mc);

} // namespace oracle
