#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "tsd/surface_map.hpp"

using namespace tsd;

namespace {

// Sphere carrying a single loop at one vertex.
CombinatorialMap sphere_loop() {
    return CombinatorialMap::from_rotations({{0, 1}}, {1, 0});
}

// One-vertex torus, loops interleaved a b a^-1 b^-1.
CombinatorialMap torus_map() {
    return CombinatorialMap::from_rotations({{0, 2, 1, 3}}, {1, 0, 3, 2});
}

// One-vertex genus-2 map, rotation a b a^-1 b^-1 c d c^-1 d^-1.
CombinatorialMap genus2_map() {
    return CombinatorialMap::from_rotations({{0, 2, 1, 3, 4, 6, 5, 7}},
                                            {1, 0, 3, 2, 5, 4, 7, 6});
}

// Random closed orientable map on 2n darts: any fixed-point-free involution
// plus any permutation is a valid rotation system.
CombinatorialMap random_map(std::mt19937_64& rng, int edges) {
    int n = 2 * edges;
    std::vector<Dart> darts(n);
    for (int i = 0; i < n; ++i) darts[i] = i;
    std::shuffle(darts.begin(), darts.end(), rng);
    std::vector<Dart> opp(n);
    for (int i = 0; i < n; i += 2) {
        opp[darts[i]] = darts[i + 1];
        opp[darts[i + 1]] = darts[i];
    }
    std::shuffle(darts.begin(), darts.end(), rng);
    // Split the shuffled darts into random cyclic blocks.
    std::vector<std::vector<Dart>> rotations;
    size_t at = 0;
    while (at < darts.size()) {
        size_t len = 1 + rng() % 4;
        len = std::min(len, darts.size() - at);
        rotations.emplace_back(darts.begin() + at, darts.begin() + at + len);
        at += len;
    }
    return CombinatorialMap::from_rotations(rotations, opp);
}

std::vector<Dart> raw_next(const CombinatorialMap& m) {
    std::vector<Dart> v(m.dart_count());
    for (Dart d = 0; d < m.dart_count(); ++d) v[d] = m.next(d);
    return v;
}
std::vector<Dart> raw_opp(const CombinatorialMap& m) {
    std::vector<Dart> v(m.dart_count());
    for (Dart d = 0; d < m.dart_count(); ++d) v[d] = m.opp(d);
    return v;
}

} // namespace

TEST_CASE("euler characteristic of the basic closed surfaces") {
    CHECK(sphere_loop().euler_characteristic() == 2);
    CHECK(torus_map().euler_characteristic() == 0);

    // Genus-2 expectation frozen after checking it against the independent
    // face-orbit enumeration.
    auto g2 = genus2_map();
    CHECK(oracle::euler_characteristic(raw_next(g2), raw_opp(g2)) == -2);
    CHECK(g2.euler_characteristic() == -2);
    CHECK(g2.genus() == 2);
}

TEST_CASE("genus of sphere and torus") {
    CHECK(sphere_loop().genus() == 0);
    CHECK(torus_map().genus() == 1);
}

TEST_CASE("structural validation rejects malformed data") {
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0, 1}}, {0, 1}), MapError);       // opp fixed point
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0, 0}}, {1, 0}), MapError);       // dart twice
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0}}, {1, 0}), MapError);          // missing dart
    CHECK_THROWS_AS(CombinatorialMap::from_rotations({{0, 3}}, {3, 0}), MapError);       // out of range
}

TEST_CASE("orbit degree sums match dart counts") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = random_map(rng, 2 + static_cast<int>(rng() % 8));
        int vdeg = 0, fdeg = 0;
        for (const auto& v : m.vertices()) vdeg += static_cast<int>(v.size());
        for (const auto& f : m.faces()) fdeg += static_cast<int>(f.size());
        CHECK(vdeg == 2 * m.edge_count());
        CHECK(fdeg == 2 * m.edge_count());
        CHECK((m.euler_characteristic() % 2) == 0);
        for (int g : m.genus_per_component()) CHECK(g >= 0);
        CHECK(m.euler_characteristic() == oracle::euler_characteristic(raw_next(m), raw_opp(m)));
    }
}

TEST_CASE("cutting a torus along an essential loop gives an annulus") {
    auto t = torus_map();
    auto cut = cut_along(t, {{0}});
    CHECK(cut.component_count() == 1);
    CHECK(cut.boundary_circle_count() == 2);
    CHECK(cut.genus_per_component() == std::vector<int>{0});

    std::vector<char> mask(t.dart_count(), 0);
    mask[0] = mask[1] = 1;
    auto brute = oracle::brute_force_cut(t, mask);
    CHECK(brute.components == 1);
    CHECK(brute.boundary_circles == 2);
    CHECK(brute.all_planar());
}

TEST_CASE("cutting a sphere along the loop gives two disks") {
    auto s = sphere_loop();
    auto cut = cut_along(s, {{0}});
    CHECK(cut.component_count() == 2);
    CHECK(cut.boundary_circle_count() == 2);
    CHECK(cut.boundary_circles_in_component(0) == 1);
    CHECK(cut.boundary_circles_in_component(1) == 1);
    CHECK(cut.genus_per_component() == std::vector<int>{0, 0});

    std::vector<char> mask(s.dart_count(), 1);
    auto brute = oracle::brute_force_cut(s, mask);
    CHECK(brute.components == 2);
    CHECK(brute.boundary_circles == 2);
}

TEST_CASE("cutting genus 2 along a standard cut system leaves a planar surface") {
    // Two-vertex genus-2 map: handle loops a,b at u and c,d at v joined by a
    // bridge edge, so the cut system {a, c} is vertex-disjoint.
    auto m = CombinatorialMap::from_rotations({{0, 2, 1, 3, 8}, {4, 6, 5, 7, 9}},
                                              {1, 0, 3, 2, 5, 4, 7, 6, 9, 8});
    REQUIRE(m.genus() == 2);
    auto cut = cut_along(m, {{0}, {4}});
    CHECK(cut.component_count() == 1);
    CHECK(cut.genus_per_component() == std::vector<int>{0});
    CHECK(cut.boundary_circle_count() == 4);

    std::vector<char> mask(m.dart_count(), 0);
    mask[0] = mask[1] = mask[4] = mask[5] = 1;
    auto brute = oracle::brute_force_cut(m, mask);
    CHECK(brute.components == 1);
    CHECK(brute.boundary_circles == 4);
    CHECK(brute.all_planar());
}

TEST_CASE("cut preconditions") {
    auto t = torus_map();
    CHECK_THROWS_AS(cut_along(t, {{0}, {0}}), PreconditionError);   // shared edge
    CHECK_THROWS_AS(cut_along(t, {{0}, {2}}), PreconditionError);   // shared vertex
    CHECK_THROWS_AS(cut_along(t, {{0, 2}}), PreconditionError);     // not a closed cycle (4 darts at v)
}

TEST_CASE("cut then reglue reproduces the map up to relabeling") {
    auto t = torus_map();
    CHECK(cut_along(t, {{0}}).reglue().isomorphic_to(t));

    auto g2 = CombinatorialMap::from_rotations({{0, 2, 1, 3, 8}, {4, 6, 5, 7, 9}},
                                               {1, 0, 3, 2, 5, 4, 7, 6, 9, 8});
    CHECK(cut_along(g2, {{0}, {4}}).reglue().isomorphic_to(g2));

    std::mt19937_64 rng(11);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 25; ++trial) {
        auto m = random_map(rng, 2 + static_cast<int>(rng() % 6));
        // cut along a random single loop edge if one exists at a vertex with
        // both darts there (any 1-edge cycle needs source(d) == target(d))
        Dart loop = kNoDart;
        for (Dart d = 0; d < m.dart_count(); ++d)
            if (m.vertex_of(d) == m.vertex_of(m.opp(d))) {
                loop = d;
                break;
            }
        if (loop == kNoDart) continue;
        ++done;
        auto cut = cut_along(m, {{loop}});
        CHECK(cut.reglue().isomorphic_to(m));
        std::vector<char> mask(m.dart_count(), 0);
        mask[loop] = mask[m.opp(loop)] = 1;
        auto brute = oracle::brute_force_cut(m, mask);
        CHECK(brute.components == cut.component_count());
        CHECK(brute.boundary_circles == cut.boundary_circle_count());
        auto gk = cut.genus_per_component();
        std::sort(gk.begin(), gk.end());
        CHECK(gk == brute.genus_per_component);
    }
    CHECK(done > 0);
}

TEST_CASE("connected sums add Euler characteristics minus two") {
    auto s = sphere_loop();
    auto t = torus_map();

    auto ss = connect_sum_maps(s, 0, s, 0);
    CHECK(ss.map.component_count() == 1);
    CHECK(ss.map.euler_characteristic() == 2);
    CHECK(ss.map.genus() == 0);

    auto tt = connect_sum_maps(t, 0, t, 0);
    CHECK(tt.map.euler_characteristic() == -2);
    CHECK(tt.map.genus() == 2);

    auto ts = connect_sum_maps(t, 0, s, 0);
    CHECK(ts.map.genus() == 1);

    CHECK_THROWS_AS(connect_sum_maps(t, 5, s, 0), PreconditionError);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        auto m1 = random_map(rng, 2 + static_cast<int>(rng() % 5));
        auto m2 = random_map(rng, 2 + static_cast<int>(rng() % 5));
        int f1 = static_cast<int>(rng() % m1.face_count());
        int f2 = static_cast<int>(rng() % m2.face_count());
        auto r = connect_sum_maps(m1, f1, m2, f2);
        CHECK(r.map.euler_characteristic() == m1.euler_characteristic() + m2.euler_characteristic() - 2);
        if (m1.component_count() == 1 && m2.component_count() == 1)
            CHECK(r.map.component_count() == 1);
    }
}

TEST_CASE("connected sum of two tori matches genus-2 surgery recomputation") {
    auto t = torus_map();
    auto tt = connect_sum_maps(t, 0, t, 0);
    CHECK(oracle::euler_characteristic(raw_next(tt.map), raw_opp(tt.map)) == -2);
}

TEST_CASE("canonical keys detect relabeling isomorphism") {
    auto t1 = torus_map();
    // Same torus with darts renamed by 0->2, 1->3, 2->0, 3->1.
    auto t2 = CombinatorialMap::from_rotations({{2, 0, 3, 1}}, {1, 0, 3, 2});
    CHECK(t1.isomorphic_to(t2));
    CHECK_FALSE(t1.isomorphic_to(sphere_loop()));
    CHECK_FALSE(t1.isomorphic_to(genus2_map()));

    // Decorations participate: monochrome edges vs mixed-color edges cannot
    // be related by any dart relabeling.
    std::vector<std::int32_t> deco1{5, 5, 7, 7}, deco2{5, 7, 5, 7};
    CHECK(t1.canonical_key(&deco1) != t1.canonical_key(&deco2));
    // The torus automorphism swapping the two loops identifies swapped
    // monochrome colorings.
    std::vector<std::int32_t> deco3{7, 7, 5, 5};
    CHECK(t1.canonical_key(&deco1) == t1.canonical_key(&deco3));
}
