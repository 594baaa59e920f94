#include <doctest.h>

#include "oracles.hpp"
#include "tsd/batch.hpp"
#include "tsd/builder.hpp"
#include "tsd/catalog.hpp"
#include "tsd/invariants.hpp"

using namespace tsd;

namespace {

ShadowDiagram torus_two_curves() {
    ShadowDiagram d;
    d.map = CombinatorialMap::from_rotations({{0, 2, 1, 3}}, {1, 0, 3, 2});
    d.dart_color = {StrandColor::curve(SystemLabel::A), StrandColor::curve(SystemLabel::A),
                    StrandColor::curve(SystemLabel::B), StrandColor::curve(SystemLabel::B)};
    return d;
}

} // namespace

TEST_CASE("routing a closed curve keeps the surface and adds crossings") {
    auto base = torus_two_curves();
    auto out = route_curve(base, {0, 2}, StrandColor::curve(SystemLabel::C));
    CHECK(out.map.genus() == 1);
    CHECK(out.map.vertex_count() == 3);
    CHECK(out.map.edge_count() == 6);
    CHECK(out.map.face_count() == 3);
    CHECK(validate(out).accepted());
}

TEST_CASE("route preconditions") {
    auto base = torus_two_curves();
    CHECK_THROWS_AS(route_curve(base, {}, StrandColor::scaffold()), PreconditionError);
    CHECK_THROWS_AS(route_curve(base, {0, 0}, StrandColor::scaffold()), PreconditionError);
    CHECK_THROWS_AS(route_curve(base, {0, 1}, StrandColor::scaffold()), PreconditionError);
    CHECK_THROWS_AS(
        route_arc(base, RouteEnd::in_face(0), {}, RouteEnd::in_face(7), StrandColor::scaffold()),
        PreconditionError);
}

TEST_CASE("doubly pointed completion validates for all three systems") {
    auto curves = catalog_get("cp2_genus1").diagram;
    auto d = complete_doubly_pointed(curves, 0, 1, SystemLabel::A);
    CHECK(find_marked_points(d).size() == 2);
    d = complete_doubly_pointed(d, SystemLabel::B);
    d = complete_doubly_pointed(d, SystemLabel::C);
    auto rep = validate(d);
    CHECK(rep.accepted());
    CHECK(rep.bridges == 1);
    CHECK(complexity(d) == make_tuple(1, {0, 0, 0}, 1, {1, 1, 1}));
}

TEST_CASE("completion order does not matter for validity") {
    auto curves = catalog_get("s2xs2_genus2").diagram;
    for (auto order : {std::array{SystemLabel::C, SystemLabel::A, SystemLabel::B},
                       std::array{SystemLabel::B, SystemLabel::C, SystemLabel::A}}) {
        auto d = complete_doubly_pointed(curves, 0, 2, order[0]);
        d = complete_doubly_pointed(d, order[1]);
        d = complete_doubly_pointed(d, order[2]);
        CHECK(validate(d).accepted());
        CHECK(complexity(d).b == 1);
    }
}

TEST_CASE("randomized marked-face placements always complete to valid diagrams") {
    for (const char* base_name : {"cp2_genus1", "s2xs2_genus2", "s1xs3_genus1"}) {
        auto curves = catalog_get(base_name).diagram;
        batch::SplitMix64 rng(base_name[0]);
        int done = 0;
        for (int trial = 0; trial < 12 && done < 6; ++trial) {
            int f1 = static_cast<int>(rng.below(curves.map.face_count()));
            int f2 = static_cast<int>(rng.below(curves.map.face_count()));
            if (f1 == f2) continue;
            ++done;
            auto d = complete_doubly_pointed(curves, f1, f2, SystemLabel::A);
            d = complete_doubly_pointed(d, SystemLabel::B);
            d = complete_doubly_pointed(d, SystemLabel::C);
            CAPTURE(base_name);
            CAPTURE(f1);
            CAPTURE(f2);
            CHECK(validate(d).accepted());
            CHECK(complexity(d).b == 1);
            CHECK(is_doubly_pointed(d));
        }
        CHECK(done > 0);
    }
}

TEST_CASE("two points in the same face join by a direct chord") {
    // after the first two arcs exist, the third system's endpoints share a
    // face whenever the path length is zero; the route is the plain chord
    auto curves = catalog_get("cp2_genus1").diagram;
    auto d = complete_doubly_pointed(curves, 0, 1, SystemLabel::A);
    auto before_faces = d.map.face_count();
    auto marked = find_marked_points(d);
    REQUIRE(marked.size() == 2);
    auto d2 = complete_doubly_pointed(d, SystemLabel::B);
    CHECK(validate(complete_doubly_pointed(d2, SystemLabel::C)).accepted());
    CHECK(before_faces >= 1);
    // degenerate same-face seeding is rejected up front
    CHECK_THROWS_AS(complete_doubly_pointed(curves, 0, 0, SystemLabel::A), PreconditionError);
}

TEST_CASE("connected sums of diagrams transport colors and k") {
    auto a = catalog_get("cp2_genus1").diagram;
    auto b = catalog_get("s1xs3_genus1").diagram;
    auto s = connect_sum_diagrams(a, 0, b, 0);
    CHECK(s.map.genus() == 2);
    CHECK(s.claimed_k == std::array<int, 3>{1, 1, 1});
    CHECK(validate(s).accepted());
    int chi = s.map.euler_characteristic();
    CHECK(chi == a.map.euler_characteristic() + b.map.euler_characteristic() - 2);
}
