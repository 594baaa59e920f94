#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tsd/catalog.hpp"
#include "tsd/diagram.hpp"
#include "tsd/moves.hpp"

using namespace tsd;

namespace {

ShadowDiagram cp1() { return catalog_get("cp1_in_cp2").diagram; }
ShadowDiagram crosscap() { return catalog_get("crosscap_S4").diagram; }

} // namespace

TEST_CASE("validate accepts the catalog and is pure") {
    auto d = cp1();
    auto r1 = validate(d);
    auto r2 = validate(d);
    CHECK(r1.accepted());
    CHECK(r1.genus == 1);
    CHECK(r1.bridges == 1);
    for (size_t i = 0; i < r1.conditions.size(); ++i) {
        CHECK(r1.conditions[i].passed == r2.conditions[i].passed);
        CHECK(r1.conditions[i].detail == r2.conditions[i].detail);
    }
    CHECK(r1.summary() == r2.summary());
}

TEST_CASE("W2 catches a recolored curve") {
    auto d = cp1();
    // recolor the alpha curve's edges beta
    for (Dart x = 0; x < d.map.dart_count(); ++x)
        if (d.dart_color[x] == StrandColor::curve(SystemLabel::A))
            d.dart_color[x] = StrandColor::curve(SystemLabel::B);
    auto rep = validate(d);
    CHECK_FALSE(rep.accepted());
    bool w2_failed = false;
    for (const auto& c : rep.conditions)
        if (c.name == "W2" && !c.passed) w2_failed = true;
    CHECK(w2_failed);
}

TEST_CASE("W3 catches a deleted bridge arc") {
    // crosscap with one arc recolored scaffold: bridge points lose an end
    auto d = crosscap();
    auto arc_c = StrandColor::arc(SystemLabel::C);
    bool changed = false;
    for (Dart x = 0; x < d.map.dart_count() && !changed; ++x)
        if (d.dart_color[x] == arc_c) {
            d.dart_color[x] = StrandColor::scaffold();
            d.dart_color[d.map.opp(x)] = StrandColor::scaffold();
            changed = true;
        }
    auto rep = validate(d);
    CHECK_FALSE(rep.accepted());
    bool w3_failed = false;
    for (const auto& c : rep.conditions)
        if (c.name == "W3" && !c.passed) w3_failed = true;
    CHECK(w3_failed);
}

TEST_CASE("structural corruption is a hard error, not a report") {
    auto d = cp1();
    d.dart_color[0] = StrandColor::scaffold();  // breaks opp-consistency
    CHECK_THROWS_AS(validate(d), MapError);
}

TEST_CASE("endpoint matchings are perfect matchings") {
    for (const auto& e : catalog_entries()) {
        if (e.expected.b == 0) continue;
        for (SystemLabel s : {SystemLabel::A, SystemLabel::B, SystemLabel::C}) {
            auto m = endpoint_matching(e.diagram, s);
            CHECK(static_cast<int>(m.size()) == 2 * e.expected.b);
            for (int p = 0; p < static_cast<int>(m.size()); ++p) {
                CHECK(m[p] != p);
                CHECK(m[m[p]] == p);
            }
        }
    }
}

TEST_CASE("doubly pointed predicate") {
    CHECK(is_doubly_pointed(cp1()));
    CHECK_FALSE(is_doubly_pointed(crosscap()));
    CHECK_FALSE(is_doubly_pointed(catalog_get("s4_genus3").diagram));
}

TEST_CASE("intersection matrix of the genus-one diagram") {
    auto d = cp1();
    auto m = intersection_matrix(d, SystemLabel::A, SystemLabel::B);
    REQUIRE(m.rows() == 1);
    REQUIRE(m.cols() == 1);
    CHECK(std::abs(m.at(0, 0)) == 1);
    CHECK_THROWS_AS(intersection_matrix(d, SystemLabel::A, SystemLabel::A), PreconditionError);
}

TEST_CASE("mirror negates the intersection matrix") {
    for (const char* name : {"cp1_in_cp2", "s2xs2_genus2", "s4_genus3"}) {
        auto d = catalog_get(name).diagram;
        auto m = mirror_diagram(d);
        for (auto [s, t] : {std::pair{SystemLabel::A, SystemLabel::B},
                            std::pair{SystemLabel::B, SystemLabel::C},
                            std::pair{SystemLabel::C, SystemLabel::A}}) {
            CHECK(intersection_matrix(m, s, t) == intersection_matrix(d, s, t).negated());
        }
    }
}

TEST_CASE("k necessary checks and claims") {
    auto d = cp1();
    for (int i = 1; i <= 3; ++i) CHECK(k_necessary_check(d, i));
    d.claimed_k = {1, 0, 0};
    CHECK_FALSE(k_necessary_check(d, 1));
    CHECK(k_necessary_check(d, 2));

    auto s4 = catalog_get("s4_genus3").diagram;
    for (int i = 1; i <= 3; ++i) CHECK(k_necessary_check(s4, i));
    // its pairings must have rank 2 on genus 3
    for (auto [s, t] : {std::pair{SystemLabel::B, SystemLabel::A},
                        std::pair{SystemLabel::B, SystemLabel::C},
                        std::pair{SystemLabel::C, SystemLabel::A}}) {
        CHECK(snf_is_unit_rank(intersection_matrix(s4, s, t), 2));
    }
}

TEST_CASE("complexity flags failing k claims but still returns the tuple") {
    auto d = cp1();
    d.claimed_k = {1, 0, 0};
    auto t = complexity(d);
    CHECK(t.k[0] == 1);
    CHECK_FALSE(t.k_check_passed);
    CHECK(t.b == 1);
}

TEST_CASE("b = 0 diagrams are accepted with zero disk counts") {
    auto d = catalog_get("cp2_genus1").diagram;
    auto t = complexity(d);
    CHECK(t.b == 0);
    CHECK(t.c == std::array<int, 3>{0, 0, 0});
    CHECK(t.balanced);
}

TEST_CASE("cutting along full curve systems and regluing restores the map") {
    for (const char* name : {"cp1_in_cp2", "s2xs2_fiber", "s4_genus3", "s1xs3_genus1"}) {
        auto d = catalog_get(name).diagram;
        StrandSet ss = StrandSet::extract(d);
        for (int sys = 0; sys < 3; ++sys) {
            std::vector<std::vector<Dart>> cycles;
            for (const auto& st : ss.all())
                if (!st.color.is_scaffold() && st.color.kind == StrandKind::Curve &&
                    static_cast<int>(st.color.system) == sys)
                    cycles.push_back(st.edge_darts);
            if (cycles.empty()) continue;
            CAPTURE(name);
            CAPTURE(sys);
            auto cut = cut_along(d.map, cycles);
            CHECK(cut.boundary_circle_count() == 2 * d.map.genus());
            CHECK(cut.reglue().isomorphic_to(d.map));
        }
    }
}

TEST_CASE("strand extraction inventories the diagram") {
    auto d = cp1();
    StrandSet ss = StrandSet::extract(d);
    int curves = 0, arcs = 0;
    for (const auto& s : ss.all()) {
        if (s.color.is_scaffold()) continue;
        if (s.color.kind == StrandKind::Curve) {
            ++curves;
            CHECK(s.closed);
        } else {
            ++arcs;
            CHECK_FALSE(s.closed);
            CHECK(s.endpoints[0] >= 0);
            CHECK(s.endpoints[1] >= 0);
        }
    }
    CHECK(curves == 3);
    CHECK(arcs == 3);
    // strand ids are ranks by minimal dart
    for (int i = 1; i < ss.count(); ++i) {
        Dart a = *std::min_element(ss.strand(i - 1).edge_darts.begin(), ss.strand(i - 1).edge_darts.end());
        Dart b = *std::min_element(ss.strand(i).edge_darts.begin(), ss.strand(i).edge_darts.end());
        CHECK(a < b);
    }
}
