#include <doctest.h>

#include "tsd/catalog.hpp"
#include "tsd/invariants.hpp"
#include "tsd/move_script.hpp"
#include "tsd/render_svg.hpp"
#include "tsd/tsd_format.hpp"

using namespace tsd;

namespace {

size_t count(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
    return n;
}

ShadowDiagram load_catalog_source(const std::string& src) {
    REQUIRE(src.rfind("catalog:", 0) == 0);
    return catalog_get(src.substr(8)).diagram;
}

} // namespace

TEST_CASE("serialize then parse reproduces every catalog entry") {
    for (const auto& e : catalog_entries()) {
        CAPTURE(e.name);
        std::string text = serialize_tsd(e.diagram);
        CHECK(text == serialize_tsd(e.diagram));  // byte-deterministic
        auto parsed = parse_tsd(text);
        CHECK(parsed.accepted());
        CHECK(parsed.diagram.equivalent_to(e.diagram));
        CHECK(serialize_tsd(parsed.diagram) == text);
    }
}

TEST_CASE("grammar errors report line numbers") {
    CHECK_THROWS_AS(parse_tsd(""), TsdParseError);
    CHECK_THROWS_AS(parse_tsd("nonsense\n"), TsdParseError);
    CHECK_THROWS_AS(parse_tsd("tsd 2\n"), TsdParseError);

    // a dart referenced once: dangling
    std::string text =
        "tsd 1\n"
        "surface genus 0 k 0 0 0 bridges 1\n"
        "vertex 0 bridge 0 2 4\n"
        "vertex 1 bridge 1 5 3\n"
        "strand 0 arc_a 0:1\n"
        "strand 1 arc_b 2:3\n";
    try {
        parse_tsd(text);
        FAIL("expected a dangling-dart error");
    } catch (const TsdParseError& e) {
        CHECK(std::string(e.what()).find("dangling dart") != std::string::npos);
    }

    // truncated records
    CHECK_THROWS_AS(parse_tsd("tsd 1\nsurface genus 0 k 0 0 0 bridges 1\nvertex 0\n"), TsdParseError);
    CHECK_THROWS_AS(parse_tsd("tsd 1\nsurface genus 0 k 0 0 0\n"), TsdParseError);
}

TEST_CASE("header claims are cross-checked against computed values") {
    // the one-crossing torus with only two curves, claimed genus 2
    std::string text =
        "tsd 1\n"
        "surface genus 2 k 0 0 0 bridges 0\n"
        "vertex 0 crossing 0 2 1 3\n"
        "strand 0 alpha 0:1\n"
        "strand 1 beta 2:3\n";
    auto parsed = parse_tsd(text);
    CHECK_FALSE(parsed.accepted());
    REQUIRE(!parsed.header_mismatches.empty());
    CHECK(parsed.header_mismatches[0].find("genus 1") != std::string::npos);

    // declared kinds are checked too
    std::string bad_kind =
        "tsd 1\n"
        "surface genus 1 k 0 0 0 bridges 0\n"
        "vertex 0 marker 0 2 1 3\n"
        "strand 0 alpha 0:1\n"
        "strand 1 beta 2:3\n";
    auto parsed2 = parse_tsd(bad_kind);
    CHECK_FALSE(parsed2.accepted());
    bool found = false;
    for (auto& m : parsed2.header_mismatches)
        if (m.find("crossing") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("move scripts run with a transcript and abort cleanly") {
    auto d = catalog_get("cp1_in_cp2").diagram;

    // perturb then unperturb round-trips; the transcript shows the tuples
    {
        auto sites = enumerate_perturb_sites(d, 2);
        REQUIRE(!sites.empty());
        std::string text = "perturb sector=2 face=" + std::to_string(sites[0].face) +
                           " first=" + std::to_string(sites[0].on_first_arc) +
                           " second=" + std::to_string(sites[0].on_second_arc) + "\n";
        auto script = parse_move_script(text);
        auto res = run_script(d, script, load_catalog_source);
        REQUIRE(res.transcript.size() == 1);
        CHECK(res.transcript[0].tuple_after == make_tuple(1, {0, 0, 0}, 2, {1, 2, 1}));
        // find the created arc and complete the round trip
        StrandSet ss = StrandSet::extract(res.diagram);
        int arc = -1;
        for (const auto& st : ss.all())
            if (!st.color.is_scaffold() && st.color.kind == StrandKind::Arc &&
                st.color.system == SystemLabel::A && st.edge_darts.size() == 1) {
                try {
                    if (unperturb(res.diagram, st.id).equivalent_to(d)) arc = st.id;
                } catch (const MoveError&) {
                }
            }
        REQUIRE(arc >= 0);
        auto res2 = run_script(res.diagram, parse_move_script("unperturb arc=" + std::to_string(arc)),
                               load_catalog_source);
        CHECK(res2.diagram.equivalent_to(d));
        CHECK(res2.transcript[0].tuple_after == make_tuple(1, {0, 0, 0}, 1, {1, 1, 1}));
    }

    // a meridional stabilization on a b=1 diagram aborts at step 1
    try {
        run_script(d, parse_move_script("mstab sector=1 arc=0\n"), load_catalog_source);
        FAIL("expected abort");
    } catch (const ScriptAbort& e) {
        CHECK(e.step == 1);
    }

    // empty script is the identity
    auto res = run_script(d, parse_move_script("# nothing\n"), load_catalog_source);
    CHECK(res.transcript.empty());
    CHECK(res.diagram.equivalent_to(d));

    // csum through the script language
    auto sum = run_script(
        d, parse_move_script("csum with=catalog:crosscap_S4 p1=3 p2=0\nmirror\n"),
        load_catalog_source);
    CHECK(sum.transcript.size() == 2);
    CHECK(sum.transcript[1].tuple_after == make_tuple(1, {0, 0, 0}, 2, {1, 1, 1}));

    CHECK_THROWS_AS(parse_move_script("slide slider=1\n"), ScriptParseError);
    CHECK_THROWS_AS(parse_move_script("frobnicate a=1\n"), ScriptParseError);
}

TEST_CASE("truncated or mangled files fail loudly, never silently") {
    std::string good = serialize_tsd(catalog_get("cp1_in_cp2").diagram);
    std::vector<size_t> cuts;
    for (size_t at = good.find('\n'); at != std::string::npos; at = good.find('\n', at + 1))
        cuts.push_back(at);
    cuts.pop_back();  // the full file without its trailing newline is fine
    for (size_t at : cuts) {
        std::string trunc = good.substr(0, at);
        try {
            auto parsed = parse_tsd(trunc);
            // a prefix that happens to parse must not be silently accepted
            CHECK_FALSE(parsed.accepted());
        } catch (const TsdParseError&) {
        } catch (const MapError&) {
        }
    }
}

TEST_CASE("rendering is deterministic with the advertised element counts") {
    auto cp1 = catalog_get("cp1_in_cp2").diagram;
    std::string svg = render_svg(cp1);
    CHECK(svg == render_svg(cp1));
    CHECK(count(svg, "class=\"strand curve") == 3);
    CHECK(count(svg, "class=\"strand arc") == 3);
    CHECK(count(svg, "class=\"bridge\"") == 2);

    std::string s4 = render_svg(catalog_get("s4_genus3").diagram);
    CHECK(count(s4, "class=\"strand curve") == 9);
    CHECK(count(s4, "class=\"bridge\"") == 0);

    for (const auto& e : catalog_entries()) {
        CAPTURE(e.name);
        std::string out = render_svg(e.diagram);
        CHECK(out.find("<svg") == 0);
        CHECK(count(out, "class=\"bridge\"") == 2u * e.expected.b);
    }
}
