// Acceptance suite: one pass/fail line per criterion, exit nonzero when any
// criterion fails. Every tolerance here is exact integer equality.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tsd/batch.hpp"
#include "tsd/builder.hpp"
#include "tsd/catalog.hpp"
#include "tsd/invariants.hpp"
#include "tsd/moves.hpp"
#include "tsd/tsd_format.hpp"

using namespace tsd;

namespace {

int failures = 0;
auto criterion_start = std::chrono::steady_clock::now();

void report(int number, const char* title, bool ok, const std::string& detail = "") {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - criterion_start).count();
    std::printf("criterion %d (%s): %s [%.2fs]\n", number, title, ok ? "PASS" : "FAIL", secs);
    if (!ok) {
        if (!detail.empty()) std::printf("  %s\n", detail.c_str());
        ++failures;
    }
    criterion_start = std::chrono::steady_clock::now();
}

// The full corpus: catalog entries plus a deterministic family of move
// products (randomized perturbations of the bridged entries).
const std::vector<ShadowDiagram>& build_corpus() {
    static const std::vector<ShadowDiagram> corpus = [] {
        std::vector<ShadowDiagram> out;
        for (const auto& e : catalog_entries()) out.push_back(e.diagram);
        for (const char* name : {"cp1_in_cp2", "crosscap_S4", "s2xs2_fiber"}) {
            const ShadowDiagram& d = catalog_get(name).diagram;
            for (int i = 0; i < 4; ++i) {
                ShadowDiagram cur = d;
                batch::SplitMix64 rng(1000 + i);
                for (int step = 0; step < 2; ++step) {
                    std::vector<PerturbSite> sites;
                    for (int s = 1; s <= 3; ++s)
                        for (auto& site : enumerate_perturb_sites(cur, s)) sites.push_back(site);
                    if (sites.empty()) break;
                    cur = perturb(cur, sites[rng.below(sites.size())]);
                }
                out.push_back(cur);
            }
        }
        return out;
    }();
    return corpus;
}

} // namespace

int main() {
    // 1. Catalog soundness.
    {
        auto res = catalog_verify_all();
        std::string detail;
        for (const auto& f : res.failures) detail += f + "; ";
        report(1, "catalog soundness", res.ok && res.entries_checked >= 12, detail);
    }

    // 2. Surface Euler characteristic invariance over catalog entries and
    // 1000 randomized move sequences of length <= 6.
    {
        bool ok = true;
        std::string detail;
        std::vector<std::string> seeds;
        for (const auto& e : catalog_entries()) seeds.push_back(e.name);
        int sequences_total = 0;
        for (const auto& name : seeds) {
            const auto& entry = catalog_get(name);
            batch::MoveStressConfig cfg;
            cfg.sequences = 1000 / static_cast<int>(seeds.size()) + 1;
            cfg.max_len = 6;
            cfg.rng_seed = 0x5eed0000 + entry.name.size();
            auto trails = batch::move_sequence_sweep(entry.diagram, cfg, batch::Mode::Parallel);
            for (const auto& t : trails) {
                ++sequences_total;
                if (!t.error.empty()) {
                    ok = false;
                    detail = name + ": move failed: " + t.error;
                }
                if (!t.chi_invariant) {
                    ok = false;
                    detail = name + ": surface chi drifted";
                }
                if (!t.components_invariant) {
                    ok = false;
                    detail = name + ": component count drifted";
                }
            }
        }
        if (sequences_total < 1000) {
            ok = false;
            detail = "only " + std::to_string(sequences_total) + " sequences ran";
        }
        report(2, "surface chi invariant under moves", ok, detail);
    }

    // 3. Branched-cover table for the degree-d curves, d = 2..5, via the
    // same arithmetic the CLI exposes, with the multiplicativity
    // cross-check.
    {
        bool ok = true;
        std::string detail;
        const std::int64_t expected_g[4] = {2, 7, 22, 53};
        for (int d = 2; d <= 5; ++d) {
            int b = (d - 1) * (d - 2) + 1;
            auto t = make_tuple(1, {0, 0, 0}, b, {1, 1, 1});
            auto p = branched_cover_params(t, d);
            if (p.g != expected_g[d - 2] || p.k != std::array<std::int64_t, 3>{0, 0, 0}) {
                ok = false;
                detail = "degree " + std::to_string(d) + " gave g'=" + std::to_string(p.g);
            }
            std::int64_t lhs = cover_ambient_euler_char(p);
            std::int64_t rhs = d * euler_char_ambient(t) - (d - 1) * euler_char_surface(t);
            if (lhs != 2 + p.g || lhs != rhs) {
                ok = false;
                detail = "multiplicativity failed at degree " + std::to_string(d);
            }
        }
        report(3, "branched cover table g' = 2,7,22,53", ok, detail);
    }

    // 4. Perturbation deltas on 200 randomized valid sites plus exact
    // unperturbation round trips.
    {
        bool ok = true;
        std::string detail;
        int tested = 0;
        batch::SplitMix64 rng(0xA11CE);
        std::vector<ShadowDiagram> seeds;
        for (const auto& e : catalog_entries())
            if (e.expected.b >= 1) seeds.push_back(e.diagram);
        for (int round = 0; tested < 200 && round < 600; ++round) {
            const ShadowDiagram& d = seeds[rng.below(seeds.size())];
            int sector = 1 + static_cast<int>(rng.below(3));
            auto sites = enumerate_perturb_sites(d, sector);
            if (sites.empty()) continue;
            const auto& site = sites[rng.below(sites.size())];
            auto t0 = complexity(d);
            ShadowDiagram out;
            try {
                out = perturb(d, site);
            } catch (const std::exception& e) {
                ok = false;
                detail = std::string("perturb failed: ") + e.what();
                break;
            }
            auto t = complexity(out);
            bool deltas = t.g == t0.g && t.k == t0.k && t.b == t0.b + 1;
            for (int j = 0; j < 3; ++j)
                deltas = deltas && t.c[j] == t0.c[j] + (j == sector - 1 ? 1 : 0);
            if (!deltas) {
                ok = false;
                detail = "wrong deltas in sector " + std::to_string(sector);
                break;
            }
            // round trip at the created site
            SystemLabel third = sector_third(sector);
            StrandSet ss = StrandSet::extract(out);
            bool roundtrip = false;
            for (const auto& st : ss.all()) {
                if (st.color.is_scaffold() || st.color.kind != StrandKind::Arc ||
                    st.color.system != third || st.edge_darts.size() != 1)
                    continue;
                try {
                    if (unperturb(out, st.id).equivalent_to(d)) {
                        roundtrip = true;
                        break;
                    }
                } catch (const MoveError&) {
                }
            }
            if (!roundtrip) {
                ok = false;
                detail = "no exact unperturbation round trip";
                break;
            }
            ++tested;
        }
        if (tested < 200) {
            ok = false;
            detail = "only " + std::to_string(tested) + " sites tested";
        }
        report(4, "perturbation deltas + round trips (200 sites)", ok, detail);
    }

    // 5. Meridional stabilization deltas on 100 randomized valid sites, and
    // stabilization to the efficient position on every seed.
    {
        bool ok = true;
        std::string detail;
        int tested = 0;
        batch::SplitMix64 rng(0xBEE5);
        std::vector<ShadowDiagram> pool;
        for (const char* name : {"cp1_in_cp2", "crosscap_S4", "unknotted_sphere_S4",
                                 "quadric_in_cp2", "rp2_in_cp2"}) {
            ShadowDiagram d = catalog_get(name).diagram;
            for (int i = 0; i < 3; ++i) {
                std::vector<PerturbSite> sites;
                for (int s = 1; s <= 3; ++s)
                    for (auto& site : enumerate_perturb_sites(d, s)) sites.push_back(site);
                if (sites.empty()) break;
                d = perturb(d, sites[rng.below(sites.size())]);
                pool.push_back(d);
            }
        }
        for (int round = 0; tested < 100 && round < 600; ++round) {
            const ShadowDiagram& d = pool[rng.below(pool.size())];
            int sector = 1 + static_cast<int>(rng.below(3));
            auto sites = enumerate_mstab_sites(d, sector);
            if (sites.empty()) continue;
            const auto& site = sites[rng.below(sites.size())];
            auto t0 = complexity(d);
            ShadowDiagram out;
            try {
                out = meridional_stabilize(d, site);
            } catch (const std::exception& e) {
                ok = false;
                detail = std::string("stabilization failed: ") + e.what();
                break;
            }
            auto t = complexity(out);
            bool deltas = t.g == t0.g + 1 && t.b == t0.b - 1;
            for (int j = 0; j < 3; ++j) {
                deltas = deltas && t.k[j] == t0.k[j] + (j == sector - 1 ? 1 : 0);
                deltas = deltas && t.c[j] == t0.c[j] - (j == sector - 1 ? 1 : 0);
            }
            if (!deltas || !t.k_check_passed) {
                ok = false;
                detail = "wrong deltas in sector " + std::to_string(sector);
                break;
            }
            ++tested;
        }
        if (tested < 100) {
            ok = false;
            detail = "only " + std::to_string(tested) + " sites tested";
        }
        // termination on every seed
        if (ok) {
            for (const auto& d : pool) {
                auto reduced = reduce_to_efficient(d);
                if (!reduced) {
                    ok = false;
                    detail = "a seed did not reduce to the efficient position";
                    break;
                }
                auto t = complexity(*reduced);
                int n = component_count(*reduced);
                if (t.c[0] != n || t.c[1] != n || t.c[2] != n ||
                    t.b != 3 * n - euler_char_surface(t)) {
                    ok = false;
                    detail = "reduced seed is not efficient";
                    break;
                }
            }
        }
        report(5, "meridional stabilization deltas + termination (100 sites)", ok, detail);
    }

    // 6. Cut-system condition re-verified by the independent boundary-walk
    // oracle on the whole corpus.
    {
        bool ok = true;
        std::string detail;
        auto corpus = build_corpus();
        for (const auto& d : corpus) {
            StrandSet ss = StrandSet::extract(d);
            int g = d.map.genus();
            for (int sys = 0; sys < 3; ++sys) {
                std::vector<char> mask(d.map.dart_count(), 0);
                int curves = 0;
                for (const auto& st : ss.all()) {
                    if (st.color.is_scaffold() || st.color.kind != StrandKind::Curve ||
                        static_cast<int>(st.color.system) != sys)
                        continue;
                    ++curves;
                    for (Dart e : st.edge_darts) mask[e] = mask[d.map.opp(e)] = 1;
                }
                if (curves == 0) continue;
                auto brute = oracle::brute_force_cut(d.map, mask);
                bool good = brute.components == 1 && brute.all_planar() &&
                            brute.boundary_circles == 2 * g;
                // kernel route
                std::vector<std::vector<Dart>> cycles;
                for (const auto& st : ss.all())
                    if (!st.color.is_scaffold() && st.color.kind == StrandKind::Curve &&
                        static_cast<int>(st.color.system) == sys)
                        cycles.push_back(st.edge_darts);
                auto cut = cut_along(d.map, cycles);
                good = good && cut.component_count() == brute.components &&
                       cut.boundary_circle_count() == brute.boundary_circles &&
                       cut.all_components_planar() == brute.all_planar();
                if (!good) {
                    ok = false;
                    detail = "cut oracle disagreement";
                }
            }
        }
        report(6, "cut-system oracle agreement over the corpus", ok, detail);
    }

    // 7. Disk counts against the patch-gluing oracle on the corpus.
    {
        bool ok = true;
        std::string detail;
        for (const auto& d : build_corpus()) {
            auto t = complexity(d);
            if (t.b == 0) continue;
            auto ma = endpoint_matching(d, SystemLabel::A);
            auto mb = endpoint_matching(d, SystemLabel::B);
            auto mc = endpoint_matching(d, SystemLabel::C);
            if (t.c[0] != oracle::patch_glue_disk_count(ma, mb) ||
                t.c[1] != oracle::patch_glue_disk_count(mb, mc) ||
                t.c[2] != oracle::patch_glue_disk_count(mc, ma)) {
                ok = false;
                detail = "disk count oracle disagreement";
            }
        }
        report(7, "disk-count oracle agreement over the corpus", ok, detail);
    }

    // 8. Format round trip and byte determinism on the corpus.
    {
        bool ok = true;
        std::string detail;
        for (const auto& d : build_corpus()) {
            std::string once = serialize_tsd(d);
            std::string twice = serialize_tsd(d);
            if (once != twice) {
                ok = false;
                detail = "serialization not byte-deterministic";
                break;
            }
            try {
                auto parsed = parse_tsd(once);
                if (!parsed.accepted() || !parsed.diagram.equivalent_to(d) ||
                    serialize_tsd(parsed.diagram) != once) {
                    ok = false;
                    detail = "round trip is not the identity";
                    break;
                }
            } catch (const std::exception& e) {
                ok = false;
                detail = std::string("parse failed: ") + e.what();
                break;
            }
        }
        report(8, "format round trip on the corpus", ok, detail);
    }

    // 9. Distinct normalized forms for the two nontrivial (1,1) entries.
    {
        const auto& a = catalog_get("cp1_in_cp2").diagram;
        const auto& b = catalog_get("quadric_in_cp2").diagram;
        report(9, "(1,1) catalog entries have distinct normalized forms", !a.equivalent_to(b));
    }

    if (failures == 0) std::printf("acceptance: all criteria pass\n");
    else std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
