#include "tsd/batch.hpp"

#include <algorithm>

#include "tsd/invariants.hpp"
#include "tsd/moves.hpp"

namespace tsd::batch {

ValidateSummary validate_all(const std::vector<ShadowDiagram>& diagrams, Mode mode) {
    const int n = static_cast<int>(diagrams.size());
    std::vector<std::string> slots(n);
    std::vector<char> ok(n, 0);

    auto work = [&](int i) {
        ValidationReport rep = validate(diagrams[i]);
        if (rep.accepted()) {
            ok[i] = 1;
        } else {
            for (const auto& c : rep.conditions)
                if (!c.passed) {
                    slots[i] = std::to_string(i) + ": " + c.name + " " + c.detail;
                    break;
                }
        }
    };

    if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) work(i);
    } else {
        for (int i = 0; i < n; ++i) work(i);
    }

    ValidateSummary out;
    out.checked = n;
    for (int i = 0; i < n; ++i) {
        if (ok[i]) ++out.accepted;
        else out.failures.push_back(slots[i]);
    }
    return out;
}

namespace {

// One randomized trail; deterministic in (seed diagram, stream).
MoveTrail run_trail(const ShadowDiagram& seed, int max_len, SplitMix64 rng) {
    MoveTrail trail;
    ShadowDiagram cur = seed;
    ComplexityTuple t0 = complexity(seed);
    trail.chi_start = t0.b > 0 ? euler_char_surface(t0) : 0;
    trail.start_components = t0.b > 0 ? component_count(seed) : 0;

    for (int step = 0; step < max_len; ++step) {
        // Pick a move kind, then a concrete site of that kind; a kind with
        // no sites (or an obstructed stabilization template) falls through
        // to another attempt on the same deterministic stream.
        bool applied = false;
        std::string picked_name;
        for (int attempt = 0; attempt < 8 && !applied; ++attempt) {
            int kind = static_cast<int>(rng.below(6));
            try {
                switch (kind) {
                    case 0: {
                        int sector = 1 + static_cast<int>(rng.below(3));
                        auto sites = enumerate_perturb_sites(cur, sector);
                        if (sites.empty()) break;
                        cur = perturb(cur, sites[rng.below(sites.size())]);
                        picked_name = "perturb" + std::to_string(sector);
                        applied = true;
                        break;
                    }
                    case 1: {
                        StrandSet ss = StrandSet::extract(cur);
                        std::vector<int> candidates;
                        for (const auto& st : ss.all())
                            if (!st.color.is_scaffold() && st.color.kind == StrandKind::Arc &&
                                st.edge_darts.size() == 1)
                                candidates.push_back(st.id);
                        if (candidates.empty()) break;
                        cur = unperturb(cur, candidates[rng.below(candidates.size())]);
                        picked_name = "unperturb";
                        applied = true;
                        break;
                    }
                    case 2: {
                        int sector = 1 + static_cast<int>(rng.below(3));
                        auto sites = enumerate_mstab_sites(cur, sector);
                        if (sites.empty()) break;
                        cur = meridional_stabilize(cur, sites[rng.below(sites.size())]);
                        picked_name = "mstab" + std::to_string(sector);
                        applied = true;
                        break;
                    }
                    case 3: {
                        int face = static_cast<int>(rng.below(cur.map.face_count()));
                        cur = trisection_stabilize(cur, face);
                        picked_name = "tstab";
                        applied = true;
                        break;
                    }
                    case 4: {
                        StrandSet ss = StrandSet::extract(cur);
                        std::vector<SlideSite> sites;
                        for (int slider = 0; slider < ss.count(); ++slider) {
                            const Strand& sl = ss.strand(slider);
                            if (sl.color.is_scaffold()) continue;
                            for (int over = 0; over < ss.count(); ++over) {
                                if (over == slider) continue;
                                const Strand& ov = ss.strand(over);
                                if (ov.color.is_scaffold() ||
                                    ov.color.kind != StrandKind::Curve ||
                                    ov.color.system != sl.color.system)
                                    continue;
                                bool placed = false;
                                for (Dart fs : sl.edge_darts) {
                                    for (Dart fsd : {fs, cur.map.opp(fs)}) {
                                        for (Dart fo : ov.edge_darts) {
                                            for (Dart fod : {fo, cur.map.opp(fo)}) {
                                                if (cur.map.face_of(fsd) !=
                                                    cur.map.face_of(fod))
                                                    continue;
                                                sites.push_back(
                                                    {slider, over, fsd, fod, {}});
                                                placed = true;
                                                break;
                                            }
                                            if (placed) break;
                                        }
                                        if (placed) break;
                                    }
                                    if (placed) break;
                                }
                            }
                        }
                        if (sites.empty()) break;
                        cur = disk_slide(cur, sites[rng.below(sites.size())]);
                        picked_name = "slide";
                        applied = true;
                        break;
                    }
                    default: {
                        cur = mirror_diagram(cur);
                        picked_name = "mirror";
                        applied = true;
                        break;
                    }
                }
            } catch (const MoveError&) {
                // template mismatch or obstructed site: try another pick
            } catch (const std::exception& e) {
                trail.error = e.what();
                return trail;
            }
        }
        if (!applied) break;

        ComplexityTuple t = complexity(cur);
        trail.moves.push_back(picked_name);
        trail.tuples.push_back(t);
        if (t0.b > 0) {
            if (euler_char_surface(t) != trail.chi_start) trail.chi_invariant = false;
            if (component_count(cur) != trail.start_components) trail.components_invariant = false;
        }
    }
    return trail;
}

} // namespace

std::vector<MoveTrail> move_sequence_sweep(const ShadowDiagram& seed, const MoveStressConfig& cfg,
                                           Mode mode) {
    std::vector<MoveTrail> out(cfg.sequences);
    auto work = [&](int i) {
        out[i] = run_trail(seed, cfg.max_len, SplitMix64(cfg.rng_seed ^ (0x51ed2701ULL * (i + 1))));
    };
    if (mode == Mode::Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < cfg.sequences; ++i) work(i);
    } else {
        for (int i = 0; i < cfg.sequences; ++i) work(i);
    }
    return out;
}

} // namespace tsd::batch
