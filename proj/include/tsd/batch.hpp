#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsd/diagram.hpp"

namespace tsd::batch {

// Diagrams are immutable values and every operation here is a pure function,
// so batches parallelize over independent items. Serial mode is the
// reference: for a fixed seed both modes produce identical results
// (per-item RNG streams), which the tests assert.
enum class Mode { Serial, Parallel };

struct ValidateSummary {
    int checked = 0;
    int accepted = 0;
    std::vector<std::string> failures;  // "<index>: <first failing condition>"
};
ValidateSummary validate_all(const std::vector<ShadowDiagram>& diagrams, Mode mode);

// Randomized move sequences: starting from each seed diagram, applies up to
// `max_len` randomly chosen applicable moves (perturb, unperturb, mstab,
// tstab, slide, mirror) and records the complexity tuple trail. Sequence i
// uses the RNG stream (seed ^ i), so results are order- and mode-independent.
struct MoveStressConfig {
    int sequences = 100;
    int max_len = 6;
    std::uint64_t rng_seed = 1;
};

struct MoveTrail {
    std::vector<std::string> moves;    // applied move names
    std::vector<ComplexityTuple> tuples;  // tuple after each move
    std::int64_t chi_start = 0;        // surface chi of the seed (b>=1) else 0
    bool chi_invariant = true;         // chi preserved along the whole trail
    int start_components = 0;
    bool components_invariant = true;
    std::string error;                 // non-empty if a move template failed
};

std::vector<MoveTrail> move_sequence_sweep(const ShadowDiagram& seed, const MoveStressConfig& cfg,
                                           Mode mode);

// Deterministic bounded integer from a raw 64-bit stream (avoids the
// implementation-defined std distributions).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, bound) by rejection
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % bound;
    }
};

} // namespace tsd::batch
