// Serial vs OpenMP throughput on the two batch kernels: whole-corpus
// validation and randomized move-sequence sweeps.
//
//   bench_batch [copies] [sequences]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tsd/batch.hpp"
#include "tsd/catalog.hpp"

using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    int copies = argc > 1 ? std::atoi(argv[1]) : 400;
    int sequences = argc > 2 ? std::atoi(argv[2]) : 200;

#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: not available (serial build)\n");
#endif

    std::vector<tsd::ShadowDiagram> corpus;
    for (int i = 0; i < copies; ++i)
        for (const auto& e : tsd::catalog_entries()) corpus.push_back(e.diagram);
    std::printf("corpus: %zu diagrams\n", corpus.size());

    auto t0 = Clock::now();
    auto serial = tsd::batch::validate_all(corpus, tsd::batch::Mode::Serial);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = tsd::batch::validate_all(corpus, tsd::batch::Mode::Parallel);
    double tp = seconds_since(t0);
    if (serial.accepted != parallel.accepted) {
        std::printf("MISMATCH between serial and parallel validation\n");
        return 1;
    }
    std::printf("validate_all: serial %.3fs, parallel %.3fs, speedup %.2fx (%d accepted)\n", ts, tp,
                ts / tp, serial.accepted);

    tsd::batch::MoveStressConfig cfg;
    cfg.sequences = sequences;
    cfg.max_len = 6;
    cfg.rng_seed = 2026;
    const auto& seed = tsd::catalog_get("cp1_in_cp2").diagram;

    t0 = Clock::now();
    auto trails_s = tsd::batch::move_sequence_sweep(seed, cfg, tsd::batch::Mode::Serial);
    ts = seconds_since(t0);
    t0 = Clock::now();
    auto trails_p = tsd::batch::move_sequence_sweep(seed, cfg, tsd::batch::Mode::Parallel);
    tp = seconds_since(t0);
    for (size_t i = 0; i < trails_s.size(); ++i)
        if (trails_s[i].moves != trails_p[i].moves) {
            std::printf("MISMATCH between serial and parallel sweeps at %zu\n", i);
            return 1;
        }
    std::printf("move_sweep(%d x %d): serial %.3fs, parallel %.3fs, speedup %.2fx\n", cfg.sequences,
                cfg.max_len, ts, tp, ts / tp);
    return 0;
}
