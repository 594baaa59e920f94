#pragma once

#include <string>
#include <vector>

#include "tsd/diagram.hpp"

namespace tsd {

// Grammar-level failure, reported with a 1-based line number.
struct TsdParseError : std::runtime_error {
    TsdParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

struct ParsedTsd {
    ShadowDiagram diagram;
    ValidationReport report;
    // Header claims that disagree with recomputed values (genus, bridges).
    std::vector<std::string> header_mismatches;
    // Original file line of each vertex / strand record, for witnesses.
    std::vector<int> vertex_line;
    std::vector<int> strand_line;

    bool accepted() const { return report.accepted() && header_mismatches.empty(); }
};

// Parses the line-oriented `tsd 1` format:
//
//   tsd 1
//   surface genus G k K1 K2 K3 bridges B
//   vertex ID KIND D0 D1 ...          kind in {bridge, crossing, marker};
//                                     darts in rotation order
//   strand ID COLOR D:D D:D ...       color in {alpha,beta,gamma,arc_a,
//                                     arc_b,arc_c,scaffold}; one dart pair
//                                     per edge
//
// Dart ids are explicit and must be dense; every dart appears exactly once
// across the vertex records and exactly once across the strand records.
// Throws TsdParseError for grammar problems and MapError for structural
// corruption; validator results and header cross-checks land in the result.
ParsedTsd parse_tsd(const std::string& text);

// Deterministic canonical serialization; parse(serialize(d)) reproduces d
// dart for dart.
std::string serialize_tsd(const ShadowDiagram& d);

} // namespace tsd
