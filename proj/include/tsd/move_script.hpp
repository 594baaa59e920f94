#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tsd/moves.hpp"

namespace tsd {

struct ScriptParseError : std::runtime_error {
    ScriptParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
    int line;
};

// One command of the move-script language. Key=value arguments, one command
// per line:
//   slide slider=S over=S sfoot=D ofoot=D [band=D,D,...]
//   perturb sector=I face=F first=D second=D
//   unperturb arc=S
//   mstab sector=I arc=S
//   tstab face=F
//   csum with=catalog:NAME|file:PATH p1=V p2=V
//   mirror
struct MoveCommand {
    enum class Op { Slide, Perturb, Unperturb, MStab, TStab, CSum, Mirror };
    Op op;
    int line = 0;
    SlideSite slide;
    PerturbSite perturb;
    int arc_strand = -1;
    MStabSite mstab;
    int face = -1;
    std::string csum_source;  // "catalog:NAME" or "file:PATH"
    int p1 = -1, p2 = -1;
};

struct MoveScript {
    std::vector<MoveCommand> commands;
};

MoveScript parse_move_script(const std::string& text);

struct ScriptStep {
    std::string description;
    ComplexityTuple tuple_after;
};

struct ScriptResult {
    ShadowDiagram diagram;
    std::vector<ScriptStep> transcript;
};

// Applies the script in order; the transcript records the complexity tuple
// after every step. The first failing move aborts with its step index and
// the underlying error message.
struct ScriptAbort : std::runtime_error {
    ScriptAbort(int step_, const std::string& what_)
        : std::runtime_error("step " + std::to_string(step_) + ": " + what_), step(step_) {}
    int step;
};

// `load_diagram` resolves csum sources ("catalog:NAME" or "file:PATH").
ScriptResult run_script(const ShadowDiagram& d, const MoveScript& s,
                        const std::function<ShadowDiagram(const std::string&)>& load_diagram);

} // namespace tsd
