#include "tsd/move_script.hpp"

#include <map>
#include <sstream>

namespace tsd {

namespace {

std::map<std::string, std::string> keyvals(const std::vector<std::string>& toks, int line) {
    std::map<std::string, std::string> kv;
    for (size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos)
            throw ScriptParseError(line, "expected key=value, got '" + toks[i] + "'");
        if (!kv.emplace(toks[i].substr(0, eq), toks[i].substr(eq + 1)).second)
            throw ScriptParseError(line, "duplicate key '" + toks[i].substr(0, eq) + "'");
    }
    return kv;
}

int need_int(const std::map<std::string, std::string>& kv, const std::string& key, int line) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ScriptParseError(line, "missing argument " + key + "=");
    try {
        return std::stoi(it->second);
    } catch (...) {
        throw ScriptParseError(line, "argument " + key + " must be an integer");
    }
}

} // namespace

MoveScript parse_move_script(const std::string& text) {
    MoveScript script;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;

        MoveCommand cmd;
        cmd.line = lineno;
        auto kv = keyvals(toks, lineno);
        if (toks[0] == "slide") {
            cmd.op = MoveCommand::Op::Slide;
            cmd.slide.slider = need_int(kv, "slider", lineno);
            cmd.slide.over = need_int(kv, "over", lineno);
            cmd.slide.slider_foot = need_int(kv, "sfoot", lineno);
            cmd.slide.over_foot = need_int(kv, "ofoot", lineno);
            if (auto it = kv.find("band"); it != kv.end() && !it->second.empty()) {
                std::istringstream bs(it->second);
                std::string piece;
                while (std::getline(bs, piece, ','))
                    cmd.slide.band.push_back(std::stoi(piece));
            }
        } else if (toks[0] == "perturb") {
            cmd.op = MoveCommand::Op::Perturb;
            cmd.perturb.sector = need_int(kv, "sector", lineno);
            cmd.perturb.face = need_int(kv, "face", lineno);
            cmd.perturb.on_first_arc = need_int(kv, "first", lineno);
            cmd.perturb.on_second_arc = need_int(kv, "second", lineno);
        } else if (toks[0] == "unperturb") {
            cmd.op = MoveCommand::Op::Unperturb;
            cmd.arc_strand = need_int(kv, "arc", lineno);
        } else if (toks[0] == "mstab") {
            cmd.op = MoveCommand::Op::MStab;
            cmd.mstab.sector = need_int(kv, "sector", lineno);
            cmd.mstab.arc_strand = need_int(kv, "arc", lineno);
        } else if (toks[0] == "tstab") {
            cmd.op = MoveCommand::Op::TStab;
            cmd.face = need_int(kv, "face", lineno);
        } else if (toks[0] == "csum") {
            cmd.op = MoveCommand::Op::CSum;
            auto it = kv.find("with");
            if (it == kv.end()) throw ScriptParseError(lineno, "csum needs with=catalog:NAME or with=file:PATH");
            cmd.csum_source = it->second;
            cmd.p1 = need_int(kv, "p1", lineno);
            cmd.p2 = need_int(kv, "p2", lineno);
        } else if (toks[0] == "mirror") {
            cmd.op = MoveCommand::Op::Mirror;
        } else {
            throw ScriptParseError(lineno, "unknown command '" + toks[0] + "'");
        }
        script.commands.push_back(std::move(cmd));
    }
    return script;
}

ScriptResult run_script(const ShadowDiagram& d, const MoveScript& s,
                        const std::function<ShadowDiagram(const std::string&)>& load_diagram) {
    ScriptResult res;
    res.diagram = d;
    int step = 0;
    for (const auto& cmd : s.commands) {
        ++step;
        try {
            std::string what;
            switch (cmd.op) {
                case MoveCommand::Op::Slide:
                    res.diagram = disk_slide(res.diagram, cmd.slide);
                    what = "slide";
                    break;
                case MoveCommand::Op::Perturb:
                    res.diagram = perturb(res.diagram, cmd.perturb);
                    what = "perturb sector " + std::to_string(cmd.perturb.sector);
                    break;
                case MoveCommand::Op::Unperturb:
                    res.diagram = unperturb(res.diagram, cmd.arc_strand);
                    what = "unperturb";
                    break;
                case MoveCommand::Op::MStab:
                    res.diagram = meridional_stabilize(res.diagram, cmd.mstab);
                    what = "mstab sector " + std::to_string(cmd.mstab.sector);
                    break;
                case MoveCommand::Op::TStab:
                    res.diagram = trisection_stabilize(res.diagram, cmd.face);
                    what = "tstab";
                    break;
                case MoveCommand::Op::CSum: {
                    ShadowDiagram other = load_diagram(cmd.csum_source);
                    res.diagram = connect_sum_pairs(res.diagram, other, cmd.p1, cmd.p2);
                    what = "csum with " + cmd.csum_source;
                    break;
                }
                case MoveCommand::Op::Mirror:
                    res.diagram = mirror_diagram(res.diagram);
                    what = "mirror";
                    break;
            }
            res.transcript.push_back({what, complexity(res.diagram)});
        } catch (const ScriptAbort&) {
            throw;
        } catch (const std::exception& e) {
            throw ScriptAbort(step, e.what());
        }
    }
    return res;
}

} // namespace tsd
