// Command line for shadow diagrams of generalized bridge trisections:
// validate, inspect, transform and render TSD files.
//
// Exit codes: 0 success / accepted;
//   2 grammar error, 3 structural error, 4 validation or header failure,
//   5 move or precondition error, 6 usage / lookup error, 7 i/o error.

#include <CLI11.hpp>
#include <unistd.h>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tsd/batch.hpp"
#include "tsd/catalog.hpp"
#include "tsd/invariants.hpp"
#include "tsd/move_script.hpp"
#include "tsd/moves.hpp"
#include "tsd/render_svg.hpp"
#include "tsd/tsd_format.hpp"

namespace {

constexpr int kExitGrammar = 2;
constexpr int kExitStructural = 3;
constexpr int kExitValidation = 4;
constexpr int kExitMove = 5;
constexpr int kExitUsage = 6;
constexpr int kExitIo = 7;

struct CliFailure {
    int code;
    std::string message;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliFailure{kExitIo, "cannot open " + path};
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

tsd::ShadowDiagram load_validated(const std::string& path) {
    auto parsed = tsd::parse_tsd(slurp(path));
    if (!parsed.accepted()) {
        std::string msg = path + " is not an accepted diagram\n" + parsed.report.summary();
        for (const auto& h : parsed.header_mismatches) msg += h + "\n";
        throw CliFailure{kExitValidation, msg};
    }
    return parsed.diagram;
}

tsd::ShadowDiagram load_source(const std::string& source) {
    if (source.rfind("catalog:", 0) == 0) {
        try {
            return tsd::catalog_get(source.substr(8)).diagram;
        } catch (const tsd::PreconditionError& e) {
            throw CliFailure{kExitUsage, e.what()};
        }
    }
    if (source.rfind("file:", 0) == 0) return load_validated(source.substr(5));
    return load_validated(source);
}

// "g;k1,k2,k3;b;c1,c2,c3"
tsd::ComplexityTuple parse_tuple(const std::string& text) {
    auto fail = [&]() -> tsd::ComplexityTuple {
        throw CliFailure{kExitUsage, "cannot parse tuple '" + text + "'; expected g;k1,k2,k3;b;c1,c2,c3"};
    };
    std::vector<std::string> parts;
    std::istringstream is(text);
    std::string piece;
    while (std::getline(is, piece, ';')) parts.push_back(piece);
    if (parts.size() != 4) return fail();
    auto ints = [&](const std::string& csv, size_t want) {
        std::vector<int> out;
        std::istringstream cs(csv);
        std::string v;
        while (std::getline(cs, v, ',')) {
            try {
                out.push_back(std::stoi(v));
            } catch (...) {
                fail();
            }
        }
        if (out.size() != want) fail();
        return out;
    };
    auto g = ints(parts[0], 1);
    auto k = ints(parts[1], 3);
    auto b = ints(parts[2], 1);
    auto c = ints(parts[3], 3);
    return tsd::make_tuple(g[0], {k[0], k[1], k[2]}, b[0], {c[0], c[1], c[2]});
}

std::string tuple_line(const tsd::ComplexityTuple& t) {
    std::ostringstream os;
    os << t.to_string() << (t.balanced ? " balanced" : "");
    return os.str();
}

void print_info(const tsd::ShadowDiagram& d) {
    using namespace tsd;
    ComplexityTuple t = complexity(d);
    std::cout << "tuple: " << tuple_line(t) << "\n";
    if (!t.k_check_passed)
        std::cout << "warning: claimed k fails the homological necessary condition\n";
    if (t.b > 0) {
        std::cout << "surface euler characteristic: " << euler_char_surface(t) << "\n";
        int n = component_count(d);
        std::cout << "surface components: " << n << "\n";
        std::cout << "efficient: " << (is_efficient(d) ? "yes" : "no") << "\n";
        std::cout << "orientability: undetermined\n";
        MorseData m = morse_data(t);
        std::cout << "morse: " << m.minima << " min, " << m.saddles << " saddles, " << m.maxima
                  << " max; ambient handles " << m.n1 << "/" << m.n2 << "/" << m.n3 << "\n";
    } else {
        std::cout << "surface: none (b = 0)\n";
    }
    std::cout << "ambient euler characteristic: " << euler_char_ambient(t) << "\n";
}

void print_strands(const tsd::ShadowDiagram& d) {
    using namespace tsd;
    StrandSet ss = StrandSet::extract(d);
    for (const auto& s : ss.all()) {
        std::cout << "strand " << s.id << " " << s.color.token() << " "
                  << (s.closed ? "closed" : "arc") << " edges";
        auto edges = s.edge_darts;
        std::sort(edges.begin(), edges.end());
        for (Dart e : edges) std::cout << " " << e << ":" << d.map.opp(e);
        if (!s.closed) std::cout << " endpoints " << s.endpoints[0] << " " << s.endpoints[1];
        std::cout << "\n";
    }
    std::cout << "faces: " << d.map.face_count() << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"shadow diagrams for generalized bridge trisections"};
    app.require_subcommand(1);

    // validate
    auto* c_validate = app.add_subcommand("validate", "validate TSD files (exit 0 iff all accepted)");
    std::vector<std::string> validate_files;
    c_validate->add_option("files", validate_files, "TSD files")->required();

    // info
    auto* c_info = app.add_subcommand("info", "print invariants of a diagram");
    std::string info_file;
    bool info_strands = false;
    c_info->add_option("file", info_file, "TSD file or catalog:NAME")->required();
    c_info->add_flag("--strands", info_strands, "also list strands and faces");

    // apply
    auto* c_apply = app.add_subcommand("apply", "apply a move script");
    std::string apply_file, apply_script, apply_out;
    std::string color_mode = "auto";
    c_apply->add_option("file", apply_file, "TSD file or catalog:NAME")->required();
    c_apply->add_option("script", apply_script, "move script file")->required();
    c_apply->add_option("-o,--output", apply_out, "write the resulting TSD here");
    c_apply->add_option("--color", color_mode, "transcript color: auto|never")
        ->check(CLI::IsMember({"auto", "never"}));

    // cover
    auto* c_cover = app.add_subcommand("cover", "branched cover parameter arithmetic");
    std::string cover_file, cover_tuple;
    std::int64_t cover_degree = 0;
    c_cover->add_option("file", cover_file, "TSD file or catalog:NAME");
    c_cover->add_option("--tuple", cover_tuple, "bare tuple g;k1,k2,k3;b;c1,c2,c3");
    c_cover->add_option("--degree,-n", cover_degree, "cover degree")->required();

    // render
    auto* c_render = app.add_subcommand("render", "render a diagram development to SVG");
    std::string render_file, render_out;
    c_render->add_option("file", render_file, "TSD file or catalog:NAME")->required();
    c_render->add_option("-o,--output", render_out, "output SVG path")->required();

    // catalog
    auto* c_catalog = app.add_subcommand("catalog", "built-in example diagrams");
    auto* cc_list = c_catalog->add_subcommand("list", "list entries");
    auto* cc_emit = c_catalog->add_subcommand("emit", "write an entry as TSD");
    std::string emit_name;
    cc_emit->add_option("name", emit_name, "entry name")->required();
    auto* cc_verify = c_catalog->add_subcommand("verify", "revalidate every entry");
    c_catalog->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_validate) {
            bool all_ok = true;
            for (const auto& f : validate_files) {
                auto parsed = tsd::parse_tsd(slurp(f));
                bool ok = parsed.accepted();
                all_ok = all_ok && ok;
                std::cout << f << ": " << (ok ? "accepted" : "REJECTED") << "\n";
                if (!ok) {
                    std::cout << parsed.report.summary();
                    for (const auto& h : parsed.header_mismatches) std::cout << h << "\n";
                }
            }
            return all_ok ? 0 : kExitValidation;
        }
        if (*c_info) {
            auto d = load_source(info_file);
            print_info(d);
            if (info_strands) print_strands(d);
            return 0;
        }
        if (*c_apply) {
            auto d = load_source(apply_file);
            auto script = tsd::parse_move_script(slurp(apply_script));
            bool colored = color_mode == "auto" && isatty(fileno(stdout));
            try {
                auto res = tsd::run_script(d, script, load_source);
                int step = 0;
                std::cout << "start: " << tuple_line(tsd::complexity(d)) << "\n";
                for (const auto& st : res.transcript) {
                    ++step;
                    if (colored) std::cout << "\033[36m";
                    std::cout << "step " << step << " (" << st.description
                              << "): " << tuple_line(st.tuple_after);
                    if (colored) std::cout << "\033[0m";
                    std::cout << "\n";
                }
                if (!apply_out.empty()) {
                    std::ofstream out(apply_out, std::ios::binary);
                    if (!out) throw CliFailure{kExitIo, "cannot write " + apply_out};
                    out << tsd::serialize_tsd(res.diagram);
                } else {
                    std::cout << tsd::serialize_tsd(res.diagram);
                }
                return 0;
            } catch (const tsd::ScriptAbort& e) {
                std::cerr << "script aborted at " << e.what() << "\n";
                return kExitMove;
            }
        }
        if (*c_cover) {
            if (cover_degree < 1) throw CliFailure{kExitUsage, "cover degree must be at least 1"};
            tsd::ComplexityTuple t;
            if (!cover_tuple.empty()) t = parse_tuple(cover_tuple);
            else if (!cover_file.empty()) t = tsd::complexity(load_source(cover_file));
            else throw CliFailure{kExitUsage, "cover needs a diagram or --tuple"};
            auto p = tsd::branched_cover_params(t, cover_degree);
            std::cout << "degree " << p.n << " cover: g'=" << p.g << ", k'=(" << p.k[0] << ","
                      << p.k[1] << "," << p.k[2] << "), b=" << p.b << ", c=(" << p.c[0] << ","
                      << p.c[1] << "," << p.c[2] << ")\n";
            std::cout << "ambient euler characteristic: " << tsd::cover_ambient_euler_char(p) << "\n";
            return 0;
        }
        if (*c_render) {
            auto d = load_source(render_file);
            std::ofstream out(render_out, std::ios::binary);
            if (!out) throw CliFailure{kExitIo, "cannot write " + render_out};
            out << tsd::render_svg(d);
            return 0;
        }
        if (*cc_list) {
            for (const auto& e : tsd::catalog_entries())
                std::cout << e.name << "  " << e.expected.to_string() << "  " << e.note << "\n";
            return 0;
        }
        if (*cc_emit) {
            std::cout << tsd::serialize_tsd(load_source("catalog:" + emit_name));
            return 0;
        }
        if (*cc_verify) {
            auto res = tsd::catalog_verify_all();
            for (const auto& f : res.failures) std::cout << f << "\n";
            std::cout << (res.ok ? "catalog verify: all " + std::to_string(res.entries_checked) +
                                       " entries pass"
                                 : "catalog verify: FAILURES above")
                      << "\n";
            return res.ok ? 0 : kExitValidation;
        }
    } catch (const CliFailure& f) {
        std::cerr << f.message << "\n";
        return f.code;
    } catch (const tsd::TsdParseError& e) {
        std::cerr << "grammar error: " << e.what() << "\n";
        return kExitGrammar;
    } catch (const tsd::ScriptParseError& e) {
        std::cerr << "script grammar error: " << e.what() << "\n";
        return kExitGrammar;
    } catch (const tsd::MoveError& e) {
        std::cerr << e.what() << "\n";
        return kExitMove;
    } catch (const tsd::PreconditionError& e) {
        std::cerr << e.what() << "\n";
        return kExitMove;
    } catch (const tsd::MapError& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return kExitStructural;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
