#include "tsd/render_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

namespace tsd {

namespace {

// Cut set: the complement of a spanning tree of the dual (face-adjacency)
// graph, so the faces glue into one disk. Tree edges are chosen to keep
// arcs, then beta/gamma curves, interior; alpha curves and scaffold are cut
// preferentially.
std::vector<char> development_cut_set(const ShadowDiagram& d) {
    const int n = d.map.dart_count();
    auto priority = [&](Dart x) {
        StrandColor c = d.color(x);
        if (c.is_scaffold()) return 3;
        if (c.kind == StrandKind::Arc) return 0;
        if (c.system == SystemLabel::A) return 4;
        return 1;  // beta/gamma curves
    };
    std::vector<Dart> edges;
    for (Dart x = 0; x < n; ++x)
        if (x < d.map.opp(x)) edges.push_back(x);
    std::stable_sort(edges.begin(), edges.end(),
                     [&](Dart a, Dart b) { return priority(a) < priority(b); });

    std::vector<int> parent(d.map.face_count());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };

    std::vector<char> cut(n, 1);
    for (Dart e : edges) {
        int f1 = find(d.map.face_of(e));
        int f2 = find(d.map.face_of(d.map.opp(e)));
        if (f1 == f2) continue;
        parent[f1] = f2;
        cut[e] = cut[d.map.opp(e)] = 0;  // keep in the gluing tree
    }
    return cut;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct P {
    double x = 0, y = 0;
};

const char* system_stroke(SystemLabel s) {
    switch (s) {
        case SystemLabel::A: return "#c62828";
        case SystemLabel::B: return "#1565c0";
        default: return "#2e7d32";
    }
}

} // namespace

std::string render_svg(const ShadowDiagram& d, const RenderOptions& options) {
    ValidationReport rep = validate(d);
    if (!rep.accepted())
        throw PreconditionError("render_svg: diagram is not accepted:\n" + rep.summary());

    auto cut = development_cut_set(d);
    BorderedMap dev = cut_along_edges(d.map, cut);
    const CombinatorialMap& cm = dev.complex();
    if (cm.component_count() != 1 || dev.boundary_circle_count() != 1 || !dev.all_components_planar())
        throw MapError("render_svg: development did not open into a disk");

    // Trace the boundary circle: it is the face orbit of any void-side dart
    // (every cut dart keeps its id and is void-marked; dart ids < original
    // dart count with cut[] set are such darts).
    Dart start = kNoDart;
    for (Dart x = 0; x < d.map.dart_count() && start == kNoDart; ++x)
        if (cut[x]) start = x;
    if (start == kNoDart) throw MapError("render_svg: no cut edges");
    std::vector<Dart> boundary;
    Dart w = start;
    do {
        boundary.push_back(w);
        w = cm.face_next(w);
    } while (w != start);
    const int nb = static_cast<int>(boundary.size());

    // Polygon corners: boundary dart k runs from corner k to corner k+1.
    const double cx = options.size / 2.0, cy = options.size / 2.0;
    const double radius = options.size / 2.0 - options.margin;
    std::vector<P> vpos(cm.vertex_count());
    std::vector<char> on_boundary(cm.vertex_count(), 0);
    for (int k = 0; k < nb; ++k) {
        double a = 2.0 * M_PI * k / nb - M_PI / 2.0;
        int v = cm.vertex_of(boundary[k]);
        vpos[v] = {cx + radius * std::cos(a), cy + radius * std::sin(a)};
        on_boundary[v] = 1;
    }

    // Interior vertices: barycentric placement (each the average of its
    // rotation neighbours), solved by Gaussian elimination.
    std::vector<int> interior;
    std::vector<int> index_of(cm.vertex_count(), -1);
    for (int v = 0; v < cm.vertex_count(); ++v)
        if (!on_boundary[v]) {
            index_of[v] = static_cast<int>(interior.size());
            interior.push_back(v);
        }
    if (!interior.empty()) {
        const int m = static_cast<int>(interior.size());
        std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
        std::vector<double> bx(m, 0.0), by(m, 0.0);
        for (int i = 0; i < m; ++i) {
            int v = interior[i];
            const auto& rot = cm.vertex_darts(v);
            a[i][i] = static_cast<double>(rot.size());
            for (Dart x : rot) {
                int u = cm.vertex_of(cm.opp(x));
                if (index_of[u] >= 0) a[i][index_of[u]] -= 1.0;
                else {
                    bx[i] += vpos[u].x;
                    by[i] += vpos[u].y;
                }
            }
        }
        for (int col = 0; col < m; ++col) {
            int piv = col;
            for (int r = col + 1; r < m; ++r)
                if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
            std::swap(a[col], a[piv]);
            std::swap(bx[col], bx[piv]);
            std::swap(by[col], by[piv]);
            double p = a[col][col];
            if (std::fabs(p) < 1e-12) continue;
            for (int r = 0; r < m; ++r) {
                if (r == col || a[r][col] == 0.0) continue;
                double f = a[r][col] / p;
                for (int c2 = col; c2 < m; ++c2) a[r][c2] -= f * a[col][c2];
                bx[r] -= f * bx[col];
                by[r] -= f * by[col];
            }
        }
        for (int i = 0; i < m; ++i) {
            double p = std::fabs(a[i][i]) < 1e-12 ? 1.0 : a[i][i];
            vpos[interior[i]] = {bx[i] / p, by[i] / p};
        }
    }
    // --- draw ---
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(options.size) << "\" height=\""
       << fmt(options.size) << "\" viewBox=\"0 0 " << fmt(options.size) << " " << fmt(options.size)
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Strand groups. Every edge is a straight segment between its endpoint
    // positions; cut-edge copies coincide with polygon sides.
    StrandSet strands = StrandSet::extract(d);
    auto dev_ends = [&](Dart e) {
        // e is an original dart id; its cut-complex edge runs from the
        // source of e to the source of opp_cm(e).
        return std::pair<P, P>{vpos[cm.vertex_of(e)], vpos[cm.vertex_of(cm.opp(e))]};
    };
    for (const auto& s : strands.all()) {
        std::string cls = "strand ";
        std::string stroke, dash, width;
        if (s.color.is_scaffold()) {
            cls += "scaffold";
            stroke = "#9e9e9e";
            dash = " stroke-dasharray=\"6 4\"";
            width = "1.5";
        } else {
            cls += (s.color.kind == StrandKind::Curve ? "curve" : "arc");
            cls += std::string(" sys") + system_name(s.color.system);
            stroke = system_stroke(s.color.system);
            width = s.color.kind == StrandKind::Arc ? "4" : "2";
        }
        os << "<g class=\"" << cls << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
           << "\" fill=\"none\"" << dash << ">\n";
        std::vector<Dart> edges = s.edge_darts;
        std::sort(edges.begin(), edges.end());
        for (Dart e : edges) {
            if (!cut[e]) {
                auto [p1, p2] = dev_ends(e);
                os << "  <line x1=\"" << fmt(p1.x) << "\" y1=\"" << fmt(p1.y) << "\" x2=\"" << fmt(p2.x)
                   << "\" y2=\"" << fmt(p2.y) << "\"/>\n";
            } else {
                // both copies lie on the polygon boundary
                for (Dart side : {e, d.map.opp(e)}) {
                    auto [p1, p2] = dev_ends(side);
                    os << "  <line x1=\"" << fmt(p1.x) << "\" y1=\"" << fmt(p1.y) << "\" x2=\""
                       << fmt(p2.x) << "\" y2=\"" << fmt(p2.y) << "\"/>\n";
                }
            }
        }
        os << "</g>\n";
    }

    // Identification labels: both boundary copies of a cut edge carry its id.
    if (options.edge_labels) {
        os << "<g class=\"edge-labels\" font-family=\"monospace\" font-size=\"11\" fill=\"#444\">\n";
        for (Dart e = 0; e < d.map.dart_count(); ++e) {
            if (!cut[e] || d.map.opp(e) < e) continue;
            for (Dart side : {e, d.map.opp(e)}) {
                auto [p1, p2] = dev_ends(side);
                double mx = (p1.x + p2.x) / 2, my = (p1.y + p2.y) / 2;
                double ox = mx - cx, oy = my - cy;
                double len = std::hypot(ox, oy);
                if (len > 1e-9) {
                    mx += ox / len * 14;
                    my += oy / len * 14;
                }
                os << "  <text x=\"" << fmt(mx) << "\" y=\"" << fmt(my)
                   << "\" text-anchor=\"middle\">e" << d.map.edge_of(e) << "</text>\n";
            }
        }
        os << "</g>\n";
    }

    // Vertex dots: bridge points filled, markers open. A vertex split by the
    // development cut gets its dot at the lowest copy only, so dot counts
    // match the diagram's own counts.
    os << "<g class=\"vertices\">\n";
    for (int v = 0; v < d.map.vertex_count(); ++v) {
        auto kind = classify_vertex(d, v);
        if (!kind || *kind == VertexKind::Crossing) continue;
        int cv = cm.vertex_count();
        for (Dart x : d.map.vertex_darts(v)) cv = std::min(cv, cm.vertex_of(x));
        if (*kind == VertexKind::Bridge)
            os << "  <circle class=\"bridge\" cx=\"" << fmt(vpos[cv].x) << "\" cy=\""
               << fmt(vpos[cv].y) << "\" r=\"5\" fill=\"black\"/>\n";
        else
            os << "  <circle class=\"marker\" cx=\"" << fmt(vpos[cv].x) << "\" cy=\""
               << fmt(vpos[cv].y) << "\" r=\"3\" fill=\"white\" stroke=\"black\"/>\n";
    }
    os << "</g>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace tsd
