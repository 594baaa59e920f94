#pragma once

#include <string>

#include "tsd/diagram.hpp"

namespace tsd {

struct RenderOptions {
    double size = 640.0;     // canvas width and height
    double margin = 48.0;
    bool edge_labels = true; // label identified boundary sides
};

// Deterministic SVG drawing of the planar development: the surface is cut
// open into a disk (cutting preferentially through the alpha curves and the
// scaffold), the cut boundary becomes a labeled polygon whose sides are
// identified in pairs, and interior vertices are placed barycentrically.
// Strands are drawn as grouped polylines: red/blue/green for systems A/B/C
// (curves solid, arcs heavy), scaffold grey dashed; bridge points are filled
// dots, markers small open dots. Identical input and options render to
// byte-identical output.
std::string render_svg(const ShadowDiagram& d, const RenderOptions& options = {});

} // namespace tsd
