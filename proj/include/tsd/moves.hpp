#pragma once

#include <optional>
#include <vector>

#include "tsd/diagram.hpp"

namespace tsd {

// A move's preconditions were violated, or (internal) its template produced
// an invalid diagram.
struct MoveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sector bookkeeping: the disks of sector i are bounded by the arcs of two
// systems; the remaining system is "opposite" the sector.
//   sector 1: (A,B), third C     sector 2: (B,C), third A
//   sector 3: (C,A), third B
std::pair<SystemLabel, SystemLabel> sector_pair(int sector);
SystemLabel sector_third(int sector);

// Band sum of a curve or arc with a curve of the same system. The band runs
// from a point on the slider's edge (the side of `slider_foot`) to a point
// on the over curve's edge (side of `over_foot`), crossing only the scaffold
// edges listed in `band`. A slide whose trivial band undoes a previous slide
// of the same curve is recognized and cancelled exactly.
struct SlideSite {
    int slider = -1;          // strand id
    int over = -1;            // strand id of a curve in the same system
    Dart slider_foot = kNoDart;
    Dart over_foot = kNoDart;
    std::vector<Dart> band;   // scaffold edges the band crosses, in order
};
ShadowDiagram disk_slide(const ShadowDiagram& d, const SlideSite& site);

// Elementary perturbation in the given sector: splits one arc of each of the
// sector's two systems inside the chosen face and joins the new bridge
// points by a third-system arc. b and the sector's disk count go up by one.
struct PerturbSite {
    int sector = 1;
    int face = -1;
    Dart on_first_arc = kNoDart;   // dart of a first-system arc edge, face side
    Dart on_second_arc = kNoDart;  // dart of a second-system arc edge, face side
};
ShadowDiagram perturb(const ShadowDiagram& d, const PerturbSite& site);

// Exact inverse of perturb at a created site. The chosen strand must be a
// single-edge arc whose two bridge points match the perturbation template;
// anything else is rejected as "not an elementary perturbation site".
ShadowDiagram unperturb(const ShadowDiagram& d, int third_arc_strand);

// Meridional stabilization along a single-edge arc of the system opposite
// the sector, whose endpoints lie on different sector disks. Trades a bridge
// for genus: (g,k_i,b,c_i) -> (g+1,k_i+1,b-1,c_i-1).
struct MStabSite {
    int sector = 1;
    int arc_strand = -1;
};
ShadowDiagram meridional_stabilize(const ShadowDiagram& d, const MStabSite& site);

// Connected sum with the standard genus-three diagram of the 4-sphere inside
// the chosen face: g += 3, every k_i += 1, b and c unchanged.
ShadowDiagram trisection_stabilize(const ShadowDiagram& d, int face);

// Connected sum of two diagrams at bridge points: the points are removed and
// the three arc ends spliced pairwise across the sum.
ShadowDiagram connect_sum_pairs(const ShadowDiagram& d1, const ShadowDiagram& d2, int p1_vertex,
                                int p2_vertex);
ShadowDiagram connect_sum_pairs_first_points(const ShadowDiagram& d1, const ShadowDiagram& d2);

// Orientation reversal: every rotation is inverted. All parameters are
// unchanged; intersection matrices are negated entrywise.
ShadowDiagram mirror_diagram(const ShadowDiagram& d);

// Valid sites, enumerated deterministically (used by the CLI and the
// randomized test sweeps).
std::vector<PerturbSite> enumerate_perturb_sites(const ShadowDiagram& d, int sector);
std::vector<MStabSite> enumerate_mstab_sites(const ShadowDiagram& d, int sector);

// Stabilize meridionally until every disk count equals the component count
// (the efficient position, b = 3n - chi). The stabilizing arc must be
// crossing-free, so the choice of site matters; this searches over site
// orders (progress is monotone, so the search is shallow) and returns
// nullopt if no order reaches the efficient position.
std::optional<ShadowDiagram> reduce_to_efficient(const ShadowDiagram& d);

} // namespace tsd
