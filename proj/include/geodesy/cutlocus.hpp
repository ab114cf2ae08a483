#pragma once

#include <vector>

#include "geodesy/distance.hpp"
#include "geodesy/path.hpp"
#include "geodesy/region.hpp"

namespace geodesy {

struct CutLocusNode {
  SurfacePoint position;
  int degree = 0;
  int geodesic_count = 0;
};

struct CutLocusArc {
  Index a = kInvalidIndex, b = kInvalidIndex;  // node ids
  DiscretePath polyline;                       // runs from a to b
  double length = 0;
};

// Approximate cut locus of a basepoint: a tree of ridge curves of the
// distance field, with spur pruning at mesh scale.
struct CutLocusTree {
  SurfacePoint basepoint;
  std::vector<CutLocusNode> nodes;
  std::vector<CutLocusArc> arcs;
  std::vector<std::vector<Index>> incident;  // node -> arc ids
  Index root = kInvalidIndex;
  int degree_splits_applied = 0;

  bool degenerate() const { return arcs.empty(); }
  double total_length() const {
    double s = 0;
    for (const auto& a : arcs) s += a.length;
    return s;
  }
  // Point at arclength t*length along an arc.
  SurfacePoint arc_point(const TriMesh& mesh, Index arc, double t) const;
  // Component of nodes reachable from `from` without using `via_arc`.
  std::vector<Index> subtree_nodes(Index from, Index via_arc) const;
};

struct CutLocusOptions {
  double kink_grad = 0.82;          // ridge where |grad d| fits below this
  double spur_length_h = 2;         // prune leaf chains shorter than this many h
  double basepoint_clear_h = 2;     // drop ridge points this close to the basepoint
  double collapse_extent_rel = 0.06;  // trees smaller than this fraction of max dist collapse
};

CutLocusTree cut_locus(const DistanceGraph& graph, const SurfacePoint& p,
                       const CutLocusOptions& opts = {});

// `expected` pairwise-distinct minimizing geodesics from the field source to
// x, seeded through corridors on each side of the cut locus near x.
// Throws NotEnoughGeodesics if fewer are found.
std::vector<DiscretePath> minimizing_geodesics_to(const DistanceGraph& graph,
                                                  const DistanceField& field, const CutLocusTree& tree,
                                                  const SurfacePoint& x, int expected);
// Non-throwing variant; returns what was found.
std::vector<DiscretePath> try_minimizing_geodesics(const DistanceGraph& graph,
                                                   const DistanceField& field,
                                                   const CutLocusTree& tree, const SurfacePoint& x,
                                                   int expected);

// Minimizing geodesic bigon: two minimizing geodesics from the basepoint
// meeting only at their endpoints.
struct Bigon {
  DiscretePath side_minus, side_plus;  // both run basepoint -> far vertex
  SurfacePoint vertex_x, vertex_y;     // basepoint, far vertex
  Region region;
};

Bigon make_bigon(const TriMesh& mesh, const DiscretePath& side_minus, const DiscretePath& side_plus,
                 const SurfacePoint& interior_seed);

struct BigonFamily {
  std::vector<double> params;         // grid on [0,1] along the arc
  std::vector<DiscretePath> minus;    // gamma_t^- for each t
  std::vector<DiscretePath> plus;     // gamma_t^+
  HomotopyTrace trace;                // loops gamma_t^- * rev(gamma_t^+), based at p
  DiscretePath limit_minus, limit_plus;
  bool limits_equal = false;          // sides Frechet-merge at the far end
};

// Family of minimizing geodesic bigons with the moving vertex on the given
// arc, traversed from the `from_node` end toward the other end.
BigonFamily bigon_family_along_edge(const DistanceGraph& graph, const DistanceField& field,
                                    const CutLocusTree& tree, Index arc, Index from_node,
                                    int grid = 8, double distinct_threshold = 0);

// Point walked distance r from x in fan direction angle phi (tracing straight
// across faces). Used for corridor seeding and transversal arcs.
SurfacePoint point_at_direction(const TriMesh& mesh, const SurfacePoint& x, double phi, double r);

}  // namespace geodesy
