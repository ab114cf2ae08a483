#pragma once

#include <optional>
#include <vector>

#include "geodesy/distance.hpp"
#include "geodesy/path.hpp"

namespace geodesy {

// Mesh region with faces fully inside plus boundary polylines cutting through
// the fringe faces. Boundary loops are oriented with the region on the left.
struct Region {
  std::vector<char> full;               // per-face: entirely inside
  std::vector<char> crossed;            // per-face: cut by a boundary loop
  std::vector<DiscretePath> boundary;   // closed loops, region on the left
  bool is_disk = false;
  double area = 0;

  bool empty() const { return boundary.empty(); }
};

// Region bounded by a simple closed loop, on the side of `seed`.
Region region_from_loop(const TriMesh& mesh, const DiscretePath& loop, const SurfacePoint& seed);
Region region_complement(const TriMesh& mesh, const Region& region);
// Whole-surface region (no boundary).
Region region_all(const TriMesh& mesh);

bool region_contains(const TriMesh& mesh, const Region& region, const SurfacePoint& p);
// 0 inside; otherwise the chord distance to the nearest boundary point.
double region_excursion(const TriMesh& mesh, const Region& region, const SurfacePoint& p);
bool regions_disjoint(const TriMesh& mesh, const Region& a, const Region& b);

struct BoundaryVertex {
  SurfacePoint position;
  double interior_angle;  // measured from within the region
};

enum class RegionClass { convex, concave, neither };

struct RegionClassification {
  RegionClass verdict = RegionClass::neither;
  bool convex_flag = false;   // all interior angles <= pi + tol
  bool concave_flag = false;  // complement convex: all interior angles >= pi - tol
  std::vector<BoundaryVertex> vertices;
  double min_interior_angle = 0;
  double max_interior_angle = 0;
};

// Requires a piecewise-geodesic boundary: corner points must be isolated.
RegionClassification classify_region(const TriMesh& mesh, const Region& region, double tol = 0.02);

struct BottleneckCertificate {
  Region region;
  double boundary_length = 0;
  int geodesic_arc_count = 0;
  double concavity_margin = 0;  // radians of exterior-angle slack
  bool excludes_basepoint = true;
};

// Certificate iff the region is a disk, strictly concave (margin > tol), with
// boundary at most 2*diameter long split into at most arc_limit geodesic
// arcs. Vertex-free boundaries use a stability margin: offsetting the
// boundary into the region must lengthen it.
std::optional<BottleneckCertificate> is_bottleneck_disk(const TriMesh& mesh, const Region& region,
                                                        const MetricSummary& metric,
                                                        int arc_limit = 2, double tol = 0.02);

struct RadialConvexityReport {
  bool pass = false;
  double worst_violation = 0;            // deepest excursion outside the region
  int samples_checked = 0;
  int samples_passed = 0;
  SurfacePoint worst_point;
};

// Samples interior points by face area and checks that the minimizing
// geodesic from x stays inside (excursions up to mesh resolution allowed).
RadialConvexityReport is_radially_convex(const DistanceGraph& graph, const Region& region,
                                         const SurfacePoint& x, int samples, std::uint64_t seed);

// Area-weighted interior sample points (full faces only), deterministic.
std::vector<SurfacePoint> sample_region(const TriMesh& mesh, const Region& region, int count,
                                        std::uint64_t seed);

}  // namespace geodesy
