#pragma once

#include <cstdint>
#include <vector>

#include "geodesy/path.hpp"

namespace geodesy {

// Shortest-path graph over mesh vertices plus Steiner points on edges.
// Distances through it upper-bound intrinsic distances; witnesses are then
// tightened by path straightening.
class DistanceGraph {
 public:
  explicit DistanceGraph(const TriMesh& mesh, int steiner_per_edge = 3);

  const TriMesh& mesh() const { return *mesh_; }
  Index node_count() const { return static_cast<Index>(pos_.size()); }
  const Vec3& node_pos(Index n) const { return pos_[n]; }
  SurfacePoint node_point(Index n) const;
  // Graph nodes on the boundary of face f (3 corners + the edge Steiner points).
  std::vector<Index> face_nodes(Index f) const;
  // Entry nodes for an arbitrary surface point (nodes of its carrier faces).
  std::vector<Index> point_nodes(const SurfacePoint& p) const;

  const std::vector<Index>& offsets() const { return offsets_; }
  const std::vector<Index>& neighbors() const { return nbr_; }
  const std::vector<double>& weights() const { return w_; }

 private:
  const TriMesh* mesh_;
  int k_;
  std::vector<Vec3> pos_;
  std::vector<Index> offsets_, nbr_;
  std::vector<double> w_;
};

struct DistanceField {
  const DistanceGraph* graph = nullptr;
  SurfacePoint source;
  std::vector<double> dist;  // per graph node
  std::vector<Index> pred;   // per graph node; -1 at sources

  double at_vertex(Index v) const { return dist[v]; }
  double at_point(const SurfacePoint& p) const;
  // Graph witness polyline from the source to p (not yet straightened).
  DiscretePath witness_to(const SurfacePoint& p) const;
};

DistanceField compute_distance_field(const DistanceGraph& graph, const SurfacePoint& source);

struct GeodesicResult {
  double length = 0;
  DiscretePath path;
};

// Distance upper bound: graph shortest path refined by midpoint straightening
// until the geodesic test passes. The witness realizes the returned length.
GeodesicResult geodesic_distance(const DistanceGraph& graph, const SurfacePoint& a,
                                 const SurfacePoint& b, double rho = 0, double tol = 1e-3);
// Same, reusing a precomputed field from a.
GeodesicResult geodesic_distance(const DistanceField& field, const SurfacePoint& b, double rho = 0,
                                 double tol = 1e-3);

struct MetricSummary {
  double diameter_d = 0;
  double inj_estimate_rho = 0;
  double mesh_resolution_h = 0;  // max edge length
  int samples = 0;
  std::uint64_t seed = 0;
};

// Farthest-point sampled diameter estimate plus a conservative injectivity
// estimate from periodic-geodesic probes. Deterministic for a given seed.
MetricSummary metric_summary(const DistanceGraph& graph, int samples, std::uint64_t seed);

// Closed level polylines { f = r } of a per-vertex scalar field.
std::vector<DiscretePath> extract_level_loops(const TriMesh& mesh,
                                              const std::vector<double>& vertex_scalar, double r,
                                              double min_len = 0);

}  // namespace geodesy
