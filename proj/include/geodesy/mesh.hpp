#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geodesy/error.hpp"
#include "geodesy/vec3.hpp"

namespace geodesy {

using Index = std::int32_t;
constexpr Index kInvalidIndex = -1;

// Point on the surface: a face plus barycentric coordinates in that face.
// Components are >= 0 and sum to 1 (renormalized on construction).
struct SurfacePoint {
  Index face = kInvalidIndex;
  std::array<double, 3> bary{0, 0, 0};

  SurfacePoint() = default;
  SurfacePoint(Index f, double b0, double b1, double b2);
};

struct TopologyReport {
  int genus = 0;
  bool closed = false;
  bool oriented = false;
  Index components = 0;
};

// Closed oriented triangle mesh with halfedge connectivity and intrinsic edge
// lengths derived from the embedding. Immutable after construction; all
// queries are const and safe to share across threads.
class TriMesh {
 public:
  TriMesh(std::vector<Vec3> vertices, std::vector<std::array<Index, 3>> faces);

  Index vertex_count() const { return static_cast<Index>(positions_.size()); }
  Index face_count() const { return static_cast<Index>(faces_.size()); }
  Index edge_count() const { return static_cast<Index>(edge_halfedge_.size()); }
  Index halfedge_count() const { return static_cast<Index>(he_twin_.size()); }

  const Vec3& position(Index v) const { return positions_[v]; }
  const std::array<Index, 3>& face_vertices(Index f) const { return faces_[f]; }

  // Halfedge accessors. Halfedge h = 3*f + corner, pointing from
  // face_vertices(f)[corner] to face_vertices(f)[(corner+1)%3].
  Index he_twin(Index h) const { return he_twin_[h]; }
  Index he_next(Index h) const { return 3 * (h / 3) + (h % 3 + 1) % 3; }
  Index he_face(Index h) const { return h / 3; }
  Index he_origin(Index h) const { return faces_[h / 3][h % 3]; }
  Index he_dest(Index h) const { return faces_[h / 3][(h % 3 + 1) % 3]; }
  Index he_edge(Index h) const { return he_edge_[h]; }
  Index edge_halfedge(Index e) const { return edge_halfedge_[e]; }
  double edge_length(Index e) const { return edge_lengths_[e]; }
  double he_length(Index h) const { return edge_lengths_[he_edge_[h]]; }

  // One outgoing halfedge per vertex, plus full one-ring traversal.
  Index vertex_halfedge(Index v) const { return vertex_halfedge_[v]; }
  std::vector<Index> vertex_faces(Index v) const;
  std::vector<Index> vertex_outgoing(Index v) const;

  // Faces f and g share an edge; returns the halfedge in f whose twin is in
  // g, or kInvalidIndex.
  Index shared_halfedge(Index f, Index g) const;

  double face_area(Index f) const;
  double total_area() const;
  double mean_edge_length() const { return mean_edge_length_; }
  double max_edge_length() const { return max_edge_length_; }

  // Interior angle of face f at its corner c (from intrinsic edge lengths).
  double corner_angle(Index f, int corner) const;
  // Total cone angle around vertex v.
  double vertex_angle_sum(Index v) const;

  Vec3 embed(const SurfacePoint& p) const;
  SurfacePoint face_midpoint(Index f) const { return SurfacePoint(f, 1.0 / 3, 1.0 / 3, 1.0 / 3); }
  SurfacePoint vertex_point(Index v) const;

  // Re-expresses p with face f as carrier when p lies on f or on an edge or
  // vertex shared with f. Returns false if p is not on f.
  bool express_in_face(const SurfacePoint& p, Index f, SurfacePoint& out) const;
  // True if a and b lie in one common face; the carrier is written to f.
  bool common_face(const SurfacePoint& a, const SurfacePoint& b, Index& f) const;

  // Vertex index if p sits on a face corner (bary ~ 1), else kInvalidIndex.
  Index on_vertex(const SurfacePoint& p, double tol = 1e-9) const;
  // Halfedge of p.face whose opposite bary component vanishes, else invalid.
  Index on_edge_halfedge(const SurfacePoint& p, double tol = 1e-9) const;

  TopologyReport validate_topology() const;

 private:
  void build_connectivity();

  std::vector<Vec3> positions_;
  std::vector<std::array<Index, 3>> faces_;
  std::vector<Index> he_twin_;
  std::vector<Index> he_edge_;
  std::vector<Index> edge_halfedge_;
  std::vector<double> edge_lengths_;
  std::vector<Index> vertex_halfedge_;
  double mean_edge_length_ = 0;
  double max_edge_length_ = 0;
};

enum class MeshFormat { off, obj };

TriMesh load_mesh(std::istream& in, MeshFormat format);
TriMesh load_mesh_file(const std::string& path);
void save_obj(std::ostream& out, const TriMesh& mesh);

struct GeneratorSpec {
  enum class Shape { round_sphere, ellipsoid, dumbbell } shape = Shape::round_sphere;
  double a = 1, b = 1, c = 1;             // sphere radius in `a`; ellipsoid semi-axes
  double bulb_r = 1, neck_r = 0.25, neck_len = 1;  // dumbbell
  int subdivision = 3;
};

TriMesh generate_mesh(const GeneratorSpec& spec);
// Parses "round_sphere(1)", "ellipsoid(1,0.8,0.6)", "dumbbell(1,0.1,1)".
GeneratorSpec parse_generator(const std::string& text, int subdivision);

}  // namespace geodesy
