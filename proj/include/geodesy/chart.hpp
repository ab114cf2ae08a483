#pragma once

#include <optional>
#include <vector>

#include "geodesy/mesh.hpp"
#include "geodesy/vec3.hpp"

namespace geodesy {

// 2D layout of a face from its intrinsic edge lengths, counterclockwise:
// corner 0 at the origin, corner 1 on the positive x-axis.
struct FaceChart {
  std::array<Vec2, 3> corner;
};

FaceChart face_chart(const TriMesh& mesh, Index f);
Vec2 chart_point(const FaceChart& ch, const std::array<double, 3>& bary);
std::array<double, 3> chart_bary(const FaceChart& ch, const Vec2& p);

// Lays the face across halfedge h (in the already-laid face) into the same
// plane. `from` holds the 2D corners of he_face(h); returns corners of the
// twin face, glued along the shared edge, on the far side.
std::array<Vec2, 3> unfold_across(const TriMesh& mesh, const FaceChart& from, Index h);

// Straightest connection between two nearby points: both in one face, or in
// edge-adjacent faces (crossing point inserted on the shared edge, or a bend
// at the nearer shared vertex when the straight crossing leaves the edge).
struct LocalJoin {
  std::vector<SurfacePoint> points;  // from a to b inclusive, each segment in one face
  double length = 0;
};
LocalJoin join_in_two_faces(const TriMesh& mesh, const SurfacePoint& a, const SurfacePoint& b);

// Shortest path within the sleeve of faces crossed by `guide`, same
// endpoints, never longer than the guide polyline. The guide must be
// traceable: consecutive points share a face. Output points are canonical
// (every segment lies in a single face).
LocalJoin join_through(const TriMesh& mesh, const std::vector<SurfacePoint>& guide);

// Shortest connection from prev to next through the face fan around vertex v,
// walking the chosen side. Used to slide a path off a vertex it wraps.
LocalJoin join_across_vertex(const TriMesh& mesh, const SurfacePoint& prev, Index v,
                             const SurfacePoint& next, bool go_ccw);

// Angle at an interior path point between the incoming and outgoing segment,
// measured by unfolding the face fan; `left` is on the side lying left of the
// incoming direction. total = left + right (2*pi off vertices).
struct CornerAngles {
  double left = 0;
  double right = 0;
  bool at_vertex = false;
  Index vertex = kInvalidIndex;
};
CornerAngles corner_angles(const TriMesh& mesh, const SurfacePoint& prev, const SurfacePoint& at,
                           const SurfacePoint& next);

// Chord between two points known to share a face.
double in_face_distance(const TriMesh& mesh, const SurfacePoint& a, const SurfacePoint& b);

// Angular coordinates of the rays from `at` toward each target, in one
// consistent frame around `at` (unfolded as needed). total_angle receives the
// full angle around `at` (2*pi off mesh vertices, the cone angle at one).
// Every target must lie in a face containing `at`.
std::vector<double> ray_angles(const TriMesh& mesh, const SurfacePoint& at,
                               const std::vector<SurfacePoint>& targets, double& total_angle);

}  // namespace geodesy
