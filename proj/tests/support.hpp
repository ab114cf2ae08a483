#pragma once

#include <sstream>
#include <string>

#include "geodesy/distance.hpp"
#include "geodesy/mesh.hpp"
#include "geodesy/path.hpp"

namespace geodesy::testsupport {

inline TriMesh octahedron() {
  std::vector<Vec3> v = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  std::vector<std::array<Index, 3>> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                                         {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return TriMesh(v, f);
}

inline TriMesh icosphere(int sub, double r = 1.0) {
  GeneratorSpec spec;
  spec.shape = GeneratorSpec::Shape::round_sphere;
  spec.a = r;
  spec.subdivision = sub;
  return generate_mesh(spec);
}

inline TriMesh ellipsoid(double a, double b, double c, int sub) {
  GeneratorSpec spec;
  spec.shape = GeneratorSpec::Shape::ellipsoid;
  spec.a = a;
  spec.b = b;
  spec.c = c;
  spec.subdivision = sub;
  return generate_mesh(spec);
}

inline TriMesh dumbbell(double R, double neck_r, double neck_len, int sub) {
  GeneratorSpec spec;
  spec.shape = GeneratorSpec::Shape::dumbbell;
  spec.bulb_r = R;
  spec.neck_r = neck_r;
  spec.neck_len = neck_len;
  spec.subdivision = sub;
  return generate_mesh(spec);
}

// Torus grid mesh (genus 1), for topology rejection tests.
inline TriMesh torus_grid(int n = 12, int m = 8, double R = 2.0, double r = 0.6) {
  std::vector<Vec3> verts;
  std::vector<std::array<Index, 3>> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double u = 2 * 3.14159265358979323846 * i / n;
      double v = 2 * 3.14159265358979323846 * j / m;
      verts.push_back({(R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u),
                       r * std::sin(v)});
    }
  }
  auto id = [&](int i, int j) { return static_cast<Index>((i % n) * m + (j % m)); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  return TriMesh(verts, faces);
}

// Vertex nearest a target position.
inline Index nearest_vertex(const TriMesh& mesh, const Vec3& target) {
  Index best = 0;
  for (Index v = 1; v < mesh.vertex_count(); ++v)
    if (distance(mesh.position(v), target) < distance(mesh.position(best), target)) best = v;
  return best;
}

// Dense great-circle polyline on a radius-r sphere between two unit
// directions (independent construction for oracle checks).
inline std::vector<Vec3> great_circle_points(Vec3 a, Vec3 b, int n, double r = 1.0) {
  a = normalized(a);
  b = normalized(b);
  double ang = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
  std::vector<Vec3> pts;
  if (ang > 3.14159265) {
    // Antipodal: pick the half circle through an arbitrary orthogonal axis.
    Vec3 u = std::fabs(a.z) < 0.9 ? cross(a, Vec3{0, 0, 1}) : cross(a, Vec3{0, 1, 0});
    u = normalized(u);
    for (int i = 0; i <= n; ++i) {
      double t = 3.14159265358979323846 * i / n;
      pts.push_back((a * std::cos(t) + u * std::sin(t)) * r);
    }
    return pts;
  }
  for (int i = 0; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    double s = std::sin(ang);
    Vec3 p = s < 1e-12 ? a : a * (std::sin((1 - t) * ang) / s) + b * (std::sin(t * ang) / s);
    pts.push_back(normalized(p) * r);
  }
  return pts;
}

// Project a 3D point to a surface point by locating the nearest face; slow,
// test-only.
inline SurfacePoint project_to_mesh(const TriMesh& mesh, const Vec3& p) {
  double best = std::numeric_limits<double>::infinity();
  SurfacePoint bp;
  for (Index f = 0; f < mesh.face_count(); ++f) {
    const auto& fv = mesh.face_vertices(f);
    Vec3 a = mesh.position(fv[0]), b = mesh.position(fv[1]), c = mesh.position(fv[2]);
    Vec3 n = cross(b - a, c - a);
    double nn = norm2(n);
    if (nn < 1e-30) continue;
    Vec3 q = p - n * (dot(p - a, n) / nn);
    // Barycentric of q.
    double d00 = dot(b - a, b - a), d01 = dot(b - a, c - a), d11 = dot(c - a, c - a);
    double d20 = dot(q - a, b - a), d21 = dot(q - a, c - a);
    double den = d00 * d11 - d01 * d01;
    double w1 = (d11 * d20 - d01 * d21) / den;
    double w2 = (d00 * d21 - d01 * d20) / den;
    double w0 = 1 - w1 - w2;
    w0 = std::max(0.0, w0);
    w1 = std::max(0.0, w1);
    w2 = std::max(0.0, w2);
    double s = w0 + w1 + w2;
    SurfacePoint cand(f, w0 / s, w1 / s, w2 / s);
    double d = distance(mesh.embed(cand), p);
    if (d < best) {
      best = d;
      bp = cand;
    }
  }
  return bp;
}

inline DiscretePath path_from_3d(const TriMesh& mesh, const std::vector<Vec3>& pts, PathKind kind) {
  // Project samples, subdividing 3D segments whose projections land in
  // unrelated faces until every consecutive pair is joinable.
  std::vector<Vec3> work = pts;
  std::vector<SurfacePoint> sp;
  for (const Vec3& p : work) sp.push_back(project_to_mesh(mesh, p));
  auto joinable = [&](const SurfacePoint& a, const SurfacePoint& b) {
    Index f;
    if (mesh.common_face(a, b, f)) return true;
    if (mesh.shared_halfedge(a.face, b.face) != kInvalidIndex) return true;
    for (Index va : mesh.face_vertices(a.face))
      for (Index vb : mesh.face_vertices(b.face))
        if (va == vb) return true;
    return false;
  };
  for (int round = 0; round < 12; ++round) {
    bool ok = true;
    std::vector<Vec3> nw;
    std::vector<SurfacePoint> nsp;
    for (size_t i = 0; i < work.size(); ++i) {
      nw.push_back(work[i]);
      nsp.push_back(sp[i]);
      if (i + 1 < work.size() && !joinable(sp[i], sp[i + 1])) {
        ok = false;
        Vec3 mid = (work[i] + work[i + 1]) * 0.5;
        nw.push_back(mid);
        nsp.push_back(project_to_mesh(mesh, mid));
      }
    }
    work = std::move(nw);
    sp = std::move(nsp);
    if (ok) break;
  }
  return make_path(mesh, std::move(sp), kind);
}

// Closed section of the mesh by the plane through the origin with the given
// normal; within each face the polyline is exactly straight.
inline DiscretePath plane_section_loop(const TriMesh& mesh, const Vec3& normal) {
  std::vector<double> field(mesh.vertex_count());
  for (Index v = 0; v < mesh.vertex_count(); ++v) field[v] = dot(mesh.position(v), normal);
  auto loops = extract_level_loops(mesh, field, 0.0, 0.0);
  if (loops.empty()) throw std::runtime_error("plane section missed the mesh");
  size_t best = 0;
  for (size_t i = 1; i < loops.size(); ++i)
    if (loops[i].cached_length > loops[best].cached_length) best = i;
  return loops[best];
}

}  // namespace geodesy::testsupport
