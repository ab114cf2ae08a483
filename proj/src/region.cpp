#include "geodesy/region.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "geodesy/chart.hpp"
#include "geodesy/parallel.hpp"
#include "geodesy/shorten.hpp"

namespace geodesy {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<char> crossed_faces(const TriMesh& mesh, const std::vector<DiscretePath>& loops) {
  std::vector<char> crossed(mesh.face_count(), 0);
  Index f;
  for (const auto& loop : loops) {
    for (size_t i = 0; i + 1 < loop.points.size(); ++i) {
      if (!mesh.common_face(loop.points[i], loop.points[i + 1], f))
        fail(ErrorKind::invalid_param, "boundary loop is not canonical");
      crossed[f] = 1;
      // Points on edges touch the twin face as well.
      for (const SurfacePoint* q : {&loop.points[i], &loop.points[i + 1]}) {
        SurfacePoint qq;
        if (mesh.express_in_face(*q, f, qq)) {
          Index ehf = mesh.on_edge_halfedge(qq);
          if (ehf != kInvalidIndex) crossed[mesh.he_face(mesh.he_twin(ehf))] = 1;
        }
      }
    }
  }
  return crossed;
}

void flood(const TriMesh& mesh, const std::vector<char>& blocked, Index seed_face,
           std::vector<char>& out) {
  std::vector<Index> stack{seed_face};
  out[seed_face] = 1;
  while (!stack.empty()) {
    Index f = stack.back();
    stack.pop_back();
    for (int c = 0; c < 3; ++c) {
      Index g = mesh.he_face(mesh.he_twin(3 * f + c));
      if (!out[g] && !blocked[g]) {
        out[g] = 1;
        stack.push_back(g);
      }
    }
  }
}

double region_area(const TriMesh& mesh, const Region& r) {
  double a = 0;
  for (Index f = 0; f < mesh.face_count(); ++f) {
    if (r.full[f]) a += mesh.face_area(f);
    else if (r.crossed[f]) a += 0.5 * mesh.face_area(f);
  }
  return a;
}

// Euler characteristic of the closed region spanned by its full faces.
bool full_faces_form_disk(const TriMesh& mesh, const std::vector<char>& full) {
  std::vector<Index> faces;
  for (Index f = 0; f < mesh.face_count(); ++f)
    if (full[f]) faces.push_back(f);
  if (faces.empty()) return true;  // thin region: decided by the boundary loop count
  std::vector<char> seen(mesh.face_count(), 0);
  std::vector<Index> stack{faces[0]};
  seen[faces[0]] = 1;
  Index reached = 1;
  while (!stack.empty()) {
    Index f = stack.back();
    stack.pop_back();
    for (int c = 0; c < 3; ++c) {
      Index g = mesh.he_face(mesh.he_twin(3 * f + c));
      if (full[g] && !seen[g]) {
        seen[g] = 1;
        ++reached;
        stack.push_back(g);
      }
    }
  }
  if (reached != static_cast<Index>(faces.size())) return false;
  std::vector<char> vmark(mesh.vertex_count(), 0);
  std::vector<char> emark(mesh.edge_count(), 0);
  long V = 0, E = 0;
  for (Index f : faces) {
    for (int c = 0; c < 3; ++c) {
      Index v = mesh.face_vertices(f)[c];
      if (!vmark[v]) {
        vmark[v] = 1;
        ++V;
      }
      Index e = mesh.he_edge(3 * f + c);
      if (!emark[e]) {
        emark[e] = 1;
        ++E;
      }
    }
  }
  return V - E + static_cast<long>(faces.size()) == 1;
}

}  // namespace

Region region_all(const TriMesh& mesh) {
  Region r;
  r.full.assign(mesh.face_count(), 1);
  r.crossed.assign(mesh.face_count(), 0);
  r.is_disk = false;
  r.area = mesh.total_area();
  return r;
}

Region region_from_loop(const TriMesh& mesh, const DiscretePath& loop, const SurfacePoint& seed) {
  if (loop.points.size() < 3) fail(ErrorKind::invalid_param, "boundary loop too short");
  Region r;
  r.crossed = crossed_faces(mesh, {loop});
  r.full.assign(mesh.face_count(), 0);
  if (!r.crossed[seed.face]) {
    flood(mesh, r.crossed, seed.face, r.full);
  }
  // Orient the loop so the region lies on its left: take a crossed face with
  // a full neighbor and test the side of the shared edge midpoint.
  DiscretePath oriented = loop;
  bool decided = false;
  Index f;
  for (size_t i = 0; i + 1 < loop.points.size() && !decided; ++i) {
    if (!mesh.common_face(loop.points[i], loop.points[i + 1], f)) continue;
    FaceChart ch = face_chart(mesh, f);
    SurfacePoint a, b;
    mesh.express_in_face(loop.points[i], f, a);
    mesh.express_in_face(loop.points[i + 1], f, b);
    Vec2 a2 = chart_point(ch, a.bary);
    Vec2 b2 = chart_point(ch, b.bary);
    if (distance(a2, b2) < 1e-12) continue;
    for (int c = 0; c < 3 && !decided; ++c) {
      Index g = mesh.he_face(mesh.he_twin(3 * f + c));
      if (!r.full[g]) continue;
      Vec2 m2 = (ch.corner[c] + ch.corner[(c + 1) % 3]) * 0.5;
      double side = cross2(b2 - a2, m2 - a2);
      if (std::fabs(side) < 1e-14) continue;
      if (side < 0) oriented = reverse_path(mesh, loop);
      decided = true;
    }
  }
  r.boundary.push_back(oriented);
  r.area = region_area(mesh, r);
  r.is_disk = full_faces_form_disk(mesh, r.full) && r.boundary.size() == 1;
  return r;
}

Region region_complement(const TriMesh& mesh, const Region& region) {
  Region r;
  r.crossed = region.crossed;
  r.full.assign(mesh.face_count(), 0);
  for (Index f = 0; f < mesh.face_count(); ++f) r.full[f] = !region.full[f] && !region.crossed[f];
  r.boundary.reserve(region.boundary.size());
  for (const auto& loop : region.boundary) r.boundary.push_back(reverse_path(mesh, loop));
  r.area = region_area(mesh, r);
  r.is_disk = full_faces_form_disk(mesh, r.full) && r.boundary.size() == 1;
  return r;
}

bool region_contains(const TriMesh& mesh, const Region& region, const SurfacePoint& p) {
  if (region.boundary.empty()) return true;
  if (region.full[p.face]) return true;
  if (!region.crossed[p.face]) {
    Index v = mesh.on_vertex(p);
    Index eh = mesh.on_edge_halfedge(p);
    if (v != kInvalidIndex) {
      bool any_crossed = false;
      for (Index f : mesh.vertex_faces(v)) {
        if (region.full[f]) return true;
        any_crossed |= static_cast<bool>(region.crossed[f]);
      }
      if (!any_crossed) return false;
    } else if (eh != kInvalidIndex) {
      Index g = mesh.he_face(mesh.he_twin(eh));
      if (region.full[g]) return true;
      if (!region.crossed[g]) return false;
    } else {
      return false;
    }
  }
  // Fringe face: side of the nearest boundary segment (region on the left).
  Vec3 pp = mesh.embed(p);
  double best = std::numeric_limits<double>::infinity();
  bool inside = false;
  for (const auto& loop : region.boundary) {
    for (size_t i = 0; i + 1 < loop.points.size(); ++i) {
      Vec3 a = mesh.embed(loop.points[i]);
      Vec3 b = mesh.embed(loop.points[i + 1]);
      Vec3 ab = b - a;
      double t = norm2(ab) > 0 ? std::clamp(dot(pp - a, ab) / norm2(ab), 0.0, 1.0) : 0;
      Vec3 q = a + ab * t;
      double dd = distance(pp, q);
      if (dd < best) {
        best = dd;
        Index f;
        if (!mesh.common_face(loop.points[i], loop.points[i + 1], f)) continue;
        const auto& fv = mesh.face_vertices(f);
        Vec3 n = cross(mesh.position(fv[1]) - mesh.position(fv[0]),
                       mesh.position(fv[2]) - mesh.position(fv[0]));
        inside = dot(cross(ab, pp - a), n) >= 0;
      }
    }
  }
  return inside;
}

double region_excursion(const TriMesh& mesh, const Region& region, const SurfacePoint& p) {
  if (region_contains(mesh, region, p)) return 0;
  Vec3 pp = mesh.embed(p);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& loop : region.boundary) {
    for (size_t i = 0; i + 1 < loop.points.size(); ++i) {
      Vec3 a = mesh.embed(loop.points[i]);
      Vec3 b = mesh.embed(loop.points[i + 1]);
      Vec3 ab = b - a;
      double t = norm2(ab) > 0 ? std::clamp(dot(pp - a, ab) / norm2(ab), 0.0, 1.0) : 0;
      best = std::min(best, distance(pp, a + ab * t));
    }
  }
  return best;
}

bool regions_disjoint(const TriMesh& mesh, const Region& a, const Region& b) {
  for (Index f = 0; f < mesh.face_count(); ++f) {
    if (a.full[f] && (b.full[f] || b.crossed[f])) return false;
    if (b.full[f] && a.crossed[f]) return false;
  }
  // Fringe-fringe overlaps: sample boundary points of a against b.
  for (const auto& loop : a.boundary)
    for (size_t i = 0; i < loop.points.size(); i += 3)
      if (region_contains(mesh, b, loop.points[i])) return false;
  return true;
}

RegionClassification classify_region(const TriMesh& mesh, const Region& region, double tol) {
  RegionClassification rc;
  rc.min_interior_angle = std::numeric_limits<double>::infinity();
  rc.max_interior_angle = 0;
  int consecutive_corners = 0;
  for (const auto& loop : region.boundary) {
    const auto& pts = loop.points;
    const size_t n = pts.size() >= 2 ? pts.size() - 1 : 0;  // closed: last == first
    for (size_t i = 0; i < n; ++i) {
      const SurfacePoint& prev = pts[(i + n - 1) % n];
      const SurfacePoint& at = pts[i];
      const SurfacePoint& next = pts[i + 1];
      if (distance(mesh.embed(prev), mesh.embed(at)) < 1e-13 ||
          distance(mesh.embed(next), mesh.embed(at)) < 1e-13)
        continue;
      CornerAngles ca = corner_angles(mesh, prev, at, next);
      double interior = ca.left;  // region on the left of the loop
      rc.min_interior_angle = std::min(rc.min_interior_angle, interior);
      rc.max_interior_angle = std::max(rc.max_interior_angle, interior);
      bool corner = std::fabs(interior - kPi) > tol;
      if (corner) {
        rc.vertices.push_back({at, interior});
        if (++consecutive_corners > 3)
          fail(ErrorKind::non_geodesic_boundary, "boundary arc fails the geodesic test");
      } else {
        consecutive_corners = 0;
      }
    }
    consecutive_corners = 0;
  }
  if (region.boundary.empty()) {
    rc.min_interior_angle = rc.max_interior_angle = kPi;
  }
  rc.convex_flag = rc.max_interior_angle <= kPi + tol;
  rc.concave_flag = rc.min_interior_angle >= kPi - tol;
  if (rc.convex_flag)
    rc.verdict = RegionClass::convex;
  else if (rc.concave_flag)
    rc.verdict = RegionClass::concave;
  else
    rc.verdict = RegionClass::neither;
  return rc;
}

namespace {

// Length change per unit inward offset of the boundary; positive when the
// boundary is a strict local minimum from inside (a neck), negative at an
// equator-like maximum.
double smooth_stability_margin(const TriMesh& mesh, const Region& region, double delta) {
  double l0 = 0, l1 = 0;
  for (const auto& loop : region.boundary) {
    std::vector<Vec3> off;
    for (size_t i = 0; i + 1 < loop.points.size(); ++i) {
      Vec3 a = mesh.embed(loop.points[i]);
      Vec3 b = mesh.embed(loop.points[i + 1]);
      l0 += distance(a, b);
      Index f;
      if (!mesh.common_face(loop.points[i], loop.points[i + 1], f)) continue;
      const auto& fv = mesh.face_vertices(f);
      Vec3 n = normalized(cross(mesh.position(fv[1]) - mesh.position(fv[0]),
                                mesh.position(fv[2]) - mesh.position(fv[0])));
      Vec3 t = normalized(b - a);
      Vec3 inward = cross(n, t);  // left of travel = region side
      off.push_back((a + b) * 0.5 + inward * delta);
    }
    for (size_t i = 0; i < off.size(); ++i) l1 += distance(off[i], off[(i + 1) % off.size()]);
  }
  if (l0 <= 0) return 0;
  return (l1 - l0) / delta;
}

}  // namespace

std::optional<BottleneckCertificate> is_bottleneck_disk(const TriMesh& mesh, const Region& region,
                                                        const MetricSummary& metric, int arc_limit,
                                                        double tol) {
  if (!region.is_disk || region.boundary.empty()) return std::nullopt;
  RegionClassification rc = classify_region(mesh, region, tol);
  if (!rc.concave_flag) return std::nullopt;

  double blen = 0;
  for (const auto& loop : region.boundary) blen += loop.cached_length;
  if (blen > 2 * metric.diameter_d * 1.01) return std::nullopt;

  int arcs = static_cast<int>(rc.vertices.size());
  if (arcs == 0) arcs = 1;  // a single periodic geodesic
  if (arcs > arc_limit) return std::nullopt;

  double margin;
  if (rc.vertices.empty()) {
    margin = smooth_stability_margin(mesh, region, 0.75 * metric.mesh_resolution_h);
  } else {
    margin = rc.min_interior_angle - kPi;
  }
  if (margin <= tol) return std::nullopt;

  BottleneckCertificate cert;
  cert.region = region;
  cert.boundary_length = blen;
  cert.geodesic_arc_count = arcs;
  cert.concavity_margin = margin;
  return cert;
}

std::vector<SurfacePoint> sample_region(const TriMesh& mesh, const Region& region, int count,
                                        std::uint64_t seed) {
  std::vector<Index> faces;
  std::vector<double> cum;
  double acc = 0;
  for (Index f = 0; f < mesh.face_count(); ++f) {
    if (region.full[f]) {
      faces.push_back(f);
      acc += mesh.face_area(f);
      cum.push_back(acc);
    }
  }
  std::vector<SurfacePoint> out;
  if (faces.empty()) {
    // Thin region: fall back to boundary points.
    for (const auto& loop : region.boundary)
      for (size_t i = 0; i + 1 < loop.points.size() && out.size() < static_cast<size_t>(count);
           i += 2)
        out.push_back(loop.points[i]);
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < count; ++k) {
    double pick = u(rng) * acc;
    size_t idx = std::lower_bound(cum.begin(), cum.end(), pick) - cum.begin();
    Index f = faces[std::min(idx, faces.size() - 1)];
    double r1 = std::sqrt(u(rng)), r2 = u(rng);
    out.emplace_back(f, 1 - r1, r1 * (1 - r2), r1 * r2);
  }
  return out;
}

RadialConvexityReport is_radially_convex(const DistanceGraph& graph, const Region& region,
                                         const SurfacePoint& x, int samples, std::uint64_t seed) {
  const TriMesh& mesh = graph.mesh();
  RadialConvexityReport rep;
  std::vector<SurfacePoint> pts = sample_region(mesh, region, samples, seed);
  rep.samples_checked = static_cast<int>(pts.size());
  DistanceField field = compute_distance_field(graph, x);
  const double allow = mesh.max_edge_length();
  std::vector<double> worst(pts.size(), 0);
  par::for_each_index(static_cast<std::int64_t>(pts.size()), [&](std::int64_t i) {
    GeodesicResult gr = geodesic_distance(field, pts[i]);
    double w = 0;
    for (const auto& q : gr.path.points) w = std::max(w, region_excursion(mesh, region, q));
    worst[i] = w;
  });
  for (size_t i = 0; i < pts.size(); ++i) {
    if (worst[i] <= allow) ++rep.samples_passed;
    if (worst[i] > rep.worst_violation) {
      rep.worst_violation = worst[i];
      rep.worst_point = pts[i];
    }
  }
  rep.pass = rep.samples_passed == rep.samples_checked;
  return rep;
}

}  // namespace geodesy
