#include "geodesy/path.hpp"

#include <algorithm>
#include <cmath>

namespace geodesy {

namespace {

double seg_len(const TriMesh& mesh, const SurfacePoint& a, const SurfacePoint& b) {
  return distance(mesh.embed(a), mesh.embed(b));
}

}  // namespace

double path_length(const TriMesh& mesh, const DiscretePath& path) {
  double len = 0;
  for (size_t i = 0; i + 1 < path.points.size(); ++i)
    len += seg_len(mesh, path.points[i], path.points[i + 1]);
  return len;
}

DiscretePath make_path(const TriMesh& mesh, std::vector<SurfacePoint> points, PathKind kind) {
  if (points.empty()) fail(ErrorKind::invalid_param, "empty path");
  DiscretePath out;
  out.kind = kind;
  if (kind != PathKind::segment) {
    // Close the loop explicitly.
    if (seg_len(mesh, points.front(), points.back()) > 1e-12) points.push_back(points.front());
    else points.back() = points.front();
  }
  out.points.push_back(points[0]);
  for (size_t i = 1; i < points.size(); ++i) {
    const SurfacePoint& q = points[i];
    const SurfacePoint& p = out.points.back();
    Index cf;
    if (seg_len(mesh, p, q) < 1e-14) {
      if (i + 1 == points.size() && out.points.size() > 1) out.points.back() = q;
      continue;
    }
    if (mesh.common_face(p, q, cf)) {
      out.points.push_back(q);
    } else if (mesh.shared_halfedge(p.face, q.face) != kInvalidIndex) {
      LocalJoin join = join_in_two_faces(mesh, p, q);
      for (size_t k = 1; k < join.points.size(); ++k) out.points.push_back(join.points[k]);
    } else {
      // Faces sharing only a vertex: route through it.
      Index shared_v = kInvalidIndex;
      for (Index va : mesh.face_vertices(p.face))
        for (Index vb : mesh.face_vertices(q.face))
          if (va == vb) shared_v = va;
      if (shared_v == kInvalidIndex)
        fail(ErrorKind::invalid_param, "path points are not in the same or adjacent faces");
      SurfacePoint vp;
      mesh.express_in_face(mesh.vertex_point(shared_v), p.face, vp);
      out.points.push_back(vp);
      out.points.push_back(q);
    }
  }
  if (kind != PathKind::segment && out.points.size() < 2) out.points.push_back(out.points.front());
  out.cached_length = path_length(mesh, out);
  return out;
}

DiscretePath constant_path(const TriMesh& mesh, const SurfacePoint& p, PathKind kind) {
  DiscretePath out;
  out.kind = kind;
  out.points = {p, p};
  out.cached_length = 0;
  (void)mesh;
  return out;
}

DiscretePath concat(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b) {
  if (a.points.empty() || b.points.empty()) fail(ErrorKind::invalid_param, "concat of empty path");
  double gap = seg_len(mesh, a.points.back(), b.points.front());
  if (gap > 1e-9 * std::max(1.0, a.cached_length + b.cached_length))
    fail(ErrorKind::endpoint_mismatch, "paths do not share an endpoint");
  std::vector<SurfacePoint> pts = a.points;
  pts.insert(pts.end(), b.points.begin() + 1, b.points.end());
  bool closed = seg_len(mesh, pts.front(), pts.back()) < 1e-9;
  return make_path(mesh, std::move(pts), closed ? PathKind::based_loop : PathKind::segment);
}

DiscretePath reverse_path(const TriMesh& mesh, const DiscretePath& a) {
  DiscretePath out = a;
  std::reverse(out.points.begin(), out.points.end());
  out.cached_length = path_length(mesh, out);
  return out;
}

SurfacePoint point_at_arclength(const TriMesh& mesh, const DiscretePath& path, double s) {
  if (path.points.size() == 1) return path.points.front();
  if (s <= 0) return path.points.front();
  double acc = 0;
  for (size_t i = 0; i + 1 < path.points.size(); ++i) {
    double l = seg_len(mesh, path.points[i], path.points[i + 1]);
    if (acc + l >= s && l > 0) {
      double t = (s - acc) / l;
      const SurfacePoint& a = path.points[i];
      const SurfacePoint& b = path.points[i + 1];
      Index f;
      if (!mesh.common_face(a, b, f)) fail(ErrorKind::invalid_param, "non-canonical path segment");
      SurfacePoint fa, fb;
      mesh.express_in_face(a, f, fa);
      mesh.express_in_face(b, f, fb);
      SurfacePoint r;
      r.face = f;
      for (int c = 0; c < 3; ++c) r.bary[c] = (1 - t) * fa.bary[c] + t * fb.bary[c];
      return r;
    }
    acc += l;
  }
  return path.points.back();
}

DiscretePath resample(const TriMesh& mesh, const DiscretePath& path, double spacing) {
  if (spacing <= 0) fail(ErrorKind::invalid_param, "spacing must be positive");
  DiscretePath out;
  out.kind = path.kind;
  out.points.push_back(path.points.front());
  for (size_t i = 0; i + 1 < path.points.size(); ++i) {
    const SurfacePoint& a = path.points[i];
    const SurfacePoint& b = path.points[i + 1];
    double l = seg_len(mesh, a, b);
    if (l > spacing) {
      Index f;
      if (!mesh.common_face(a, b, f)) fail(ErrorKind::invalid_param, "non-canonical path segment");
      SurfacePoint fa, fb;
      mesh.express_in_face(a, f, fa);
      mesh.express_in_face(b, f, fb);
      int cuts = static_cast<int>(std::ceil(l / spacing));
      for (int k = 1; k < cuts; ++k) {
        double t = static_cast<double>(k) / cuts;
        SurfacePoint r;
        r.face = f;
        for (int c = 0; c < 3; ++c) r.bary[c] = (1 - t) * fa.bary[c] + t * fb.bary[c];
        out.points.push_back(r);
      }
    }
    out.points.push_back(b);
  }
  out.cached_length = path_length(mesh, out);
  return out;
}

// ---------------------------------------------------------------------------
// Frechet distance

namespace {

double frechet_dp(const std::vector<Vec3>& pa, const std::vector<Vec3>& pb) {
  const size_t n = pa.size(), m = pb.size();
  std::vector<double> prev(m), cur(m);
  for (size_t j = 0; j < m; ++j) {
    double d = distance(pa[0], pb[j]);
    prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
  }
  for (size_t i = 1; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      double d = distance(pa[i], pb[j]);
      double best = prev[j];
      if (j > 0) best = std::min(best, std::min(prev[j - 1], cur[j - 1]));
      cur[j] = std::max(best, d);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

}  // namespace

// Intrinsic-metric variant lives in distance.cpp (needs the distance graph).
double frechet_distance_chord(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b) {
  std::vector<Vec3> pa, pb;
  pa.reserve(a.points.size());
  pb.reserve(b.points.size());
  for (const auto& p : a.points) pa.push_back(mesh.embed(p));
  for (const auto& p : b.points) pb.push_back(mesh.embed(p));
  return frechet_dp(pa, pb);
}

bool paths_distinct(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b,
                    double threshold) {
  // Chord distances lower-bound intrinsic ones, so exceeding the threshold in
  // chords settles distinctness; at threshold scale (mesh resolution) the two
  // metrics agree to second order.
  return frechet_distance_chord(mesh, a, b) > threshold;
}

// ---------------------------------------------------------------------------
// Simplicity

SimplicityReport is_simple(const TriMesh& mesh, const DiscretePath& loop) {
  SimplicityReport rep;
  const auto& pts = loop.points;
  const size_t nseg = pts.size() >= 1 ? pts.size() - 1 : 0;
  if (nseg < 2) return rep;
  bool closed = loop.kind != PathKind::segment;

  struct Seg {
    size_t idx;
    Index face;
    Vec2 a, b;
    double s0;  // arclength at segment start
  };
  std::vector<std::vector<Seg>> per_face(mesh.face_count());
  double acc = 0;
  std::vector<double> lens(nseg);
  for (size_t i = 0; i < nseg; ++i) {
    Index f;
    if (!mesh.common_face(pts[i], pts[i + 1], f)) fail(ErrorKind::invalid_param, "non-canonical path");
    SurfacePoint fa, fb;
    mesh.express_in_face(pts[i], f, fa);
    mesh.express_in_face(pts[i + 1], f, fb);
    FaceChart ch = face_chart(mesh, f);
    per_face[f].push_back({i, f, chart_point(ch, fa.bary), chart_point(ch, fb.bary), acc});
    lens[i] = seg_len(mesh, pts[i], pts[i + 1]);
    acc += lens[i];
  }
  const double tol = 1e-10 * std::max(1.0, loop.cached_length);
  double best_param = -1;
  for (Index f = 0; f < mesh.face_count(); ++f) {
    const auto& segs = per_face[f];
    for (size_t u = 0; u < segs.size(); ++u) {
      for (size_t v = u + 1; v < segs.size(); ++v) {
        size_t i = segs[u].idx, j = segs[v].idx;
        size_t gap = j - i;
        if (gap <= 1) continue;
        if (closed && i == 0 && j == nseg - 1) continue;
        const Vec2 &A = segs[u].a, &B = segs[u].b, &C = segs[v].a, &D = segs[v].b;
        double d1 = cross2(B - A, C - A);
        double d2 = cross2(B - A, D - A);
        double d3 = cross2(D - C, A - C);
        double d4 = cross2(D - C, B - C);
        bool proper = ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
                      ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol));
        bool touching = false;
        if (!proper) {
          // Endpoint contact without a transversal crossing.
          for (const Vec2& p : {C, D})
            if (distance(p, A) < 1e-9 || distance(p, B) < 1e-9) touching = true;
        }
        if (proper) {
          double den = cross2(B - A, D - C);
          double t = std::fabs(den) > 0 ? cross2(C - A, D - C) / den : 0.5;
          double param = segs[u].s0 + std::clamp(t, 0.0, 1.0) * lens[i];
          if (best_param < 0 || param < best_param) {
            best_param = param;
            rep.where = pts[i];
          }
          rep.simple = false;
        } else if (touching) {
          rep.touches = true;
        }
      }
    }
  }
  // Coincident path vertices: decide touch vs crossing by whether the two
  // strands interleave around the shared point.
  const size_t nv = closed ? pts.size() - 1 : pts.size();
  std::vector<double> vertex_s(nv, 0);
  {
    double s = 0;
    for (size_t i = 0; i + 1 < nv; ++i) {
      s += lens[i];
      vertex_s[i + 1] = s;
    }
  }
  auto neighbor = [&](size_t i, int step) -> const SurfacePoint* {
    // Neighbor of path vertex i (wrapping for loops); null at open ends.
    long j = static_cast<long>(i) + step;
    if (closed) {
      long n = static_cast<long>(nv);
      j = (j % n + n) % n;
      return &pts[static_cast<size_t>(j)];
    }
    if (j < 0 || j >= static_cast<long>(pts.size())) return nullptr;
    return &pts[static_cast<size_t>(j)];
  };
  const double pos_tol = 1e-9 * std::max(1.0, loop.cached_length);
  for (size_t i = 0; i < nv; ++i) {
    for (size_t j = i + 2; j < nv; ++j) {
      if (closed && i == 0 && j == nv - 1) continue;
      if (distance(mesh.embed(pts[i]), mesh.embed(pts[j])) > pos_tol) continue;
      const SurfacePoint* na = neighbor(i, -1);
      const SurfacePoint* nb = neighbor(i, +1);
      const SurfacePoint* nc = neighbor(j, -1);
      const SurfacePoint* nd = neighbor(j, +1);
      if (!na || !nb || !nc || !nd) {
        rep.touches = true;
        continue;
      }
      std::vector<SurfacePoint> targets;
      std::vector<const SurfacePoint*> cand{na, nb, nc, nd};
      bool degenerate = false;
      for (auto* q : cand) {
        if (distance(mesh.embed(*q), mesh.embed(pts[i])) < pos_tol) degenerate = true;
        targets.push_back(*q);
      }
      if (degenerate) {
        rep.touches = true;
        continue;
      }
      double total = 0;
      std::vector<double> ang;
      try {
        ang = ray_angles(mesh, pts[i], targets, total);
      } catch (const Error&) {
        rep.touches = true;
        continue;
      }
      auto ccw_in = [&](double x, double from, double to) {
        double w = to - from;
        while (w < 0) w += total;
        double u = x - from;
        while (u < 0) u += total;
        return u > 1e-9 && u < w - 1e-9;
      };
      bool c_in = ccw_in(ang[2], ang[0], ang[1]);
      bool d_in = ccw_in(ang[3], ang[0], ang[1]);
      if (c_in != d_in) {
        rep.simple = false;
        double param = vertex_s[i];
        if (best_param < 0 || param < best_param) {
          best_param = param;
          rep.where = pts[i];
        }
      } else {
        rep.touches = true;
      }
    }
  }
  rep.first_crossing_param = best_param;
  return rep;
}

double max_frame_gap(const TriMesh& mesh, const HomotopyTrace& trace) {
  double worst = 0;
  for (size_t i = 0; i + 1 < trace.frames.size(); ++i)
    worst = std::max(worst, frechet_distance_chord(mesh, trace.frames[i], trace.frames[i + 1]));
  return worst;
}

}  // namespace geodesy
