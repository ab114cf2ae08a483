#include "geodesy/shorten.hpp"

#include <algorithm>
#include <cmath>

#include "geodesy/parallel.hpp"

namespace geodesy {

namespace {
constexpr double kPi = 3.14159265358979323846;

double defect_at(const TriMesh& mesh, const SurfacePoint& prev, const SurfacePoint& at,
                 const SurfacePoint& next) {
  if (distance(mesh.embed(prev), mesh.embed(at)) < 1e-13 ||
      distance(mesh.embed(next), mesh.embed(at)) < 1e-13)
    return 0;  // degenerate corner contributes nothing
  CornerAngles ca = corner_angles(mesh, prev, at, next);
  if (ca.at_vertex) {
    double total = ca.left + ca.right;
    if (total < 2 * kPi - 1e-9) return std::fabs(ca.left - ca.right) / 2;  // straightest
    return std::max(0.0, kPi - std::min(ca.left, ca.right));               // locally shortest
  }
  return std::fabs(kPi - ca.left);
}

}  // namespace

GeodesicTest is_geodesic(const TriMesh& mesh, const DiscretePath& path, double tol) {
  GeodesicTest t;
  const auto& pts = path.points;
  if (pts.size() < 3) {
    t.pass = true;
    return t;
  }
  for (size_t i = 1; i + 1 < pts.size(); ++i)
    t.max_defect = std::max(t.max_defect, defect_at(mesh, pts[i - 1], pts[i], pts[i + 1]));
  if (path.kind == PathKind::free_loop && pts.size() > 3)
    t.max_defect = std::max(t.max_defect, defect_at(mesh, pts[pts.size() - 2], pts[0], pts[1]));
  t.pass = t.max_defect <= tol;
  return t;
}

namespace {

// Subpath of `path` between arclengths s0 < s1, endpoints interpolated.
std::vector<SurfacePoint> subpath_points(const TriMesh& mesh, const DiscretePath& path, double s0,
                                         double s1) {
  std::vector<SurfacePoint> out;
  out.push_back(point_at_arclength(mesh, path, s0));
  double acc = 0;
  for (size_t i = 0; i + 1 < path.points.size(); ++i) {
    double l = distance(mesh.embed(path.points[i]), mesh.embed(path.points[i + 1]));
    double node = acc + l;
    if (node > s0 + 1e-13 && node < s1 - 1e-13) out.push_back(path.points[i + 1]);
    acc = node;
    if (acc >= s1) break;
  }
  out.push_back(point_at_arclength(mesh, path, s1));
  return out;
}

}  // namespace

namespace {

// A path that wraps a mesh vertex with a side angle below pi is not locally
// shortest; the funnel cannot fix it because the shortcut leaves the sleeve.
// Reroute such bends through the narrow side of the vertex fan. Strictly
// length-nonincreasing.
DiscretePath relax_vertex_bends(const TriMesh& mesh, const DiscretePath& path) {
  const double kPiLoc = 3.14159265358979323846;
  const auto& pts = path.points;
  if (pts.size() < 3) return path;
  std::vector<SurfacePoint> out;
  out.push_back(pts[0]);
  size_t i = 1;
  bool changed = false;
  while (i + 1 < pts.size()) {
    const SurfacePoint& at = pts[i];
    Index v = mesh.on_vertex(at);
    bool relaxed = false;
    if (v != kInvalidIndex) {
      const SurfacePoint& prev = out.back();
      const SurfacePoint& next = pts[i + 1];
      double lp = distance(mesh.embed(prev), mesh.embed(at));
      double ln = distance(mesh.embed(at), mesh.embed(next));
      if (lp > 1e-13 && ln > 1e-13) {
        CornerAngles ca = corner_angles(mesh, prev, at, next);
        double side = std::min(ca.left, ca.right);
        if (side < kPiLoc - 1e-9) {
          // Shortcut through the narrow wedge: left wedge lies clockwise of
          // the prev-ray in the CCW fan order.
          LocalJoin j = join_across_vertex(mesh, prev, v, next, ca.right < ca.left);
          if (j.length < lp + ln - 1e-15) {
            for (size_t k = 1; k < j.points.size(); ++k) out.push_back(j.points[k]);
            relaxed = true;
            changed = true;
          }
        }
      }
    }
    if (relaxed) {
      i += 2;  // the join already ends at pts[i+1]
    } else {
      out.push_back(at);
      ++i;
    }
  }
  if (i < pts.size()) out.push_back(pts.back());
  if (!changed) return path;
  return make_path(mesh, std::move(out), path.kind);
}

}  // namespace

DiscretePath midpoint_step(const TriMesh& mesh, const DiscretePath& path, double rho, int phase) {
  if (rho <= 0) fail(ErrorKind::invalid_param, "midpoint_step needs rho > 0");
  const auto& pts = path.points;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (distance(mesh.embed(pts[i]), mesh.embed(pts[i + 1])) >= rho / 2)
      fail(ErrorKind::segment_too_long, "segment exceeds rho/2; subdivide first");
  }
  if (pts.size() < 3) return path;
  double total = path.cached_length > 0 ? path.cached_length : path_length(mesh, path);
  if (total < 1e-13) return path;

  const double chunk = std::min(rho / 4, total / 3);
  int n = std::max(2, static_cast<int>(std::ceil(total / chunk)));
  bool free_loop = path.kind == PathKind::free_loop;

  // Join stations alternate between the two phases so a kink left at a join
  // endpoint in one phase falls inside a chunk of the next.
  std::vector<double> mids;
  if (free_loop) {
    double off = phase % 2 ? 0.5 * total / n : 0.0;
    // Monotone; values may exceed `total` and are unwrapped in the loop below.
    for (int k = 0; k < n; ++k) mids.push_back(off + (k + 0.5) * total / n);
  } else if (phase % 2 == 0) {
    for (int k = 0; k < n; ++k) mids.push_back((k + 0.5) * total / n);
  } else {
    for (int k = 1; k < n; ++k) mids.push_back(k * total / n);
  }

  auto chunk_join = [&](double s0, double s1) {
    // s-range may wrap for free loops.
    std::vector<SurfacePoint> guide;
    if (s1 <= total) {
      guide = subpath_points(mesh, path, s0, s1);
    } else {
      guide = subpath_points(mesh, path, s0, total);
      auto tail = subpath_points(mesh, path, 0, s1 - total);
      guide.insert(guide.end(), tail.begin() + 1, tail.end());
    }
    return join_through(mesh, guide);
  };

  std::vector<SurfacePoint> out;
  if (free_loop) {
    for (int k = 0; k < n; ++k) {
      double s0 = mids[k];
      double s1 = k + 1 < n ? mids[k + 1] : mids[0] + total;
      if (s0 >= total) {
        s0 -= total;
        s1 -= total;
      }
      LocalJoin j = chunk_join(s0, s1);
      if (k == 0) out.push_back(j.points.front());
      for (size_t q = 1; q < j.points.size(); ++q) out.push_back(j.points[q]);
    }
    return make_path(mesh, std::move(out), PathKind::free_loop);
  }

  // Fixed-end variants: endpoints (or basepoint) kept in place.
  std::vector<double> stations;
  stations.push_back(0);
  for (double m : mids) stations.push_back(m);
  stations.push_back(total);
  for (size_t k = 0; k + 1 < stations.size(); ++k) {
    LocalJoin j = chunk_join(stations[k], stations[k + 1]);
    if (k == 0) out.push_back(j.points.front());
    for (size_t q = 1; q < j.points.size(); ++q) out.push_back(j.points[q]);
  }
  return make_path(mesh, std::move(out), path.kind);
}

namespace {

struct ResolvedOptions {
  double rho, tol, const_thresh, frame_gap;
  int max_iter;
};

ResolvedOptions resolve(const TriMesh& mesh, const ShortenOptions& o, bool traced) {
  ResolvedOptions r;
  r.rho = o.rho > 0 ? o.rho : 8 * mesh.mean_edge_length();
  r.tol = o.tol;
  r.max_iter = o.max_iter;
  r.const_thresh = o.constant_threshold > 0 ? o.constant_threshold : 4 * mesh.max_edge_length();
  r.frame_gap = o.frame_gap > 0 ? o.frame_gap : mesh.max_edge_length();
  if (traced) r.rho = std::min(r.rho, 4 * r.frame_gap);  // keeps per-phase motion <= frame_gap
  return r;
}

TerminalClass classify(ShortenMode mode, bool constant) {
  if (constant) return TerminalClass::constant_point;
  switch (mode) {
    case ShortenMode::bps: return TerminalClass::geodesic_segment;
    case ShortenMode::bpbl: return TerminalClass::geodesic_loop;
    case ShortenMode::bpfl: return TerminalClass::periodic_geodesic;
  }
  return TerminalClass::constant_point;
}

}  // namespace

ShorteningResult shorten(const TriMesh& mesh, const DiscretePath& path, ShortenMode mode,
                         const ShortenOptions& opts) {
  if ((mode == ShortenMode::bps) != (path.kind == PathKind::segment))
    fail(ErrorKind::invalid_param, "shortening mode does not match path kind");
  if (mode == ShortenMode::bpbl && path.kind != PathKind::based_loop)
    fail(ErrorKind::invalid_param, "BPBL needs a based loop");
  if (mode == ShortenMode::bpfl && path.kind != PathKind::free_loop)
    fail(ErrorKind::invalid_param, "BPFL needs a free loop");
  ResolvedOptions ro = resolve(mesh, opts, opts.record_trace);

  ShorteningResult res;
  DiscretePath cur = resample(mesh, path, ro.rho / 4);
  if (opts.record_trace) res.trace.append(cur);
  res.trace.endpoints_fixed = mode != ShortenMode::bpfl;

  double last_len = cur.cached_length;
  int stall = 0;
  bool endpoints_differ =
      mode == ShortenMode::bps &&
      distance(mesh.embed(cur.points.front()), mesh.embed(cur.points.back())) > ro.const_thresh;

  for (int it = 0; it < ro.max_iter; ++it) {
    // Constant-point collapse.
    if (cur.is_loop() && cur.cached_length < ro.const_thresh) {
      res.terminal = cur;
      res.classification = TerminalClass::constant_point;
      res.converged = true;
      res.iterations = it;
      return res;
    }
    GeodesicTest gt = is_geodesic(mesh, cur, ro.tol);
    res.final_defect = gt.max_defect;
    if (gt.pass) {
      bool constant = cur.is_loop() ? cur.cached_length < ro.const_thresh
                                    : (!endpoints_differ && cur.cached_length < ro.const_thresh);
      res.terminal = cur;
      res.classification = classify(mode, constant);
      res.converged = true;
      res.iterations = it;
      return res;
    }
    for (int phase = 0; phase < 3; ++phase) {
      cur = phase < 2 ? midpoint_step(mesh, cur, ro.rho, phase) : relax_vertex_bends(mesh, cur);
      if (opts.record_trace) {
        res.trace.append(cur);
        if (opts.monitor && !opts.monitor(cur, it)) {
          res.terminal = cur;
          res.classification = classify(mode, false);
          res.stopped_by_monitor = true;
          res.iterations = it + 1;
          return res;
        }
      }
    }
    if (!opts.record_trace && opts.monitor && !opts.monitor(cur, it)) {
      res.terminal = cur;
      res.classification = classify(mode, false);
      res.stopped_by_monitor = true;
      res.iterations = it + 1;
      return res;
    }
    if (last_len - cur.cached_length < 1e-13 * std::max(1.0, last_len)) {
      if (++stall > 24) break;  // stationary but above tol: report as-is
    } else {
      stall = 0;
    }
    last_len = cur.cached_length;
    res.iterations = it + 1;
  }
  res.terminal = cur;
  GeodesicTest gt = is_geodesic(mesh, cur, ro.tol);
  res.final_defect = gt.max_defect;
  res.converged = gt.pass;
  bool constant = cur.is_loop() && cur.cached_length < ro.const_thresh;
  res.classification = classify(mode, constant);
  return res;
}

FamilyShortenResult shorten_family(const TriMesh& mesh, std::vector<DiscretePath> members,
                                   ShortenMode mode, const ShortenOptions& opts) {
  FamilyShortenResult out;
  ResolvedOptions ro = resolve(mesh, opts, false);
  const std::int64_t n = static_cast<std::int64_t>(members.size());
  std::vector<char> done(members.size(), 0);
  par::for_each_index(n, [&](std::int64_t i) { members[i] = resample(mesh, members[i], ro.rho / 4); });

  double sup = 0;
  for (const auto& m : members) sup = std::max(sup, m.cached_length);
  out.sup_history.push_back(sup);

  for (int it = 0; it < ro.max_iter; ++it) {
    std::int64_t active = 0;
    par::for_each_index(n, [&](std::int64_t i) {
      if (done[i]) return;
      DiscretePath& cur = members[i];
      if (cur.is_loop() && cur.cached_length < ro.const_thresh) {
        done[i] = 1;
        return;
      }
      if (is_geodesic(mesh, cur, ro.tol).pass) {
        done[i] = 1;
        return;
      }
      cur = midpoint_step(mesh, cur, ro.rho, 0);
      cur = midpoint_step(mesh, cur, ro.rho, 1);
      cur = relax_vertex_bends(mesh, cur);
    });
    for (std::int64_t i = 0; i < n; ++i) active += done[i] ? 0 : 1;
    sup = 0;
    for (const auto& m : members) sup = std::max(sup, m.cached_length);
    out.sup_history.push_back(sup);
    out.iterations = it + 1;
    if (active == 0) break;
  }
  out.classes.resize(members.size());
  for (size_t i = 0; i < members.size(); ++i) {
    const DiscretePath& m = members[i];
    bool constant = m.is_loop() ? m.cached_length < ro.const_thresh
                                : m.cached_length < ro.const_thresh &&
                                      distance(mesh.embed(m.points.front()),
                                               mesh.embed(m.points.back())) < ro.const_thresh;
    TerminalClass cls = classify(mode, constant);
    if (!is_geodesic(mesh, m, ro.tol).pass && !constant) cls = classify(mode, false);
    out.classes[i] = cls;
  }
  out.terminals = std::move(members);
  return out;
}

}  // namespace geodesy
