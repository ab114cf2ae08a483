#include "geodesy/chart.hpp"

#include <algorithm>
#include <cmath>

namespace geodesy {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

FaceChart face_chart(const TriMesh& mesh, Index f) {
  double l01 = mesh.he_length(3 * f);
  double l12 = mesh.he_length(3 * f + 1);
  double l20 = mesh.he_length(3 * f + 2);
  FaceChart ch;
  ch.corner[0] = {0, 0};
  ch.corner[1] = {l01, 0};
  double a = (l01 * l01 + l20 * l20 - l12 * l12) / (2 * l01);
  double h2 = std::sqrt(std::max(0.0, l20 * l20 - a * a));
  ch.corner[2] = {a, h2};
  return ch;
}

Vec2 chart_point(const FaceChart& ch, const std::array<double, 3>& bary) {
  return ch.corner[0] * bary[0] + ch.corner[1] * bary[1] + ch.corner[2] * bary[2];
}

std::array<double, 3> chart_bary(const FaceChart& ch, const Vec2& p) {
  Vec2 v0 = ch.corner[1] - ch.corner[0];
  Vec2 v1 = ch.corner[2] - ch.corner[0];
  Vec2 v2 = p - ch.corner[0];
  double den = cross2(v0, v1);
  double b1 = cross2(v2, v1) / den;
  double b2 = cross2(v0, v2) / den;
  return {1 - b1 - b2, b1, b2};
}

std::array<Vec2, 3> unfold_across(const TriMesh& mesh, const FaceChart& from, Index h) {
  Index t = mesh.he_twin(h);
  Index g = mesh.he_face(t);
  int c = h % 3;
  Vec2 P = from.corner[c];                 // origin(h)
  Vec2 Q = from.corner[(c + 1) % 3];       // dest(h)
  Vec2 R = from.corner[(c + 2) % 3];       // far corner of f
  int ct = t % 3;
  double base = mesh.he_length(h);
  double l_px = mesh.he_length(3 * g + (ct + 1) % 3);  // P -> X
  double l_xq = mesh.he_length(3 * g + (ct + 2) % 3);  // X -> Q
  Vec2 u = (P - Q) / base;
  Vec2 n{-u.y, u.x};
  double a = (l_xq * l_xq - l_px * l_px + base * base) / (2 * base);
  double h2 = std::sqrt(std::max(0.0, l_xq * l_xq - a * a));
  double side_f = cross2(P - Q, R - Q) >= 0 ? 1.0 : -1.0;
  Vec2 X = Q + a * u + (-side_f * h2) * n;
  std::array<Vec2, 3> out;
  out[ct] = Q;              // origin(t) = dest(h)
  out[(ct + 1) % 3] = P;    // dest(t) = origin(h)
  out[(ct + 2) % 3] = X;
  return out;
}

double in_face_distance(const TriMesh& mesh, const SurfacePoint& a, const SurfacePoint& b) {
  return distance(mesh.embed(a), mesh.embed(b));
}

// ---------------------------------------------------------------------------
// Strip extraction + funnel

namespace {

struct Strip {
  std::vector<Index> faces;
  std::vector<Index> portals;  // halfedge in faces[i] toward faces[i+1]
  SurfacePoint start, end;     // expressed in faces.front() / faces.back()
};

// Splits the guide into strips at vertex pivots (points where the carrier
// face changes without a shared edge).
std::vector<Strip> extract_strips(const TriMesh& mesh, const std::vector<SurfacePoint>& guide) {
  std::vector<Strip> strips;
  Strip cur;
  cur.faces.push_back(guide[0].face);
  cur.start = guide[0];
  SurfacePoint last_in_cur = guide[0];
  for (size_t i = 1; i < guide.size(); ++i) {
    const SurfacePoint& q = guide[i];
    for (int hops = 0;; ++hops) {
      if (hops > 4) fail(ErrorKind::invalid_param, "guide polyline is not traceable on the surface");
      Index cf = cur.faces.back();
      SurfacePoint expressed;
      if (mesh.express_in_face(q, cf, expressed)) {
        last_in_cur = expressed;
        break;
      }
      // Fold cancellation: stepping back across the portal just crossed
      // shortens the guide (both sides live in the same unfolded face), and
      // keeps the strip a clean sleeve for the funnel.
      auto push_portal = [&](Index hp) {
        if (!cur.portals.empty() && cur.portals.back() == mesh.he_twin(hp)) {
          cur.portals.pop_back();
          cur.faces.pop_back();
        } else {
          cur.portals.push_back(hp);
          cur.faces.push_back(mesh.he_face(mesh.he_twin(hp)));
        }
      };
      Index h = mesh.shared_halfedge(cf, q.face);
      if (h != kInvalidIndex) {
        push_portal(h);
        last_in_cur = q;
        break;
      }
      // Hop through the carrier face of the segment (last, q) when the walk
      // face lags behind the stored carriers.
      Index fmid = kInvalidIndex;
      bool have_mid = mesh.common_face(last_in_cur, q, fmid);
      if (have_mid && fmid != cf) {
        Index hm = mesh.shared_halfedge(cf, fmid);
        if (hm != kInvalidIndex) {
          push_portal(hm);
          continue;
        }
      }
      // Vertex pivot: the strip breaks at a mesh vertex; continue in the
      // common face of the segment when there is one.
      Index target = have_mid ? fmid : q.face;
      Index v = mesh.on_vertex(last_in_cur);
      bool shares = false;
      if (v != kInvalidIndex)
        for (Index vf : mesh.vertex_faces(v)) shares |= (vf == target);
      if (!shares) fail(ErrorKind::invalid_param, "guide polyline is not traceable on the surface");
      cur.end = last_in_cur;
      strips.push_back(cur);
      cur = Strip{};
      SurfacePoint pivot;
      mesh.express_in_face(last_in_cur, target, pivot);
      cur.faces.push_back(target);
      cur.start = pivot;
      last_in_cur = pivot;
      if (target != q.face) continue;  // still need to reach q's segment face
      last_in_cur = q;
      break;
    }
  }
  SurfacePoint endp;
  mesh.express_in_face(guide.back(), cur.faces.back(), endp);
  cur.end = endp;
  strips.push_back(cur);
  return strips;
}

struct Portal2D {
  Vec2 left, right;      // relative to travel direction
  Index halfedge;        // in the earlier face
};

// Positive when c lies left of a->b.
double triarea2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return cross2(b - a, c - a);
}

bool close2(const Vec2& a, const Vec2& b) {
  Vec2 d = a - b;
  return d.x * d.x + d.y * d.y < 1e-24;
}

struct FunnelBend {
  Vec2 point;
  int portal_index;
  bool is_left;
};

// Funnel (string pulling) over the unfolded portal sequence; returns the
// interior bend points, each a portal endpoint.
std::vector<FunnelBend> run_funnel(const Vec2& start, const std::vector<Portal2D>& portals,
                                   const Vec2& end) {
  std::vector<FunnelBend> bends;
  Vec2 apex = start, left = start, right = start;
  int apex_i = -1, left_i = -1, right_i = -1;
  const int n = static_cast<int>(portals.size());
  int guard = 0;
  const int guard_max = 16 * (n + 2);
  for (int i = 0; i <= n; ++i) {
    if (++guard > guard_max) break;
    Vec2 pl = i < n ? portals[i].left : end;
    Vec2 pr = i < n ? portals[i].right : end;
    if (triarea2(apex, right, pr) >= 0) {  // pr narrows the funnel from the right
      if (close2(apex, right) || close2(apex, left) || left_i >= n ||
          triarea2(apex, left, pr) < 0) {
        right = pr;
        right_i = i;
      } else {
        // Right sweeps past left: the left endpoint becomes a bend.
        bends.push_back({left, left_i, true});
        apex = left;
        apex_i = left_i;
        left = right = apex;
        left_i = right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
    if (triarea2(apex, left, pl) <= 0) {  // pl narrows the funnel from the left
      if (close2(apex, left) || close2(apex, right) || right_i >= n ||
          triarea2(apex, right, pl) > 0) {
        left = pl;
        left_i = i;
      } else {
        bends.push_back({right, right_i, false});
        apex = right;
        apex_i = right_i;
        left = right = apex;
        left_i = right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
  }
  return bends;
}

LocalJoin funnel_strip(const TriMesh& mesh, const Strip& strip) {
  LocalJoin out;
  const int nport = static_cast<int>(strip.portals.size());
  std::vector<FaceChart> charts(strip.faces.size());
  charts[0] = face_chart(mesh, strip.faces[0]);
  for (int i = 0; i < nport; ++i)
    charts[i + 1].corner = unfold_across(mesh, charts[i], strip.portals[i]);
  Vec2 s2 = chart_point(charts[0], strip.start.bary);
  Vec2 e2 = chart_point(charts.back(), strip.end.bary);
  std::vector<Portal2D> portals(nport);
  for (int i = 0; i < nport; ++i) {
    Index h = strip.portals[i];
    int c = h % 3;
    portals[i].halfedge = h;
    portals[i].right = charts[i].corner[c];           // origin(h)
    portals[i].left = charts[i].corner[(c + 1) % 3];  // dest(h)
  }

  std::vector<FunnelBend> bends = run_funnel(s2, portals, e2);

  struct Anchor {
    Vec2 p;
    int portal;  // -1 start, nport end, else bend on that portal
  };
  std::vector<Anchor> chain;
  chain.push_back({s2, -1});
  for (const auto& b : bends) chain.push_back({b.point, b.portal_index});
  chain.push_back({e2, nport});

  out.points.push_back(strip.start);
  for (size_t k = 0; k + 1 < chain.size(); ++k) {
    const Anchor& A = chain[k];
    const Anchor& B = chain[k + 1];
    for (int j = A.portal + 1; j <= std::min(B.portal - 1, nport - 1); ++j) {
      Index h = portals[j].halfedge;
      Vec2 o2 = portals[j].right;
      Vec2 d2 = portals[j].left;
      double den = cross2(d2 - o2, B.p - A.p);
      double s = std::fabs(den) < 1e-300 ? 0.5 : cross2(A.p - o2, B.p - A.p) / den;
      s = std::clamp(s, 0.0, 1.0);
      // Express on the twin side so consecutive crossings share a carrier.
      Index t = mesh.he_twin(h);
      SurfacePoint cp;
      cp.face = mesh.he_face(t);
      cp.bary = {0, 0, 0};
      cp.bary[t % 3] = s;
      cp.bary[(t % 3 + 1) % 3] = 1 - s;
      out.points.push_back(cp);
    }
    if (k + 1 < chain.size() - 1) {
      // Interior bend: a mesh vertex at a portal endpoint.
      Index h = portals[B.portal].halfedge;
      Index v = close2(B.p, portals[B.portal].left) ? mesh.he_dest(h) : mesh.he_origin(h);
      Index g = mesh.he_face(mesh.he_twin(h));
      SurfacePoint vp;
      vp.face = g;
      vp.bary = {0, 0, 0};
      for (int c = 0; c < 3; ++c)
        if (mesh.face_vertices(g)[c] == v) vp.bary[c] = 1;
      out.points.push_back(vp);
    }
  }
  out.points.push_back(strip.end);
  return out;
}

double polyline_length(const TriMesh& mesh, const std::vector<SurfacePoint>& pts) {
  double len = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) len += distance(mesh.embed(pts[i]), mesh.embed(pts[i + 1]));
  return len;
}

int carrier_rank(const SurfacePoint& p) {
  int zeros = 0;
  for (double b : p.bary)
    if (b <= 1e-12) ++zeros;
  return zeros;  // vertex 2, edge 1, interior 0
}

void dedupe_points(const TriMesh& mesh, std::vector<SurfacePoint>& pts) {
  std::vector<SurfacePoint> out;
  for (size_t i = 0; i < pts.size(); ++i) {
    const SurfacePoint& p = pts[i];
    if (!out.empty() && distance(mesh.embed(out.back()), mesh.embed(p)) < 1e-13) {
      // Coincident points: keep the representation shared by more faces,
      // except that the path endpoints must survive verbatim.
      if (i + 1 < pts.size() && out.size() > 1 && carrier_rank(p) > carrier_rank(out.back()))
        out.back() = p;
      continue;
    }
    out.push_back(p);
  }
  if (out.size() < 2 && !pts.empty()) {
    out.clear();
    out.push_back(pts.front());
    out.push_back(pts.back());
  }
  pts = std::move(out);
}

bool guide_is_canonical(const TriMesh& mesh, const std::vector<SurfacePoint>& guide) {
  Index f;
  for (size_t i = 0; i + 1 < guide.size(); ++i)
    if (!mesh.common_face(guide[i], guide[i + 1], f)) return false;
  return true;
}

}  // namespace

LocalJoin join_through(const TriMesh& mesh, const std::vector<SurfacePoint>& guide) {
  if (guide.size() < 2) fail(ErrorKind::invalid_param, "guide needs at least two points");
  std::vector<Strip> strips = extract_strips(mesh, guide);
  LocalJoin out;
  for (size_t s = 0; s < strips.size(); ++s) {
    LocalJoin part = funnel_strip(mesh, strips[s]);
    if (s == 0) {
      out.points = part.points;
    } else {
      out.points.insert(out.points.end(), part.points.begin() + 1, part.points.end());
    }
  }
  dedupe_points(mesh, out.points);
  out.length = polyline_length(mesh, out.points);
  // The funnel path can never be longer than the guide. The comparison only
  // makes sense when the guide polyline itself runs on the surface (every
  // segment inside one face); then a numerical slip falls back to the guide.
  if (guide_is_canonical(mesh, guide)) {
    double guide_len = polyline_length(mesh, guide);
    if (out.length > guide_len + 1e-12) {
      out.points = guide;
      out.length = guide_len;
    }
  }
  return out;
}

LocalJoin join_in_two_faces(const TriMesh& mesh, const SurfacePoint& a, const SurfacePoint& b) {
  return join_through(mesh, {a, b});
}

LocalJoin join_across_vertex(const TriMesh& mesh, const SurfacePoint& prev, Index v,
                             const SurfacePoint& next, bool go_ccw) {
  std::vector<Index> fan = mesh.vertex_outgoing(v);  // CCW order
  const int nf = static_cast<int>(fan.size());
  auto face_of = [&](const SurfacePoint& q) -> int {
    SurfacePoint tmp;
    for (int i = 0; i < nf; ++i)
      if (mesh.express_in_face(q, mesh.he_face(fan[i]), tmp)) return i;
    return -1;
  };
  int i0 = face_of(prev), i1 = face_of(next);
  if (i0 < 0 || i1 < 0) fail(ErrorKind::invalid_param, "join_across_vertex: points not in the fan");
  Strip strip;
  SurfacePoint s, e;
  mesh.express_in_face(prev, mesh.he_face(fan[i0]), s);
  strip.start = s;
  strip.faces.push_back(mesh.he_face(fan[i0]));
  int i = i0;
  int guard = 0;
  while (i != i1 && ++guard <= nf) {
    if (go_ccw) {
      int j = (i + 1) % nf;
      strip.portals.push_back(mesh.he_twin(fan[j]));  // halfedge in face i toward face j
      strip.faces.push_back(mesh.he_face(fan[j]));
      i = j;
    } else {
      int j = (i - 1 + nf) % nf;
      strip.portals.push_back(fan[i]);  // spoke halfedge in face i, twin in face j
      strip.faces.push_back(mesh.he_face(fan[j]));
      i = j;
    }
  }
  mesh.express_in_face(next, mesh.he_face(fan[i1]), e);
  strip.end = e;
  LocalJoin out = funnel_strip(mesh, strip);
  dedupe_points(mesh, out.points);
  out.length = polyline_length(mesh, out.points);
  return out;
}

std::vector<double> ray_angles(const TriMesh& mesh, const SurfacePoint& at,
                               const std::vector<SurfacePoint>& targets, double& total_angle) {
  std::vector<double> out;
  Index v = mesh.on_vertex(at);
  if (v != kInvalidIndex) {
    std::vector<Index> fan = mesh.vertex_outgoing(v);
    total_angle = 0;
    std::vector<double> base(fan.size());
    for (size_t i = 0; i < fan.size(); ++i) {
      base[i] = total_angle;
      total_angle += mesh.corner_angle(mesh.he_face(fan[i]), fan[i] % 3);
    }
    for (const SurfacePoint& q : targets) {
      bool found = false;
      for (size_t i = 0; i < fan.size() && !found; ++i) {
        Index f = mesh.he_face(fan[i]);
        SurfacePoint qf;
        if (!mesh.express_in_face(q, f, qf)) continue;
        int c = fan[i] % 3;
        FaceChart ch = face_chart(mesh, f);
        Vec2 x2 = ch.corner[c];
        Vec2 w2 = ch.corner[(c + 1) % 3];
        Vec2 q2 = chart_point(ch, qf.bary);
        if (norm(q2 - x2) < 1e-15) continue;
        double ang = std::atan2(cross2(w2 - x2, q2 - x2), dot(w2 - x2, q2 - x2));
        if (ang < -1e-9) continue;
        out.push_back(base[i] + std::clamp(ang, 0.0, mesh.corner_angle(f, c)));
        found = true;
      }
      if (!found) fail(ErrorKind::invalid_param, "ray_angles: target not adjacent to vertex point");
    }
    return out;
  }
  total_angle = 2 * kPi;
  // Flat point: at most two incident faces (its own, or across its edge).
  FaceChart ch = face_chart(mesh, at.face);
  Vec2 x2 = chart_point(ch, at.bary);
  Index eh = mesh.on_edge_halfedge(at);
  for (const SurfacePoint& q : targets) {
    SurfacePoint qf;
    Vec2 q2;
    if (mesh.express_in_face(q, at.face, qf)) {
      q2 = chart_point(ch, qf.bary);
    } else if (eh != kInvalidIndex) {
      Index g = mesh.he_face(mesh.he_twin(eh));
      SurfacePoint qg;
      if (!mesh.express_in_face(q, g, qg))
        fail(ErrorKind::invalid_param, "ray_angles: target not adjacent");
      FaceChart gch;
      gch.corner = unfold_across(mesh, ch, eh);
      q2 = chart_point(gch, qg.bary);
    } else {
      fail(ErrorKind::invalid_param, "ray_angles: target not adjacent");
    }
    Vec2 r = q2 - x2;
    double ang = std::atan2(r.y, r.x);
    if (ang < 0) ang += 2 * kPi;
    out.push_back(ang);
  }
  return out;
}

CornerAngles corner_angles(const TriMesh& mesh, const SurfacePoint& prev, const SurfacePoint& at,
                           const SurfacePoint& next) {
  CornerAngles out;
  Index v = mesh.on_vertex(at);
  if (v == kInvalidIndex) {
    // Flat point: unfold at most two faces. The carrier of each side is the
    // common face of that segment, not the stored carrier of its endpoint.
    Index f_in, f_out;
    if (!mesh.common_face(prev, at, f_in)) fail(ErrorKind::invalid_param, "corner_angles: prev not adjacent");
    if (!mesh.common_face(at, next, f_out)) fail(ErrorKind::invalid_param, "corner_angles: next not adjacent");
    FaceChart ch = face_chart(mesh, f_in);
    SurfacePoint a_in, x_in;
    mesh.express_in_face(prev, f_in, a_in);
    mesh.express_in_face(at, f_in, x_in);
    Vec2 a2 = chart_point(ch, a_in.bary);
    Vec2 x2 = chart_point(ch, x_in.bary);
    Vec2 b2;
    SurfacePoint b_in;
    if (mesh.express_in_face(next, f_in, b_in)) {
      b2 = chart_point(ch, b_in.bary);
    } else {
      Index h = mesh.shared_halfedge(f_in, f_out);
      if (h == kInvalidIndex) fail(ErrorKind::invalid_param, "corner_angles: sides not adjacent");
      FaceChart gch;
      gch.corner = unfold_across(mesh, ch, h);
      SurfacePoint b_out;
      mesh.express_in_face(next, f_out, b_out);
      b2 = chart_point(gch, b_out.bary);
    }
    Vec2 ra = a2 - x2, rb = b2 - x2;
    double ta = std::atan2(ra.y, ra.x), tb = std::atan2(rb.y, rb.x);
    double left = ta - tb;
    while (left < 0) left += 2 * kPi;
    while (left >= 2 * kPi) left -= 2 * kPi;
    out.left = left;
    out.right = 2 * kPi - left;
    return out;
  }

  // Vertex point: accumulate corner angles CCW around v. Coordinates are
  // angular offsets from the wedge start of each incident face.
  out.at_vertex = true;
  out.vertex = v;
  std::vector<Index> fan = mesh.vertex_outgoing(v);  // CCW order
  double total = 0;
  std::vector<double> base(fan.size());
  for (size_t i = 0; i < fan.size(); ++i) {
    base[i] = total;
    total += mesh.corner_angle(mesh.he_face(fan[i]), fan[i] % 3);
  }
  auto ray_coord = [&](const SurfacePoint& q) -> double {
    for (size_t i = 0; i < fan.size(); ++i) {
      Index f = mesh.he_face(fan[i]);
      SurfacePoint qf;
      if (!mesh.express_in_face(q, f, qf)) continue;
      int c = fan[i] % 3;  // corner of v in f
      FaceChart ch = face_chart(mesh, f);
      Vec2 x2 = ch.corner[c];
      Vec2 w2 = ch.corner[(c + 1) % 3];  // wedge start ray: toward corner c+1
      Vec2 q2 = chart_point(ch, qf.bary);
      if (norm(q2 - x2) < 1e-15) continue;
      double ang = std::atan2(cross2(w2 - x2, q2 - x2), dot(w2 - x2, q2 - x2));
      if (ang < -1e-9) continue;  // ray belongs to an earlier wedge copy
      return base[i] + std::clamp(ang, 0.0, mesh.corner_angle(f, c));
    }
    fail(ErrorKind::invalid_param, "corner_angles: neighbor not adjacent to vertex");
  };
  double pa = ray_coord(prev);
  double pb = ray_coord(next);
  double left = pa - pb;
  while (left < 0) left += total;
  while (left >= total) left -= total;
  out.left = left;
  out.right = total - left;
  return out;
}

}  // namespace geodesy
