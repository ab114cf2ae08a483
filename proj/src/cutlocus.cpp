#include "geodesy/cutlocus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <numeric>

#include "geodesy/chart.hpp"
#include "geodesy/parallel.hpp"
#include "geodesy/shorten.hpp"

namespace geodesy {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

// ---------------------------------------------------------------------------
// Straight-line tracing

SurfacePoint point_at_direction(const TriMesh& mesh, const SurfacePoint& x, double phi, double r) {
  // Resolve the starting face plus the global-frame position and direction.
  FaceChart chart;
  Vec2 pos, dir;
  Index cur_face;
  Index v = mesh.on_vertex(x);
  if (v != kInvalidIndex) {
    std::vector<Index> fan = mesh.vertex_outgoing(v);
    double total = 0;
    std::vector<double> base(fan.size());
    for (size_t i = 0; i < fan.size(); ++i) {
      base[i] = total;
      total += mesh.corner_angle(mesh.he_face(fan[i]), fan[i] % 3);
    }
    phi = std::fmod(std::fmod(phi, total) + total, total);
    size_t wedge = fan.size() - 1;
    for (size_t i = 0; i + 1 < fan.size(); ++i) {
      if (phi < base[i + 1]) {
        wedge = i;
        break;
      }
    }
    cur_face = mesh.he_face(fan[wedge]);
    int c = fan[wedge] % 3;
    chart = face_chart(mesh, cur_face);
    pos = chart.corner[c];
    Vec2 w = normalized(chart.corner[(c + 1) % 3] - chart.corner[c]);
    double ang = phi - base[wedge];
    dir = {w.x * std::cos(ang) - w.y * std::sin(ang), w.x * std::sin(ang) + w.y * std::cos(ang)};
  } else {
    cur_face = x.face;
    chart = face_chart(mesh, cur_face);
    pos = chart_point(chart, x.bary);
    dir = {std::cos(phi), std::sin(phi)};
  }

  double remaining = r;
  int guard = 0;
  const int guard_max = 64 + static_cast<int>(8 * r / std::max(1e-9, mesh.mean_edge_length()));
  while (++guard < guard_max) {
    double best_t = std::numeric_limits<double>::infinity();
    int best_c = -1;
    for (int c = 0; c < 3; ++c) {
      Vec2 a = chart.corner[c];
      Vec2 b = chart.corner[(c + 1) % 3];
      double den = cross2(b - a, dir);
      if (std::fabs(den) < 1e-15) continue;
      double t = cross2(b - a, a - pos) / den;
      double s = cross2(dir, a - pos) / den;
      if (t > 1e-12 && s >= -1e-9 && s <= 1 + 1e-9 && t < best_t) {
        best_t = t;
        best_c = c;
      }
    }
    if (best_c < 0 || best_t >= remaining) {
      double step = std::min(remaining, best_c < 0 ? remaining : best_t - 1e-12);
      Vec2 final2 = pos + dir * step;
      auto bary = chart_bary(chart, final2);
      for (double& bb : bary) bb = std::max(0.0, bb);
      double s = bary[0] + bary[1] + bary[2];
      return SurfacePoint(cur_face, bary[0] / s, bary[1] / s, bary[2] / s);
    }
    Index h = 3 * cur_face + best_c;
    pos = pos + dir * best_t;
    remaining -= best_t;
    FaceChart next;
    next.corner = unfold_across(mesh, chart, h);
    chart = next;
    cur_face = mesh.he_face(mesh.he_twin(h));
  }
  auto bary = chart_bary(chart, pos);
  for (double& bb : bary) bb = std::max(0.0, bb);
  double s = bary[0] + bary[1] + bary[2];
  return SurfacePoint(cur_face, bary[0] / s, bary[1] / s, bary[2] / s);
}

// ---------------------------------------------------------------------------
// Cut locus extraction

CutLocusTree cut_locus(const DistanceGraph& graph, const SurfacePoint& p,
                       const CutLocusOptions& opts) {
  const TriMesh& mesh = graph.mesh();
  CutLocusTree tree;
  tree.basepoint = p;
  DistanceField field = compute_distance_field(graph, p);
  const double h = mesh.max_edge_length();
  double dmax = 0;
  Index far_vertex = 0;
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    if (field.dist[v] > dmax) {
      dmax = field.dist[v];
      far_vertex = v;
    }
  }

  // Single-source shortest-path tree on the 1-skeleton. Its complement in the
  // edge set is dual to a spanning tree of the face graph (tree-cotree on a
  // sphere), which retracts onto the cut locus by pruning leaves.
  Index root = mesh.on_vertex(p);
  if (root == kInvalidIndex) {
    root = mesh.face_vertices(p.face)[0];
    double best = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 3; ++c) {
      Index v = mesh.face_vertices(p.face)[c];
      double dd = distance(mesh.position(v), mesh.embed(p));
      if (dd < best) {
        best = dd;
        root = v;
      }
    }
  }
  std::vector<double> vdist(mesh.vertex_count(), std::numeric_limits<double>::infinity());
  std::vector<Index> vpar(mesh.vertex_count(), kInvalidIndex);
  {
    using Item = std::pair<double, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    vdist[root] = 0;
    pq.push({0, root});
    while (!pq.empty()) {
      auto [dd, u] = pq.top();
      pq.pop();
      if (dd > vdist[u] + 1e-15) continue;
      for (Index hh : mesh.vertex_outgoing(u)) {
        Index w = mesh.he_dest(hh);
        double nd = dd + mesh.he_length(hh);
        if (nd < vdist[w] - 1e-15) {
          vdist[w] = nd;
          vpar[w] = u;
          pq.push({nd, w});
        }
      }
    }
  }
  std::vector<char> in_tree(mesh.edge_count(), 0);
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    if (vpar[v] == kInvalidIndex) continue;
    for (Index hh : mesh.vertex_outgoing(v)) {
      if (mesh.he_dest(hh) == vpar[v]) {
        in_tree[mesh.he_edge(hh)] = 1;
        break;
      }
    }
  }

  // Ridge score: where two wavefronts collide the distance field kinks and
  // the fitted eikonal gradient drops below 1. Field values are stable even
  // where graph witnesses wander, so this is the reliable detector.
  std::vector<double> grad_norm(mesh.vertex_count(), 1.0);
  par::for_each_index(mesh.vertex_count(), [&](std::int64_t vi) {
    Index v = static_cast<Index>(vi);
    Vec3 n{0, 0, 0};
    for (Index f : mesh.vertex_faces(v)) {
      const auto& fv = mesh.face_vertices(f);
      n += cross(mesh.position(fv[1]) - mesh.position(fv[0]),
                 mesh.position(fv[2]) - mesh.position(fv[0]));
    }
    n = normalized(n);
    Vec3 any = std::fabs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
    Vec3 e1 = normalized(cross(n, any));
    Vec3 e2 = cross(n, e1);
    double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
    for (Index hh : mesh.vertex_outgoing(v)) {
      Index w = mesh.he_dest(hh);
      Vec3 dvec = mesh.position(w) - mesh.position(v);
      double x = dot(dvec, e1), y = dot(dvec, e2);
      double dd = field.dist[w] - field.dist[v];
      a11 += x * x;
      a12 += x * y;
      a22 += y * y;
      b1 += x * dd;
      b2 += y * dd;
    }
    double det = a11 * a22 - a12 * a12;
    if (std::fabs(det) < 1e-18) return;
    double gx = (a22 * b1 - a12 * b2) / det;
    double gy = (a11 * b2 - a12 * b1) / det;
    grad_norm[vi] = std::hypot(gx, gy);
  });

  // Dual co-tree adjacency over non-tree edges.
  std::vector<std::vector<std::pair<Index, Index>>> dual(mesh.face_count());  // (edge, other face)
  for (Index e = 0; e < mesh.edge_count(); ++e) {
    if (in_tree[e]) continue;
    Index hh = mesh.edge_halfedge(e);
    Index f = mesh.he_face(hh), g2 = mesh.he_face(mesh.he_twin(hh));
    dual[f].push_back({e, g2});
    dual[g2].push_back({e, f});
  }

  // Prune co-tree leaves whose crossing edge scores below the ridge need.
  std::vector<char> edge_alive(mesh.edge_count(), 0);
  for (Index e = 0; e < mesh.edge_count(); ++e) edge_alive[e] = !in_tree[e];
  std::vector<int> fdeg(mesh.face_count(), 0);
  for (Index f = 0; f < mesh.face_count(); ++f) fdeg[f] = static_cast<int>(dual[f].size());
  std::vector<Index> queue;
  auto score_ok = [&](Index e) {
    Index hh = mesh.edge_halfedge(e);
    Index u = mesh.he_origin(hh), w = mesh.he_dest(hh);
    double du = field.dist[u], dw = field.dist[w];
    if (std::min(du, dw) < opts.basepoint_clear_h * h) return false;
    return 0.5 * (grad_norm[u] + grad_norm[w]) < opts.kink_grad;
  };
  for (Index f = 0; f < mesh.face_count(); ++f)
    if (fdeg[f] == 1) queue.push_back(f);
  while (!queue.empty()) {
    Index f = queue.back();
    queue.pop_back();
    if (fdeg[f] != 1) continue;
    // The single live crossing at this leaf face.
    Index live_e = kInvalidIndex, other = kInvalidIndex;
    for (auto [e, g2] : dual[f]) {
      if (edge_alive[e]) {
        live_e = e;
        other = g2;
      }
    }
    if (live_e == kInvalidIndex) continue;
    if (score_ok(live_e)) continue;  // genuine ridge end: keep
    edge_alive[live_e] = 0;
    --fdeg[f];
    --fdeg[other];
    if (fdeg[other] == 1) queue.push_back(other);
  }

  Index crossings = 0;
  for (Index e = 0; e < mesh.edge_count(); ++e) crossings += edge_alive[e];
  if (crossings == 0) {
    // Degenerate tree: a single point at the farthest vertex.
    CutLocusNode node;
    node.position = mesh.vertex_point(far_vertex);
    node.degree = 0;
    node.geodesic_count = 2;
    tree.nodes.push_back(node);
    tree.incident.emplace_back();
    tree.root = 0;
    return tree;
  }

  // Crease points on surviving crossings and the face-local 1-complex.
  std::vector<Index> edge_node(mesh.edge_count(), kInvalidIndex);
  std::vector<SurfacePoint> pts;
  std::vector<std::vector<Index>> adj;
  auto add_node = [&](const SurfacePoint& sp) {
    pts.push_back(sp);
    adj.emplace_back();
    return static_cast<Index>(pts.size() - 1);
  };
  auto link = [&](Index a, Index b) {
    if (a == b) return;
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (Index e = 0; e < mesh.edge_count(); ++e) {
    if (!edge_alive[e]) continue;
    Index hh = mesh.edge_halfedge(e);
    Index u = mesh.he_origin(hh), w = mesh.he_dest(hh);
    double du = field.dist[u], dw = field.dist[w];
    double len = mesh.edge_length(e);
    double t = std::clamp((dw - du + len) / (2 * len), 0.05, 0.95);
    SurfacePoint sp;
    sp.face = mesh.he_face(hh);
    sp.bary = {0, 0, 0};
    sp.bary[hh % 3] = 1 - t;
    sp.bary[(hh % 3 + 1) % 3] = t;
    edge_node[e] = add_node(sp);
  }
  for (Index f = 0; f < mesh.face_count(); ++f) {
    std::vector<Index> local;
    for (int c = 0; c < 3; ++c) {
      Index e = mesh.he_edge(3 * f + c);
      if (edge_alive[e]) local.push_back(edge_node[e]);
    }
    if (local.size() == 2) {
      link(local[0], local[1]);
    } else if (local.size() == 3) {
      Index center = add_node(mesh.face_midpoint(f));
      for (Index n : local) link(center, n);
    }
  }

  // Geometric spur pruning at mesh scale.
  const Index n_nodes = static_cast<Index>(pts.size());
  std::vector<char> alive(n_nodes, 1);
  auto emb = [&](Index n) { return mesh.embed(pts[n]); };
  auto degree = [&](Index n) {
    int d = 0;
    for (Index m : adj[n])
      if (alive[m]) ++d;
    return d;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (Index n = 0; n < n_nodes; ++n) {
      if (!alive[n] || degree(n) != 1) continue;
      std::vector<Index> chain{n};
      double len = 0;
      Index cur = n, prev = kInvalidIndex;
      while (true) {
        Index next = kInvalidIndex;
        for (Index m : adj[cur])
          if (alive[m] && m != prev) next = m;
        if (next == kInvalidIndex) break;
        len += distance(emb(cur), emb(next));
        if (degree(next) != 2) break;
        chain.push_back(next);
        prev = cur;
        cur = next;
      }
      if (len < opts.spur_length_h * h) {
        for (Index m : chain) alive[m] = 0;
        changed = true;
      }
    }
  }

  Index alive_count = 0;
  for (Index n = 0; n < n_nodes; ++n) alive_count += alive[n];
  if (alive_count == 0) {
    CutLocusNode node;
    node.position = mesh.vertex_point(far_vertex);
    node.degree = 0;
    node.geodesic_count = 2;
    tree.nodes.push_back(node);
    tree.incident.emplace_back();
    tree.root = 0;
    return tree;
  }

  // Anchor nodes (degree != 2) and arc chains between them.
  std::vector<Index> node_id(n_nodes, kInvalidIndex);
  for (Index n = 0; n < n_nodes; ++n) {
    if (!alive[n]) continue;
    if (degree(n) != 2) {
      CutLocusNode cn;
      cn.position = pts[n];
      node_id[n] = static_cast<Index>(tree.nodes.size());
      tree.nodes.push_back(cn);
      tree.incident.emplace_back();
    }
  }
  if (tree.nodes.empty()) {
    // Isolated point or pure cycle; a cycle cannot occur in a co-tree.
    CutLocusNode node;
    node.position = mesh.vertex_point(far_vertex);
    node.degree = 0;
    node.geodesic_count = 2;
    tree.nodes.push_back(node);
    tree.incident.emplace_back();
    tree.root = 0;
    return tree;
  }

  std::map<std::pair<Index, Index>, int> arc_count;
  for (Index n = 0; n < n_nodes; ++n) {
    if (node_id[n] == kInvalidIndex || !alive[n]) continue;
    for (Index m0 : adj[n]) {
      if (!alive[m0]) continue;
      std::vector<Index> chain{n, m0};
      Index prev = n, cur = m0;
      while (alive[cur] && node_id[cur] == kInvalidIndex) {
        Index next = kInvalidIndex;
        for (Index m : adj[cur])
          if (alive[m] && m != prev) next = m;
        if (next == kInvalidIndex) break;
        chain.push_back(next);
        prev = cur;
        cur = next;
      }
      if (node_id[cur] == kInvalidIndex) continue;
      if (node_id[cur] < node_id[n]) continue;
      if (node_id[cur] == node_id[n] && chain.size() >= 2 && chain[1] > chain[chain.size() - 2])
        continue;
      auto key = std::make_pair(node_id[n], node_id[cur]);
      arc_count[key] += 1;
      CutLocusArc arc;
      arc.a = node_id[n];
      arc.b = node_id[cur];
      std::vector<SurfacePoint> poly;
      for (Index q : chain) poly.push_back(pts[q]);
      arc.polyline = make_path(mesh, poly, PathKind::segment);
      arc.length = arc.polyline.cached_length;
      Index arc_id = static_cast<Index>(tree.arcs.size());
      tree.arcs.push_back(std::move(arc));
      tree.incident[node_id[n]].push_back(arc_id);
      if (node_id[cur] != node_id[n]) tree.incident[node_id[cur]].push_back(arc_id);
    }
  }

  for (size_t n = 0; n < tree.nodes.size(); ++n) {
    tree.nodes[n].degree = static_cast<int>(tree.incident[n].size());
    tree.nodes[n].geodesic_count = std::max(1, tree.nodes[n].degree);
  }

  // Tree check: connected and acyclic.
  {
    std::vector<char> seen(tree.nodes.size(), 0);
    std::vector<Index> stack{0};
    seen[0] = 1;
    size_t reached = 1;
    while (!stack.empty()) {
      Index n = stack.back();
      stack.pop_back();
      for (Index a : tree.incident[n]) {
        Index m = tree.arcs[a].a == n ? tree.arcs[a].b : tree.arcs[a].a;
        if (!seen[m]) {
          seen[m] = 1;
          ++reached;
          stack.push_back(m);
        }
      }
    }
    if (reached != tree.nodes.size())
      fail(ErrorKind::not_a_tree, "ridge set is disconnected after pruning");
    if (tree.arcs.size() + 1 != tree.nodes.size())
      fail(ErrorKind::not_a_tree, "ridge set contains a cycle after pruning");
  }

  // A cluster of mesh-scale arcs around one spot is the discrete shadow of a
  // single smooth cut point; collapse it.
  {
    double extent = 0;
    for (const auto& a : tree.nodes)
      for (const auto& b : tree.nodes)
        extent = std::max(extent, distance(mesh.embed(a.position), mesh.embed(b.position)));
    if (extent < std::max(2 * opts.spur_length_h * h, opts.collapse_extent_rel * dmax)) {
      CutLocusTree collapsed;
      collapsed.basepoint = tree.basepoint;
      CutLocusNode node;
      node.position = mesh.vertex_point(far_vertex);
      node.degree = 0;
      node.geodesic_count = 2;
      collapsed.nodes.push_back(node);
      collapsed.incident.emplace_back();
      collapsed.root = 0;
      return collapsed;
    }
  }

  tree.root = 0;
  return tree;
}

SurfacePoint CutLocusTree::arc_point(const TriMesh& mesh, Index arc, double t) const {
  const CutLocusArc& a = arcs[arc];
  return point_at_arclength(mesh, a.polyline, t * a.length);
}

std::vector<Index> CutLocusTree::subtree_nodes(Index from, Index via_arc) const {
  std::vector<Index> out{from};
  std::vector<char> seen(nodes.size(), 0);
  seen[from] = 1;
  std::vector<Index> stack{from};
  while (!stack.empty()) {
    Index n = stack.back();
    stack.pop_back();
    for (Index a : incident[n]) {
      if (n == from && a == via_arc) continue;
      Index m = arcs[a].a == n ? arcs[a].b : arcs[a].a;
      if (!seen[m]) {
        seen[m] = 1;
        out.push_back(m);
        stack.push_back(m);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Minimizing geodesics through corridors

namespace {

// Chord-frame angles (tangent-plane projection at x) of the tree arcs near x.
std::vector<double> local_tree_directions(const TriMesh& mesh, const CutLocusTree& tree,
                                          const SurfacePoint& x, double probe_r) {
  std::vector<Vec3> targets;
  Vec3 xx = mesh.embed(x);
  for (const auto& arc : tree.arcs) {
    const auto& pts = arc.polyline.points;
    double best = std::numeric_limits<double>::infinity();
    size_t bi = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
      double d = distance(mesh.embed(pts[i]), xx);
      if (d < best) {
        best = d;
        bi = i;
      }
    }
    if (best > 1.5 * probe_r) continue;
    for (int dirn : {-1, +1}) {
      long j = static_cast<long>(bi);
      while (j + dirn >= 0 && j + dirn < static_cast<long>(pts.size())) {
        j += dirn;
        if (distance(mesh.embed(pts[j]), xx) >= probe_r) break;
      }
      if (j != static_cast<long>(bi) && distance(mesh.embed(pts[j]), xx) > 0.3 * probe_r)
        targets.push_back(mesh.embed(pts[j]));
    }
  }
  std::vector<double> out;
  if (targets.empty()) return out;
  const auto& fv = mesh.face_vertices(x.face);
  Vec3 n = normalized(cross(mesh.position(fv[1]) - mesh.position(fv[0]),
                            mesh.position(fv[2]) - mesh.position(fv[0])));
  Vec3 u0 = normalized(mesh.position(fv[1]) - mesh.position(fv[0]));
  Vec3 v0 = cross(n, u0);
  for (const Vec3& tq : targets) {
    Vec3 d = tq - xx;
    double a = std::atan2(dot(d, v0), dot(d, u0));
    if (a < 0) a += 2 * kPi;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::fabs(a - b) < 0.05; }),
            out.end());
  return out;
}

}  // namespace

std::vector<DiscretePath> try_minimizing_geodesics(const DistanceGraph& graph,
                                                   const DistanceField& field,
                                                   const CutLocusTree& tree, const SurfacePoint& x,
                                                   int expected) {
  const TriMesh& mesh = graph.mesh();
  const double h = mesh.max_edge_length();
  double dx = field.at_point(x);
  double probe = std::max(3 * h, 0.02 * dx);

  std::vector<double> dirs = local_tree_directions(mesh, tree, x, probe);
  std::vector<double> seeds_phi;
  if (dirs.size() >= 2) {
    for (size_t i = 0; i < dirs.size(); ++i) {
      double a = dirs[i];
      double b = i + 1 < dirs.size() ? dirs[i + 1] : dirs[0] + 2 * kPi;
      seeds_phi.push_back(0.5 * (a + b));
    }
  } else {
    int nsec = std::max(expected * 3, 6);
    for (int i = 0; i < nsec; ++i) seeds_phi.push_back(2 * kPi * i / nsec);
  }

  std::vector<DiscretePath> cands(seeds_phi.size());
  std::vector<char> ok(seeds_phi.size(), 0);
  par::for_each_index(static_cast<std::int64_t>(seeds_phi.size()), [&](std::int64_t i) {
    // point_at_direction's fan frame and the chord frame differ by a fixed
    // rotation at x, so sector midpoints stay sector midpoints.
    SurfacePoint s = point_at_direction(mesh, x, seeds_phi[i], probe);
    DiscretePath w = field.witness_to(s);
    LocalJoin tail = join_through(mesh, {s, x});
    std::vector<SurfacePoint> all = w.points;
    for (size_t k = 1; k < tail.points.size(); ++k) all.push_back(tail.points[k]);
    DiscretePath full = make_path(mesh, std::move(all), PathKind::segment);
    ShortenOptions so;
    so.max_iter = 600;
    ShorteningResult sr = shorten(mesh, full, ShortenMode::bps, so);
    cands[i] = sr.terminal;
    ok[i] = 1;
  });

  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < cands.size(); ++i)
    if (ok[i]) best = std::min(best, cands[i].cached_length);
  double thresh = std::max(h, 1e-3 * 2 * dx);
  std::vector<DiscretePath> out;
  std::vector<size_t> order(cands.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return cands[a].cached_length < cands[b].cached_length; });
  for (size_t oi : order) {
    if (!ok[oi]) continue;
    const DiscretePath& c = cands[oi];
    if (c.cached_length > best * 1.01) continue;
    bool dup = false;
    for (const auto& kept : out) dup |= !paths_distinct(mesh, kept, c, thresh);
    if (!dup) out.push_back(c);
    if (static_cast<int>(out.size()) == expected) break;
  }
  return out;
}

std::vector<DiscretePath> minimizing_geodesics_to(const DistanceGraph& graph,
                                                  const DistanceField& field,
                                                  const CutLocusTree& tree, const SurfacePoint& x,
                                                  int expected) {
  auto out = try_minimizing_geodesics(graph, field, tree, x, expected);
  if (static_cast<int>(out.size()) < expected)
    fail(ErrorKind::not_enough_geodesics,
         "found " + std::to_string(out.size()) + " of " + std::to_string(expected) +
             " minimizing geodesics");
  return out;
}

// ---------------------------------------------------------------------------
// Bigons

Bigon make_bigon(const TriMesh& mesh, const DiscretePath& side_minus, const DiscretePath& side_plus,
                 const SurfacePoint& interior_seed) {
  Bigon b;
  b.side_minus = side_minus;
  b.side_plus = side_plus;
  b.vertex_x = side_minus.points.front();
  b.vertex_y = side_minus.points.back();
  DiscretePath loop = concat(mesh, side_minus, reverse_path(mesh, side_plus));
  b.region = region_from_loop(mesh, loop, interior_seed);
  return b;
}

BigonFamily bigon_family_along_edge(const DistanceGraph& graph, const DistanceField& field,
                                    const CutLocusTree& tree, Index arc, Index from_node, int grid,
                                    double distinct_threshold) {
  const TriMesh& mesh = graph.mesh();
  const CutLocusArc& a = tree.arcs[arc];
  bool forward = a.a == from_node;
  if (!forward && a.b != from_node)
    fail(ErrorKind::invalid_param, "arc is not incident to from_node");
  if (distinct_threshold <= 0) distinct_threshold = mesh.max_edge_length();

  BigonFamily fam;
  if (grid < 1) grid = 1;
  for (int k = 0; k <= grid; ++k) fam.params.push_back(static_cast<double>(k) / grid);

  auto sample = [&](double t) {
    double s = forward ? t : 1 - t;
    return tree.arc_point(mesh, arc, s);
  };

  std::vector<DiscretePath> minus(fam.params.size()), plus(fam.params.size());
  for (size_t k = 0; k < fam.params.size(); ++k) {
    SurfacePoint xt = sample(fam.params[k]);
    auto pair = try_minimizing_geodesics(graph, field, tree, xt, 2);
    if (pair.size() < 2) {
      if (pair.empty()) fail(ErrorKind::not_enough_geodesics, "no geodesic to a cut point");
      minus[k] = pair[0];
      plus[k] = pair[0];
    } else {
      minus[k] = pair[0];
      plus[k] = pair[1];
    }
    if (k > 0) {
      double keep = frechet_distance_chord(mesh, minus[k - 1], minus[k]) +
                    frechet_distance_chord(mesh, plus[k - 1], plus[k]);
      double swap = frechet_distance_chord(mesh, minus[k - 1], plus[k]) +
                    frechet_distance_chord(mesh, plus[k - 1], minus[k]);
      if (swap < keep) std::swap(minus[k], plus[k]);
    }
  }

  fam.minus = minus;
  fam.plus = plus;
  fam.trace.endpoints_fixed = true;
  for (size_t k = 0; k < fam.params.size(); ++k)
    fam.trace.append(concat(mesh, minus[k], reverse_path(mesh, plus[k])));
  fam.limit_minus = minus.back();
  fam.limit_plus = plus.back();
  fam.limits_equal = !paths_distinct(mesh, fam.limit_minus, fam.limit_plus, distinct_threshold);
  return fam;
}

}  // namespace geodesy
