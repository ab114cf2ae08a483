#include "geodesy/distance.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "geodesy/parallel.hpp"
#include "geodesy/shorten.hpp"

namespace geodesy {

DistanceGraph::DistanceGraph(const TriMesh& mesh, int steiner_per_edge)
    : mesh_(&mesh), k_(steiner_per_edge) {
  const Index nv = mesh.vertex_count();
  const Index ne = mesh.edge_count();
  pos_.resize(nv + ne * k_);
  for (Index v = 0; v < nv; ++v) pos_[v] = mesh.position(v);
  for (Index e = 0; e < ne; ++e) {
    Index h = mesh.edge_halfedge(e);
    Vec3 a = mesh.position(mesh.he_origin(h));
    Vec3 b = mesh.position(mesh.he_dest(h));
    for (int j = 0; j < k_; ++j) {
      double t = static_cast<double>(j + 1) / (k_ + 1);
      pos_[nv + e * k_ + j] = a * (1 - t) + b * t;
    }
  }
  // Per-face cliques over the 3 + 3k boundary nodes.
  std::vector<std::vector<std::pair<Index, double>>> adj(pos_.size());
  for (Index f = 0; f < mesh.face_count(); ++f) {
    std::vector<Index> nodes = face_nodes(f);
    for (size_t i = 0; i < nodes.size(); ++i) {
      for (size_t j = i + 1; j < nodes.size(); ++j) {
        double d = distance(pos_[nodes[i]], pos_[nodes[j]]);
        adj[nodes[i]].push_back({nodes[j], d});
        adj[nodes[j]].push_back({nodes[i], d});
      }
    }
  }
  offsets_.resize(pos_.size() + 1, 0);
  for (size_t n = 0; n < adj.size(); ++n) offsets_[n + 1] = offsets_[n] + static_cast<Index>(adj[n].size());
  nbr_.resize(offsets_.back());
  w_.resize(offsets_.back());
  for (size_t n = 0; n < adj.size(); ++n) {
    Index o = offsets_[n];
    for (size_t i = 0; i < adj[n].size(); ++i) {
      nbr_[o + i] = adj[n][i].first;
      w_[o + i] = adj[n][i].second;
    }
  }
}

std::vector<Index> DistanceGraph::face_nodes(Index f) const {
  const TriMesh& m = *mesh_;
  std::vector<Index> nodes;
  nodes.reserve(3 + 3 * k_);
  for (int c = 0; c < 3; ++c) nodes.push_back(m.face_vertices(f)[c]);
  for (int c = 0; c < 3; ++c) {
    Index e = m.he_edge(3 * f + c);
    for (int j = 0; j < k_; ++j) nodes.push_back(m.vertex_count() + e * k_ + j);
  }
  return nodes;
}

SurfacePoint DistanceGraph::node_point(Index n) const {
  const TriMesh& m = *mesh_;
  if (n < m.vertex_count()) return m.vertex_point(n);
  Index e = (n - m.vertex_count()) / k_;
  int j = (n - m.vertex_count()) % k_;
  double t = static_cast<double>(j + 1) / (k_ + 1);
  Index h = m.edge_halfedge(e);
  SurfacePoint p;
  p.face = m.he_face(h);
  p.bary = {0, 0, 0};
  p.bary[h % 3] = 1 - t;
  p.bary[(h % 3 + 1) % 3] = t;
  return p;
}

std::vector<Index> DistanceGraph::point_nodes(const SurfacePoint& p) const {
  const TriMesh& m = *mesh_;
  Index v = m.on_vertex(p);
  if (v != kInvalidIndex) return {v};
  std::vector<Index> nodes = face_nodes(p.face);
  Index h = m.on_edge_halfedge(p);
  if (h != kInvalidIndex) {
    Index g = m.he_face(m.he_twin(h));
    std::vector<Index> extra = face_nodes(g);
    nodes.insert(nodes.end(), extra.begin(), extra.end());
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  }
  return nodes;
}

DistanceField compute_distance_field(const DistanceGraph& graph, const SurfacePoint& source) {
  DistanceField field;
  field.graph = &graph;
  field.source = source;
  const Index n = graph.node_count();
  field.dist.assign(n, std::numeric_limits<double>::infinity());
  field.pred.assign(n, kInvalidIndex);

  using Item = std::pair<double, Index>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  Vec3 sp = graph.mesh().embed(source);
  for (Index s : graph.point_nodes(source)) {
    double d = distance(sp, graph.node_pos(s));
    if (d < field.dist[s]) {
      field.dist[s] = d;
      pq.push({d, s});
    }
  }
  const auto& off = graph.offsets();
  const auto& nbr = graph.neighbors();
  const auto& w = graph.weights();
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > field.dist[u] + 1e-15) continue;
    for (Index i = off[u]; i < off[u + 1]; ++i) {
      Index v = nbr[i];
      double nd = d + w[i];
      if (nd < field.dist[v] - 1e-15) {
        field.dist[v] = nd;
        field.pred[v] = u;
        pq.push({nd, v});
      }
    }
  }
  return field;
}

double DistanceField::at_point(const SurfacePoint& p) const {
  Vec3 pp = graph->mesh().embed(p);
  double best = std::numeric_limits<double>::infinity();
  for (Index n : graph->point_nodes(p)) best = std::min(best, dist[n] + distance(pp, graph->node_pos(n)));
  return best;
}

DiscretePath DistanceField::witness_to(const SurfacePoint& p) const {
  const TriMesh& m = graph->mesh();
  Vec3 pp = m.embed(p);
  double best = std::numeric_limits<double>::infinity();
  Index entry = kInvalidIndex;
  for (Index n : graph->point_nodes(p)) {
    double d = dist[n] + distance(pp, graph->node_pos(n));
    if (d < best) {
      best = d;
      entry = n;
    }
  }
  if (entry == kInvalidIndex) fail(ErrorKind::invalid_param, "unreachable point");
  std::vector<SurfacePoint> chain{p};
  for (Index n = entry; n != kInvalidIndex; n = pred[n]) chain.push_back(graph->node_point(n));
  chain.push_back(source);
  std::reverse(chain.begin(), chain.end());
  return make_path(m, std::move(chain), PathKind::segment);
}

namespace {

GeodesicResult straighten_witness(const TriMesh& mesh, DiscretePath witness, double rho, double tol) {
  ShortenOptions opts;
  opts.rho = rho > 0 ? rho : 8 * mesh.mean_edge_length();
  opts.tol = tol;
  opts.max_iter = 400;
  ShorteningResult sr = shorten(mesh, witness, ShortenMode::bps, opts);
  GeodesicResult out;
  out.path = sr.terminal;
  out.length = sr.terminal.cached_length;
  return out;
}

}  // namespace

GeodesicResult geodesic_distance(const DistanceField& field, const SurfacePoint& b, double rho,
                                 double tol) {
  const TriMesh& mesh = field.graph->mesh();
  if (distance(mesh.embed(field.source), mesh.embed(b)) < 1e-13) {
    GeodesicResult out;
    out.path = constant_path(mesh, field.source);
    out.length = 0;
    return out;
  }
  return straighten_witness(mesh, field.witness_to(b), rho, tol);
}

GeodesicResult geodesic_distance(const DistanceGraph& graph, const SurfacePoint& a,
                                 const SurfacePoint& b, double rho, double tol) {
  const TriMesh& mesh = graph.mesh();
  if (distance(mesh.embed(a), mesh.embed(b)) < 1e-13) {
    GeodesicResult out;
    out.path = constant_path(mesh, a);
    out.length = 0;
    return out;
  }
  DistanceField field = compute_distance_field(graph, a);
  return geodesic_distance(field, b, rho, tol);
}

// ---------------------------------------------------------------------------
// Level loops

std::vector<DiscretePath> extract_level_loops(const TriMesh& m,
                                              const std::vector<double>& vertex_dist, double r,
                                              double min_len) {
  auto above = [&](Index v) { return vertex_dist[v] > r; };
  // Halfedge h is crossed when its endpoints straddle the level.
  auto crossed = [&](Index h) { return above(m.he_origin(h)) != above(m.he_dest(h)); };
  auto crossing_point = [&](Index h) {
    Index u = m.he_origin(h), v = m.he_dest(h);
    double du = vertex_dist[u], dv = vertex_dist[v];
    double t = std::clamp((r - du) / (dv - du), 0.0, 1.0);
    SurfacePoint p;
    p.face = m.he_face(h);
    p.bary = {0, 0, 0};
    p.bary[h % 3] = 1 - t;
    p.bary[(h % 3 + 1) % 3] = t;
    return p;
  };

  std::vector<char> done(m.halfedge_count(), 0);
  std::vector<DiscretePath> loops;
  for (Index h0 = 0; h0 < m.halfedge_count(); ++h0) {
    if (done[h0] || !crossed(h0)) continue;
    // Walk the level curve face by face.
    std::vector<SurfacePoint> pts;
    Index h = h0;
    bool closed_ok = false;
    for (Index steps = 0; steps <= m.halfedge_count(); ++steps) {
      done[h] = 1;
      done[m.he_twin(h)] = 1;
      pts.push_back(crossing_point(h));
      // Exit edge of the face entered across twin(h).
      Index ht = m.he_twin(h);
      Index e1 = m.he_next(ht), e2 = m.he_next(e1);
      Index hn = crossed(e1) ? e1 : (crossed(e2) ? e2 : kInvalidIndex);
      if (hn == kInvalidIndex) break;
      h = hn;
      if (h == h0) {
        closed_ok = true;
        break;
      }
    }
    if (!closed_ok || pts.size() < 3) continue;
    DiscretePath loop = make_path(m, std::move(pts), PathKind::free_loop);
    if (loop.cached_length >= min_len) loops.push_back(std::move(loop));
  }
  return loops;
}

// ---------------------------------------------------------------------------
// Metric summary

MetricSummary metric_summary(const DistanceGraph& graph, int samples, std::uint64_t seed) {
  const TriMesh& mesh = graph.mesh();
  if (samples < 2) fail(ErrorKind::invalid_param, "diameter needs samples >= 2");
  MetricSummary ms;
  ms.samples = samples;
  ms.seed = seed;
  ms.mesh_resolution_h = mesh.max_edge_length();

  std::mt19937_64 rng(seed);
  std::vector<Index> starts;
  for (int s = 0; s < samples; ++s)
    starts.push_back(static_cast<Index>(rng() % static_cast<std::uint64_t>(mesh.vertex_count())));

  // Farthest-point iterations from each start (two hops), in parallel.
  struct Cand {
    Index a = 0, b = 0;
    double d = 0;
  };
  std::vector<Cand> cands(starts.size());
  par::for_each_index(static_cast<std::int64_t>(starts.size()), [&](std::int64_t i) {
    Index cur = starts[i];
    Cand best;
    for (int hop = 0; hop < 2; ++hop) {
      DistanceField f = compute_distance_field(graph, mesh.vertex_point(cur));
      Index far = 0;
      for (Index v = 0; v < mesh.vertex_count(); ++v)
        if (f.dist[v] > f.dist[far]) far = v;
      if (f.dist[far] > best.d) best = {cur, far, f.dist[far]};
      cur = far;
    }
    cands[i] = best;
  });
  Cand top;
  for (const Cand& c : cands)
    if (c.d > top.d) top = c;

  // Tighten the witness between the winning pair.
  GeodesicResult ref = geodesic_distance(graph, mesh.vertex_point(top.a), mesh.vertex_point(top.b));
  ms.diameter_d = std::max(ref.length, top.d * 0.98);  // straightening only shrinks

  // Injectivity estimate: half the shortest periodic geodesic found by BPFL
  // probes on distance-level loops, floored at twice the mesh resolution.
  double shortest_loop = std::numeric_limits<double>::infinity();
  DistanceField probe_field = compute_distance_field(graph, mesh.vertex_point(top.a));
  std::vector<double> vdist(mesh.vertex_count());
  for (Index v = 0; v < mesh.vertex_count(); ++v) vdist[v] = probe_field.dist[v];
  std::vector<DiscretePath> probes;
  for (double frac : {0.35, 0.5, 0.65}) {
    for (auto& loop : extract_level_loops(mesh, vdist, frac * ms.diameter_d, 4 * ms.mesh_resolution_h))
      probes.push_back(std::move(loop));
  }
  std::vector<double> probe_result(probes.size(), std::numeric_limits<double>::infinity());
  par::for_each_index(static_cast<std::int64_t>(probes.size()), [&](std::int64_t i) {
    ShortenOptions so;
    so.tol = 5e-3;
    so.max_iter = 600;
    ShorteningResult sr = shorten(mesh, probes[i], ShortenMode::bpfl, so);
    if (sr.classification == TerminalClass::periodic_geodesic && sr.converged)
      probe_result[i] = sr.terminal.cached_length;
  });
  for (double L : probe_result) shortest_loop = std::min(shortest_loop, L);

  double cand = std::min(ms.diameter_d / 4, shortest_loop / 2);
  ms.inj_estimate_rho = std::max(cand, 2 * ms.mesh_resolution_h);
  return ms;
}

// ---------------------------------------------------------------------------
// Intrinsic Frechet distance (declared in path.hpp)

double frechet_distance(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b,
                        PairMetric metric) {
  if (metric == PairMetric::chord) return frechet_distance_chord(mesh, a, b);
  DistanceGraph graph(mesh, 1);
  const size_t n = a.points.size(), m = b.points.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(m));
  par::for_each_index(static_cast<std::int64_t>(n), [&](std::int64_t i) {
    DistanceField f = compute_distance_field(graph, a.points[i]);
    for (size_t j = 0; j < m; ++j) d[i][j] = f.at_point(b.points[j]);
  });
  std::vector<double> prev(m), cur(m);
  for (size_t j = 0; j < m; ++j) prev[j] = j == 0 ? d[0][0] : std::max(prev[j - 1], d[0][j]);
  for (size_t i = 1; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) {
      double best = prev[j];
      if (j > 0) best = std::min(best, std::min(prev[j - 1], cur[j - 1]));
      cur[j] = std::max(best, d[i][j]);
    }
    std::swap(prev, cur);
  }
  return prev[m - 1];
}

}  // namespace geodesy
