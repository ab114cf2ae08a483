#include "geodesy/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace geodesy {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::non_manifold: return "NonManifold";
    case ErrorKind::degenerate_face: return "DegenerateFace";
    case ErrorKind::disconnected_mesh: return "DisconnectedMesh";
    case ErrorKind::invalid_param: return "InvalidParam";
    case ErrorKind::endpoint_mismatch: return "EndpointMismatch";
    case ErrorKind::segment_too_long: return "SegmentTooLong";
    case ErrorKind::max_iter_exceeded: return "MaxIterExceeded";
    case ErrorKind::not_a_tree: return "NotATree";
    case ErrorKind::not_enough_geodesics: return "NotEnoughGeodesics";
    case ErrorKind::non_geodesic_boundary: return "NonGeodesicBoundary";
    case ErrorKind::angle_hypothesis_violated: return "AngleHypothesisViolated";
    case ErrorKind::recursion_depth_exceeded: return "RecursionDepthExceeded";
    case ErrorKind::assembly_gap: return "AssemblyGap";
    case ErrorKind::inconsistent_degree: return "InconsistentDegree";
    case ErrorKind::escaped_annulus: return "EscapedAnnulus";
    case ErrorKind::degenerate_geodesic: return "DegenerateGeodesic";
    case ErrorKind::domain_error: return "DomainError";
    case ErrorKind::io_error: return "IoError";
  }
  return "Error";
}

SurfacePoint::SurfacePoint(Index f, double b0, double b1, double b2) : face(f), bary{b0, b1, b2} {
  for (double& b : bary) {
    if (b < 0 && b > -1e-12) b = 0;
  }
  double s = bary[0] + bary[1] + bary[2];
  if (s <= 0) fail(ErrorKind::invalid_param, "barycentric coordinates sum to zero");
  for (double& b : bary) b /= s;
}

TriMesh::TriMesh(std::vector<Vec3> vertices, std::vector<std::array<Index, 3>> faces)
    : positions_(std::move(vertices)), faces_(std::move(faces)) {
  build_connectivity();
}

void TriMesh::build_connectivity() {
  const Index nf = face_count();
  const Index nv = vertex_count();
  if (nf == 0 || nv == 0) fail(ErrorKind::parse_error, "empty mesh");

  for (Index f = 0; f < nf; ++f) {
    const auto& fv = faces_[f];
    for (Index v : fv) {
      if (v < 0 || v >= nv) fail(ErrorKind::parse_error, "face references invalid vertex");
    }
    if (fv[0] == fv[1] || fv[1] == fv[2] || fv[0] == fv[2])
      fail(ErrorKind::degenerate_face, "face with repeated vertex " + std::to_string(f));
  }

  he_twin_.assign(3 * nf, kInvalidIndex);
  he_edge_.assign(3 * nf, kInvalidIndex);
  vertex_halfedge_.assign(nv, kInvalidIndex);

  std::map<std::pair<Index, Index>, Index> open_halfedges;
  for (Index f = 0; f < nf; ++f) {
    for (int c = 0; c < 3; ++c) {
      Index h = 3 * f + c;
      Index a = he_origin(h), b = he_dest(h);
      if (vertex_halfedge_[a] == kInvalidIndex) vertex_halfedge_[a] = h;
      auto key = std::make_pair(b, a);
      auto it = open_halfedges.find(key);
      if (it != open_halfedges.end()) {
        if (he_twin_[it->second] != kInvalidIndex)
          fail(ErrorKind::non_manifold, "edge with more than two faces");
        he_twin_[h] = it->second;
        he_twin_[it->second] = h;
        open_halfedges.erase(it);
      } else {
        auto same = std::make_pair(a, b);
        if (open_halfedges.count(same))
          fail(ErrorKind::non_manifold, "inconsistent orientation or duplicated face");
        open_halfedges.emplace(same, h);
      }
    }
  }
  if (!open_halfedges.empty())
    fail(ErrorKind::non_manifold, std::to_string(open_halfedges.size()) + " boundary halfedges");

  for (Index h = 0; h < 3 * nf; ++h) {
    if (he_edge_[h] != kInvalidIndex) continue;
    Index e = static_cast<Index>(edge_halfedge_.size());
    he_edge_[h] = e;
    he_edge_[he_twin_[h]] = e;
    edge_halfedge_.push_back(h);
  }

  edge_lengths_.resize(edge_halfedge_.size());
  max_edge_length_ = 0;
  double sum = 0;
  for (Index e = 0; e < edge_count(); ++e) {
    Index h = edge_halfedge_[e];
    double len = distance(positions_[he_origin(h)], positions_[he_dest(h)]);
    if (!(len > 0)) fail(ErrorKind::degenerate_face, "zero-length edge");
    edge_lengths_[e] = len;
    max_edge_length_ = std::max(max_edge_length_, len);
    sum += len;
  }
  mean_edge_length_ = sum / edge_count();

  for (Index f = 0; f < nf; ++f) {
    double a = he_length(3 * f), b = he_length(3 * f + 1), c = he_length(3 * f + 2);
    if (a + b <= c || b + c <= a || a + c <= b)
      fail(ErrorKind::degenerate_face, "triangle inequality violated in face " + std::to_string(f));
  }
}

std::vector<Index> TriMesh::vertex_outgoing(Index v) const {
  std::vector<Index> out;
  Index h0 = vertex_halfedge_[v];
  Index h = h0;
  do {
    out.push_back(h);
    h = he_next(he_next(h));  // halfedge into v within same face
    h = he_twin_[h];          // outgoing again
  } while (h != h0 && out.size() <= he_twin_.size());
  return out;
}

std::vector<Index> TriMesh::vertex_faces(Index v) const {
  std::vector<Index> out;
  for (Index h : vertex_outgoing(v)) out.push_back(he_face(h));
  return out;
}

Index TriMesh::shared_halfedge(Index f, Index g) const {
  for (int c = 0; c < 3; ++c) {
    Index h = 3 * f + c;
    if (he_face(he_twin_[h]) == g) return h;
  }
  return kInvalidIndex;
}

double TriMesh::face_area(Index f) const {
  const auto& fv = faces_[f];
  return 0.5 * norm(cross(positions_[fv[1]] - positions_[fv[0]], positions_[fv[2]] - positions_[fv[0]]));
}

double TriMesh::total_area() const {
  double a = 0;
  for (Index f = 0; f < face_count(); ++f) a += face_area(f);
  return a;
}

double TriMesh::corner_angle(Index f, int corner) const {
  // Angle at corner between the two adjacent edges, from intrinsic lengths.
  double a = he_length(3 * f + corner);                // corner -> corner+1
  double c = he_length(3 * f + (corner + 2) % 3);      // corner+2 -> corner
  double b = he_length(3 * f + (corner + 1) % 3);      // opposite edge
  double cosg = (a * a + c * c - b * b) / (2 * a * c);
  return std::acos(std::clamp(cosg, -1.0, 1.0));
}

double TriMesh::vertex_angle_sum(Index v) const {
  double sum = 0;
  for (Index h : vertex_outgoing(v)) sum += corner_angle(he_face(h), h % 3);
  return sum;
}

Vec3 TriMesh::embed(const SurfacePoint& p) const {
  const auto& fv = faces_[p.face];
  return positions_[fv[0]] * p.bary[0] + positions_[fv[1]] * p.bary[1] + positions_[fv[2]] * p.bary[2];
}

SurfacePoint TriMesh::vertex_point(Index v) const {
  Index h = vertex_halfedge_[v];
  Index f = he_face(h);
  int corner = h % 3;
  SurfacePoint p;
  p.face = f;
  p.bary = {0, 0, 0};
  p.bary[corner] = 1;
  return p;
}

Index TriMesh::on_vertex(const SurfacePoint& p, double tol) const {
  for (int c = 0; c < 3; ++c)
    if (p.bary[c] >= 1 - tol) return faces_[p.face][c];
  return kInvalidIndex;
}

Index TriMesh::on_edge_halfedge(const SurfacePoint& p, double tol) const {
  for (int c = 0; c < 3; ++c) {
    if (p.bary[c] <= tol) {
      // Opposite edge runs from corner (c+1) to corner (c+2).
      return 3 * p.face + (c + 1) % 3;
    }
  }
  return kInvalidIndex;
}

bool TriMesh::express_in_face(const SurfacePoint& p, Index f, SurfacePoint& out) const {
  if (p.face == f) {
    out = p;
    return true;
  }
  Index v = on_vertex(p);
  if (v != kInvalidIndex) {
    for (int c = 0; c < 3; ++c) {
      if (faces_[f][c] == v) {
        out.face = f;
        out.bary = {0, 0, 0};
        out.bary[c] = 1;
        return true;
      }
    }
    return false;
  }
  Index h = on_edge_halfedge(p);
  if (h == kInvalidIndex) return false;
  Index t = he_twin_[h];
  if (he_face(t) != f) return false;
  // p = (1-s)*origin(h) + s*dest(h); the twin runs dest(h) -> origin(h).
  int corner_o = h % 3;
  double s = p.bary[(corner_o + 1) % 3];
  out.face = f;
  out.bary = {0, 0, 0};
  out.bary[t % 3] = s;
  out.bary[(t % 3 + 1) % 3] = 1 - s;
  return true;
}

bool TriMesh::common_face(const SurfacePoint& a, const SurfacePoint& b, Index& f) const {
  SurfacePoint tmp;
  if (express_in_face(b, a.face, tmp)) {
    f = a.face;
    return true;
  }
  if (express_in_face(a, b.face, tmp)) {
    f = b.face;
    return true;
  }
  // Both may sit on edges/vertices of some third face.
  Index va = on_vertex(a);
  if (va != kInvalidIndex) {
    for (Index fa : vertex_faces(va)) {
      if (express_in_face(b, fa, tmp)) {
        f = fa;
        return true;
      }
    }
  }
  Index ha = on_edge_halfedge(a);
  if (ha != kInvalidIndex) {
    Index other = he_face(he_twin_[ha]);
    if (express_in_face(b, other, tmp)) {
      f = other;
      return true;
    }
  }
  return false;
}

TopologyReport TriMesh::validate_topology() const {
  TopologyReport rep;
  rep.closed = true;    // construction rejects boundary
  rep.oriented = true;  // construction rejects inconsistent twins
  // Connected components by face flood fill.
  std::vector<char> seen(face_count(), 0);
  Index components = 0;
  for (Index f0 = 0; f0 < face_count(); ++f0) {
    if (seen[f0]) continue;
    ++components;
    std::vector<Index> stack{f0};
    seen[f0] = 1;
    while (!stack.empty()) {
      Index f = stack.back();
      stack.pop_back();
      for (int c = 0; c < 3; ++c) {
        Index g = he_face(he_twin_[3 * f + c]);
        if (!seen[g]) {
          seen[g] = 1;
          stack.push_back(g);
        }
      }
    }
  }
  rep.components = components;
  if (components > 1) fail(ErrorKind::disconnected_mesh, std::to_string(components) + " components");
  int chi = vertex_count() - edge_count() + face_count();
  rep.genus = (2 - chi) / 2;
  return rep;
}

// ---------------------------------------------------------------------------
// IO

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    return line.substr(pos);
  }
  return "";
}

TriMesh load_off(std::istream& in) {
  std::string header = next_content_line(in);
  if (header.substr(0, 3) != "OFF") fail(ErrorKind::parse_error, "missing OFF header");
  std::string counts = header.size() > 4 ? header.substr(3) : next_content_line(in);
  if (counts.find_first_not_of(" \t") == std::string::npos) counts = next_content_line(in);
  std::istringstream cs(counts);
  long nv = 0, nf = 0, ne = 0;
  if (!(cs >> nv >> nf >> ne)) fail(ErrorKind::parse_error, "bad OFF counts");
  std::vector<Vec3> verts;
  verts.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    std::istringstream ls(next_content_line(in));
    Vec3 p;
    if (!(ls >> p.x >> p.y >> p.z)) fail(ErrorKind::parse_error, "bad OFF vertex line");
    verts.push_back(p);
  }
  std::vector<std::array<Index, 3>> faces;
  faces.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    std::istringstream ls(next_content_line(in));
    int n = 0;
    if (!(ls >> n)) fail(ErrorKind::parse_error, "bad OFF face line");
    if (n != 3) fail(ErrorKind::parse_error, "only triangle faces supported");
    std::array<Index, 3> fv{};
    if (!(ls >> fv[0] >> fv[1] >> fv[2])) fail(ErrorKind::parse_error, "bad OFF face indices");
    faces.push_back(fv);
  }
  return TriMesh(std::move(verts), std::move(faces));
}

Index parse_obj_vertex_ref(const std::string& token, Index nv) {
  // Accepts "i", "i/j", "i//k", "i/j/k"; 1-based, negatives count from end.
  std::string head = token.substr(0, token.find('/'));
  long idx = 0;
  try {
    idx = std::stol(head);
  } catch (...) {
    fail(ErrorKind::parse_error, "bad OBJ vertex reference '" + token + "'");
  }
  if (idx < 0) idx = nv + 1 + idx;
  if (idx < 1 || idx > nv) fail(ErrorKind::parse_error, "OBJ vertex index out of range");
  return static_cast<Index>(idx - 1);
}

TriMesh load_obj(std::istream& in) {
  std::vector<Vec3> verts;
  std::vector<std::array<Index, 3>> faces;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 p;
      if (!(ls >> p.x >> p.y >> p.z)) fail(ErrorKind::parse_error, "bad OBJ vertex line");
      verts.push_back(p);
    } else if (tag == "f") {
      std::vector<std::string> refs;
      std::string tok;
      while (ls >> tok) refs.push_back(tok);
      if (refs.size() != 3) fail(ErrorKind::parse_error, "only triangle faces supported");
      std::array<Index, 3> fv{};
      for (int c = 0; c < 3; ++c)
        fv[c] = parse_obj_vertex_ref(refs[c], static_cast<Index>(verts.size()));
      faces.push_back(fv);
    }
  }
  if (verts.empty() || faces.empty()) fail(ErrorKind::parse_error, "OBJ without vertices or faces");
  return TriMesh(std::move(verts), std::move(faces));
}

}  // namespace

TriMesh load_mesh(std::istream& in, MeshFormat format) {
  return format == MeshFormat::off ? load_off(in) : load_obj(in);
}

TriMesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io_error, "cannot open " + path);
  auto dot = path.rfind('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (char& ch : ext) ch = static_cast<char>(std::tolower(ch));
  if (ext == "off") return load_mesh(in, MeshFormat::off);
  if (ext == "obj") return load_mesh(in, MeshFormat::obj);
  fail(ErrorKind::parse_error, "unknown mesh extension ." + ext);
}

void save_obj(std::ostream& out, const TriMesh& mesh) {
  out.precision(17);
  for (Index v = 0; v < mesh.vertex_count(); ++v) {
    const Vec3& p = mesh.position(v);
    out << "v " << p.x << " " << p.y << " " << p.z << "\n";
  }
  for (Index f = 0; f < mesh.face_count(); ++f) {
    const auto& fv = mesh.face_vertices(f);
    out << "f " << fv[0] + 1 << " " << fv[1] + 1 << " " << fv[2] + 1 << "\n";
  }
}

// ---------------------------------------------------------------------------
// Generators

namespace {

struct MeshSoup {
  std::vector<Vec3> verts;
  std::vector<std::array<Index, 3>> faces;
};

MeshSoup icosahedron() {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  MeshSoup s;
  s.verts = {{-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
             {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
             {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : s.verts) v = normalized(v);
  s.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return s;
}

MeshSoup subdivide_on_sphere(const MeshSoup& in) {
  MeshSoup out;
  out.verts = in.verts;
  std::map<std::pair<Index, Index>, Index> midpoint;
  auto mid = [&](Index a, Index b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Index m = static_cast<Index>(out.verts.size());
    out.verts.push_back(normalized((out.verts[a] + out.verts[b]) * 0.5));
    midpoint.emplace(key, m);
    return m;
  };
  for (const auto& f : in.faces) {
    Index ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
    out.faces.push_back({f[0], ab, ca});
    out.faces.push_back({f[1], bc, ab});
    out.faces.push_back({f[2], ca, bc});
    out.faces.push_back({ab, bc, ca});
  }
  return out;
}

MeshSoup unit_icosphere(int subdivision) {
  MeshSoup s = icosahedron();
  for (int i = 0; i < subdivision; ++i) s = subdivide_on_sphere(s);
  return s;
}

// Rotationally symmetric dumbbell profile r(z): two spherical bulbs of radius
// R joined by a neck of length L whose minimum radius (at z = 0) is exactly
// neck_r, giving a waist circle that is a periodic geodesic of length
// 2*pi*neck_r.
struct DumbbellProfile {
  double R, neck_r, L;
  double att;         // attachment polar angle on the bulb sphere
  double zc;          // bulb center offset along the axis
  double z_pole;      // axial position of the far pole

  DumbbellProfile(double R_, double neck_r_, double L_) : R(R_), neck_r(neck_r_), L(L_) {
    // Attach the neck where the bulb sphere has radius r_att >= neck_r so the
    // blend dips down to neck_r at the waist with positive second derivative.
    double r_att = std::min(1.6 * neck_r, 0.9 * R);
    att = std::asin(std::clamp(r_att / R, 0.0, 1.0));
    zc = L / 2 + R * std::cos(att);
    z_pole = zc + R;
  }

  // Axial parameter t in [0,1] maps to (z, r). t in [0, 0.5] is the +z half.
  // Profile: pole cap of bulb down to the attachment circle, then a cosine
  // blend from r_att at z = L/2 to neck_r at z = 0.
  void eval(double t, double& z, double& r) const {
    double u = 2 * std::fabs(t - 0.5);  // 1 at poles, 0 at waist
    bool positive = t >= 0.5;
    double r_att = R * std::sin(att);
    // Split u: [0, u_split] neck blend, [u_split, 1] bulb arc.
    double neck_span = (L / 2) / (L / 2 + R * (kPi - att));
    double zz, rr;
    if (u <= neck_span) {
      double s = neck_span > 0 ? u / neck_span : 0;  // 0 at waist, 1 at attachment
      zz = s * (L / 2);
      double blend = 0.5 - 0.5 * std::cos(s * kPi);  // smooth, zero slope at both ends
      rr = neck_r + (r_att - neck_r) * blend;
    } else {
      double s = (u - neck_span) / (1 - neck_span);  // 0 at attachment, 1 at pole
      double theta = att + s * (kPi - att);          // polar angle from neck-side pole
      zz = zc - R * std::cos(theta);
      rr = R * std::sin(theta);
    }
    z = positive ? zz : -zz;
    r = rr;
  }

  static constexpr double kPi = 3.14159265358979323846;
};

MeshSoup revolve(const DumbbellProfile& prof, int n_axial, int n_radial) {
  MeshSoup s;
  // Rings between the two poles; the poles are single vertices.
  std::vector<std::vector<Index>> rings;
  for (int i = 1; i < n_axial; ++i) {
    double t = static_cast<double>(i) / n_axial;
    double z, r;
    prof.eval(t, z, r);
    std::vector<Index> ring;
    for (int j = 0; j < n_radial; ++j) {
      double a = 2 * DumbbellProfile::kPi * j / n_radial;
      ring.push_back(static_cast<Index>(s.verts.size()));
      s.verts.push_back({r * std::cos(a), r * std::sin(a), z});
    }
    rings.push_back(std::move(ring));
  }
  Index pole_neg = static_cast<Index>(s.verts.size());
  s.verts.push_back({0, 0, -prof.z_pole});
  Index pole_pos = static_cast<Index>(s.verts.size());
  s.verts.push_back({0, 0, prof.z_pole});

  for (int j = 0; j < n_radial; ++j) {
    int jn = (j + 1) % n_radial;
    s.faces.push_back({pole_neg, rings.front()[jn], rings.front()[j]});
    s.faces.push_back({pole_pos, rings.back()[j], rings.back()[jn]});
  }
  for (size_t i = 0; i + 1 < rings.size(); ++i) {
    for (int j = 0; j < n_radial; ++j) {
      int jn = (j + 1) % n_radial;
      Index a = rings[i][j], b = rings[i][jn], c = rings[i + 1][j], d = rings[i + 1][jn];
      // Alternate the quad diagonal so the triangulation has no global twist.
      if ((i + j) % 2 == 0) {
        s.faces.push_back({a, b, c});
        s.faces.push_back({b, d, c});
      } else {
        s.faces.push_back({a, b, d});
        s.faces.push_back({a, d, c});
      }
    }
  }
  return s;
}

}  // namespace

TriMesh generate_mesh(const GeneratorSpec& spec) {
  if (spec.subdivision < 0) fail(ErrorKind::invalid_param, "subdivision must be >= 0");
  switch (spec.shape) {
    case GeneratorSpec::Shape::round_sphere: {
      if (spec.a <= 0) fail(ErrorKind::invalid_param, "sphere radius must be positive");
      MeshSoup s = unit_icosphere(spec.subdivision);
      for (Vec3& v : s.verts) v = v * spec.a;
      return TriMesh(std::move(s.verts), std::move(s.faces));
    }
    case GeneratorSpec::Shape::ellipsoid: {
      if (spec.a <= 0 || spec.b <= 0 || spec.c <= 0)
        fail(ErrorKind::invalid_param, "ellipsoid semi-axes must be positive");
      MeshSoup s = unit_icosphere(spec.subdivision);
      for (Vec3& v : s.verts) v = {v.x * spec.a, v.y * spec.b, v.z * spec.c};
      return TriMesh(std::move(s.verts), std::move(s.faces));
    }
    case GeneratorSpec::Shape::dumbbell: {
      if (spec.bulb_r <= 0 || spec.neck_r <= 0 || spec.neck_len <= 0)
        fail(ErrorKind::invalid_param, "dumbbell parameters must be positive");
      if (spec.neck_r >= spec.bulb_r)
        fail(ErrorKind::invalid_param, "neck radius must be smaller than bulb radius");
      DumbbellProfile prof(spec.bulb_r, spec.neck_r, spec.neck_len);
      // Resolution scales like the icosphere subdivisions.
      int n_radial = 12 << std::min(spec.subdivision, 6);
      double total = spec.neck_len + 2 * spec.bulb_r * (DumbbellProfile::kPi - prof.att);
      int n_axial = std::max(8, static_cast<int>(std::ceil(
                                   total / (2 * DumbbellProfile::kPi * spec.bulb_r) * 2 * n_radial)));
      if (n_axial % 2) ++n_axial;  // even count puts a vertex ring exactly at the waist
      MeshSoup s = revolve(prof, n_axial, n_radial);
      return TriMesh(std::move(s.verts), std::move(s.faces));
    }
  }
  fail(ErrorKind::invalid_param, "unknown generator shape");
}

GeneratorSpec parse_generator(const std::string& text, int subdivision) {
  GeneratorSpec spec;
  spec.subdivision = subdivision;
  auto open = text.find('(');
  auto close = text.rfind(')');
  std::string name = text.substr(0, open);
  std::vector<double> args;
  if (open != std::string::npos && close != std::string::npos && close > open) {
    std::string inner = text.substr(open + 1, close - open - 1);
    std::istringstream is(inner);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      try {
        args.push_back(std::stod(tok));
      } catch (...) {
        fail(ErrorKind::parse_error, "bad generator argument '" + tok + "'");
      }
    }
  }
  if (name == "round_sphere") {
    spec.shape = GeneratorSpec::Shape::round_sphere;
    spec.a = args.empty() ? 1 : args[0];
  } else if (name == "ellipsoid") {
    spec.shape = GeneratorSpec::Shape::ellipsoid;
    if (args.size() != 3) fail(ErrorKind::parse_error, "ellipsoid(a,b,c) expects 3 arguments");
    spec.a = args[0];
    spec.b = args[1];
    spec.c = args[2];
  } else if (name == "dumbbell") {
    spec.shape = GeneratorSpec::Shape::dumbbell;
    if (args.size() != 3) fail(ErrorKind::parse_error, "dumbbell(R,neck_r,neck_len) expects 3 arguments");
    spec.bulb_r = args[0];
    spec.neck_r = args[1];
    spec.neck_len = args[2];
  } else {
    fail(ErrorKind::parse_error, "unknown generator '" + name + "'");
  }
  return spec;
}

}  // namespace geodesy
