#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geodesy/distance.hpp"
#include "geodesy/shorten.hpp"
#include "support.hpp"

using namespace geodesy;
using namespace geodesy::testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Length-monotonicity over a recorded trace, the invariant asserted on every
// shortening run.
void check_monotone(const TriMesh& m, const HomotopyTrace& t) {
  for (size_t i = 0; i + 1 < t.frames.size(); ++i)
    CHECK(t.frames[i + 1].cached_length <= t.frames[i].cached_length + 1e-9);
  (void)m;
}

}  // namespace

TEST_CASE("hexagonal octahedron equator is already geodesic") {
  TriMesh m = octahedron();
  // Midpoints of the six edges crossed by the plane x+y+z = const form a
  // closed geodesic of the octahedron; by symmetry every unfolding is straight.
  std::vector<Vec3> hex = {{0.5, 0.5, 0}, {0, 0.5, 0.5}, {-0.5, 0, 0.5},
                           {-0.5, -0.5, 0}, {0, -0.5, -0.5}, {0.5, 0, -0.5}};
  std::vector<SurfacePoint> sp;
  for (const Vec3& p : hex) sp.push_back(project_to_mesh(m, p));
  DiscretePath loop = make_path(m, sp, PathKind::free_loop);
  GeodesicTest gt = is_geodesic(m, loop, 1e-9);
  CHECK(gt.pass);
  CHECK(gt.max_defect < 1e-9);
}

TEST_CASE("octahedron square equator through vertices is straightest by symmetry") {
  TriMesh m = octahedron();
  std::vector<SurfacePoint> sp = {m.vertex_point(0), m.vertex_point(2), m.vertex_point(1),
                                  m.vertex_point(3)};
  DiscretePath loop = make_path(m, sp, PathKind::free_loop);
  GeodesicTest gt = is_geodesic(m, loop, 1e-9);
  CHECK(gt.max_defect < 1e-9);  // equal angles on both sides at every vertex
}

TEST_CASE("right-angle corner path has defect about pi/2") {
  TriMesh m = icosphere(3);
  auto leg1 = great_circle_points({1, 0, 0}, {0, 1, 0}, 48);
  auto leg2 = great_circle_points({0, 1, 0}, {0, 0, 1}, 48);
  std::vector<Vec3> pts = leg1;
  pts.insert(pts.end(), leg2.begin() + 1, leg2.end());
  DiscretePath p = path_from_3d(m, pts, PathKind::segment);
  GeodesicTest gt = is_geodesic(m, p, 1e-3);
  CHECK_FALSE(gt.pass);
  CHECK(gt.max_defect == doctest::Approx(kPi / 2).epsilon(0.05));
}

TEST_CASE("great-circle section polyline has small turning defect") {
  TriMesh m = icosphere(4);
  DiscretePath circle = plane_section_loop(m, normalized(Vec3{0.3, -0.2, 0.93}));
  CHECK(circle.cached_length == doctest::Approx(2 * kPi).epsilon(0.01));
  GeodesicTest gt = is_geodesic(m, circle, 0.01);
  CHECK(gt.max_defect < 0.01);
}

TEST_CASE("midpoint_step leaves a geodesic unchanged and rejects long segments") {
  TriMesh m = icosphere(3);
  DiscretePath circle = plane_section_loop(m, {0, 0, 1});
  double rho = 8 * m.mean_edge_length();
  DiscretePath stepped = midpoint_step(m, circle, rho);
  CHECK(stepped.cached_length <= circle.cached_length + 1e-12);
  CHECK(stepped.cached_length >= circle.cached_length - 1e-4);
  CHECK(is_geodesic(m, stepped, 0.02).pass);

  // A single in-face segment longer than rho/2 must be rejected.
  DiscretePath in_face = make_path(
      m, {SurfacePoint(0, 0.9, 0.05, 0.05), SurfacePoint(0, 0.05, 0.9, 0.05)}, PathKind::segment);
  CHECK_THROWS_AS(midpoint_step(m, in_face, in_face.cached_length), Error);
}

TEST_CASE("midpoint_step strictly shortens a perturbed arc") {
  TriMesh m = icosphere(3);
  std::vector<Vec3> pts;
  for (int i = 0; i <= 128; ++i) {
    double t = static_cast<double>(i) / 128;
    double ang = t * kPi / 2;
    double wob = 0.08 * std::sin(6 * kPi * t);
    Vec3 p{std::cos(ang), std::sin(ang), wob};
    pts.push_back(normalized(p));
  }
  DiscretePath wavy = path_from_3d(m, pts, PathKind::segment);
  DiscretePath stepped = midpoint_step(m, wavy, 8 * m.mean_edge_length());
  CHECK(stepped.cached_length < wavy.cached_length - 1e-4);
}

TEST_CASE("BPS straightens a zigzag to the analytic great-circle distance") {
  TriMesh m = icosphere(3);
  Vec3 a{1, 0, 0};
  Vec3 b = normalized(Vec3{0.5, 0.7, 0.3});
  double analytic = std::acos(std::clamp(dot(a, normalized(b)), -1.0, 1.0));
  std::vector<Vec3> zig;
  auto base = great_circle_points(a, b, 64);
  for (size_t i = 0; i < base.size(); ++i) {
    Vec3 p = base[i];
    if (i % 2) p = normalized(p + Vec3{0, 0, 0.1});
    zig.push_back(p);
  }
  DiscretePath start = path_from_3d(m, zig, PathKind::segment);
  ShortenOptions opts;
  opts.record_trace = true;
  ShorteningResult r = shorten(m, start, ShortenMode::bps, opts);
  CHECK(r.converged);
  CHECK(r.classification == TerminalClass::geodesic_segment);
  CHECK(r.terminal.cached_length == doctest::Approx(analytic).epsilon(0.02));
  check_monotone(m, r.trace);
  CHECK(max_frame_gap(m, r.trace) <= m.max_edge_length() * 1.5);
  // Fixed endpoints.
  CHECK(distance(m.embed(r.terminal.points.front()), m.embed(start.points.front())) < 1e-9);
  CHECK(distance(m.embed(r.terminal.points.back()), m.embed(start.points.back())) < 1e-9);
}

TEST_CASE("BPFL on the dumbbell waist circle finds the periodic waist geodesic") {
  TriMesh m = dumbbell(1, 0.1, 1, 3);
  std::vector<Vec3> ring;
  for (int i = 0; i <= 64; ++i) {
    double a = 2 * kPi * i / 64;
    ring.push_back({0.13 * std::cos(a), 0.13 * std::sin(a), 0.12});
  }
  DiscretePath loop = path_from_3d(m, ring, PathKind::free_loop);
  ShortenOptions opts;
  opts.max_iter = 4000;
  ShorteningResult r = shorten(m, loop, ShortenMode::bpfl, opts);
  CHECK(r.classification == TerminalClass::periodic_geodesic);
  CHECK(r.terminal.cached_length == doctest::Approx(2 * kPi * 0.1).epsilon(0.02));
}

TEST_CASE("BPBL contracts a small contractible loop to its basepoint") {
  TriMesh m = icosphere(3);
  SurfacePoint base = project_to_mesh(m, {1, 0, 0});
  std::vector<Vec3> pts;
  pts.push_back({1, 0, 0});
  for (int i = 1; i < 48; ++i) {
    double a = 2 * kPi * i / 48;
    Vec3 center{0.92, 0.25, 0};
    Vec3 u{-0.25, 0.92, 0}, v{0, 0, 1};
    double r = 0.25;
    pts.push_back(normalized(center + u * (r * (std::cos(a) - 1) * 0.5) + v * (r * std::sin(a))));
  }
  pts.push_back({1, 0, 0});

  DiscretePath loop = path_from_3d(m, pts, PathKind::based_loop);
  SurfacePoint base2 = loop.points.front();
  ShortenOptions opts;
  opts.record_trace = true;
  opts.max_iter = 4000;
  ShorteningResult r = shorten(m, loop, ShortenMode::bpbl, opts);
  CHECK(r.classification == TerminalClass::constant_point);
  check_monotone(m, r.trace);
  // Trace ends at the basepoint.
  CHECK(distance(m.embed(r.terminal.points.front()), m.embed(base2)) < 1e-9);
  (void)base;
}

TEST_CASE("shortening monotonicity holds for seeded random paths on three meshes") {
  std::mt19937_64 rng(20250809);
  std::vector<TriMesh> meshes;
  meshes.push_back(icosphere(2));
  meshes.push_back(ellipsoid(1, 0.8, 0.6, 2));
  meshes.push_back(dumbbell(1, 0.25, 0.8, 2));
  int violations = 0;
  for (auto& m : meshes) {
    DistanceGraph g(m);
    for (int trial = 0; trial < 6; ++trial) {
      // Random graph witness between two random vertices, jittered inside
      // faces so it is wiggly but stays traceable.
      Index va = static_cast<Index>(rng() % m.vertex_count());
      Index vb = static_cast<Index>(rng() % m.vertex_count());
      if (va == vb) vb = (vb + 1) % m.vertex_count();
      DistanceField f = compute_distance_field(g, m.vertex_point(va));
      DiscretePath witness = f.witness_to(m.vertex_point(vb));
      witness = resample(m, witness, m.mean_edge_length() / 2);
      std::vector<SurfacePoint> sp = witness.points;
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (size_t i = 1; i + 1 < sp.size(); i += 2) {
        SurfacePoint& p = sp[i];
        double t = 0.6 * u(rng);
        for (int c = 0; c < 3; ++c) p.bary[c] = (1 - t) * p.bary[c] + t / 3;
      }
      DiscretePath path = make_path(m, sp, PathKind::segment);
      ShortenOptions opts;
      opts.record_trace = true;
      opts.max_iter = 1500;
      ShorteningResult r = shorten(m, path, ShortenMode::bps, opts);
      for (size_t i = 0; i + 1 < r.trace.frames.size(); ++i)
        if (r.trace.frames[i + 1].cached_length > r.trace.frames[i].cached_length + 1e-9) ++violations;
      bool ok = r.converged || is_geodesic(m, r.terminal, 1e-2).pass ||
                r.terminal.cached_length < 4 * m.max_edge_length();
      CHECK(ok);
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("family lockstep shortening reports a nonincreasing sup after warmup") {
  TriMesh m = icosphere(2);
  std::vector<DiscretePath> members;
  for (int k = 0; k < 4; ++k) {
    Vec3 b = normalized(Vec3{-0.5, 0.2 * k, 0.8});
    auto pts = great_circle_points({1, 0, 0}, b, 40);
    for (auto& p : pts) p = normalized(p + Vec3{0, 0.02 * k, 0});
    members.push_back(path_from_3d(m, pts, PathKind::segment));
  }
  ShortenOptions opts;
  opts.max_iter = 800;
  FamilyShortenResult fr = shorten_family(m, members, ShortenMode::bps, opts);
  REQUIRE(fr.sup_history.size() > 2);
  for (size_t i = 1; i + 1 < fr.sup_history.size(); ++i)
    CHECK(fr.sup_history[i + 1] <= fr.sup_history[i] + 1e-9);
}
