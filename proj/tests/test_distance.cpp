#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "geodesy/distance.hpp"
#include "support.hpp"

using namespace geodesy;
using namespace geodesy::testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("antipodal distance on the unit sphere is pi within 2%") {
  TriMesh m = icosphere(4);
  DistanceGraph g(m);
  SurfacePoint north = project_to_mesh(m, {0, 0, 1});
  SurfacePoint south = project_to_mesh(m, {0, 0, -1});
  GeodesicResult r = geodesic_distance(g, north, south);
  CHECK(r.length == doctest::Approx(kPi).epsilon(0.02));
  CHECK(r.path.cached_length == doctest::Approx(r.length).epsilon(1e-9));
}

TEST_CASE("distance from a point to itself is zero with a constant witness") {
  TriMesh m = octahedron();
  DistanceGraph g(m);
  SurfacePoint p = m.face_midpoint(0);
  GeodesicResult r = geodesic_distance(g, p, p);
  CHECK(r.length == 0);
  CHECK(r.path.cached_length == 0);
}

TEST_CASE("adjacent octahedron vertices are exactly one edge apart") {
  TriMesh m = octahedron();
  DistanceGraph g(m);
  GeodesicResult r = geodesic_distance(g, m.vertex_point(0), m.vertex_point(2));
  CHECK(r.length == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("geodesic distance is symmetric and satisfies the triangle inequality") {
  TriMesh m = icosphere(3);
  DistanceGraph g(m);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  MetricSummary ms;
  ms.diameter_d = kPi;
  for (int trial = 0; trial < 5; ++trial) {
    SurfacePoint a = project_to_mesh(m, normalized(Vec3{u(rng), u(rng), u(rng)}));
    SurfacePoint b = project_to_mesh(m, normalized(Vec3{u(rng), u(rng), u(rng)}));
    SurfacePoint c = project_to_mesh(m, normalized(Vec3{u(rng), u(rng), u(rng)}));
    double ab = geodesic_distance(g, a, b).length;
    double ba = geodesic_distance(g, b, a).length;
    CHECK(std::fabs(ab - ba) <= 1e-9 * std::max(1.0, ab) + 5e-4 * ab);
    double ac = geodesic_distance(g, a, c).length;
    double bc = geodesic_distance(g, b, c).length;
    CHECK(ac <= ab + bc + 1e-9 * ms.diameter_d + 5e-3);
  }
}

TEST_CASE("metric summary of the unit sphere") {
  TriMesh m = icosphere(4);
  DistanceGraph g(m);
  MetricSummary ms = metric_summary(g, 6, 42);
  CHECK(ms.diameter_d == doctest::Approx(kPi).epsilon(0.02));
  CHECK(ms.mesh_resolution_h == m.max_edge_length());
  CHECK(ms.inj_estimate_rho >= 2 * ms.mesh_resolution_h);
  CHECK(ms.inj_estimate_rho <= kPi);

  MetricSummary again = metric_summary(g, 6, 42);
  CHECK(again.diameter_d == ms.diameter_d);
  CHECK(again.inj_estimate_rho == ms.inj_estimate_rho);
}

TEST_CASE("sphere diameter estimates shrink toward pi with subdivision") {
  double prev = std::numeric_limits<double>::infinity();
  for (int sub : {2, 3, 4}) {
    TriMesh m = icosphere(sub);
    DistanceGraph g(m);
    MetricSummary ms = metric_summary(g, 4, 11);
    CHECK(ms.diameter_d <= prev * 1.01);
    prev = ms.diameter_d;
  }
  CHECK(prev == doctest::Approx(kPi).epsilon(0.02));
}

TEST_CASE("dumbbell diameter matches the profile-integral oracle within 5%") {
  TriMesh m = dumbbell(1, 0.1, 1, 3);
  DistanceGraph g(m);
  MetricSummary ms = metric_summary(g, 6, 3);
  // Oracle: pole-to-pole meridian length of the surface of revolution,
  // integrated numerically from dense axial samples of the generator curve.
  TriMesh fine = dumbbell(1, 0.1, 1, 4);
  double meridian = 0;
  // Trace the profile through the embedded mesh: vertices with y ~ 0, x >= 0
  // sorted by z give one meridian polyline of the revolved profile.
  std::vector<Vec3> prof;
  for (Index v = 0; v < fine.vertex_count(); ++v) {
    Vec3 p = fine.position(v);
    double r = std::hypot(p.x, p.y);
    double ang = std::atan2(p.y, p.x);
    if (std::fabs(ang) < 1e-9 || r < 1e-12) prof.push_back(p);
  }
  std::sort(prof.begin(), prof.end(), [](const Vec3& a, const Vec3& b) { return a.z < b.z; });
  for (size_t i = 0; i + 1 < prof.size(); ++i) meridian += distance(prof[i], prof[i + 1]);
  CHECK(ms.diameter_d == doctest::Approx(meridian).epsilon(0.05));
  // The waist probe should cap the injectivity estimate at half the waist.
  CHECK(ms.inj_estimate_rho <= kPi * 0.1 * 1.1);
}

TEST_CASE("dumbbell distance field separates the bulbs across the neck") {
  TriMesh m = dumbbell(1, 0.2, 1, 2);
  DistanceGraph g(m);
  Index top = nearest_vertex(m, {0, 0, 3});
  Index bot = nearest_vertex(m, {0, 0, -3});
  DistanceField f = compute_distance_field(g, m.vertex_point(top));
  // Distance to the far pole exceeds the straight-line gap by the detour.
  CHECK(f.dist[bot] > distance(m.position(top), m.position(bot)) * 1.3);
}

TEST_CASE("level loops of the distance field are closed and nest around the source") {
  TriMesh m = icosphere(3);
  DistanceGraph g(m);
  DistanceField f = compute_distance_field(g, project_to_mesh(m, {0, 0, 1}));
  std::vector<double> vd(m.vertex_count());
  for (Index v = 0; v < m.vertex_count(); ++v) vd[v] = f.dist[v];
  auto loops = extract_level_loops(m, vd, kPi / 2, 0.1);
  REQUIRE(loops.size() == 1);
  // The pi/2 level of the north-pole field is the equator.
  CHECK(loops[0].cached_length == doctest::Approx(2 * kPi).epsilon(0.03));
  for (const auto& p : loops[0].points) CHECK(std::fabs(m.embed(p).z) < 0.1);
}
