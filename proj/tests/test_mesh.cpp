#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "geodesy/mesh.hpp"
#include "support.hpp"

using namespace geodesy;
using namespace geodesy::testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;

const char* kOctahedronOff = R"(OFF
6 8 12
1 0 0
-1 0 0
0 1 0
0 -1 0
0 0 1
0 0 -1
3 0 2 4
3 2 1 4
3 1 3 4
3 3 0 4
3 2 0 5
3 1 2 5
3 3 1 5
3 0 3 5
)";

}  // namespace

TEST_CASE("octahedron OFF satisfies the Euler characteristic") {
  std::istringstream in(kOctahedronOff);
  TriMesh m = load_mesh(in, MeshFormat::off);
  CHECK(m.vertex_count() == 6);
  CHECK(m.face_count() == 8);
  CHECK(m.edge_count() == 12);
  CHECK(m.vertex_count() - m.edge_count() + m.face_count() == 2);
  TopologyReport rep = m.validate_topology();
  CHECK(rep.genus == 0);
  CHECK(rep.closed);
  CHECK(rep.oriented);
}

TEST_CASE("icosphere subdivision 3 has the generator counts") {
  TriMesh m = icosphere(3);
  CHECK(m.vertex_count() == 642);  // 10*4^3 + 2
  CHECK(m.face_count() == 1280);
  std::ostringstream out;
  save_obj(out, m);
  std::istringstream in(out.str());
  TriMesh back = load_mesh(in, MeshFormat::obj);
  CHECK(back.vertex_count() == 642);
  CHECK(back.face_count() == 1280);
}

TEST_CASE("boundary OFF file is rejected as non-manifold") {
  const char* open_disk = R"(OFF
4 2 5
0 0 0
1 0 0
1 1 0
0 1 0
3 0 1 2
3 0 2 3
)";
  std::istringstream in(open_disk);
  CHECK_THROWS_AS(load_mesh(in, MeshFormat::off), Error);
  try {
    std::istringstream in2(open_disk);
    load_mesh(in2, MeshFormat::off);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_manifold);
  }
}

TEST_CASE("degenerate face is rejected") {
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  std::vector<std::array<Index, 3>> f = {{0, 1, 1}, {0, 2, 1}};
  CHECK_THROWS_AS(TriMesh(v, f), Error);
}

TEST_CASE("torus mesh reports genus 1") {
  TriMesh t = torus_grid();
  TopologyReport rep = t.validate_topology();
  CHECK(rep.genus == 1);
}

TEST_CASE("two disjoint spheres are rejected as disconnected") {
  TriMesh a = octahedron();
  std::vector<Vec3> verts;
  std::vector<std::array<Index, 3>> faces;
  for (Index v = 0; v < a.vertex_count(); ++v) verts.push_back(a.position(v));
  for (Index v = 0; v < a.vertex_count(); ++v) verts.push_back(a.position(v) + Vec3{5, 0, 0});
  for (Index f = 0; f < a.face_count(); ++f) {
    faces.push_back(a.face_vertices(f));
    auto fv = a.face_vertices(f);
    faces.push_back({fv[0] + 6, fv[1] + 6, fv[2] + 6});
  }
  TriMesh both(verts, faces);
  CHECK_THROWS_AS(both.validate_topology(), Error);
}

TEST_CASE("ellipsoid(1,1,1) equals round_sphere(1) up to vertex placement") {
  TriMesh e = ellipsoid(1, 1, 1, 2);
  TriMesh s = icosphere(2);
  REQUIRE(e.vertex_count() == s.vertex_count());
  double worst = 0;
  for (Index v = 0; v < e.vertex_count(); ++v)
    worst = std::max(worst, distance(e.position(v), s.position(v)));
  CHECK(worst < 1e-12);
}

TEST_CASE("dumbbell parameters are validated") {
  CHECK_THROWS_AS(dumbbell(1, 1.5, 1, 2), Error);   // neck_r >= R
  CHECK_THROWS_AS(dumbbell(1, -0.1, 1, 2), Error);  // nonpositive
}

TEST_CASE("dumbbell has a waist ring of the requested girth") {
  TriMesh d = dumbbell(1, 0.1, 1, 3);
  d.validate_topology();
  // Collect vertices near z = 0; they form the waist ring of radius 0.1.
  double ring_len = 0;
  int count = 0;
  for (Index v = 0; v < d.vertex_count(); ++v) {
    if (std::fabs(d.position(v).z) < 1e-9) {
      double r = std::hypot(d.position(v).x, d.position(v).y);
      CHECK(r == doctest::Approx(0.1).epsilon(1e-6));
      ++count;
    }
  }
  CHECK(count >= 8);
  (void)ring_len;
}

TEST_CASE("generator parser round-trips the shapes") {
  GeneratorSpec g1 = parse_generator("round_sphere(2)", 3);
  CHECK(g1.shape == GeneratorSpec::Shape::round_sphere);
  CHECK(g1.a == doctest::Approx(2));
  GeneratorSpec g2 = parse_generator("ellipsoid(1,0.8,0.6)", 2);
  CHECK(g2.c == doctest::Approx(0.6));
  GeneratorSpec g3 = parse_generator("dumbbell(1,0.1,1)", 4);
  CHECK(g3.neck_r == doctest::Approx(0.1));
  CHECK_THROWS_AS(parse_generator("pretzel(1)", 1), Error);
}

TEST_CASE("surface point re-expression across faces is consistent") {
  TriMesh m = icosphere(1);
  for (Index f = 0; f < m.face_count(); ++f) {
    // Point on each edge, re-expressed in the twin face, embeds identically.
    for (int c = 0; c < 3; ++c) {
      Index h = 3 * f + c;
      SurfacePoint p;
      p.face = f;
      p.bary = {0, 0, 0};
      p.bary[c] = 0.3;
      p.bary[(c + 1) % 3] = 0.7;
      Index g = m.he_face(m.he_twin(h));
      SurfacePoint q;
      REQUIRE(m.express_in_face(p, g, q));
      CHECK(distance(m.embed(p), m.embed(q)) < 1e-12);
    }
  }
}
