#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "geodesy/cutlocus.hpp"
#include "support.hpp"

using namespace geodesy;
using namespace geodesy::testsupport;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("straight tracer walks a quarter circle on the sphere") {
  TriMesh m = icosphere(3);
  SurfacePoint x = project_to_mesh(m, {1, 0, 0});
  SurfacePoint far = point_at_direction(m, x, 0.8, kPi / 2);
  // Stays on the sphere at unit radius and at the right intrinsic distance.
  CHECK(norm(m.embed(far)) == doctest::Approx(1.0).epsilon(0.01));
  double chord = distance(m.embed(far), m.embed(x));
  CHECK(2 * std::asin(chord / 2) == doctest::Approx(kPi / 2).epsilon(0.03));
}

TEST_CASE("cut locus of a round-sphere point is a single node at the antipode") {
  TriMesh m = icosphere(4);
  DistanceGraph g(m);
  SurfacePoint p = project_to_mesh(m, {0, 0, 1});
  CutLocusTree tree = cut_locus(g, p);
  CHECK(tree.degenerate());
  REQUIRE(tree.nodes.size() == 1);
  Vec3 pos = m.embed(tree.nodes[0].position);
  CHECK(distance(pos, Vec3{0, 0, -1}) < 0.05 * kPi);
}

TEST_CASE("cut locus of a generic ellipsoid point is a single arc with two leaves") {
  TriMesh e = ellipsoid(1.0, 0.8, 0.6, 4);
  DistanceGraph g(e);
  SurfacePoint p = project_to_mesh(e, normalized(Vec3{0.9, 0.3, 0.32}) * 0.9);
  CutLocusTree tree = cut_locus(g, p);
  REQUIRE_FALSE(tree.degenerate());
  int leaves = 0;
  for (const auto& n : tree.nodes) leaves += n.degree == 1 ? 1 : 0;
  CHECK(leaves == 2);
  CHECK(tree.arcs.size() == tree.nodes.size() - 1);
  // Ridge property: sampled tree points are nearly equidistant along two
  // ancestries, i.e. two distinct minimizing geodesics of matching length.
  DistanceField f = compute_distance_field(g, p);
  for (const auto& arc : tree.arcs) {
    SurfacePoint mid = tree.arc_point(e, 0, 0.5);
    auto two = try_minimizing_geodesics(g, f, tree, mid, 2);
    if (two.size() == 2) {
      CHECK(two[0].cached_length == doctest::Approx(two[1].cached_length).epsilon(0.01));
    }
    (void)arc;
    break;
  }
}

TEST_CASE("cut locus of a dumbbell bulb point lives in the far bulb") {
  TriMesh d = dumbbell(1, 0.15, 1, 3);
  DistanceGraph g(d);
  SurfacePoint p = d.vertex_point(nearest_vertex(d, {0, 0, -10}));
  CutLocusTree tree = cut_locus(g, p);
  for (const auto& n : tree.nodes) {
    CHECK(d.embed(n.position).z > 0.5);  // well past the waist
  }
  for (const auto& a : tree.arcs)
    for (const auto& q : a.polyline.points) CHECK(d.embed(q).z > 0.5);
}

TEST_CASE("two minimizing geodesics reach the antipode through opposite corridors") {
  TriMesh m = icosphere(3);
  DistanceGraph g(m);
  SurfacePoint p = project_to_mesh(m, {0, 0, 1});
  DistanceField f = compute_distance_field(g, p);
  CutLocusTree tree = cut_locus(g, p);
  SurfacePoint anti = tree.nodes[0].position;
  auto two = minimizing_geodesics_to(g, f, tree, anti, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].cached_length == doctest::Approx(kPi).epsilon(0.02));
  CHECK(two[1].cached_length == doctest::Approx(kPi).epsilon(0.02));
  CHECK(paths_distinct(m, two[0], two[1], 0.5));
}

TEST_CASE("interior cut-edge points carry two equal minimizers; generic points only one") {
  TriMesh e = ellipsoid(1.0, 0.8, 0.6, 4);
  DistanceGraph g(e);
  SurfacePoint p = project_to_mesh(e, normalized(Vec3{0.9, 0.35, 0.25}) * 0.8);
  DistanceField f = compute_distance_field(g, p);
  CutLocusTree tree = cut_locus(g, p);
  REQUIRE_FALSE(tree.degenerate());
  SurfacePoint mid = tree.arc_point(e, 0, 0.45);
  auto two = minimizing_geodesics_to(g, f, tree, mid, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].cached_length == doctest::Approx(two[1].cached_length).epsilon(0.01));
  // A point well off the tree has a unique minimizer.
  SurfacePoint off = project_to_mesh(e, normalized(Vec3{0.85, 0.4, 0.35}) * 0.8);
  double dist_to_tree = std::numeric_limits<double>::infinity();
  for (const auto& a : tree.arcs)
    for (const auto& q : a.polyline.points)
      dist_to_tree = std::min(dist_to_tree, distance(e.embed(q), e.embed(off)));
  if (dist_to_tree > 6 * e.max_edge_length()) {
    CHECK_THROWS_AS(minimizing_geodesics_to(g, f, tree, off, 2), Error);
  }
}

TEST_CASE("bigon family along an ellipsoid cut edge stays within the 2d bound") {
  TriMesh e = ellipsoid(1.0, 0.8, 0.6, 4);
  DistanceGraph g(e);
  MetricSummary ms = metric_summary(g, 4, 9);
  SurfacePoint p = project_to_mesh(e, normalized(Vec3{0.9, 0.35, 0.25}) * 0.8);
  DistanceField f = compute_distance_field(g, p);
  CutLocusTree tree = cut_locus(g, p);
  REQUIRE_FALSE(tree.degenerate());
  // Pick a leaf arc and walk inward from the leaf.
  Index leaf_arc = kInvalidIndex, leaf_node = kInvalidIndex;
  for (size_t n = 0; n < tree.nodes.size(); ++n) {
    if (tree.nodes[n].degree == 1) {
      leaf_node = static_cast<Index>(n);
      leaf_arc = tree.incident[n][0];
      break;
    }
  }
  REQUIRE(leaf_arc != kInvalidIndex);
  Index far_node = tree.arcs[leaf_arc].a == leaf_node ? tree.arcs[leaf_arc].b : tree.arcs[leaf_arc].a;
  BigonFamily fam = bigon_family_along_edge(g, f, tree, leaf_arc, far_node, 6);
  CHECK(fam.trace.max_length <= 2 * ms.diameter_d * 1.05);
  CHECK(fam.params.size() == 7);
  // Walking toward the leaf the two sides merge.
  CHECK(fam.limits_equal);

  SUBCASE("grid of one sample still satisfies the length bound") {
    BigonFamily tiny = bigon_family_along_edge(g, f, tree, leaf_arc, far_node, 1);
    CHECK(tiny.trace.max_length <= 2 * ms.diameter_d * 1.05);
  }
}
