#pragma once

#include <optional>
#include <vector>

#include "geodesy/chart.hpp"
#include "geodesy/mesh.hpp"

namespace geodesy {

enum class PathKind { segment, based_loop, free_loop };

// Polyline of surface points. Canonical form: every segment lies within a
// single face (edge crossings carry an explicit point on the shared edge).
// Loops store the basepoint twice (front == back).
struct DiscretePath {
  std::vector<SurfacePoint> points;
  PathKind kind = PathKind::segment;
  double cached_length = 0;

  bool is_loop() const { return kind != PathKind::segment; }
  std::size_t size() const { return points.size(); }
};

// Builds a canonical path from any traceable point sequence: consecutive
// points must share a face or lie in edge-adjacent faces. Inserts crossing
// points, drops duplicates, recomputes the cached length.
DiscretePath make_path(const TriMesh& mesh, std::vector<SurfacePoint> points, PathKind kind);

double path_length(const TriMesh& mesh, const DiscretePath& path);
DiscretePath concat(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b);
DiscretePath reverse_path(const TriMesh& mesh, const DiscretePath& a);
DiscretePath constant_path(const TriMesh& mesh, const SurfacePoint& p, PathKind kind = PathKind::segment);

// Point at a given arclength along the path (clamped to [0, length]).
SurfacePoint point_at_arclength(const TriMesh& mesh, const DiscretePath& path, double s);
// Equally spaced arclength resampling onto the existing polyline; keeps all
// crossing structure, never increases length. spacing > 0.
DiscretePath resample(const TriMesh& mesh, const DiscretePath& path, double spacing);

// Discrete Frechet distance between the two point sequences.
// Intrinsic mode measures point pairs with surface distances (Dijkstra based,
// for tests and reports); chord mode uses embedding chords, a lower bound
// that is exact in the small-distance regime used for distinctness tests.
enum class PairMetric { chord, intrinsic };
double frechet_distance(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b,
                        PairMetric metric = PairMetric::intrinsic);
double frechet_distance_chord(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b);

// True when the two paths are farther apart than `threshold` in the Frechet
// sense; resolved with chords plus a mesh-scale margin.
bool paths_distinct(const TriMesh& mesh, const DiscretePath& a, const DiscretePath& b,
                    double threshold);

struct SimplicityReport {
  bool simple = true;
  bool touches = false;              // meets itself at a point without crossing
  double first_crossing_param = -1;  // arclength of the first crossing
  std::optional<SurfacePoint> where;
};
SimplicityReport is_simple(const TriMesh& mesh, const DiscretePath& loop);

// Ordered family of paths with exact max-length bookkeeping. Frames are
// appended during construction and then frozen by the owner.
struct HomotopyTrace {
  std::vector<DiscretePath> frames;
  double max_length = 0;
  bool endpoints_fixed = true;

  void append(const DiscretePath& frame) {
    max_length = std::max(max_length, frame.cached_length);
    frames.push_back(frame);
  }
  void append(DiscretePath&& frame) {
    max_length = std::max(max_length, frame.cached_length);
    frames.push_back(std::move(frame));
  }
  void append_trace(const HomotopyTrace& t) {
    for (const auto& f : t.frames) append(f);
  }
  bool empty() const { return frames.empty(); }
};

// Largest Frechet gap between consecutive frames (chord metric); the
// discrete-continuity check for traces.
double max_frame_gap(const TriMesh& mesh, const HomotopyTrace& trace);

}  // namespace geodesy
