#pragma once

#include <functional>

#include "geodesy/path.hpp"

namespace geodesy {

enum class ShortenMode { bps, bpbl, bpfl };
enum class TerminalClass { geodesic_segment, geodesic_loop, periodic_geodesic, constant_point };

struct GeodesicTest {
  bool pass = false;
  double max_defect = 0;  // radians
};

// Turning-defect test: at interior points the two unfolded sides must meet at
// angle pi (within tol). At mesh vertices the straightest criterion applies
// on convex cones and the locally-shortest one on saddle cones.
GeodesicTest is_geodesic(const TriMesh& mesh, const DiscretePath& path, double tol);

// One Birkhoff iteration (two alternating midpoint-polygon phases). Endpoints
// held fixed according to path.kind: segment fixes both ends, based_loop the
// basepoint, free_loop nothing. Requires every stored segment < rho/2.
// Output length never exceeds the input length.
DiscretePath midpoint_step(const TriMesh& mesh, const DiscretePath& path, double rho, int phase = 0);

struct ShortenOptions {
  double rho = 0;                 // local join radius; <=0 picks 8*mean_edge
  double tol = 1e-3;              // geodesic tolerance (radians)
  int max_iter = 20000;
  double constant_threshold = 0;  // <=0 picks 4*max_edge
  bool record_trace = false;
  double frame_gap = 0;           // recorded-frame Frechet target; <=0 picks max_edge
  // Called after every recorded frame; return false to stop the process at
  // that frame (used for self-intersection watching).
  std::function<bool(const DiscretePath&, int)> monitor;
};

struct ShorteningResult {
  HomotopyTrace trace;  // recorded only when requested
  DiscretePath terminal;
  TerminalClass classification = TerminalClass::constant_point;
  int iterations = 0;
  bool converged = false;
  bool stopped_by_monitor = false;
  double final_defect = 0;
};

ShorteningResult shorten(const TriMesh& mesh, const DiscretePath& path, ShortenMode mode,
                         const ShortenOptions& opts);

// Lockstep batch: one midpoint iteration applied to every member per round,
// so the family deforms together. Runs members in parallel.
// Returns per-round sup of member lengths.
struct FamilyShortenResult {
  std::vector<DiscretePath> terminals;
  std::vector<TerminalClass> classes;
  std::vector<double> sup_history;
  int iterations = 0;
};
FamilyShortenResult shorten_family(const TriMesh& mesh, std::vector<DiscretePath> members,
                                   ShortenMode mode, const ShortenOptions& opts);

}  // namespace geodesy
