#pragma once

#include <stdexcept>
#include <string>

namespace geodesy {

// Error kinds named by the failure they report. The CLI maps `kind` into the
// structured error JSON, so the strings are part of the output contract.
enum class ErrorKind {
  parse_error,
  non_manifold,
  degenerate_face,
  disconnected_mesh,
  invalid_param,
  endpoint_mismatch,
  segment_too_long,
  max_iter_exceeded,
  not_a_tree,
  not_enough_geodesics,
  non_geodesic_boundary,
  angle_hypothesis_violated,
  recursion_depth_exceeded,
  assembly_gap,
  inconsistent_degree,
  escaped_annulus,
  degenerate_geodesic,
  domain_error,
  io_error,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace geodesy
