#pragma once

#include "sgefem/element_cache.hpp"
#include "sgefem/spaces.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace sgefem {

struct ContinuityReport {
  int samples = 0;
  double scale = 0.0;          // max |edge mean of grad v| and |edge mean of v| over all samples
  double grad_jump = 0.0;      // max |int_F [grad v]| / |F| over interior edges
  double trace_jump = 0.0;     // max |int_F [v] . q| / |F|, q in P1(F; R^2), all edges
  double normal_jump = 0.0;    // max pointwise |[v . n]| at edge quadrature points, interior edges
  double boundary_dofs = 0.0;  // V_h0 only: max |int_F div v|, |int_F dn (v . t)| / |F| on boundary edges
  int worst_edge = -1;
  std::string worst_test;
  bool ok = false;
};

/// Weak continuity of random members of V_h or V_h0: edge means of the
/// gradient jump vanish on interior edges, P1 moments of the trace jump
/// vanish on all edges (the jump on a boundary edge is the trace).
/// Values are relative to `scale`.
ContinuityReport weak_continuity_audit(const Mesh& mesh, const GlobalSpace& space, const MeshElements& elements,
                                       int samples = 50, std::uint64_t seed = 7, double tol = 1e-10);

/// Same, for a single coefficient vector.
ContinuityReport weak_continuity_audit(const Mesh& mesh, const GlobalSpace& space, const MeshElements& elements,
                                       const Eigen::VectorXd& coeffs, double tol = 1e-10);

}  // namespace sgefem
