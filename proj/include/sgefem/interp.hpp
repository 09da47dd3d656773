#pragma once

#include "sgefem/complexcheck.hpp"
#include "sgefem/dofs.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace sgefem {

/// Input field violates the boundary conditions an interpolant requires.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// div v and curl w as smooth fields.  Jets are available up to first order.
SmoothField divergence_of(const SmoothField& v);
SmoothField curl_of(const SmoothField& w);

/// Global interpolation into V_h, Q~_h and W_h.  All averages over the
/// cells around a vertex or an edge are plain arithmetic means.
class Interpolator {
 public:
  explicit Interpolator(const Mesh& mesh, QuadDegrees q = {});
  explicit Interpolator(Mesh&&, QuadDegrees = {}) = delete;  // keeps a reference to the mesh

  [[nodiscard]] const DiscreteComplex& complex() const { return complex_; }
  [[nodiscard]] const Mesh& mesh() const { return complex_.mesh(); }

  /// v must vanish on the boundary.  Vertex values, edge div means and edge
  /// dn(v.t) means average the cellwise BDM2 interpolants, edge normal and
  /// tangential moments are taken from v, the skw DoF from the cell's BDM2
  /// interpolant.  Throws PreconditionError.
  [[nodiscard]] Eigen::VectorXd interp_Vh(const SmoothField& v) const;

  /// Edge means of the averaged cellwise P1 L2 projections, cell means of
  /// q, then the weighted mean is removed.
  [[nodiscard]] Eigen::VectorXd interp_Qh(const SmoothField& q) const;

  /// w and grad w must vanish on the boundary.  Vertex values come from w,
  /// all other DoFs from interp_Vh(curl w).  Throws PreconditionError.
  [[nodiscard]] Eigen::VectorXd interp_Wh(const SmoothField& w) const;

  /// Subtracts the weighted mean of a Q~_h function.
  [[nodiscard]] Eigen::VectorXd deflate(Eigen::VectorXd q) const;

  /// Largest |v| (and |grad v| when `gradient`) at sample points on the
  /// boundary, and the largest value over all cells for scale.
  void boundary_trace(const SmoothField& f, bool gradient, double& trace, double& scale) const;

 private:
  DiscreteComplex complex_;
};

struct CommutativityResult {
  double residual = 0.0;  // max |difference of coefficient vectors|
  double scale = 0.0;     // max |coefficient| of the right-hand side
};

/// div(I_h^V v) against I_h^Q(div v) in Q~_h coefficients.
CommutativityResult commutativity_check(const SmoothField& v, const Interpolator& in);
CommutativityResult commutativity_check(const SmoothField& v, const Mesh& mesh);

/// curl(I_h^W w) against I_h^V(curl w) in V_h coefficients.
CommutativityResult curl_commutativity_check(const SmoothField& w, const Interpolator& in);
CommutativityResult curl_commutativity_check(const SmoothField& w, const Mesh& mesh);

}  // namespace sgefem
