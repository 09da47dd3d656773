#pragma once

#include "sgefem/element_cache.hpp"
#include "sgefem/spaces.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace sgefem {

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element maps of one cell shape.
struct LocalComplexMaps {
  Eigen::MatrixXd div;    // 4 x 22: Q(T) DoFs of div of each V(T) basis function
  Eigen::MatrixXd curl;   // 22 x 19: V(T) DoFs of curl of each W(T) basis function
  double div_fit = 0.0;   // worst residual of div phi in Q(T), relative to the largest div phi
  double curl_fit = 0.0;  // same for curl psi in V(T)
};

LocalComplexMaps local_complex_maps(const ElementEntry& e);

/// W_h -curl-> V_h -div-> Q~_h on one 2D mesh.
class DiscreteComplex {
 public:
  static constexpr double kDivFitTolerance = 1e-11;
  static constexpr double kCurlTolerance = 1e-9;

  /// Throws ComplexError when a local map leaves its target element.
  explicit DiscreteComplex(const Mesh& mesh, QuadDegrees q = {});
  explicit DiscreteComplex(Mesh&&, QuadDegrees = {}) = delete;  // keeps a reference to the mesh

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] const MeshElements& elements() const { return elements_; }
  [[nodiscard]] const GlobalSpace& Vh() const { return vh_; }
  [[nodiscard]] const GlobalSpace& Qh() const { return qh_; }
  [[nodiscard]] const GlobalSpace& Wh() const { return wh_; }
  [[nodiscard]] const LocalComplexMaps& maps(int cell) const { return maps_[elements_.id(cell)]; }
  [[nodiscard]] double div_fit() const { return div_fit_; }
  [[nodiscard]] double curl_fit() const { return curl_fit_; }

  /// Q~_h coefficients of div v_h.  Throws ComplexError if the cellwise
  /// divergences do not glue to a member of Q~_h.
  [[nodiscard]] Eigen::VectorXd apply_div(const Eigen::VectorXd& v) const;
  /// V_h coefficients of curl w_h.  Throws ComplexError if the cellwise
  /// curls do not glue to a member of V_h.
  [[nodiscard]] Eigen::VectorXd apply_curl(const Eigen::VectorXd& w) const;

  /// Dense D (dim Q~_h x dim V_h) and C (dim V_h x dim W_h).
  [[nodiscard]] Eigen::MatrixXd div_matrix() const;
  [[nodiscard]] Eigen::MatrixXd curl_matrix() const;

 private:
  const Mesh* mesh_;
  MeshElements elements_;
  GlobalSpace vh_, qh_, wh_;
  std::vector<LocalComplexMaps> maps_;
  double div_fit_ = 0.0;
  double curl_fit_ = 0.0;
};

struct ComplexReport {
  int subdivisions = 0;
  int dim_W = 0;
  int dim_V = 0;
  int dim_Qtilde = 0;
  int dim_Q = 0;  // mean-zero subspace
  int rank_D = 0;
  int rank_C = 0;
  double DC_max = 0.0;
  double div_fit = 0.0;
  double curl_fit = 0.0;

  bool div_surjective = false;      // rank D = dim Q_h
  bool curl_injective = false;      // rank C = dim W_h
  bool kernel_is_image = false;     // rank C = dim V_h - rank D
  bool composition_zero = false;    // |D C|_max <= 1e-10
  bool dimension_identity = false;  // dim V_h - dim Q_h = dim W_h

  [[nodiscard]] bool exact() const {
    return div_surjective && curl_injective && kernel_is_image && composition_zero && dimension_identity;
  }
};

/// Dense ranks, so meant for small meshes (n <= 8 on the unit square).
ComplexReport exactness_report(const Mesh& mesh, double rank_tol = 1e-9, QuadDegrees q = {});

/// Readable summary followed by key=value lines.
void print_report(std::ostream& os, const ComplexReport& r);

}  // namespace sgefem
