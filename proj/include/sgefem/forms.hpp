#pragma once

#include "sgefem/element_cache.hpp"
#include "sgefem/linalg.hpp"
#include "sgefem/manufactured.hpp"
#include "sgefem/spaces.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <memory>
#include <vector>

namespace sgefem {

struct MaterialParams {
  double mu = 1.0;
  double lambda = 1.0;
  double iota = 1.0;
  double eta = 100.0;

  /// Throws std::invalid_argument.
  void validate() const;
};

enum class Scheme { Weak, Strong };
const char* to_string(Scheme s);

/// Serial loops cells in index order.  Parallel runs each color class of a
/// greedy cell coloring concurrently; the result does not depend on the
/// thread count.
enum class Execution { Serial, Parallel };

enum class NormKind { Triple, Plain };

using LoadFn = std::function<Eigen::Vector2d(const Eigen::Vector2d&)>;

/// Element matrices of one element shape (full, symmetric).
///   E0 = (eps, eps)          D0 = (div, div)
///   E1 = (grad eps, grad eps) D1 = (grad div, grad div)
///   per face i: En = -(eps, dn eps) - (dn eps, eps), Ep = h^-1 (eps, eps), same for div.
struct LocalComponents {
  Eigen::MatrixXd E0, D0, E1, D1;
  std::array<Eigen::MatrixXd, 3> En, Dn, Ep, Dp;
};

LocalComponents compute_local_components(const ElementEntry& e);

/// Everything about one mesh level that does not depend on the material
/// parameters: space, element cache, sparsity and scatter positions.
class Discretization {
 public:
  Discretization(const Mesh& mesh, Scheme scheme, QuadDegrees q = {});
  Discretization(Mesh&&, Scheme, QuadDegrees = {}) = delete;  // keeps a reference to the mesh

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] Scheme scheme() const { return scheme_; }
  [[nodiscard]] const GlobalSpace& space() const { return space_; }
  [[nodiscard]] const MeshElements& elements() const { return elements_; }
  [[nodiscard]] const std::shared_ptr<const SparsityPattern>& pattern() const { return pattern_; }
  [[nodiscard]] const std::vector<std::vector<int>>& colors() const { return colors_; }
  [[nodiscard]] const LocalComponents& components(int cell) const { return components_[elements_.id(cell)]; }
  /// Boundary faces of a cell as a bit mask over sorted-local faces.
  [[nodiscard]] int boundary_mask(int cell) const { return bmask_[cell]; }

  /// Local stiffness matrix of a cell for the given parameters.
  [[nodiscard]] Eigen::MatrixXd local_matrix(int cell, const MaterialParams& p) const;

  [[nodiscard]] SparseSymmetricMatrix assemble_matrix(const MaterialParams& p, Execution ex = Execution::Parallel) const;
  [[nodiscard]] Eigen::VectorXd assemble_load(const LoadFn& f, Execution ex = Execution::Parallel) const;

  /// Norm of u - u_h; Triple adds the boundary-face terms.
  [[nodiscard]] double error_norm(const AnalyticField* u, const Eigen::VectorXd& uh, const MaterialParams& p,
                                  NormKind kind, Execution ex = Execution::Parallel) const;

  /// Value, gradient and Hessian of the discrete field at cell quadrature
  /// point q (JetLayout{2, 2}).
  void field_jet(const Eigen::VectorXd& uh, int cell, const Tabulation& tab, int q, double* jet) const;

 private:
  template <class Fn>
  void for_cells(Execution ex, Fn&& fn) const;

  const Mesh* mesh_;
  Scheme scheme_;
  GlobalSpace space_;
  MeshElements elements_;
  std::vector<LocalComponents> components_;
  std::vector<int> bmask_;
  std::shared_ptr<const SparsityPattern> pattern_;
  std::vector<int> positions_;  // per cell, per lower local pair (a >= b): CSR index or -1
  std::vector<std::vector<int>> colors_;
};

struct AssembledSystem {
  SparseSymmetricMatrix A;
  Eigen::VectorXd b;
  GlobalSpace space;
  Scheme scheme = Scheme::Weak;
};

/// (iota^2 a_h + b_h) on V_h with Nitsche boundary terms.
AssembledSystem assemble_weak(const Mesh& mesh, const MaterialParams& p, const LoadFn& f,
                              Execution ex = Execution::Parallel, QuadDegrees q = {});
/// Volume terms only, on V_h0.
AssembledSystem assemble_strong(const Mesh& mesh, const MaterialParams& p, const LoadFn& f,
                                Execution ex = Execution::Parallel, QuadDegrees q = {});

/// Greedy coloring: cells sharing a vertex get different colors.
std::vector<std::vector<int>> color_cells(const Mesh& mesh);

}  // namespace sgefem
