#pragma once

#include "sgefem/polynomial.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace sgefem {

enum class DofKind {
  VertexValue,
  EdgeNormalMoment,      // 3D: integral over an edge of v . n_i^e
  FaceNormalMoment,
  FaceTangentMoment,
  FaceDivIntegral,
  FaceNormalDerivTangent,
  InteriorSkw,
  VertexGradient,
  FaceNormalDerivMoment,
  FaceSecondNormal,
  InteriorLaplacianAvg,
  BdmFaceMoment,
  BdmInteriorMoment,
  FaceIntegral,
  CellIntegral,
};

const char* to_string(DofKind k);

struct DofTerm {
  int point;
  int slot;  // index into a JetLayout
  double weight;
};

/// Linear functional given by a weighted sum of jet entries at points.
struct DofFunctional {
  DofKind kind;
  int entity;  // local vertex, face or edge index; -1 for the interior
  std::vector<DofTerm> terms;
};

/// A DoF set shares one barycentric point list among its functionals.
struct DofSet {
  int dim = 2;
  int ncomp = 1;
  int order = 0;  // highest derivative order used by any functional
  std::vector<Eigen::VectorXd> points;
  std::vector<DofFunctional> dofs;

  [[nodiscard]] JetLayout layout() const { return JetLayout{dim, ncomp}; }
  [[nodiscard]] int size() const { return static_cast<int>(dofs.size()); }
  int add_point(const Eigen::VectorXd& bary);
};

/// Smooth field given by a callback: fn(x, order, jet) fills a jet in
/// JetLayout{dim, ncomp} format up to the requested derivative order.
struct SmoothField {
  int dim = 2;
  int ncomp = 1;
  std::function<void(const Eigen::VectorXd& x, int order, double* jet)> fn;
};

/// Jets of a field at every point of the DoF set; rows are points.
Eigen::MatrixXd tabulate(const DofSet& set, const PolyField& f, const Simplex& T);
Eigen::MatrixXd tabulate(const DofSet& set, const SmoothField& f, const Simplex& T);

Eigen::VectorXd apply_dofs(const DofSet& set, const Eigen::MatrixXd& jets);
Eigen::VectorXd apply_dofs(const DofSet& set, const PolyField& f, const Simplex& T);
Eigen::VectorXd apply_dofs(const DofSet& set, const SmoothField& f, const Simplex& T);

}  // namespace sgefem
