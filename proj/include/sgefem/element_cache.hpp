#pragma once

#include "sgefem/elements.hpp"
#include "sgefem/mesh.hpp"

#include <array>
#include <memory>
#include <vector>

namespace sgefem {

/// Basis jets at a fixed point set.  jets[(p * nbasis + i) * stride + s].
struct Tabulation {
  int npts = 0;
  int nbasis = 0;
  int stride = 0;
  std::vector<double> jets;
  std::vector<double> weights;  // normalized to sum 1; multiply by the measure
  std::vector<Eigen::VectorXd> bary;

  [[nodiscard]] const double* at(int p, int i) const {
    return jets.data() + (static_cast<std::size_t>(p) * nbasis + i) * stride;
  }
};

Tabulation tabulate_basis(const LocalBasis& b, const std::vector<Eigen::VectorXd>& bary,
                          const std::vector<double>& weights, int order);
Tabulation tabulate_on_cell(const LocalBasis& b, int degree, int order);
Tabulation tabulate_on_face(const LocalBasis& b, int face, int degree, int order);

struct ElementKinds {
  bool V = true;
  bool Q = false;
  bool W = false;
  bool BDM = false;
};

struct ElementEntry {
  std::unique_ptr<LocalBasis> V, Q, W, BDM;
  Tabulation V_cell;                 // value, gradient, Hessian
  std::array<Tabulation, 3> V_face;  // same on each face
};

/// Local elements of every cell.  Bases depend only on the cell shape and
/// its face frames, so translated copies share one entry.
class MeshElements {
 public:
  MeshElements(const Mesh& m, ElementKinds kinds, QuadDegrees q = {});
  MeshElements(Mesh&&, ElementKinds, QuadDegrees = {}) = delete;  // keeps a reference to the mesh

  [[nodiscard]] const Mesh& mesh() const { return *mesh_; }
  [[nodiscard]] QuadDegrees quad() const { return q_; }
  [[nodiscard]] int id(int c) const { return id_[c]; }
  [[nodiscard]] const ElementEntry& entry(int c) const { return *entries_[id_[c]]; }
  [[nodiscard]] int num_unique() const { return static_cast<int>(entries_.size()); }
  /// Cell simplex in sorted local vertex order and physical coordinates.
  [[nodiscard]] Simplex simplex(int c) const;
  [[nodiscard]] std::vector<FaceFrame> frames(int c) const;

 private:
  const Mesh* mesh_;
  QuadDegrees q_;
  std::vector<int> id_;
  std::vector<std::unique_ptr<ElementEntry>> entries_;
};

}  // namespace sgefem
