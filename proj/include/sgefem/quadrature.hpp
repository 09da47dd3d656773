#pragma once

#include <Eigen/Dense>

#include <vector>

namespace sgefem {

/// Integration rule on a reference simplex, with points given in barycentric
/// coordinates (dim+1 entries each).  Weights sum to the reference measure:
/// 1 for the segment, 1/2 for the triangle, 1/6 for the tetrahedron.
struct QuadratureRule {
  int dim = 0;
  int degree = 0;
  std::vector<Eigen::VectorXd> points;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
  [[nodiscard]] double reference_measure() const;

  /// Factor turning reference weights into physical weights on a simplex of
  /// the given measure.
  [[nodiscard]] double scale(double measure) const { return measure / reference_measure(); }
};

inline constexpr int kDefaultCellDegree = 14;
inline constexpr int kDefaultEdgeDegree = 15;

/// Gauss-Legendre nodes and weights on [0,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

QuadratureRule edge_rule(int degree);         // 0 <= degree <= 31
QuadratureRule triangle_rule(int degree);     // 0 <= degree <= 20
QuadratureRule tetrahedron_rule(int degree);  // 0 <= degree <= 20
QuadratureRule simplex_rule(int dim, int degree);

}  // namespace sgefem
