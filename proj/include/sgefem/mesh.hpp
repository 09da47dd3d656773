#pragma once

#include <Eigen/Dense>

#include <array>
#include <iosfwd>
#include <vector>

namespace sgefem {

struct JumpFrame {
  int plus = -1;
  int minus = -1;  // -1 on the boundary
  Eigen::Vector2d n;
  Eigen::Vector2d t;
};

/// Splitting of the grid squares of a uniform mesh.  Diagonal uses the
/// lower-left to upper-right diagonal everywhere, AntiDiagonal the other one,
/// UnionJack alternates them in a checkerboard, CrissCross adds the square
/// center and both diagonals.
enum class MeshPattern { Diagonal, AntiDiagonal, UnionJack, CrissCross };

const char* to_string(MeshPattern p);

/// Conforming triangulation of a planar domain.
///
/// Edge frames: t_F points from the lower to the higher global vertex index,
/// n_F points out of the incident cell with the smaller index (outward on
/// the boundary).
class Mesh {
 public:
  /// n x n grid of squares on the unit square.
  static Mesh uniform_unit_square(int n, MeshPattern pattern = MeshPattern::Diagonal);
  /// General triangulation; cells are reoriented counterclockwise.
  static Mesh from_cells(std::vector<Eigen::Vector2d> vertices, std::vector<std::array<int, 3>> cells);

  [[nodiscard]] int subdivisions() const { return n_; }
  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertices_.size()); }
  [[nodiscard]] int num_cells() const { return static_cast<int>(cells_.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] int num_interior_vertices() const;
  [[nodiscard]] int num_interior_edges() const;

  [[nodiscard]] const Eigen::Vector2d& vertex(int v) const { return vertices_[v]; }
  /// Counterclockwise vertex triple.
  [[nodiscard]] const std::array<int, 3>& cell(int c) const { return cells_[c]; }
  /// Sorted vertex pair.
  [[nodiscard]] const std::array<int, 2>& edge(int e) const { return edges_[e]; }
  /// Edge k of cell c is opposite to cell(c)[k]; entries are (edge, k).
  [[nodiscard]] const std::array<std::array<int, 2>, 3>& cell_edges(int c) const { return cell_edges_[c]; }
  [[nodiscard]] const std::vector<int>& edge_cells(int e) const { return edge_cells_[e]; }
  [[nodiscard]] const std::vector<int>& vertex_cells(int v) const { return vertex_cells_[v]; }

  [[nodiscard]] bool boundary_vertex(int v) const { return boundary_vertex_[v]; }
  [[nodiscard]] bool boundary_edge(int e) const { return edge_cells_[e].size() == 1; }

  [[nodiscard]] const Eigen::Vector2d& normal(int e) const { return normal_[e]; }
  [[nodiscard]] const Eigen::Vector2d& tangent(int e) const { return tangent_[e]; }
  [[nodiscard]] double edge_length(int e) const { return edge_length_[e]; }
  [[nodiscard]] double cell_diameter(int c) const { return cell_diameter_[c]; }
  [[nodiscard]] double cell_area(int c) const;

  [[nodiscard]] JumpFrame jump_frame(int e) const;

  /// Vertices of cell c in increasing global order (the element-local order).
  [[nodiscard]] std::array<int, 3> sorted_vertices(int c) const;
  /// Global edge opposite to the i-th sorted vertex of cell c.
  [[nodiscard]] int face_edge(int c, int i) const;
  /// Sorted-local face index of edge e in cell c.
  [[nodiscard]] int local_face(int c, int e) const;
  /// (sorted vertices) as a 3 x 2 coordinate matrix.
  [[nodiscard]] Eigen::MatrixXd sorted_coordinates(int c) const;

  /// Plain-text listing of vertices, cells and edges.
  void dump(std::ostream& os) const;

 private:
  int n_ = 0;
  std::vector<Eigen::Vector2d> vertices_;
  std::vector<std::array<int, 3>> cells_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<std::array<int, 2>, 3>> cell_edges_;
  std::vector<std::vector<int>> edge_cells_;
  std::vector<std::vector<int>> vertex_cells_;
  std::vector<bool> boundary_vertex_;
  std::vector<Eigen::Vector2d> normal_;
  std::vector<Eigen::Vector2d> tangent_;
  std::vector<double> edge_length_;
  std::vector<double> cell_diameter_;
  std::vector<std::array<int, 3>> face_edge_;
};

}  // namespace sgefem
