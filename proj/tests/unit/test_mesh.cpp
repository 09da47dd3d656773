#include "sgefem/mesh.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace sgefem;

namespace {

struct Counts {
  int v, c, e;
};

Counts expected(int n, MeshPattern p) {
  if (p == MeshPattern::CrissCross) return {(n + 1) * (n + 1) + n * n, 4 * n * n, 2 * n * (n + 1) + 4 * n * n};
  return {(n + 1) * (n + 1), 2 * n * n, 3 * n * n + 2 * n};
}

const MeshPattern kPatterns[] = {MeshPattern::Diagonal, MeshPattern::AntiDiagonal, MeshPattern::UnionJack,
                                 MeshPattern::CrissCross};

}  // namespace

TEST(Mesh, EntityCountsOfUniformMeshes) {
  for (auto p : kPatterns)
    for (int n : {1, 2, 3, 8}) {
      const Mesh m = Mesh::uniform_unit_square(n, p);
      const Counts e = expected(n, p);
      EXPECT_EQ(m.num_vertices(), e.v) << to_string(p) << " n=" << n;
      EXPECT_EQ(m.num_cells(), e.c);
      EXPECT_EQ(m.num_edges(), e.e);
      EXPECT_EQ(m.num_vertices() - m.num_edges() + m.num_cells(), 1);
      EXPECT_EQ(m.num_edges() - m.num_interior_edges(), 4 * n);
      EXPECT_EQ(m.num_vertices() - m.num_interior_vertices(), 4 * n);
      EXPECT_EQ(m.subdivisions(), n);
    }
}

TEST(Mesh, CellsAreCounterclockwiseAndTileTheSquare) {
  for (auto p : kPatterns) {
    const Mesh m = Mesh::uniform_unit_square(4, p);
    double area = 0.0;
    for (int c = 0; c < m.num_cells(); ++c) {
      EXPECT_GT(m.cell_area(c), 0.0);
      area += m.cell_area(c);
    }
    EXPECT_NEAR(area, 1.0, 1e-14);
  }
}

TEST(Mesh, EdgeFramesFollowTheGlobalConvention) {
  const Mesh m = Mesh::uniform_unit_square(3, MeshPattern::UnionJack);
  for (int e = 0; e < m.num_edges(); ++e) {
    const auto [a, b] = m.edge(e);
    ASSERT_LT(a, b);
    const Eigen::Vector2d d = m.vertex(b) - m.vertex(a);
    EXPECT_NEAR(m.edge_length(e), d.norm(), 1e-15);
    EXPECT_NEAR((m.tangent(e) - d / d.norm()).norm(), 0.0, 1e-15);
    EXPECT_NEAR(m.normal(e).dot(m.tangent(e)), 0.0, 1e-15);
    EXPECT_NEAR(m.normal(e).norm(), 1.0, 1e-15);

    // The normal points out of the lower-index incident cell.
    const auto& cells = m.edge_cells(e);
    const int lo = cells.front();
    if (cells.size() == 2) {
      ASSERT_LT(cells[0], cells[1]);
    }
    const auto& cv = m.cell(lo);
    Eigen::Vector2d centroid = (m.vertex(cv[0]) + m.vertex(cv[1]) + m.vertex(cv[2])) / 3.0;
    EXPECT_GT(m.normal(e).dot(m.vertex(a) - centroid), 0.0);
    EXPECT_EQ(m.boundary_edge(e), cells.size() == 1);

    const JumpFrame f = m.jump_frame(e);
    EXPECT_EQ(f.plus, lo);
    EXPECT_EQ(f.minus, cells.size() == 2 ? cells[1] : -1);
  }
}

TEST(Mesh, BoundaryEdgesLieOnTheBoundary) {
  const Mesh m = Mesh::uniform_unit_square(4);
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.boundary_edge(e)) continue;
    const Eigen::Vector2d mid = 0.5 * (m.vertex(m.edge(e)[0]) + m.vertex(m.edge(e)[1]));
    const double dist = std::min({mid.x(), mid.y(), 1 - mid.x(), 1 - mid.y()});
    EXPECT_NEAR(dist, 0.0, 1e-15);
    EXPECT_TRUE(m.boundary_vertex(m.edge(e)[0]));
    EXPECT_TRUE(m.boundary_vertex(m.edge(e)[1]));
  }
}

TEST(Mesh, FaceEdgeIsOppositeToSortedVertex) {
  const Mesh m = Mesh::uniform_unit_square(2, MeshPattern::CrissCross);
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto sv = m.sorted_vertices(c);
    EXPECT_TRUE(sv[0] < sv[1] && sv[1] < sv[2]);
    const Eigen::MatrixXd X = m.sorted_coordinates(c);
    for (int i = 0; i < 3; ++i) {
      const int e = m.face_edge(c, i);
      const auto ed = m.edge(e);
      EXPECT_NE(ed[0], sv[i]);
      EXPECT_NE(ed[1], sv[i]);
      EXPECT_EQ(m.local_face(c, e), i);
      EXPECT_NEAR((X.row(i).transpose() - m.vertex(sv[i])).norm(), 0.0, 0.0);
    }
  }
}

TEST(Mesh, AdjacencyIsConsistent) {
  const Mesh m = Mesh::uniform_unit_square(3);
  for (int c = 0; c < m.num_cells(); ++c) {
    for (const auto& [e, k] : m.cell_edges(c)) {
      const auto& ec = m.edge_cells(e);
      EXPECT_NE(std::find(ec.begin(), ec.end(), c), ec.end());
      const auto ed = m.edge(e);
      EXPECT_TRUE(ed[0] != m.cell(c)[k] && ed[1] != m.cell(c)[k]);
    }
    for (int v : m.cell(c)) {
      const auto& vc = m.vertex_cells(v);
      EXPECT_NE(std::find(vc.begin(), vc.end(), c), vc.end());
    }
  }
  // interior vertex of a diagonal mesh has six cells
  EXPECT_EQ(m.vertex_cells(5).size(), 6u);
}

TEST(Mesh, FromCellsReorientsAndRejectsDegenerateCells) {
  std::vector<Eigen::Vector2d> v{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const Mesh m = Mesh::from_cells(v, {{0, 2, 1}, {1, 2, 3}});
  EXPECT_GT(m.cell_area(0), 0.0);
  EXPECT_GT(m.cell_area(1), 0.0);
  EXPECT_EQ(m.num_edges(), 5);
  EXPECT_EQ(m.num_interior_edges(), 1);
  std::vector<Eigen::Vector2d> w{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_THROW(Mesh::from_cells(w, {{0, 1, 2}}), std::invalid_argument);
  EXPECT_THROW(Mesh::uniform_unit_square(0), std::invalid_argument);
}

TEST(Mesh, DumpListsAllEntities) {
  std::ostringstream os;
  Mesh::uniform_unit_square(1).dump(os);
  const std::string s = os.str();
  EXPECT_NE(s.find("vertices 4"), std::string::npos);
  EXPECT_NE(s.find("cells 2"), std::string::npos);
  EXPECT_NE(s.find("edges 5"), std::string::npos);
}
