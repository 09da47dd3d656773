#include "sgefem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace sgefem {

const char* to_string(MeshPattern p) {
  switch (p) {
    case MeshPattern::Diagonal: return "diagonal";
    case MeshPattern::AntiDiagonal: return "antidiagonal";
    case MeshPattern::UnionJack: return "unionjack";
    case MeshPattern::CrissCross: return "crisscross";
  }
  return "unknown";
}

Mesh Mesh::uniform_unit_square(int n, MeshPattern pattern) {
  if (n < 1) throw std::invalid_argument("uniform_unit_square: n must be >= 1");
  std::vector<Eigen::Vector2d> vertices;
  std::vector<std::array<int, 3>> cells;
  const int np = n + 1;
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) vertices.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * np + i, b = a + 1, c = a + np + 1, d = a + np;
      bool forward = true;
      switch (pattern) {
        case MeshPattern::Diagonal: break;
        case MeshPattern::AntiDiagonal: forward = false; break;
        case MeshPattern::UnionJack: forward = (i + j) % 2 == 0; break;
        case MeshPattern::CrissCross: {
          const int m = static_cast<int>(vertices.size());
          vertices.emplace_back((i + 0.5) / n, (j + 0.5) / n);
          cells.push_back({a, b, m});
          cells.push_back({b, c, m});
          cells.push_back({c, d, m});
          cells.push_back({d, a, m});
          continue;
        }
      }
      if (forward) {
        cells.push_back({a, b, c});
        cells.push_back({a, c, d});
      } else {
        cells.push_back({a, b, d});
        cells.push_back({b, c, d});
      }
    }
  }
  Mesh m = from_cells(std::move(vertices), std::move(cells));
  m.n_ = n;
  return m;
}

Mesh Mesh::from_cells(std::vector<Eigen::Vector2d> vertices, std::vector<std::array<int, 3>> cells) {
  Mesh m;
  m.vertices_ = std::move(vertices);
  m.cells_ = std::move(cells);
  for (auto& cell : m.cells_) {
    const Eigen::Vector2d a = m.vertices_[cell[1]] - m.vertices_[cell[0]];
    const Eigen::Vector2d b = m.vertices_[cell[2]] - m.vertices_[cell[0]];
    const double det = a.x() * b.y() - a.y() * b.x();
    if (det == 0.0) throw std::invalid_argument("from_cells: degenerate cell");
    if (det < 0.0) std::swap(cell[1], cell[2]);
  }

  std::map<std::pair<int, int>, int> edge_id;
  for (const auto& cell : m.cells_) {
    for (int k = 0; k < 3; ++k) {
      const int p = cell[(k + 1) % 3], q = cell[(k + 2) % 3];
      edge_id.emplace(std::minmax(p, q), 0);
    }
  }
  for (auto& [key, id] : edge_id) {
    id = static_cast<int>(m.edges_.size());
    m.edges_.push_back({key.first, key.second});
  }

  const int nc = m.num_cells(), ne = m.num_edges(), nv = m.num_vertices();
  m.cell_edges_.resize(nc);
  m.edge_cells_.assign(ne, {});
  m.vertex_cells_.assign(nv, {});
  for (int c = 0; c < nc; ++c) {
    const auto& cell = m.cells_[c];
    for (int k = 0; k < 3; ++k) {
      const int p = cell[(k + 1) % 3], q = cell[(k + 2) % 3];
      const int e = edge_id.at(std::minmax(p, q));
      m.cell_edges_[c][k] = {e, k};
      m.edge_cells_[e].push_back(c);
      m.vertex_cells_[cell[k]].push_back(c);
    }
  }

  m.boundary_vertex_.assign(nv, false);
  m.normal_.resize(ne);
  m.tangent_.resize(ne);
  m.edge_length_.resize(ne);
  for (int e = 0; e < ne; ++e) {
    const Eigen::Vector2d a = m.vertices_[m.edges_[e][0]];
    const Eigen::Vector2d b = m.vertices_[m.edges_[e][1]];
    m.edge_length_[e] = (b - a).norm();
    const Eigen::Vector2d t = (b - a) / m.edge_length_[e];
    Eigen::Vector2d nrm(t.y(), -t.x());
    // Orient out of the lower-indexed incident cell.
    const int plus = m.edge_cells_[e].front();
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (int v : m.cells_[plus]) centroid += m.vertices_[v] / 3.0;
    if (nrm.dot(0.5 * (a + b) - centroid) < 0) nrm = -nrm;
    m.tangent_[e] = t;
    m.normal_[e] = nrm;
    if (m.edge_cells_[e].size() == 1) {
      m.boundary_vertex_[m.edges_[e][0]] = true;
      m.boundary_vertex_[m.edges_[e][1]] = true;
    }
  }

  m.cell_diameter_.resize(nc);
  m.face_edge_.resize(nc);
  for (int c = 0; c < nc; ++c) {
    double h = 0.0;
    const auto& cell = m.cells_[c];
    for (int k = 0; k < 3; ++k) h = std::max(h, (m.vertices_[cell[k]] - m.vertices_[cell[(k + 1) % 3]]).norm());
    m.cell_diameter_[c] = h;
    const auto sv = m.sorted_vertices(c);
    for (int i = 0; i < 3; ++i) {
      for (const auto& [e, k] : m.cell_edges_[c]) {
        if (cell[k] == sv[i]) m.face_edge_[c][i] = e;
      }
    }
  }
  return m;
}

int Mesh::num_interior_vertices() const {
  return static_cast<int>(std::count(boundary_vertex_.begin(), boundary_vertex_.end(), false));
}

int Mesh::num_interior_edges() const {
  int k = 0;
  for (const auto& ec : edge_cells_) k += ec.size() == 2;
  return k;
}

double Mesh::cell_area(int c) const {
  const auto& v = cells_[c];
  const Eigen::Vector2d a = vertices_[v[1]] - vertices_[v[0]];
  const Eigen::Vector2d b = vertices_[v[2]] - vertices_[v[0]];
  return 0.5 * (a.x() * b.y() - a.y() * b.x());
}

JumpFrame Mesh::jump_frame(int e) const {
  JumpFrame f;
  f.plus = edge_cells_[e].front();
  f.minus = edge_cells_[e].size() == 2 ? edge_cells_[e][1] : -1;
  f.n = normal_[e];
  f.t = tangent_[e];
  return f;
}

std::array<int, 3> Mesh::sorted_vertices(int c) const {
  auto v = cells_[c];
  std::sort(v.begin(), v.end());
  return v;
}

int Mesh::face_edge(int c, int i) const { return face_edge_[c][i]; }

int Mesh::local_face(int c, int e) const {
  for (int i = 0; i < 3; ++i)
    if (face_edge_[c][i] == e) return i;
  throw std::invalid_argument("local_face: edge not in cell");
}

Eigen::MatrixXd Mesh::sorted_coordinates(int c) const {
  const auto sv = sorted_vertices(c);
  Eigen::MatrixXd X(3, 2);
  for (int i = 0; i < 3; ++i) X.row(i) = vertices_[sv[i]].transpose();
  return X;
}

void Mesh::dump(std::ostream& os) const {
  os << "vertices " << num_vertices() << "\n";
  for (int v = 0; v < num_vertices(); ++v)
    os << v << " " << vertices_[v].x() << " " << vertices_[v].y() << (boundary_vertex_[v] ? " b" : "") << "\n";
  os << "cells " << num_cells() << "\n";
  for (int c = 0; c < num_cells(); ++c)
    os << c << " " << cells_[c][0] << " " << cells_[c][1] << " " << cells_[c][2] << "\n";
  os << "edges " << num_edges() << "\n";
  for (int e = 0; e < num_edges(); ++e) {
    os << e << " " << edges_[e][0] << " " << edges_[e][1] << " cells";
    for (int c : edge_cells_[e]) os << " " << c;
    os << " n " << normal_[e].x() << " " << normal_[e].y() << "\n";
  }
}

}  // namespace sgefem
