#include "sgefem/spaces.hpp"

#include "sgefem/elements.hpp"

#include <stdexcept>

namespace sgefem {

const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Vh: return "Vh";
    case SpaceKind::Vh0: return "Vh0";
    case SpaceKind::Qh: return "Qh";
    case SpaceKind::Wh: return "Wh";
  }
  return "unknown";
}

namespace {

struct Counts {
  int interior_vertex, interior_edge, boundary_edge, cell, local;
};

Counts counts(SpaceKind k) {
  switch (k) {
    case SpaceKind::Vh: return {2, 5, 2, 1, 22};
    case SpaceKind::Vh0: return {2, 5, 0, 1, 22};
    case SpaceKind::Qh: return {0, 1, 1, 1, 4};
    case SpaceKind::Wh: return {3, 3, 1, 1, 19};
  }
  throw std::invalid_argument("unknown space kind");
}

}  // namespace

GlobalSpace build_space(const Mesh& m, SpaceKind kind) {
  const Counts k = counts(kind);
  GlobalSpace s;
  s.kind = kind;
  s.local_size = k.local;
  s.vertex_dofs.assign(m.num_vertices(), {});
  s.edge_dofs.assign(m.num_edges(), {});
  s.cell_dofs.assign(m.num_cells(), {});
  int next = 0;
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.boundary_vertex(v)) continue;
    for (int i = 0; i < k.interior_vertex; ++i) s.vertex_dofs[v].push_back(next++);
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const int cnt = m.boundary_edge(e) ? k.boundary_edge : k.interior_edge;
    for (int i = 0; i < cnt; ++i) s.edge_dofs[e].push_back(next++);
  }
  for (int c = 0; c < m.num_cells(); ++c)
    for (int i = 0; i < k.cell; ++i) s.cell_dofs[c].push_back(next++);
  s.ndofs = next;

  s.map.assign(static_cast<std::size_t>(m.num_cells()) * s.local_size, -1);
  for (int c = 0; c < m.num_cells(); ++c) {
    int* loc = s.map.data() + static_cast<std::size_t>(c) * s.local_size;
    const auto sv = m.sorted_vertices(c);
    for (int i = 0; i < 3; ++i) {
      const auto& vd = s.vertex_dofs[sv[i]];
      const int e = m.face_edge(c, i);
      const auto& ed = s.edge_dofs[e];
      const bool bnd = m.boundary_edge(e);
      switch (kind) {
        case SpaceKind::Vh:
        case SpaceKind::Vh0:
          for (std::size_t j = 0; j < vd.size(); ++j) loc[slot::v_vertex(i, static_cast<int>(j))] = vd[j];
          if (!bnd) {
            for (int j = 0; j < 5; ++j) loc[slot::v_face(i, j)] = ed[j];
          } else if (kind == SpaceKind::Vh) {
            loc[slot::v_face(i, 3)] = ed[0];
            loc[slot::v_face(i, 4)] = ed[1];
          }
          break;
        case SpaceKind::Qh:
          loc[slot::q_face(i)] = ed[0];
          break;
        case SpaceKind::Wh:
          for (std::size_t j = 0; j < vd.size(); ++j) loc[slot::w_vertex(i, static_cast<int>(j))] = vd[j];
          if (!bnd) {
            for (int j = 0; j < 3; ++j) loc[slot::w_face(i, j)] = ed[j];
          } else {
            loc[slot::w_face(i, 2)] = ed[0];
          }
          break;
      }
    }
    const int cd = s.cell_dofs[c][0];
    switch (kind) {
      case SpaceKind::Vh:
      case SpaceKind::Vh0: loc[slot::v_skw] = cd; break;
      case SpaceKind::Qh: loc[slot::q_cell] = cd; break;
      case SpaceKind::Wh: loc[slot::w_lap] = cd; break;
    }
  }
  return s;
}

GlobalSpace build_Vh(const Mesh& m) { return build_space(m, SpaceKind::Vh); }
GlobalSpace build_Vh0(const Mesh& m) { return build_space(m, SpaceKind::Vh0); }
GlobalSpace build_Qh(const Mesh& m) { return build_space(m, SpaceKind::Qh); }
GlobalSpace build_Wh(const Mesh& m) { return build_space(m, SpaceKind::Wh); }

}  // namespace sgefem
