#pragma once

#include "sgefem/mesh.hpp"

#include <string>
#include <vector>

namespace sgefem {

enum class SpaceKind { Vh, Vh0, Qh, Wh };

const char* to_string(SpaceKind k);

/// Gluing of element-local DoFs into global indices.  Local slots follow
/// the element ordering in `slot::`; eliminated slots map to -1.  All
/// DoFs are defined in the global edge frames, so shared DoFs carry no sign.
///
/// Global numbering: vertex DoFs, then edge DoFs, then cell DoFs.
struct GlobalSpace {
  SpaceKind kind = SpaceKind::Vh;
  int ndofs = 0;
  int local_size = 0;
  std::vector<int> map;  // num_cells * local_size
  std::vector<std::vector<int>> vertex_dofs;
  std::vector<std::vector<int>> edge_dofs;
  std::vector<std::vector<int>> cell_dofs;

  [[nodiscard]] int dof(int cell, int local) const { return map[static_cast<std::size_t>(cell) * local_size + local]; }
  [[nodiscard]] const int* cell_map(int cell) const { return map.data() + static_cast<std::size_t>(cell) * local_size; }
  /// Dimension of the constrained space (Q_h is the mean-zero subspace).
  [[nodiscard]] int constrained_dim() const { return kind == SpaceKind::Qh ? ndofs - 1 : ndofs; }
};

GlobalSpace build_Vh(const Mesh& m);
GlobalSpace build_Vh0(const Mesh& m);
/// Unconstrained Q~_h; the mean-zero constraint is tracked separately.
GlobalSpace build_Qh(const Mesh& m);
GlobalSpace build_Wh(const Mesh& m);
GlobalSpace build_space(const Mesh& m, SpaceKind kind);

}  // namespace sgefem
