#pragma once

#include "sgefem/dofs.hpp"
#include "sgefem/polynomial.hpp"
#include "sgefem/quadrature.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace sgefem {

class UnisolvenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit normal and unit tangents (columns of t) attached to a face.
struct FaceFrame {
  Eigen::VectorXd n;
  Eigen::MatrixXd t;
};

/// Outward normals; tangents point from the lower to the higher face vertex
/// (3D: second tangent completes a right-handed frame with n).
std::vector<FaceFrame> default_frames(const Simplex& T);

struct QuadDegrees {
  int edge = kDefaultEdgeDegree;
  int cell = kDefaultCellDegree;
};

// Local DoF slots of the 2D elements.
namespace slot {
inline constexpr int v_vertex(int i, int c) { return 2 * i + c; }
inline constexpr int v_face(int i, int k) { return 6 + 5 * i + k; }  // normal, tan a, tan b, div, dn
inline constexpr int v_skw = 21;
inline constexpr int w_vertex(int i, int k) { return 3 * i + k; }  // w, d1 w, d2 w
inline constexpr int w_face(int i, int k) { return 9 + 3 * i + k; }  // dn a, dn b, dnn
inline constexpr int w_lap = 18;
inline constexpr int q_face(int i) { return i; }
inline constexpr int q_cell = 3;
}  // namespace slot

// Building blocks.
double bubble_nc(int d, const Eigen::VectorXd& bary);
Poly bubble_nc_poly(int d);
Poly cell_bubble(int d);
Poly face_bubble(int d, int i);
PolyField div_bubble(const Simplex& T);

// Differential operators on polynomial fields (physical coordinates).
PolyField grad(const PolyField& f, const Simplex& T);
PolyField div(const PolyField& v, const Simplex& T);
PolyField curl(const PolyField& w, const Simplex& T);  // 2D scalar -> vector
PolyField rot(const PolyField& v, const Simplex& T);   // 2D vector -> scalar

std::vector<PolyField> shape_space_V(const Simplex& T, const std::vector<FaceFrame>& frames);
std::vector<PolyField> shape_space_Q(const Simplex& T);
std::vector<PolyField> shape_space_W(const Simplex& T);
std::vector<PolyField> shape_space_BDM2(const Simplex& T);

DofSet dofs_V(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees q = {});
DofSet dofs_Q(const Simplex& T, QuadDegrees q = {});
DofSet dofs_W(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees q = {});
DofSet dofs_BDM2(const Simplex& T, QuadDegrees q = {});

/// Numerical rank of a set of polynomial fields (linear independence test).
int span_rank(const std::vector<PolyField>& fields, double tol = 1e-10);

struct LocalBasis {
  Simplex simplex;
  std::vector<PolyField> span;
  DofSet dofs;
  Eigen::MatrixXd coeffs;  // basis_i = sum_j coeffs(i, j) span_j
  std::vector<PolyField> basis;
  Eigen::VectorXd dof_scale;  // 1 / max-norm of each DoF row over the span
  double condition = 0.0;     // of the equilibrated DoF matrix
  double duality_error = 0.0;
  double scaled_duality_error = 0.0;

  [[nodiscard]] int size() const { return static_cast<int>(basis.size()); }
  /// sum_i c_i basis_i
  [[nodiscard]] PolyField combine(const Eigen::VectorXd& c) const;
};

LocalBasis nodal_basis(const Simplex& T, std::vector<PolyField> span, DofSet dofs);
/// Rebuilds the basis polynomials from `coeffs` and refreshes duality_error.
void refresh_basis(LocalBasis& b);
Eigen::MatrixXd duality_matrix(const LocalBasis& b);
double duality_error(const LocalBasis& b);

LocalBasis local_V(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees q = {});
LocalBasis local_Q(const Simplex& T, QuadDegrees q = {});
LocalBasis local_W(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees q = {});
LocalBasis local_BDM2(const Simplex& T, QuadDegrees q = {});

PolyField bdm2_interpolate(const LocalBasis& bdm, const SmoothField& v, const Simplex& T);

/// Least-squares residual of fitting f by the span, relative to |f|.
double fit_residual(const std::vector<PolyField>& span, const PolyField& f);

}  // namespace sgefem
