#include "sgefem/audit.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace sgefem {

namespace {

struct EdgeSide {
  Eigen::Matrix2d mean_grad = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d trace_moment = Eigen::Matrix2d::Zero();  // (component, test lambda_lo / lambda_hi)
  Eigen::VectorXd vn;                                       // v . n_F at the face points
  double div_mean = 0.0;
  double dnt_mean = 0.0;
};

EdgeSide evaluate_side(const Mesh& mesh, const GlobalSpace& space, const MeshElements& elements,
                       const Eigen::VectorXd& coeffs, int c, int e) {
  const int face = mesh.local_face(c, e);
  const ElementEntry& entry = elements.entry(c);
  const Tabulation& tab = entry.V_face[face];
  const auto fv = entry.V->simplex.face_vertices(face);
  const Eigen::Vector2d n = mesh.normal(e);
  const Eigen::Vector2d t = mesh.tangent(e);
  const int* g = space.cell_map(c);

  EdgeSide s;
  s.vn.resize(tab.npts);
  for (int q = 0; q < tab.npts; ++q) {
    double J[14] = {};
    for (int i = 0; i < tab.nbasis; ++i) {
      if (g[i] < 0) continue;
      const double* B = tab.at(q, i);
      for (int k = 0; k < 14; ++k) J[k] += coeffs[g[i]] * B[k];
    }
    const double w = tab.weights[q];
    Eigen::Matrix2d grad;
    grad << J[1], J[2], J[8], J[9];
    const Eigen::Vector2d v(J[0], J[7]);
    const Eigen::Vector2d test(tab.bary[q][fv[0]], tab.bary[q][fv[1]]);
    s.mean_grad += w * grad;
    s.trace_moment += w * v * test.transpose();
    s.vn[q] = v.dot(n);
    s.div_mean += w * grad.trace();
    s.dnt_mean += w * (t.transpose() * grad * n)(0, 0);
  }
  return s;
}

}  // namespace

ContinuityReport weak_continuity_audit(const Mesh& mesh, const GlobalSpace& space, const MeshElements& elements,
                                       const Eigen::VectorXd& coeffs, double tol) {
  if (space.kind != SpaceKind::Vh && space.kind != SpaceKind::Vh0)
    throw std::invalid_argument("weak_continuity_audit: V_h or V_h0 expected");
  if (coeffs.size() != space.ndofs) throw std::invalid_argument("weak_continuity_audit: coefficient length");

  ContinuityReport r;
  r.samples = 1;
  double worst = -1.0;
  auto note = [&](double value, int e, const char* test) {
    if (value > worst) {
      worst = value;
      r.worst_edge = e;
      r.worst_test = test;
    }
  };

  struct Raw {
    double grad = 0, trace = 0, normal = 0, bdof = 0;
  };
  std::vector<Raw> raw(mesh.num_edges());
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const auto& cells = mesh.edge_cells(e);
    const EdgeSide a = evaluate_side(mesh, space, elements, coeffs, cells[0], e);
    r.scale = std::max({r.scale, a.mean_grad.cwiseAbs().maxCoeff(), a.trace_moment.cwiseAbs().maxCoeff()});
    if (cells.size() == 2) {
      const EdgeSide b = evaluate_side(mesh, space, elements, coeffs, cells[1], e);
      r.scale = std::max({r.scale, b.mean_grad.cwiseAbs().maxCoeff(), b.trace_moment.cwiseAbs().maxCoeff()});
      raw[e].grad = (a.mean_grad - b.mean_grad).cwiseAbs().maxCoeff();
      raw[e].trace = (a.trace_moment - b.trace_moment).cwiseAbs().maxCoeff();
      raw[e].normal = (a.vn - b.vn).cwiseAbs().maxCoeff();
    } else {
      raw[e].trace = a.trace_moment.cwiseAbs().maxCoeff();
      if (space.kind == SpaceKind::Vh0) raw[e].bdof = std::max(std::abs(a.div_mean), std::abs(a.dnt_mean));
    }
  }
  const double s = r.scale > 0.0 ? r.scale : 1.0;
  for (int e = 0; e < mesh.num_edges(); ++e) {
    const Raw& x = raw[e];
    r.grad_jump = std::max(r.grad_jump, x.grad / s);
    r.trace_jump = std::max(r.trace_jump, x.trace / s);
    r.normal_jump = std::max(r.normal_jump, x.normal / s);
    r.boundary_dofs = std::max(r.boundary_dofs, x.bdof / s);
    note(x.grad / s, e, "grad jump");
    note(x.trace / s, e, "trace jump");
    note(x.normal / s, e, "normal jump");
    note(x.bdof / s, e, "boundary dof");
  }
  r.ok = std::max({r.grad_jump, r.trace_jump, r.normal_jump, r.boundary_dofs}) <= tol;
  return r;
}

ContinuityReport weak_continuity_audit(const Mesh& mesh, const GlobalSpace& space, const MeshElements& elements,
                                       int samples, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  ContinuityReport total;
  total.ok = true;
  for (int k = 0; k < samples; ++k) {
    Eigen::VectorXd c(space.ndofs);
    for (int i = 0; i < space.ndofs; ++i) c[i] = U(rng);
    const ContinuityReport r = weak_continuity_audit(mesh, space, elements, c, tol);
    total.scale = std::max(total.scale, r.scale);
    if (std::max({r.grad_jump, r.trace_jump, r.normal_jump, r.boundary_dofs}) >=
        std::max({total.grad_jump, total.trace_jump, total.normal_jump, total.boundary_dofs})) {
      total.worst_edge = r.worst_edge;
      total.worst_test = r.worst_test;
    }
    total.grad_jump = std::max(total.grad_jump, r.grad_jump);
    total.trace_jump = std::max(total.trace_jump, r.trace_jump);
    total.normal_jump = std::max(total.normal_jump, r.normal_jump);
    total.boundary_dofs = std::max(total.boundary_dofs, r.boundary_dofs);
    total.ok = total.ok && r.ok;
  }
  total.samples = samples;
  return total;
}

}  // namespace sgefem
