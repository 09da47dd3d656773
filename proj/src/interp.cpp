#include "sgefem/interp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgefem {

namespace {

constexpr double kTraceTolerance = 1e-10;

void require_order(int order, const char* what) {
  if (order > 1) throw std::invalid_argument(std::string(what) + ": jets available up to first order");
}

std::string sci(double x) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(3);
  os << x;
  return os.str();
}

}  // namespace

SmoothField divergence_of(const SmoothField& v) {
  if (v.dim != 2 || v.ncomp != 2) throw std::invalid_argument("divergence_of: 2D vector field expected");
  SmoothField s;
  s.dim = 2;
  s.ncomp = 1;
  s.fn = [v](const Eigen::VectorXd& x, int order, double* jet) {
    require_order(order, "divergence_of");
    double J[14] = {};
    v.fn(x, order + 1, J);
    jet[0] = J[1] + J[9];
    if (order >= 1) {
      jet[1] = J[3] + J[12];
      jet[2] = J[4] + J[13];
    }
  };
  return s;
}

SmoothField curl_of(const SmoothField& w) {
  if (w.dim != 2 || w.ncomp != 1) throw std::invalid_argument("curl_of: 2D scalar field expected");
  SmoothField s;
  s.dim = 2;
  s.ncomp = 2;
  s.fn = [w](const Eigen::VectorXd& x, int order, double* jet) {
    require_order(order, "curl_of");
    double J[7] = {};
    w.fn(x, order + 1, J);
    // curl w = (d1 w, -d0 w)
    jet[0] = J[2];
    jet[7] = -J[1];
    if (order >= 1) {
      jet[1] = J[5];
      jet[2] = J[6];
      jet[8] = -J[3];
      jet[9] = -J[4];
    }
  };
  return s;
}

Interpolator::Interpolator(const Mesh& mesh, QuadDegrees q) : complex_(mesh, q) {}

void Interpolator::boundary_trace(const SmoothField& f, bool gradient, double& trace, double& scale) const {
  const Mesh& m = mesh();
  const JetLayout L{f.dim, f.ncomp};
  std::vector<double> jet(L.size());
  auto magnitude = [&](const Eigen::Vector2d& x) {
    std::fill(jet.begin(), jet.end(), 0.0);
    f.fn(x, gradient ? 1 : 0, jet.data());
    double a = 0.0;
    for (int c = 0; c < f.ncomp; ++c) {
      a = std::max(a, std::abs(jet[L.value(c)]));
      if (gradient)
        for (int k = 0; k < f.dim; ++k) a = std::max(a, std::abs(jet[L.grad(c, k)]));
    }
    return a;
  };
  trace = 0.0;
  scale = 0.0;
  constexpr int kSamples = 7;
  for (int e = 0; e < m.num_edges(); ++e) {
    if (!m.boundary_edge(e)) continue;
    const Eigen::Vector2d a = m.vertex(m.edge(e)[0]);
    const Eigen::Vector2d b = m.vertex(m.edge(e)[1]);
    for (int k = 0; k < kSamples; ++k) {
      const double s = static_cast<double>(k) / (kSamples - 1);
      trace = std::max(trace, magnitude((1.0 - s) * a + s * b));
    }
  }
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto& cv = m.cell(c);
    Eigen::Vector2d xc = Eigen::Vector2d::Zero();
    for (int v : cv) {
      xc += m.vertex(v) / 3.0;
      scale = std::max(scale, magnitude(m.vertex(v)));
    }
    scale = std::max(scale, magnitude(xc));
    for (int v : cv) scale = std::max(scale, magnitude(0.5 * (xc + m.vertex(v))));
  }
}

Eigen::VectorXd Interpolator::interp_Vh(const SmoothField& v) const {
  if (v.dim != 2 || v.ncomp != 2) throw std::invalid_argument("interp_Vh: 2D vector field expected");
  double trace = 0.0, scale = 0.0;
  boundary_trace(v, false, trace, scale);
  if (trace > kTraceTolerance * scale)
    throw PreconditionError("interp_Vh: field does not vanish on the boundary (|v| = " + sci(trace) + ")");

  const Mesh& m = mesh();
  const MeshElements& el = complex_.elements();
  const GlobalSpace& V = complex_.Vh();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(V.ndofs);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(V.ndofs);
  for (int c = 0; c < m.num_cells(); ++c) {
    const ElementEntry& e = el.entry(c);
    const Simplex T = el.simplex(c);
    const PolyField bdm = bdm2_interpolate(*e.BDM, v, T);
    const Eigen::VectorXd from_bdm = apply_dofs(e.V->dofs, bdm, T);
    const Eigen::VectorXd from_v = apply_dofs(e.V->dofs, v, T);
    const int* g = V.cell_map(c);
    for (int k = 0; k < V.local_size; ++k) {
      if (g[k] < 0) continue;
      const bool direct = k >= slot::v_face(0, 0) && k < slot::v_skw && (k - slot::v_face(0, 0)) % 5 < 3;
      sum[g[k]] += direct ? from_v[k] : from_bdm[k];
      count[g[k]] += 1.0;
    }
  }
  return sum.cwiseQuotient(count);
}

Eigen::VectorXd Interpolator::deflate(Eigen::VectorXd q) const {
  const Mesh& m = mesh();
  const GlobalSpace& Q = complex_.Qh();
  if (q.size() != Q.ndofs) throw std::invalid_argument("deflate: coefficient length");
  double integral = 0.0, area = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const double a = std::abs(m.cell_area(c));
    integral += a * q[Q.dof(c, slot::q_cell)];
    area += a;
  }
  // The constant function has every DoF equal to one.
  q.array() -= integral / area;
  return q;
}

Eigen::VectorXd Interpolator::interp_Qh(const SmoothField& q) const {
  if (q.dim != 2 || q.ncomp != 1) throw std::invalid_argument("interp_Qh: 2D scalar field expected");
  const Mesh& m = mesh();
  const MeshElements& el = complex_.elements();
  const GlobalSpace& Q = complex_.Qh();
  const QuadratureRule r = simplex_rule(2, el.quad().cell);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(Q.ndofs);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(Q.ndofs);
  for (int c = 0; c < m.num_cells(); ++c) {
    const ElementEntry& e = el.entry(c);
    const Simplex T = el.simplex(c);
    // P1 projection in the barycentric basis: mass matrix (1 + delta_ij) / 12
    // relative to the area.
    Eigen::Matrix3d M = Eigen::Matrix3d::Constant(1.0 / 12.0) + Eigen::Matrix3d::Identity() / 12.0;
    Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
    for (std::size_t p = 0; p < r.size(); ++p) {
      double jet[7] = {};
      q.fn(T.to_physical(r.points[p]), 0, jet);
      const double w = r.weights[p] / r.reference_measure();
      for (int i = 0; i < 3; ++i) rhs[i] += w * jet[0] * r.points[p][i];
    }
    const Eigen::Vector3d a = M.ldlt().solve(rhs);
    PolyField proj({Poly(2, 1)});
    for (int i = 0; i < 3; ++i) proj.comp[0] += Poly::barycentric(2, i) * a[i];
    const Eigen::VectorXd from_proj = apply_dofs(e.Q->dofs, proj, T);
    const Eigen::VectorXd from_q = apply_dofs(e.Q->dofs, q, T);
    const int* g = Q.cell_map(c);
    for (int i = 0; i < 3; ++i) {
      sum[g[slot::q_face(i)]] += from_proj[slot::q_face(i)];
      count[g[slot::q_face(i)]] += 1.0;
    }
    sum[g[slot::q_cell]] += from_q[slot::q_cell];
    count[g[slot::q_cell]] += 1.0;
  }
  return deflate(sum.cwiseQuotient(count));
}

Eigen::VectorXd Interpolator::interp_Wh(const SmoothField& w) const {
  if (w.dim != 2 || w.ncomp != 1) throw std::invalid_argument("interp_Wh: 2D scalar field expected");
  double trace = 0.0, scale = 0.0;
  boundary_trace(w, true, trace, scale);
  if (trace > kTraceTolerance * scale)
    throw PreconditionError("interp_Wh: field or its gradient does not vanish on the boundary (" + sci(trace) + ")");

  const Eigen::VectorXd vI = interp_Vh(curl_of(w));
  const Mesh& m = mesh();
  const GlobalSpace& V = complex_.Vh();
  const GlobalSpace& W = complex_.Wh();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(W.ndofs);
  Eigen::VectorXd count = Eigen::VectorXd::Zero(W.ndofs);
  double jet[7];
  for (int c = 0; c < m.num_cells(); ++c) {
    const int* gv = V.cell_map(c);
    auto vl = [&](int k) { return gv[k] >= 0 ? vI[gv[k]] : 0.0; };
    const int* gw = W.cell_map(c);
    const auto sv = m.sorted_vertices(c);
    auto put = [&](int k, double value) {
      if (gw[k] < 0) return;
      sum[gw[k]] += value;
      count[gw[k]] += 1.0;
    };
    for (int i = 0; i < 3; ++i) {
      if (gw[slot::w_vertex(i, 0)] >= 0) {
        w.fn(m.vertex(sv[i]), 0, jet);
        put(slot::w_vertex(i, 0), jet[0]);
      }
      // grad w = (-curl_2, curl_1)
      put(slot::w_vertex(i, 1), -vl(slot::v_vertex(i, 1)));
      put(slot::w_vertex(i, 2), vl(slot::v_vertex(i, 0)));

      // curl w . t = grad w . R t with R the counterclockwise quarter turn,
      // and R t = s n on every edge.
      const int e = m.face_edge(c, i);
      const Eigen::Vector2d& n = m.normal(e);
      const Eigen::Vector2d& t = m.tangent(e);
      const double s = n.dot(Eigen::Vector2d(-t.y(), t.x())) > 0.0 ? 1.0 : -1.0;
      put(slot::w_face(i, 0), s * vl(slot::v_face(i, 1)));
      put(slot::w_face(i, 1), s * vl(slot::v_face(i, 2)));
      put(slot::w_face(i, 2), s * vl(slot::v_face(i, 4)));
    }
    // Laplacian w = -rot curl w, and the skw DoF averages rot / 2.
    put(slot::w_lap, -2.0 * vl(slot::v_skw));
  }
  return sum.cwiseQuotient(count);
}

CommutativityResult commutativity_check(const SmoothField& v, const Interpolator& in) {
  const Eigen::VectorXd lhs = in.complex().apply_div(in.interp_Vh(v));
  const Eigen::VectorXd rhs = in.interp_Qh(divergence_of(v));
  return {(lhs - rhs).cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()};
}

CommutativityResult commutativity_check(const SmoothField& v, const Mesh& mesh) {
  return commutativity_check(v, Interpolator(mesh));
}

CommutativityResult curl_commutativity_check(const SmoothField& w, const Interpolator& in) {
  const Eigen::VectorXd lhs = in.complex().apply_curl(in.interp_Wh(w));
  const Eigen::VectorXd rhs = in.interp_Vh(curl_of(w));
  return {(lhs - rhs).cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff()};
}

CommutativityResult curl_commutativity_check(const SmoothField& w, const Mesh& mesh) {
  return curl_commutativity_check(w, Interpolator(mesh));
}

}  // namespace sgefem
