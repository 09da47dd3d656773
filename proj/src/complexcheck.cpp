#include "sgefem/complexcheck.hpp"

#include "sgefem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace sgefem {

namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(3);
  os << x;
  return os.str();
}

struct GlueStats {
  double scale = 0.0;
  double mismatch = 0.0;  // disagreement between cells sharing an output DoF
  double escape = 0.0;    // nonzero value in a slot the output space eliminates
};

// Applies a per-shape local map cellwise and glues the results into the
// output space.  Every cell sharing an output DoF must produce the same value.
template <class LocalMap>
Eigen::VectorXd glue(const Mesh& mesh, const GlobalSpace& in, const GlobalSpace& out, const Eigen::VectorXd& x,
                     LocalMap&& local, GlueStats& st) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(out.ndofs);
  std::vector<char> seen(out.ndofs, 0);
  Eigen::VectorXd xl(in.local_size);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const int* gi = in.cell_map(c);
    for (int k = 0; k < in.local_size; ++k) xl[k] = gi[k] >= 0 ? x[gi[k]] : 0.0;
    const Eigen::VectorXd yl = local(c) * xl;
    const int* go = out.cell_map(c);
    for (int m = 0; m < out.local_size; ++m) {
      st.scale = std::max(st.scale, std::abs(yl[m]));
      if (go[m] < 0) {
        st.escape = std::max(st.escape, std::abs(yl[m]));
      } else if (seen[go[m]]) {
        st.mismatch = std::max(st.mismatch, std::abs(y[go[m]] - yl[m]));
      } else {
        y[go[m]] = yl[m];
        seen[go[m]] = 1;
      }
    }
  }
  return y;
}

}  // namespace

LocalComplexMaps local_complex_maps(const ElementEntry& e) {
  if (!e.V || !e.Q || !e.W) throw std::invalid_argument("local_complex_maps: V, Q and W elements required");
  const Simplex& T = e.V->simplex;
  // Many images vanish identically, so fit residuals are measured against
  // the largest image in the element.
  auto fit = [](const std::vector<PolyField>& span, const std::vector<PolyField>& images) {
    double worst = 0.0, scale = 0.0;
    for (const auto& f : images) {
      const double norm = f.flatten(f.degree()).norm();
      scale = std::max(scale, norm);
      worst = std::max(worst, fit_residual(span, f) * norm);
    }
    return scale > 0.0 ? worst / scale : 0.0;
  };
  LocalComplexMaps m;
  std::vector<PolyField> images;
  m.div.resize(e.Q->size(), e.V->size());
  for (int k = 0; k < e.V->size(); ++k) {
    images.push_back(div(e.V->basis[k], T));
    m.div.col(k) = apply_dofs(e.Q->dofs, images.back(), T);
  }
  m.div_fit = fit(e.Q->span, images);
  images.clear();
  m.curl.resize(e.V->size(), e.W->size());
  for (int k = 0; k < e.W->size(); ++k) {
    images.push_back(curl(e.W->basis[k], T));
    m.curl.col(k) = apply_dofs(e.V->dofs, images.back(), T);
  }
  m.curl_fit = fit(e.V->span, images);
  return m;
}

DiscreteComplex::DiscreteComplex(const Mesh& mesh, QuadDegrees q)
    : mesh_(&mesh),
      elements_(mesh, ElementKinds{true, true, true, true}, q),
      vh_(build_Vh(mesh)),
      qh_(build_Qh(mesh)),
      wh_(build_Wh(mesh)) {
  for (int id = 0, c = 0; id < elements_.num_unique(); ++id) {
    while (elements_.id(c) != id) ++c;
    maps_.push_back(local_complex_maps(elements_.entry(c)));
    div_fit_ = std::max(div_fit_, maps_.back().div_fit);
    curl_fit_ = std::max(curl_fit_, maps_.back().curl_fit);
  }
  if (div_fit_ > kDivFitTolerance)
    throw ComplexError("divergence escapes Q(T): relative fit residual " + sci(div_fit_));
  if (curl_fit_ > kCurlTolerance) throw ComplexError("curl escapes V_h: relative fit residual " + sci(curl_fit_));
}

Eigen::VectorXd DiscreteComplex::apply_div(const Eigen::VectorXd& v) const {
  if (v.size() != vh_.ndofs) throw std::invalid_argument("apply_div: coefficient length");
  GlueStats st;
  Eigen::VectorXd y = glue(*mesh_, vh_, qh_, v, [&](int c) -> const Eigen::MatrixXd& { return maps(c).div; }, st);
  const double tol = kDivFitTolerance * std::max(1.0, st.scale);
  if (st.mismatch > tol || st.escape > tol)
    throw ComplexError("divergence escapes Q(T): face means disagree by " + sci(st.mismatch));
  return y;
}

Eigen::VectorXd DiscreteComplex::apply_curl(const Eigen::VectorXd& w) const {
  if (w.size() != wh_.ndofs) throw std::invalid_argument("apply_curl: coefficient length");
  GlueStats st;
  Eigen::VectorXd y = glue(*mesh_, wh_, vh_, w, [&](int c) -> const Eigen::MatrixXd& { return maps(c).curl; }, st);
  const double tol = kCurlTolerance * std::max(1.0, st.scale);
  if (st.mismatch > tol) throw ComplexError("curl escapes V_h: shared DoFs disagree by " + sci(st.mismatch));
  if (st.escape > tol) throw ComplexError("curl escapes V_h: boundary trace moment " + sci(st.escape));
  return y;
}

Eigen::MatrixXd DiscreteComplex::div_matrix() const {
  Eigen::MatrixXd D(qh_.ndofs, vh_.ndofs);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(vh_.ndofs);
  for (int j = 0; j < vh_.ndofs; ++j) {
    e[j] = 1.0;
    D.col(j) = apply_div(e);
    e[j] = 0.0;
  }
  return D;
}

Eigen::MatrixXd DiscreteComplex::curl_matrix() const {
  Eigen::MatrixXd C(vh_.ndofs, wh_.ndofs);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(wh_.ndofs);
  for (int j = 0; j < wh_.ndofs; ++j) {
    e[j] = 1.0;
    C.col(j) = apply_curl(e);
    e[j] = 0.0;
  }
  return C;
}

ComplexReport exactness_report(const Mesh& mesh, double rank_tol, QuadDegrees q) {
  const DiscreteComplex cx(mesh, q);
  ComplexReport r;
  r.subdivisions = mesh.subdivisions();
  r.dim_W = cx.Wh().ndofs;
  r.dim_V = cx.Vh().ndofs;
  r.dim_Qtilde = cx.Qh().ndofs;
  r.dim_Q = cx.Qh().constrained_dim();
  r.div_fit = cx.div_fit();
  r.curl_fit = cx.curl_fit();
  if (std::max({r.dim_W, r.dim_V, r.dim_Qtilde}) > kMaxDenseRankDim)
    throw std::invalid_argument("exactness_report: mesh too large for dense ranks");

  const Eigen::MatrixXd D = cx.div_matrix();
  const Eigen::MatrixXd C = cx.curl_matrix();
  r.rank_D = rank_dense(D, rank_tol);
  r.rank_C = rank_dense(C, rank_tol);
  r.DC_max = (D * C).cwiseAbs().maxCoeff();

  r.div_surjective = r.rank_D == r.dim_Q;
  r.curl_injective = r.rank_C == r.dim_W;
  r.kernel_is_image = r.rank_C == r.dim_V - r.rank_D;
  r.composition_zero = r.DC_max <= 1e-10;
  r.dimension_identity = r.dim_V - r.dim_Q == r.dim_W;
  return r;
}

void print_report(std::ostream& os, const ComplexReport& r) {
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  os << "discrete complex W_h -> V_h -> Q_h on a " << r.subdivisions << "x" << r.subdivisions << " mesh\n"
     << "  dim W_h = " << r.dim_W << ", dim V_h = " << r.dim_V << ", dim Q_h = " << r.dim_Q << " (unconstrained "
     << r.dim_Qtilde << ")\n"
     << "  rank D = " << r.rank_D << ", rank C = " << r.rank_C << ", |DC|_max = " << sci(r.DC_max) << "\n"
     << "  div onto Q_h: " << yes(r.div_surjective) << ", curl injective: " << yes(r.curl_injective)
     << ", ker div = curl W_h: " << yes(r.kernel_is_image) << "\n"
     << "  exact: " << yes(r.exact()) << "\n";
  os << "complex.n=" << r.subdivisions << "\n"
     << "complex.dim_W=" << r.dim_W << "\n"
     << "complex.dim_V=" << r.dim_V << "\n"
     << "complex.dim_Qtilde=" << r.dim_Qtilde << "\n"
     << "complex.dim_Q=" << r.dim_Q << "\n"
     << "complex.rank_D=" << r.rank_D << "\n"
     << "complex.rank_C=" << r.rank_C << "\n"
     << "complex.DC_max=" << sci(r.DC_max) << "\n"
     << "complex.div_fit=" << sci(r.div_fit) << "\n"
     << "complex.curl_fit=" << sci(r.curl_fit) << "\n"
     << "complex.div_surjective=" << r.div_surjective << "\n"
     << "complex.curl_injective=" << r.curl_injective << "\n"
     << "complex.kernel_is_image=" << r.kernel_is_image << "\n"
     << "complex.composition_zero=" << r.composition_zero << "\n"
     << "complex.dimension_identity=" << r.dimension_identity << "\n"
     << "complex.exact=" << r.exact() << "\n";
}

}  // namespace sgefem
