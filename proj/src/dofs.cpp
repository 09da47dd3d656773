#include "sgefem/dofs.hpp"

#include <stdexcept>

namespace sgefem {

const char* to_string(DofKind k) {
  switch (k) {
    case DofKind::VertexValue: return "vertex-value";
    case DofKind::EdgeNormalMoment: return "edge-normal-moment";
    case DofKind::FaceNormalMoment: return "face-normal-moment";
    case DofKind::FaceTangentMoment: return "face-tangent-moment";
    case DofKind::FaceDivIntegral: return "face-div-integral";
    case DofKind::FaceNormalDerivTangent: return "face-normal-derivative-tangent";
    case DofKind::InteriorSkw: return "interior-skw";
    case DofKind::VertexGradient: return "vertex-gradient";
    case DofKind::FaceNormalDerivMoment: return "face-nder-moment";
    case DofKind::FaceSecondNormal: return "face-second-normal";
    case DofKind::InteriorLaplacianAvg: return "interior-laplacian-avg";
    case DofKind::BdmFaceMoment: return "bdm-face-moment";
    case DofKind::BdmInteriorMoment: return "bdm-interior-moment";
    case DofKind::FaceIntegral: return "face-integral";
    case DofKind::CellIntegral: return "cell-integral";
  }
  return "unknown";
}

int DofSet::add_point(const Eigen::VectorXd& bary) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if ((points[i] - bary).cwiseAbs().maxCoeff() == 0.0) return static_cast<int>(i);
  }
  points.push_back(bary);
  return static_cast<int>(points.size()) - 1;
}

Eigen::MatrixXd tabulate(const DofSet& set, const PolyField& f, const Simplex& T) {
  if (f.ncomp() != set.ncomp) throw std::invalid_argument("tabulate: component mismatch");
  const JetLayout L = set.layout();
  Eigen::MatrixXd jets = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(set.points.size()), L.size());
  Eigen::VectorXd row(L.size());
  for (std::size_t p = 0; p < set.points.size(); ++p) {
    row.setZero();
    T.eval_jet(f, set.points[p], set.order, row.data());
    jets.row(static_cast<Eigen::Index>(p)) = row.transpose();
  }
  return jets;
}

Eigen::MatrixXd tabulate(const DofSet& set, const SmoothField& f, const Simplex& T) {
  if (f.ncomp != set.ncomp) throw std::invalid_argument("tabulate: component mismatch");
  const JetLayout L = set.layout();
  Eigen::MatrixXd jets = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(set.points.size()), L.size());
  Eigen::VectorXd row(L.size());
  for (std::size_t p = 0; p < set.points.size(); ++p) {
    row.setZero();
    f.fn(T.to_physical(set.points[p]), set.order, row.data());
    jets.row(static_cast<Eigen::Index>(p)) = row.transpose();
  }
  return jets;
}

Eigen::VectorXd apply_dofs(const DofSet& set, const Eigen::MatrixXd& jets) {
  Eigen::VectorXd out(set.size());
  for (int i = 0; i < set.size(); ++i) {
    double s = 0.0;
    for (const auto& t : set.dofs[i].terms) s += t.weight * jets(t.point, t.slot);
    out[i] = s;
  }
  return out;
}

Eigen::VectorXd apply_dofs(const DofSet& set, const PolyField& f, const Simplex& T) {
  return apply_dofs(set, tabulate(set, f, T));
}

Eigen::VectorXd apply_dofs(const DofSet& set, const SmoothField& f, const Simplex& T) {
  return apply_dofs(set, tabulate(set, f, T));
}

}  // namespace sgefem
