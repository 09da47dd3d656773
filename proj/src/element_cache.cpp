#include "sgefem/element_cache.hpp"

#include <map>

namespace sgefem {

Tabulation tabulate_basis(const LocalBasis& b, const std::vector<Eigen::VectorXd>& bary,
                          const std::vector<double>& weights, int order) {
  Tabulation t;
  t.npts = static_cast<int>(bary.size());
  t.nbasis = b.size();
  const JetLayout L{b.simplex.dim(), b.basis.front().ncomp()};
  t.stride = L.size();
  t.jets.assign(static_cast<std::size_t>(t.npts) * t.nbasis * t.stride, 0.0);
  t.weights = weights;
  t.bary = bary;
  for (int p = 0; p < t.npts; ++p)
    for (int i = 0; i < t.nbasis; ++i)
      b.simplex.eval_jet(b.basis[i], bary[p], order,
                         t.jets.data() + (static_cast<std::size_t>(p) * t.nbasis + i) * t.stride);
  return t;
}

Tabulation tabulate_on_cell(const LocalBasis& b, int degree, int order) {
  const QuadratureRule r = simplex_rule(b.simplex.dim(), degree);
  std::vector<double> w;
  for (double x : r.weights) w.push_back(x / r.reference_measure());
  return tabulate_basis(b, r.points, w, order);
}

Tabulation tabulate_on_face(const LocalBasis& b, int face, int degree, int order) {
  const int d = b.simplex.dim();
  const QuadratureRule r = simplex_rule(d - 1, degree);
  const auto fv = b.simplex.face_vertices(face);
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> w;
  for (std::size_t q = 0; q < r.size(); ++q) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d + 1);
    for (std::size_t j = 0; j < fv.size(); ++j) p[fv[j]] = r.points[q][static_cast<Eigen::Index>(j)];
    pts.push_back(p);
    w.push_back(r.weights[q] / r.reference_measure());
  }
  return tabulate_basis(b, pts, w, order);
}

Simplex MeshElements::simplex(int c) const { return Simplex(mesh_->sorted_coordinates(c)); }

std::vector<FaceFrame> MeshElements::frames(int c) const {
  std::vector<FaceFrame> fr(3);
  for (int i = 0; i < 3; ++i) {
    const int e = mesh_->face_edge(c, i);
    fr[i].n = mesh_->normal(e);
    fr[i].t = mesh_->tangent(e);
  }
  return fr;
}

MeshElements::MeshElements(const Mesh& m, ElementKinds kinds, QuadDegrees q) : mesh_(&m), q_(q) {
  std::map<std::vector<double>, int> lookup;
  id_.resize(m.num_cells());
  for (int c = 0; c < m.num_cells(); ++c) {
    const Eigen::MatrixXd X = m.sorted_coordinates(c);
    std::vector<double> key;
    for (int i = 1; i < 3; ++i)
      for (int k = 0; k < 2; ++k) key.push_back(X(i, k) - X(0, k));
    for (int i = 0; i < 3; ++i) {
      const int e = m.face_edge(c, i);
      key.push_back(m.normal(e).x());
      key.push_back(m.normal(e).y());
    }
    auto it = lookup.find(key);
    if (it != lookup.end()) {
      id_[c] = it->second;
      continue;
    }
    const int id = static_cast<int>(entries_.size());
    lookup.emplace(std::move(key), id);
    id_[c] = id;

    const Simplex T(X);
    const auto fr = frames(c);
    auto e = std::make_unique<ElementEntry>();
    if (kinds.V) {
      e->V = std::make_unique<LocalBasis>(local_V(T, fr, q));
      e->V_cell = tabulate_on_cell(*e->V, q.cell, 2);
      for (int i = 0; i < 3; ++i) e->V_face[i] = tabulate_on_face(*e->V, i, q.edge, 2);
    }
    if (kinds.Q) e->Q = std::make_unique<LocalBasis>(local_Q(T, q));
    if (kinds.W) e->W = std::make_unique<LocalBasis>(local_W(T, fr, q));
    if (kinds.BDM) e->BDM = std::make_unique<LocalBasis>(local_BDM2(T, q));
    entries_.push_back(std::move(e));
  }
}

}  // namespace sgefem
