#include "sgefem/elements.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgefem {

namespace {

std::vector<std::vector<int>> exponents_upto(int nvars, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(nvars, 0);
  // Enumerate by total degree, then lexicographically.
  for (int deg = 0; deg <= k; ++deg) {
    if (nvars == 1) {
      out.push_back({deg});
    } else if (nvars == 2) {
      for (int a = deg; a >= 0; --a) out.push_back({a, deg - a});
    } else {
      for (int a = deg; a >= 0; --a)
        for (int b = deg - a; b >= 0; --b) out.push_back({a, b, deg - a - b});
    }
  }
  return out;
}

Poly lambda(int d, int i) { return Poly::barycentric(d, i); }

Eigen::VectorXd embed_face_point(int d, const std::vector<int>& fv, const Eigen::VectorXd& mu) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  for (std::size_t j = 0; j < fv.size(); ++j) b[fv[j]] = mu[static_cast<Eigen::Index>(j)];
  return b;
}

Eigen::VectorXd vertex_bary(int d, int i) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b[i] = 1.0;
  return b;
}

// Edges of a tetrahedron in lexicographic order.
std::vector<std::pair<int, int>> tet_edges() { return {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}; }

// Points and normalized weights (summing to 1) of the rule on face i.
struct FacePoints {
  std::vector<int> idx;
  std::vector<double> w;
  std::vector<Eigen::VectorXd> bary;
};

FacePoints face_points(DofSet& set, const Simplex& T, int i, int edge_degree, int cell_degree) {
  const int d = T.dim();
  const QuadratureRule r = (d == 2) ? edge_rule(edge_degree) : triangle_rule(cell_degree);
  const auto fv = T.face_vertices(i);
  FacePoints fp;
  for (std::size_t q = 0; q < r.size(); ++q) {
    Eigen::VectorXd b = embed_face_point(d, fv, r.points[q]);
    fp.idx.push_back(set.add_point(b));
    fp.w.push_back(r.weights[q] / r.reference_measure());
    fp.bary.push_back(b);
  }
  return fp;
}

FacePoints cell_points(DofSet& set, const Simplex& T, int cell_degree) {
  const QuadratureRule r = simplex_rule(T.dim(), cell_degree);
  FacePoints fp;
  for (std::size_t q = 0; q < r.size(); ++q) {
    fp.idx.push_back(set.add_point(r.points[q]));
    fp.w.push_back(r.weights[q] / r.reference_measure());
    fp.bary.push_back(r.points[q]);
  }
  return fp;
}

void validate_frames(const Simplex& T, const std::vector<FaceFrame>& frames) {
  if (static_cast<int>(frames.size()) != T.dim() + 1) throw std::invalid_argument("face frames: wrong count");
  for (const auto& f : frames) {
    if (f.n.size() != T.dim() || f.t.rows() != T.dim() || f.t.cols() != T.dim() - 1) {
      throw std::invalid_argument("face frames: wrong shape");
    }
  }
}

}  // namespace

std::vector<FaceFrame> default_frames(const Simplex& T) {
  const int d = T.dim();
  std::vector<FaceFrame> frames(d + 1);
  for (int i = 0; i <= d; ++i) {
    const auto fv = T.face_vertices(i);
    FaceFrame& f = frames[i];
    f.n = T.outward_normal(i);
    f.t.resize(d, d - 1);
    Eigen::VectorXd t1 = T.vertex(fv[1]) - T.vertex(fv[0]);
    t1 -= t1.dot(f.n) * f.n;
    t1.normalize();
    f.t.col(0) = t1;
    if (d == 3) {
      const Eigen::Vector3d n3 = f.n;
      const Eigen::Vector3d t3 = t1;
      f.t.col(1) = n3.cross(t3);
    }
  }
  return frames;
}

double bubble_nc(int d, const Eigen::VectorXd& bary) {
  return 2.0 - (d + 1) * bary.squaredNorm();
}

Poly bubble_nc_poly(int d) {
  Poly p = Poly::constant(d, 2.0);
  for (int i = 0; i <= d; ++i) p -= (lambda(d, i) * lambda(d, i)) * static_cast<double>(d + 1);
  return p;
}

Poly cell_bubble(int d) {
  Poly p = Poly::constant(d, 1.0);
  for (int i = 0; i <= d; ++i) p = p * lambda(d, i);
  return p;
}

Poly face_bubble(int d, int i) {
  Poly p = Poly::constant(d, 1.0);
  for (int j = 0; j <= d; ++j)
    if (j != i) p = p * lambda(d, j);
  return p;
}

PolyField div_bubble(const Simplex& T) {
  const int d = T.dim();
  Poly q = bubble_nc_poly(d) - lambda(d, 0) * 2.0 + Poly::constant(d, 2.0 / d);
  q *= 1.0 / (d + 2);
  PolyField phi = PolyField::zero(d, d);
  for (int i = 1; i <= d; ++i) {
    const Eigen::VectorXd t = T.vertex(i) - T.vertex(0);
    const Poly qi = q * lambda(d, i);
    for (int c = 0; c < d; ++c) phi.comp[c] += qi * t[c];
  }
  return phi;
}

PolyField grad(const PolyField& f, const Simplex& T) {
  if (f.ncomp() != 1) throw std::invalid_argument("grad: scalar field expected");
  std::vector<Poly> g;
  for (int m = 0; m < T.dim(); ++m) g.push_back(f.comp[0].dx(m, T.G()));
  return PolyField(std::move(g));
}

PolyField div(const PolyField& v, const Simplex& T) {
  if (v.ncomp() != T.dim()) throw std::invalid_argument("div: vector field expected");
  Poly s(T.dim(), 0);
  for (int c = 0; c < T.dim(); ++c) s += v.comp[c].dx(c, T.G());
  return PolyField({s});
}

PolyField curl(const PolyField& w, const Simplex& T) {
  if (T.dim() != 2 || w.ncomp() != 1) throw std::invalid_argument("curl: 2D scalar field expected");
  return PolyField({w.comp[0].dx(1, T.G()), w.comp[0].dx(0, T.G()) * -1.0});
}

PolyField rot(const PolyField& v, const Simplex& T) {
  if (T.dim() != 2 || v.ncomp() != 2) throw std::invalid_argument("rot: 2D vector field expected");
  return PolyField({v.comp[1].dx(0, T.G()) - v.comp[0].dx(1, T.G())});
}

std::vector<PolyField> shape_space_V(const Simplex& T, const std::vector<FaceFrame>& frames) {
  validate_frames(T, frames);
  const int d = T.dim();
  std::vector<PolyField> span;
  for (int c = 0; c < d; ++c) {
    for (const auto& e : exponents_upto(d, 2)) {
      PolyField f = PolyField::zero(d, d);
      f.comp[c] = Poly::monomial(d, e);
      span.push_back(f);
    }
  }
  span.push_back(div_bubble(T));

  const Poly bT = cell_bubble(d);
  // Bubble generators.  In 2D they are curls of scalar bubbles; in 3D the
  // divergence of skw(n (x) t_j) phi, i.e. skw(n (x) t_j) grad phi.
  auto generator = [&](const Poly& phi, int face, int j) {
    if (d == 2) return curl(PolyField({phi}), T);
    const Eigen::VectorXd n = frames[face].n;
    const Eigen::VectorXd t = frames[face].t.col(j);
    const Eigen::MatrixXd S = 0.5 * (n * t.transpose() - t * n.transpose());
    PolyField g = PolyField::zero(d, d);
    std::vector<Poly> dphi;
    for (int m = 0; m < d; ++m) dphi.push_back(phi.dx(m, T.G()));
    for (int r = 0; r < d; ++r)
      for (int m = 0; m < d; ++m)
        if (S(r, m) != 0.0) g.comp[r] += dphi[m] * S(r, m);
    return g;
  };
  for (int i = 0; i <= d; ++i) {
    const Poly bb = bT * face_bubble(d, i);
    for (int j = 0; j < d - 1; ++j)
      for (int a : T.face_vertices(i)) span.push_back(generator(bb * lambda(d, a), i, j));
  }
  for (int i = 0; i <= d; ++i) {
    const Poly bb = bT * bT * face_bubble(d, i);
    for (int j = 0; j < d - 1; ++j) span.push_back(generator(bb, i, j));
  }
  const int expected = d * d * (3 * d + 5) / 2;
  if (static_cast<int>(span.size()) != expected) throw std::logic_error("shape_space_V: wrong generator count");
  if (span_rank(span) != expected) throw std::logic_error("shape_space_V: generators are linearly dependent");
  return span;
}

std::vector<PolyField> shape_space_Q(const Simplex& T) {
  const int d = T.dim();
  std::vector<PolyField> span;
  for (const auto& e : exponents_upto(d, 1)) span.push_back(PolyField({Poly::monomial(d, e)}));
  span.push_back(PolyField({bubble_nc_poly(d)}));
  return span;
}

std::vector<PolyField> shape_space_W(const Simplex& T) {
  if (T.dim() != 2) throw std::invalid_argument("shape_space_W: 2D only");
  const int d = 2;
  std::vector<PolyField> span;
  for (const auto& e : exponents_upto(d, 3)) span.push_back(PolyField({Poly::monomial(d, e)}));
  const Poly bT = cell_bubble(d);
  for (int i = 0; i <= d; ++i) {
    const Poly bb = bT * face_bubble(d, i);
    for (int a : T.face_vertices(i)) span.push_back(PolyField({bb * lambda(d, a)}));
  }
  for (int i = 0; i <= d; ++i) span.push_back(PolyField({bT * bT * face_bubble(d, i)}));
  return span;
}

std::vector<PolyField> shape_space_BDM2(const Simplex& T) {
  const int d = T.dim();
  std::vector<PolyField> span;
  for (int c = 0; c < d; ++c) {
    for (const auto& e : exponents_upto(d, 2)) {
      PolyField f = PolyField::zero(d, d);
      f.comp[c] = Poly::monomial(d, e);
      span.push_back(f);
    }
  }
  return span;
}

DofSet dofs_V(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees qd) {
  validate_frames(T, frames);
  const int d = T.dim();
  DofSet set;
  set.dim = d;
  set.ncomp = d;
  set.order = 1;
  const JetLayout L = set.layout();

  if (d == 2) {
    for (int i = 0; i <= d; ++i) {
      const int p = set.add_point(vertex_bary(d, i));
      for (int c = 0; c < d; ++c) set.dofs.push_back({DofKind::VertexValue, i, {{p, L.value(c), 1.0}}});
    }
  } else {
    const QuadratureRule er = edge_rule(qd.edge);
    for (std::size_t k = 0; k < tet_edges().size(); ++k) {
      const auto [a, b] = tet_edges()[k];
      const Eigen::VectorXd te = (T.vertex(b) - T.vertex(a)).normalized();
      int cv = 0;
      while (cv == a || cv == b) ++cv;
      Eigen::VectorXd n1 = T.vertex(cv) - T.vertex(a);
      n1 -= n1.dot(te) * te;
      n1.normalize();
      const Eigen::Vector3d n2 = Eigen::Vector3d(te).cross(Eigen::Vector3d(n1));
      for (const Eigen::VectorXd& nv : {n1, Eigen::VectorXd(n2)}) {
        DofFunctional f{DofKind::EdgeNormalMoment, static_cast<int>(k), {}};
        for (std::size_t q = 0; q < er.size(); ++q) {
          Eigen::VectorXd bq = embed_face_point(d, {a, b}, er.points[q]);
          const int p = set.add_point(bq);
          for (int c = 0; c < d; ++c) f.terms.push_back({p, L.value(c), er.weights[q] * nv[c]});
        }
        set.dofs.push_back(std::move(f));
      }
    }
  }

  for (int i = 0; i <= d; ++i) {
    const FacePoints fp = face_points(set, T, i, qd.edge, qd.cell);
    const Eigen::VectorXd& n = frames[i].n;
    const auto fv = T.face_vertices(i);
    const std::size_t nq = fp.idx.size();

    // Normal moments against P0 and, in 3D, the two-dimensional hat-P2(F).
    std::vector<std::function<double(const Eigen::VectorXd&)>> ntests{[](const Eigen::VectorXd&) { return 1.0; }};
    if (d == 3) {
      const int p0 = fv[0];
      for (int qv : {fv[1], fv[2]}) {
        ntests.push_back([p0, qv](const Eigen::VectorXd& b) {
          return 3.0 * (b[qv] * b[qv] - b[p0] * b[p0]) - 2.0 * (b[qv] - b[p0]);
        });
      }
    }
    for (const auto& test : ntests) {
      DofFunctional f{DofKind::FaceNormalMoment, i, {}};
      for (std::size_t q = 0; q < nq; ++q) {
        const double s = fp.w[q] * test(fp.bary[q]);
        for (int c = 0; c < d; ++c) f.terms.push_back({fp.idx[q], L.value(c), s * n[c]});
      }
      set.dofs.push_back(std::move(f));
    }
    for (int j = 0; j < d - 1; ++j) {
      const Eigen::VectorXd t = frames[i].t.col(j);
      for (int a : fv) {
        DofFunctional f{DofKind::FaceTangentMoment, i, {}};
        for (std::size_t q = 0; q < nq; ++q) {
          const double s = fp.w[q] * fp.bary[q][a];
          for (int c = 0; c < d; ++c) f.terms.push_back({fp.idx[q], L.value(c), s * t[c]});
        }
        set.dofs.push_back(std::move(f));
      }
    }
    {
      DofFunctional f{DofKind::FaceDivIntegral, i, {}};
      for (std::size_t q = 0; q < nq; ++q)
        for (int c = 0; c < d; ++c) f.terms.push_back({fp.idx[q], L.grad(c, c), fp.w[q]});
      set.dofs.push_back(std::move(f));
    }
    for (int j = 0; j < d - 1; ++j) {
      const Eigen::VectorXd t = frames[i].t.col(j);
      DofFunctional f{DofKind::FaceNormalDerivTangent, i, {}};
      for (std::size_t q = 0; q < nq; ++q)
        for (int c = 0; c < d; ++c)
          for (int m = 0; m < d; ++m) f.terms.push_back({fp.idx[q], L.grad(c, m), fp.w[q] * t[c] * n[m]});
      set.dofs.push_back(std::move(f));
    }
  }

  // Average over the vertices of (skw grad v)_{pq} = (d_q v_p - d_p v_q) / 2.
  for (int p = 1; p < d; ++p) {
    for (int q = 0; q < p; ++q) {
      DofFunctional f{DofKind::InteriorSkw, -1, {}};
      for (int i = 0; i <= d; ++i) {
        const int pt = set.add_point(vertex_bary(d, i));
        const double s = 0.5 / (d + 1);
        f.terms.push_back({pt, L.grad(p, q), s});
        f.terms.push_back({pt, L.grad(q, p), -s});
      }
      set.dofs.push_back(std::move(f));
    }
  }
  return set;
}

DofSet dofs_Q(const Simplex& T, QuadDegrees qd) {
  const int d = T.dim();
  DofSet set;
  set.dim = d;
  set.ncomp = 1;
  set.order = 0;
  const JetLayout L = set.layout();
  for (int i = 0; i <= d; ++i) {
    const FacePoints fp = face_points(set, T, i, qd.edge, qd.cell);
    DofFunctional f{DofKind::FaceIntegral, i, {}};
    for (std::size_t q = 0; q < fp.idx.size(); ++q) f.terms.push_back({fp.idx[q], L.value(0), fp.w[q]});
    set.dofs.push_back(std::move(f));
  }
  const FacePoints cp = cell_points(set, T, qd.cell);
  DofFunctional f{DofKind::CellIntegral, -1, {}};
  for (std::size_t q = 0; q < cp.idx.size(); ++q) f.terms.push_back({cp.idx[q], L.value(0), cp.w[q]});
  set.dofs.push_back(std::move(f));
  return set;
}

DofSet dofs_W(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees qd) {
  if (T.dim() != 2) throw std::invalid_argument("dofs_W: 2D only");
  validate_frames(T, frames);
  const int d = 2;
  DofSet set;
  set.dim = d;
  set.ncomp = 1;
  set.order = 2;
  const JetLayout L = set.layout();
  for (int i = 0; i <= d; ++i) {
    const int p = set.add_point(vertex_bary(d, i));
    set.dofs.push_back({DofKind::VertexValue, i, {{p, L.value(0), 1.0}}});
    for (int m = 0; m < d; ++m) set.dofs.push_back({DofKind::VertexGradient, i, {{p, L.grad(0, m), 1.0}}});
  }
  for (int i = 0; i <= d; ++i) {
    const FacePoints fp = face_points(set, T, i, qd.edge, qd.cell);
    const Eigen::VectorXd& n = frames[i].n;
    for (int a : T.face_vertices(i)) {
      DofFunctional f{DofKind::FaceNormalDerivMoment, i, {}};
      for (std::size_t q = 0; q < fp.idx.size(); ++q)
        for (int m = 0; m < d; ++m) f.terms.push_back({fp.idx[q], L.grad(0, m), fp.w[q] * fp.bary[q][a] * n[m]});
      set.dofs.push_back(std::move(f));
    }
    DofFunctional f{DofKind::FaceSecondNormal, i, {}};
    for (std::size_t q = 0; q < fp.idx.size(); ++q)
      for (int m = 0; m < d; ++m)
        for (int k = 0; k < d; ++k) f.terms.push_back({fp.idx[q], L.hess(0, m, k), fp.w[q] * n[m] * n[k]});
    set.dofs.push_back(std::move(f));
  }
  DofFunctional f{DofKind::InteriorLaplacianAvg, -1, {}};
  for (int i = 0; i <= d; ++i) {
    const int p = set.add_point(vertex_bary(d, i));
    for (int m = 0; m < d; ++m) f.terms.push_back({p, L.hess(0, m, m), 1.0 / (d + 1)});
  }
  set.dofs.push_back(std::move(f));
  return set;
}

DofSet dofs_BDM2(const Simplex& T, QuadDegrees qd) {
  const int d = T.dim();
  DofSet set;
  set.dim = d;
  set.ncomp = d;
  set.order = 0;
  const JetLayout L = set.layout();
  for (int i = 0; i <= d; ++i) {
    const FacePoints fp = face_points(set, T, i, qd.edge, qd.cell);
    const Eigen::VectorXd n = T.outward_normal(i);
    const auto fv = T.face_vertices(i);
    for (std::size_t a = 0; a < fv.size(); ++a) {
      for (std::size_t b = a; b < fv.size(); ++b) {
        DofFunctional f{DofKind::BdmFaceMoment, i, {}};
        for (std::size_t q = 0; q < fp.idx.size(); ++q) {
          const double s = fp.w[q] * fp.bary[q][fv[a]] * fp.bary[q][fv[b]];
          for (int c = 0; c < d; ++c) f.terms.push_back({fp.idx[q], L.value(c), s * n[c]});
        }
        set.dofs.push_back(std::move(f));
      }
    }
  }
  const FacePoints cp = cell_points(set, T, qd.cell);
  for (int c = 0; c < d; ++c) {
    DofFunctional f{DofKind::BdmInteriorMoment, -1, {}};
    for (std::size_t q = 0; q < cp.idx.size(); ++q) f.terms.push_back({cp.idx[q], L.value(c), cp.w[q]});
    set.dofs.push_back(std::move(f));
  }
  const Eigen::VectorXd xc = T.centroid();
  for (int p = 1; p < d; ++p) {
    for (int r = 0; r < p; ++r) {
      DofFunctional f{DofKind::BdmInteriorMoment, -1, {}};
      for (std::size_t q = 0; q < cp.idx.size(); ++q) {
        const Eigen::VectorXd y = T.to_physical(cp.bary[q]) - xc;
        f.terms.push_back({cp.idx[q], L.value(p), cp.w[q] * y[r]});
        f.terms.push_back({cp.idx[q], L.value(r), -cp.w[q] * y[p]});
      }
      set.dofs.push_back(std::move(f));
    }
  }
  return set;
}

int span_rank(const std::vector<PolyField>& fields, double tol) {
  if (fields.empty()) return 0;
  int deg = 0;
  for (const auto& f : fields) deg = std::max(deg, f.degree());
  const Eigen::VectorXd first = fields.front().flatten(deg);
  Eigen::MatrixXd M(first.size(), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t j = 0; j < fields.size(); ++j) {
    Eigen::VectorXd v = fields[j].flatten(deg);
    const double nv = v.norm();
    M.col(static_cast<Eigen::Index>(j)) = nv > 0 ? Eigen::VectorXd(v / nv) : v;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

double fit_residual(const std::vector<PolyField>& span, const PolyField& f) {
  int deg = f.degree();
  for (const auto& s : span) deg = std::max(deg, s.degree());
  const Eigen::VectorXd b = f.flatten(deg);
  Eigen::MatrixXd M(b.size(), static_cast<Eigen::Index>(span.size()));
  for (std::size_t j = 0; j < span.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = span[j].flatten(deg);
  const Eigen::VectorXd x = M.colPivHouseholderQr().solve(b);
  const double nb = b.norm();
  return nb > 0 ? (M * x - b).norm() / nb : 0.0;
}

PolyField LocalBasis::combine(const Eigen::VectorXd& c) const {
  PolyField out = PolyField::zero(simplex.dim(), basis.front().ncomp());
  for (int i = 0; i < size(); ++i)
    if (c[i] != 0.0) out.axpy(c[i], basis[i]);
  return out;
}

Eigen::MatrixXd duality_matrix(const LocalBasis& b) {
  Eigen::MatrixXd P(b.dofs.size(), b.size());
  for (int j = 0; j < b.size(); ++j) P.col(j) = apply_dofs(b.dofs, b.basis[j], b.simplex);
  return P;
}

double duality_error(const LocalBasis& b) {
  const Eigen::MatrixXd P = duality_matrix(b);
  return (P - Eigen::MatrixXd::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff();
}

void refresh_basis(LocalBasis& b) {
  b.basis.clear();
  const int n = static_cast<int>(b.coeffs.rows());
  for (int i = 0; i < n; ++i) {
    PolyField f = PolyField::zero(b.simplex.dim(), b.span.front().ncomp());
    for (int j = 0; j < static_cast<int>(b.span.size()); ++j)
      if (b.coeffs(i, j) != 0.0) f.axpy(b.coeffs(i, j), b.span[j]);
    b.basis.push_back(std::move(f));
  }
  const Eigen::MatrixXd E = duality_matrix(b) - Eigen::MatrixXd::Identity(n, n);
  b.duality_error = E.cwiseAbs().maxCoeff();
  // Entry (i, j) measured in units of the natural size of DoF i on basis j.
  b.scaled_duality_error = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b.scaled_duality_error =
          std::max(b.scaled_duality_error, std::abs(E(i, j)) * b.dof_scale[i] / b.dof_scale[j]);
}

LocalBasis nodal_basis(const Simplex& T, std::vector<PolyField> span, DofSet dofs) {
  const int n = static_cast<int>(span.size());
  if (dofs.size() != n) {
    throw UnisolvenceError("unisolvence failure: " + std::to_string(dofs.size()) + " DoFs for " +
                           std::to_string(n) + " shape functions");
  }
  Eigen::MatrixXd M(n, n);
  for (int j = 0; j < n; ++j) M.col(j) = apply_dofs(dofs, span[j], T);

  // Derivative DoFs scale with inverse powers of h; equilibrate rows and
  // columns before factorizing.
  const Eigen::VectorXd dr = M.rowwise().lpNorm<Eigen::Infinity>().cwiseInverse();
  const Eigen::MatrixXd Mr = dr.asDiagonal() * M;
  const Eigen::VectorXd dc = Mr.colwise().lpNorm<Eigen::Infinity>().transpose().cwiseInverse();
  const Eigen::MatrixXd Ms = Mr * dc.asDiagonal();
  if (!Ms.allFinite()) throw UnisolvenceError("unisolvence failure: zero row or column in DoF matrix");

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(Ms);
  const Eigen::MatrixXd U = lu.matrixLU().triangularView<Eigen::Upper>();
  const double scale = Ms.cwiseAbs().maxCoeff();
  const double pivot = U.diagonal().cwiseAbs().minCoeff();
  if (!(pivot > 1e-12 * scale)) {
    std::ostringstream os;
    os << "unisolvence failure: DoF matrix singular (min pivot " << pivot << ", scale " << scale << ")";
    throw UnisolvenceError(os.str());
  }
  LocalBasis b;
  b.simplex = T;
  b.span = std::move(span);
  b.dofs = std::move(dofs);
  // M^{-1} = diag(dc) Ms^{-1} diag(dr)
  b.coeffs = (dc.asDiagonal() * lu.inverse() * dr.asDiagonal()).transpose();
  b.dof_scale = dr;
  b.condition = 1.0 / lu.rcond();
  refresh_basis(b);
  if (!(b.scaled_duality_error <= 1e-9)) {
    std::ostringstream os;
    os << "unisolvence failure: duality error " << b.scaled_duality_error;
    throw UnisolvenceError(os.str());
  }
  return b;
}

LocalBasis local_V(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees q) {
  return nodal_basis(T, shape_space_V(T, frames), dofs_V(T, frames, q));
}

LocalBasis local_Q(const Simplex& T, QuadDegrees q) { return nodal_basis(T, shape_space_Q(T), dofs_Q(T, q)); }

LocalBasis local_W(const Simplex& T, const std::vector<FaceFrame>& frames, QuadDegrees q) {
  return nodal_basis(T, shape_space_W(T), dofs_W(T, frames, q));
}

LocalBasis local_BDM2(const Simplex& T, QuadDegrees q) {
  return nodal_basis(T, shape_space_BDM2(T), dofs_BDM2(T, q));
}

PolyField bdm2_interpolate(const LocalBasis& bdm, const SmoothField& v, const Simplex& T) {
  return bdm.combine(apply_dofs(bdm.dofs, v, T));
}

}  // namespace sgefem
