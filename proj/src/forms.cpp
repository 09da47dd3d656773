#include "sgefem/forms.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace sgefem {

void MaterialParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (!(iota > 0.0)) throw std::invalid_argument("iota must be positive");
  if (!(eta > 0.0)) throw std::invalid_argument("eta must be positive");
}

const char* to_string(Scheme s) { return s == Scheme::Weak ? "weak" : "strong"; }

namespace {

constexpr int kLocalV = 22;
constexpr int kPairs = kLocalV * (kLocalV + 1) / 2;
const double kSqrt2 = std::sqrt(2.0);

// Strain and divergence features of a vector jet (JetLayout{2,2}).
struct Features {
  double eps[3];      // eps11, sqrt2 eps12, eps22
  double div;
  double geps[2][3];  // d_m of eps features
  double gdiv[2];
};

Features features(const double* J) {
  auto g = [J](int j, int k) { return J[7 * j + 1 + k]; };
  auto H = [J](int j, int k, int m) { return J[7 * j + 3 + 2 * k + m]; };
  Features f;
  f.eps[0] = g(0, 0);
  f.eps[1] = kSqrt2 * 0.5 * (g(0, 1) + g(1, 0));
  f.eps[2] = g(1, 1);
  f.div = g(0, 0) + g(1, 1);
  for (int m = 0; m < 2; ++m) {
    f.geps[m][0] = H(0, 0, m);
    f.geps[m][1] = kSqrt2 * 0.5 * (H(0, 1, m) + H(1, 0, m));
    f.geps[m][2] = H(1, 1, m);
    f.gdiv[m] = H(0, 0, m) + H(1, 1, m);
  }
  return f;
}

// Weighted Gram matrix sum_p w_p B_p^T C_p where B, C hold `rows` features per point.
Eigen::MatrixXd gram(const Eigen::MatrixXd& B, const Eigen::MatrixXd& C, const Eigen::VectorXd& w) {
  return B.transpose() * w.asDiagonal() * C;
}

}  // namespace

LocalComponents compute_local_components(const ElementEntry& e) {
  if (!e.V) throw std::logic_error("compute_local_components: V basis unavailable");
  const Simplex& T = e.V->simplex;
  const int nb = e.V->size();
  LocalComponents lc;

  {
    const Tabulation& tab = e.V_cell;
    const int np = tab.npts;
    Eigen::MatrixXd Be(3 * np, nb), Bd(np, nb), Bge(6 * np, nb), Bgd(2 * np, nb);
    Eigen::VectorXd w3(3 * np), w1(np), w6(6 * np), w2(2 * np);
    for (int p = 0; p < np; ++p) {
      const double w = tab.weights[p] * T.measure();
      w1[p] = w;
      for (int r = 0; r < 3; ++r) w3[3 * p + r] = w;
      for (int r = 0; r < 6; ++r) w6[6 * p + r] = w;
      for (int r = 0; r < 2; ++r) w2[2 * p + r] = w;
      for (int i = 0; i < nb; ++i) {
        const Features f = features(tab.at(p, i));
        for (int r = 0; r < 3; ++r) Be(3 * p + r, i) = f.eps[r];
        Bd(p, i) = f.div;
        for (int m = 0; m < 2; ++m) {
          for (int r = 0; r < 3; ++r) Bge(6 * p + 3 * m + r, i) = f.geps[m][r];
          Bgd(2 * p + m, i) = f.gdiv[m];
        }
      }
    }
    lc.E0 = gram(Be, Be, w3);
    lc.D0 = gram(Bd, Bd, w1);
    lc.E1 = gram(Bge, Bge, w6);
    lc.D1 = gram(Bgd, Bgd, w2);
  }

  for (int face = 0; face < 3; ++face) {
    const Tabulation& tab = e.V_face[face];
    const Eigen::VectorXd n = T.outward_normal(face);
    const double hF = T.face_measure(face);
    const int np = tab.npts;
    Eigen::MatrixXd Be(3 * np, nb), Bne(3 * np, nb), Bd(np, nb), Bnd(np, nb);
    Eigen::VectorXd w3(3 * np), w1(np);
    for (int p = 0; p < np; ++p) {
      const double w = tab.weights[p] * hF;
      w1[p] = w;
      for (int r = 0; r < 3; ++r) w3[3 * p + r] = w;
      for (int i = 0; i < nb; ++i) {
        const Features f = features(tab.at(p, i));
        for (int r = 0; r < 3; ++r) {
          Be(3 * p + r, i) = f.eps[r];
          Bne(3 * p + r, i) = n[0] * f.geps[0][r] + n[1] * f.geps[1][r];
        }
        Bd(p, i) = f.div;
        Bnd(p, i) = n[0] * f.gdiv[0] + n[1] * f.gdiv[1];
      }
    }
    const Eigen::MatrixXd Ce = gram(Be, Bne, w3);
    const Eigen::MatrixXd Cd = gram(Bd, Bnd, w1);
    lc.En[face] = -(Ce + Ce.transpose());
    lc.Dn[face] = -(Cd + Cd.transpose());
    lc.Ep[face] = gram(Be, Be, w3) / hF;
    lc.Dp[face] = gram(Bd, Bd, w1) / hF;
  }
  return lc;
}

std::vector<std::vector<int>> color_cells(const Mesh& mesh) {
  std::vector<int> color(mesh.num_cells(), -1);
  int ncolors = 0;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    std::vector<bool> used(ncolors + 1, false);
    for (int v : mesh.cell(c))
      for (int o : mesh.vertex_cells(v))
        if (color[o] >= 0) used[color[o]] = true;
    int k = 0;
    while (used[k]) ++k;
    color[c] = k;
    ncolors = std::max(ncolors, k + 1);
  }
  std::vector<std::vector<int>> classes(ncolors);
  for (int c = 0; c < mesh.num_cells(); ++c) classes[color[c]].push_back(c);
  return classes;
}

Discretization::Discretization(const Mesh& mesh, Scheme scheme, QuadDegrees q)
    : mesh_(&mesh),
      scheme_(scheme),
      space_(build_space(mesh, scheme == Scheme::Weak ? SpaceKind::Vh : SpaceKind::Vh0)),
      elements_(mesh, ElementKinds{}, q) {
  components_.reserve(elements_.num_unique());
  {
    std::vector<int> first(elements_.num_unique(), -1);
    for (int c = 0; c < mesh.num_cells(); ++c)
      if (first[elements_.id(c)] < 0) first[elements_.id(c)] = c;
    for (int id = 0; id < elements_.num_unique(); ++id)
      components_.push_back(compute_local_components(elements_.entry(first[id])));
  }

  bmask_.assign(mesh.num_cells(), 0);
  for (int c = 0; c < mesh.num_cells(); ++c)
    for (int i = 0; i < 3; ++i)
      if (mesh.boundary_edge(mesh.face_edge(c, i))) bmask_[c] |= 1 << i;

  std::vector<std::vector<int>> lists(mesh.num_cells());
  for (int c = 0; c < mesh.num_cells(); ++c) lists[c].assign(space_.cell_map(c), space_.cell_map(c) + kLocalV);
  pattern_ = SparsityPattern::from_elements(space_.ndofs, lists);

  positions_.assign(static_cast<std::size_t>(mesh.num_cells()) * kPairs, -1);
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const int* g = space_.cell_map(c);
    int* pos = positions_.data() + static_cast<std::size_t>(c) * kPairs;
    int k = 0;
    for (int a = 0; a < kLocalV; ++a)
      for (int b = 0; b <= a; ++b, ++k)
        if (g[a] >= 0 && g[b] >= 0) pos[k] = pattern_->find(g[a], g[b]);
  }
  colors_ = color_cells(mesh);
}

template <class Fn>
void Discretization::for_cells(Execution ex, Fn&& fn) const {
  if (ex == Execution::Serial) {
    for (int c = 0; c < mesh_->num_cells(); ++c) fn(c);
    return;
  }
  for (const auto& cls : colors_) {
    const int n = static_cast<int>(cls.size());
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) fn(cls[k]);
  }
}

Eigen::MatrixXd Discretization::local_matrix(int cell, const MaterialParams& p) const {
  const LocalComponents& lc = components(cell);
  const double i2 = p.iota * p.iota;
  Eigen::MatrixXd K = 2.0 * p.mu * (lc.E0 + i2 * lc.E1) + p.lambda * (lc.D0 + i2 * lc.D1);
  if (scheme_ == Scheme::Weak) {
    for (int f = 0; f < 3; ++f) {
      if (!(bmask_[cell] & (1 << f))) continue;
      K += i2 * (2.0 * p.mu * (lc.En[f] + p.eta * lc.Ep[f]) + p.lambda * (lc.Dn[f] + p.eta * lc.Dp[f]));
    }
  }
  return K;
}

SparseSymmetricMatrix Discretization::assemble_matrix(const MaterialParams& p, Execution ex) const {
  p.validate();
  // Local matrices depend only on the element shape and its boundary faces.
  std::map<std::pair<int, int>, Eigen::MatrixXd> cache;
  std::vector<const Eigen::MatrixXd*> local(mesh_->num_cells());
  for (int c = 0; c < mesh_->num_cells(); ++c) {
    const std::pair<int, int> key{elements_.id(c), scheme_ == Scheme::Weak ? bmask_[c] : 0};
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, local_matrix(c, p)).first;
    local[c] = &it->second;
  }
  std::vector<double> values(pattern_->nnz(), 0.0);
  for_cells(ex, [&](int c) {
    const Eigen::MatrixXd& K = *local[c];
    const int* pos = positions_.data() + static_cast<std::size_t>(c) * kPairs;
    int k = 0;
    for (int a = 0; a < kLocalV; ++a)
      for (int b = 0; b <= a; ++b, ++k)
        if (pos[k] >= 0) values[pos[k]] += K(a, b);
  });
  return SparseSymmetricMatrix(pattern_, std::move(values));
}

Eigen::VectorXd Discretization::assemble_load(const LoadFn& f, Execution ex) const {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space_.ndofs);
  for_cells(ex, [&](int c) {
    const Tabulation& tab = elements_.entry(c).V_cell;
    const Eigen::MatrixXd X = mesh_->sorted_coordinates(c);
    const double area = std::abs(mesh_->cell_area(c));
    const int* g = space_.cell_map(c);
    double local[kLocalV] = {};
    for (int q = 0; q < tab.npts; ++q) {
      const Eigen::Vector2d x = X.transpose() * tab.bary[q];
      const Eigen::Vector2d fx = f(x);
      const double w = tab.weights[q] * area;
      for (int i = 0; i < kLocalV; ++i) {
        const double* J = tab.at(q, i);
        local[i] += w * (fx[0] * J[0] + fx[1] * J[7]);
      }
    }
    for (int i = 0; i < kLocalV; ++i)
      if (g[i] >= 0) b[g[i]] += local[i];
  });
  return b;
}

void Discretization::field_jet(const Eigen::VectorXd& uh, int cell, const Tabulation& tab, int q, double* jet) const {
  const int* g = space_.cell_map(cell);
  for (int s = 0; s < tab.stride; ++s) jet[s] = 0.0;
  for (int i = 0; i < tab.nbasis; ++i) {
    if (g[i] < 0) continue;
    const double c = uh[g[i]];
    if (c == 0.0) continue;
    const double* J = tab.at(q, i);
    for (int s = 0; s < tab.stride; ++s) jet[s] += c * J[s];
  }
}

double Discretization::error_norm(const AnalyticField* u, const Eigen::VectorXd& uh, const MaterialParams& p,
                                  NormKind kind, Execution ex) const {
  if (uh.size() != space_.ndofs) throw std::invalid_argument("error_norm: coefficient length mismatch");
  const double i2 = p.iota * p.iota;
  std::vector<double> contrib(mesh_->num_cells(), 0.0);

  auto diff = [&](const Eigen::MatrixXd& X, int c, const Tabulation& tab, int q, double* e) {
    double jh[14];
    field_jet(uh, c, tab, q, jh);
    if (u) {
      const Eigen::Vector2d x = X.transpose() * tab.bary[q];
      u->jet(x, 2, e);
    } else {
      for (int s = 0; s < 14; ++s) e[s] = 0.0;
    }
    for (int s = 0; s < 14; ++s) e[s] -= jh[s];
  };

  for_cells(ex, [&](int c) {
    const ElementEntry& entry = elements_.entry(c);
    const Eigen::MatrixXd X = mesh_->sorted_coordinates(c);
    const double area = std::abs(mesh_->cell_area(c));
    double sum = 0.0;
    const Tabulation& tab = entry.V_cell;
    for (int q = 0; q < tab.npts; ++q) {
      double e[14];
      diff(X, c, tab, q, e);
      const Features f = features(e);
      double eps2 = 0.0, geps2 = 0.0;
      for (int r = 0; r < 3; ++r) eps2 += f.eps[r] * f.eps[r];
      for (int m = 0; m < 2; ++m)
        for (int r = 0; r < 3; ++r) geps2 += f.geps[m][r] * f.geps[m][r];
      const double gdiv2 = f.gdiv[0] * f.gdiv[0] + f.gdiv[1] * f.gdiv[1];
      sum += tab.weights[q] * area *
             (2.0 * p.mu * eps2 + p.lambda * f.div * f.div + i2 * (2.0 * p.mu * geps2 + p.lambda * gdiv2));
    }
    if (kind == NormKind::Triple) {
      for (int face = 0; face < 3; ++face) {
        if (!(bmask_[c] & (1 << face))) continue;
        const Tabulation& ft = entry.V_face[face];
        double fs = 0.0;
        for (int q = 0; q < ft.npts; ++q) {
          double e[14];
          diff(X, c, ft, q, e);
          const Features f = features(e);
          double eps2 = 0.0;
          for (int r = 0; r < 3; ++r) eps2 += f.eps[r] * f.eps[r];
          fs += ft.weights[q] * (2.0 * p.mu * eps2 + p.lambda * f.div * f.div);
        }
        // weights are normalized: |F| * h_F^-1 = 1
        sum += i2 * fs;
      }
    }
    contrib[c] = sum;
  });
  const double total = std::accumulate(contrib.begin(), contrib.end(), 0.0);
  return std::sqrt(std::max(total, 0.0));
}

namespace {

AssembledSystem assemble(const Mesh& mesh, Scheme s, const MaterialParams& p, const LoadFn& f, Execution ex,
                         QuadDegrees q) {
  const Discretization disc(mesh, s, q);
  AssembledSystem sys;
  sys.A = disc.assemble_matrix(p, ex);
  sys.b = disc.assemble_load(f, ex);
  sys.space = disc.space();
  sys.scheme = s;
  return sys;
}

}  // namespace

AssembledSystem assemble_weak(const Mesh& mesh, const MaterialParams& p, const LoadFn& f, Execution ex,
                              QuadDegrees q) {
  return assemble(mesh, Scheme::Weak, p, f, ex, q);
}

AssembledSystem assemble_strong(const Mesh& mesh, const MaterialParams& p, const LoadFn& f, Execution ex,
                                QuadDegrees q) {
  return assemble(mesh, Scheme::Strong, p, f, ex, q);
}

}  // namespace sgefem
