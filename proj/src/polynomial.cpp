#include "sgefem/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sgefem {

namespace {

int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Decodes a box index into exponents; returns the total degree.
int decode(int idx, int n, int cap, int* e) {
  int total = 0;
  for (int k = 0; k < n; ++k) {
    e[k] = idx % (cap + 1);
    idx /= (cap + 1);
    total += e[k];
  }
  return total;
}

}  // namespace

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Poly::Poly(int nvars, int max_degree) : n_(nvars), cap_(max_degree) {
  if (nvars < 1 || nvars > 3) throw std::invalid_argument("Poly: nvars must be 1..3");
  c_.assign(ipow(cap_ + 1, n_), 0.0);
}

Poly Poly::constant(int nvars, double c) {
  Poly p(nvars, 0);
  p.c_[0] = c;
  return p;
}

Poly Poly::barycentric(int nvars, int i) {
  Poly p(nvars, 1);
  if (i == 0) {
    p.c_[0] = 1.0;
    for (int k = 0; k < nvars; ++k) p.c_[ipow(2, k)] = -1.0;
  } else {
    p.c_[ipow(2, i - 1)] = 1.0;
  }
  return p;
}

Poly Poly::monomial(int nvars, const std::vector<int>& exps, double c) {
  int deg = 0;
  for (int e : exps) deg += e;
  Poly p(nvars, deg);
  p.add_coef(exps, c);
  return p;
}

int Poly::index(const int* e) const {
  int idx = 0;
  for (int k = n_ - 1; k >= 0; --k) idx = idx * (cap_ + 1) + e[k];
  return idx;
}

void Poly::resize(int cap) {
  if (cap == cap_) return;
  Poly r(n_, cap);
  int e[3];
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    if (c_[i] == 0.0) continue;
    if (decode(i, n_, cap_, e) > cap) throw std::logic_error("Poly::resize would truncate");
    r.c_[r.index(e)] = c_[i];
  }
  *this = std::move(r);
}

int Poly::degree() const {
  int deg = 0;
  int e[3];
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    if (c_[i] != 0.0) deg = std::max(deg, decode(i, n_, cap_, e));
  }
  return deg;
}

bool Poly::is_zero(double tol) const {
  return std::all_of(c_.begin(), c_.end(), [tol](double v) { return std::abs(v) <= tol; });
}

double Poly::coef(const std::vector<int>& exps) const {
  int deg = 0;
  for (int e : exps) deg += e;
  if (deg > cap_) return 0.0;
  return c_[index(exps.data())];
}

void Poly::add_coef(const std::vector<int>& exps, double c) {
  if (static_cast<int>(exps.size()) != n_) throw std::invalid_argument("Poly::add_coef: arity");
  int deg = 0;
  for (int e : exps) deg += e;
  if (deg > cap_) resize(deg);
  c_[index(exps.data())] += c;
}

Poly& Poly::operator+=(const Poly& o) {
  if (n_ == 0) {
    *this = o;
    return *this;
  }
  if (o.n_ != n_) throw std::invalid_argument("Poly: arity mismatch");
  if (o.cap_ > cap_) resize(o.cap_);
  int e[3];
  for (int i = 0; i < static_cast<int>(o.c_.size()); ++i) {
    if (o.c_[i] == 0.0) continue;
    decode(i, n_, o.cap_, e);
    c_[index(e)] += o.c_[i];
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  Poly neg = o;
  neg *= -1.0;
  return *this += neg;
}

Poly& Poly::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("Poly: arity mismatch");
  Poly r(a.n_, a.cap_ + b.cap_);
  int ea[3], eb[3], er[3];
  for (int i = 0; i < static_cast<int>(a.c_.size()); ++i) {
    if (a.c_[i] == 0.0) continue;
    decode(i, a.n_, a.cap_, ea);
    for (int j = 0; j < static_cast<int>(b.c_.size()); ++j) {
      if (b.c_[j] == 0.0) continue;
      decode(j, b.n_, b.cap_, eb);
      for (int k = 0; k < a.n_; ++k) er[k] = ea[k] + eb[k];
      r.c_[r.index(er)] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

Poly Poly::dxi(int k) const {
  Poly r(n_, std::max(cap_ - 1, 0));
  int e[3];
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    if (c_[i] == 0.0) continue;
    decode(i, n_, cap_, e);
    if (e[k] == 0) continue;
    const double f = e[k];
    e[k] -= 1;
    r.c_[r.index(e)] += f * c_[i];
  }
  return r;
}

Poly Poly::dx(int m, const Eigen::MatrixXd& G) const {
  Poly r(n_, std::max(cap_ - 1, 0));
  for (int k = 0; k < n_; ++k) {
    if (G(k, m) != 0.0) r += dxi(k) * G(k, m);
  }
  return r;
}

void Poly::eval(const double* xi, int order, double* value, double* grad, double* hess) const {
  // Power tables p[k][e] = xi_k^e together with first and second derivatives.
  double p0[3][32], p1[3][32], p2[3][32];
  for (int k = 0; k < n_; ++k) {
    p0[k][0] = 1.0;
    p1[k][0] = 0.0;
    p2[k][0] = 0.0;
    for (int e = 1; e <= cap_; ++e) {
      p0[k][e] = p0[k][e - 1] * xi[k];
      p1[k][e] = e * p0[k][e - 1];
      p2[k][e] = e * p1[k][e - 1];
    }
  }
  *value = 0.0;
  if (order >= 1) std::fill(grad, grad + n_, 0.0);
  if (order >= 2) std::fill(hess, hess + n_ * n_, 0.0);
  int e[3];
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    const double c = c_[i];
    if (c == 0.0) continue;
    decode(i, n_, cap_, e);
    double t = c;
    for (int k = 0; k < n_; ++k) t *= p0[k][e[k]];
    *value += t;
    if (order < 1) continue;
    for (int k = 0; k < n_; ++k) {
      double g = c * p1[k][e[k]];
      for (int j = 0; j < n_; ++j)
        if (j != k) g *= p0[j][e[j]];
      grad[k] += g;
    }
    if (order < 2) continue;
    for (int k = 0; k < n_; ++k) {
      for (int l = 0; l < n_; ++l) {
        double h = c;
        for (int j = 0; j < n_; ++j) {
          if (k == l && j == k) {
            h *= p2[j][e[j]];
          } else if (j == k || j == l) {
            h *= p1[j][e[j]];
          } else {
            h *= p0[j][e[j]];
          }
        }
        hess[k * n_ + l] += h;
      }
    }
  }
}

double Poly::operator()(const double* xi) const {
  double v = 0.0;
  eval(xi, 0, &v, nullptr, nullptr);
  return v;
}

Eigen::VectorXd Poly::flatten(int max_degree) const {
  if (max_degree < degree()) throw std::invalid_argument("Poly::flatten: degree too small");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ipow(max_degree + 1, n_));
  int e[3];
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
    if (c_[i] == 0.0) continue;
    decode(i, n_, cap_, e);
    int idx = 0;
    for (int k = n_ - 1; k >= 0; --k) idx = idx * (max_degree + 1) + e[k];
    out[idx] = c_[i];
  }
  return out;
}

PolyField PolyField::zero(int nvars, int ncomp) {
  return PolyField(std::vector<Poly>(ncomp, Poly(nvars, 0)));
}

int PolyField::degree() const {
  int d = 0;
  for (const auto& p : comp) d = std::max(d, p.degree());
  return d;
}

PolyField& PolyField::operator+=(const PolyField& o) {
  if (comp.empty()) {
    comp = o.comp;
    return *this;
  }
  for (std::size_t c = 0; c < comp.size(); ++c) comp[c] += o.comp[c];
  return *this;
}

PolyField& PolyField::axpy(double a, const PolyField& o) {
  if (comp.empty()) comp.assign(o.comp.size(), Poly(o.comp.front().nvars(), 0));
  for (std::size_t c = 0; c < comp.size(); ++c) comp[c] += o.comp[c] * a;
  return *this;
}

PolyField& PolyField::operator*=(double s) {
  for (auto& p : comp) p *= s;
  return *this;
}

Eigen::VectorXd PolyField::flatten(int max_degree) const {
  std::vector<Eigen::VectorXd> parts;
  Eigen::Index total = 0;
  for (const auto& p : comp) {
    parts.push_back(p.flatten(max_degree));
    total += parts.back().size();
  }
  Eigen::VectorXd out(total);
  Eigen::Index off = 0;
  for (const auto& v : parts) {
    out.segment(off, v.size()) = v;
    off += v.size();
  }
  return out;
}

Simplex::Simplex(Eigen::MatrixXd vertices) : v_(std::move(vertices)) {
  dim_ = static_cast<int>(v_.cols());
  if (v_.rows() != dim_ + 1 || dim_ < 1 || dim_ > 3) {
    throw std::invalid_argument("Simplex: expected (d+1) x d vertex matrix with 1 <= d <= 3");
  }
  Eigen::MatrixXd J(dim_, dim_);
  for (int i = 0; i < dim_; ++i) J.col(i) = (v_.row(i + 1) - v_.row(0)).transpose();
  const double det = J.determinant();
  signed_measure_ = det / factorial(dim_);
  measure_ = std::abs(signed_measure_);
  if (measure_ == 0.0) throw std::invalid_argument("Simplex: degenerate");
  G_ = J.inverse();
  grad_lambda_.resize(dim_ + 1, dim_);
  grad_lambda_.row(0) = -G_.colwise().sum();
  for (int k = 0; k < dim_; ++k) grad_lambda_.row(k + 1) = G_.row(k);
}

double Simplex::diameter() const {
  double h = 0.0;
  for (int i = 0; i <= dim_; ++i)
    for (int j = i + 1; j <= dim_; ++j) h = std::max(h, (v_.row(i) - v_.row(j)).norm());
  return h;
}

Eigen::VectorXd Simplex::centroid() const { return v_.colwise().mean().transpose(); }

Eigen::VectorXd Simplex::to_physical(const Eigen::VectorXd& bary) const {
  return (v_.transpose() * bary);
}

Eigen::VectorXd Simplex::to_barycentric(const Eigen::VectorXd& x) const {
  Eigen::VectorXd xi = G_ * (x - vertex(0));
  Eigen::VectorXd b(dim_ + 1);
  b[0] = 1.0 - xi.sum();
  b.tail(dim_) = xi;
  return b;
}

std::vector<int> Simplex::face_vertices(int i) const {
  std::vector<int> f;
  for (int j = 0; j <= dim_; ++j)
    if (j != i) f.push_back(j);
  return f;
}

double Simplex::face_measure(int i) const {
  const auto f = face_vertices(i);
  if (dim_ == 1) return 1.0;
  if (dim_ == 2) return (v_.row(f[1]) - v_.row(f[0])).norm();
  const Eigen::Vector3d a = (v_.row(f[1]) - v_.row(f[0])).transpose();
  const Eigen::Vector3d b = (v_.row(f[2]) - v_.row(f[0])).transpose();
  return 0.5 * a.cross(b).norm();
}

Eigen::VectorXd Simplex::outward_normal(int i) const {
  Eigen::VectorXd g = grad_lambda_.row(i).transpose();
  return -g / g.norm();
}

void Simplex::eval_jet(const PolyField& f, const Eigen::VectorXd& bary, int order, double* jet) const {
  const JetLayout L{dim_, f.ncomp()};
  const double* xi = bary.data() + 1;
  double val = 0.0, g[3], h[9];
  for (int c = 0; c < f.ncomp(); ++c) {
    f.comp[c].eval(xi, order, &val, g, h);
    jet[L.value(c)] = val;
    if (order >= 1) {
      for (int m = 0; m < dim_; ++m) {
        double s = 0.0;
        for (int k = 0; k < dim_; ++k) s += G_(k, m) * g[k];
        jet[L.grad(c, m)] = s;
      }
    }
    if (order >= 2) {
      for (int m = 0; m < dim_; ++m) {
        for (int n = 0; n < dim_; ++n) {
          double s = 0.0;
          for (int k = 0; k < dim_; ++k)
            for (int l = 0; l < dim_; ++l) s += G_(k, m) * G_(l, n) * h[k * dim_ + l];
          jet[L.hess(c, m, n)] = s;
        }
      }
    }
  }
}

}  // namespace sgefem
