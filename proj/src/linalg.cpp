#include "sgefem/linalg.hpp"

#include <Eigen/CholmodSupport>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sgefem {

int SparsityPattern::find(int i, int j) const {
  if (i < j) std::swap(i, j);
  const auto first = col.begin() + row_ptr[i];
  const auto last = col.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(first, last, j);
  return (it != last && *it == j) ? static_cast<int>(it - col.begin()) : -1;
}

std::shared_ptr<SparsityPattern> SparsityPattern::from_elements(int n, const std::vector<std::vector<int>>& elements) {
  std::vector<std::vector<int>> rows(n);
  for (const auto& el : elements) {
    for (int i : el) {
      if (i < 0) continue;
      for (int j : el)
        if (j >= 0 && j <= i) rows[i].push_back(j);
    }
  }
  auto p = std::make_shared<SparsityPattern>();
  p->n = n;
  p->row_ptr.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (r.empty() || r.back() != i) r.push_back(i);  // keep the diagonal
    p->row_ptr[i + 1] = p->row_ptr[i] + static_cast<int>(r.size());
  }
  p->col.reserve(p->row_ptr[n]);
  for (auto& r : rows) {
    p->col.insert(p->col.end(), r.begin(), r.end());
    std::vector<int>().swap(r);
  }
  return p;
}

SparseSymmetricMatrix::SparseSymmetricMatrix(std::shared_ptr<const SparsityPattern> p, std::vector<double> values)
    : pattern_(std::move(p)), values_(std::move(values)) {
  if (values_.size() != pattern_->nnz()) throw std::invalid_argument("SparseSymmetricMatrix: size mismatch");
}

double SparseSymmetricMatrix::coeff(int i, int j) const {
  const int k = pattern_->find(i, j);
  return k < 0 ? 0.0 : values_[k];
}

Eigen::VectorXd SparseSymmetricMatrix::residual(const Eigen::VectorXd& b, const Eigen::VectorXd& x) const {
  const auto& P = *pattern_;
  std::vector<long double> y(P.n, 0.0L);
  for (int i = 0; i < P.n; ++i) {
    long double s = 0.0L;
    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k) {
      const int j = P.col[k];
      s += static_cast<long double>(values_[k]) * x[j];
      if (j != i) y[j] += static_cast<long double>(values_[k]) * x[i];
    }
    y[i] += s;
  }
  Eigen::VectorXd r(P.n);
  for (int i = 0; i < P.n; ++i) r[i] = static_cast<double>(static_cast<long double>(b[i]) - y[i]);
  return r;
}

Eigen::VectorXd SparseSymmetricMatrix::multiply(const Eigen::VectorXd& x) const {
  const auto& P = *pattern_;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(P.n);
  for (int i = 0; i < P.n; ++i) {
    double s = 0.0;
    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k) {
      const int j = P.col[k];
      s += values_[k] * x[j];
      if (j != i) y[j] += values_[k] * x[i];
    }
    y[i] += s;
  }
  return y;
}

double SparseSymmetricMatrix::norm_inf() const {
  const auto& P = *pattern_;
  std::vector<double> rs(P.n, 0.0);
  for (int i = 0; i < P.n; ++i) {
    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k) {
      rs[i] += std::abs(values_[k]);
      if (P.col[k] != i) rs[P.col[k]] += std::abs(values_[k]);
    }
  }
  return P.n ? *std::max_element(rs.begin(), rs.end()) : 0.0;
}

double SparseSymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

int SparseSymmetricMatrix::max_row_nnz() const {
  const auto& P = *pattern_;
  std::vector<int> cnt(P.n, 0);
  for (int i = 0; i < P.n; ++i) {
    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k) {
      ++cnt[i];
      if (P.col[k] != i) ++cnt[P.col[k]];
    }
  }
  return P.n ? *std::max_element(cnt.begin(), cnt.end()) : 0;
}

Eigen::MatrixXd SparseSymmetricMatrix::to_dense() const {
  const auto& P = *pattern_;
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(P.n, P.n);
  for (int i = 0; i < P.n; ++i) {
    for (int k = P.row_ptr[i]; k < P.row_ptr[i + 1]; ++k) {
      D(i, P.col[k]) = values_[k];
      D(P.col[k], i) = values_[k];
    }
  }
  return D;
}

Eigen::SparseMatrix<double> SparseSymmetricMatrix::upper() const {
  const auto& P = *pattern_;
  const Eigen::Map<const Eigen::SparseMatrix<double, Eigen::ColMajor, int>> view(
      P.n, P.n, static_cast<Eigen::Index>(P.nnz()), P.row_ptr.data(), P.col.data(), values_.data());
  return Eigen::SparseMatrix<double>(view);
}

struct SpdSolver::Impl {
  Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<double>, Eigen::Upper> llt;
  std::shared_ptr<const SparsityPattern> analyzed;
  // Kept for residuals; the caller's matrix may not outlive the solver.
  SparseSymmetricMatrix A;
  bool ready = false;
};

SpdSolver::SpdSolver() : impl_(std::make_unique<Impl>()) {
  // Failures are reported through SolverError, not on stderr.
  impl_->llt.cholmod().print = 0;
}
SpdSolver::~SpdSolver() = default;

void SpdSolver::factorize(const SparseSymmetricMatrix& A) {
  const Eigen::SparseMatrix<double> U = A.upper();
  if (impl_->analyzed != A.pattern_ptr()) {
    impl_->llt.analyzePattern(U);
    impl_->analyzed = A.pattern_ptr();
  }
  impl_->ready = false;
  impl_->llt.factorize(U);
  if (impl_->llt.info() != Eigen::Success) {
    impl_->analyzed.reset();
    throw SolverError(SolverError::Kind::NotPositiveDefinite, "solve_spd: matrix is not positive definite");
  }
  impl_->A = A;
  impl_->ready = true;
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& b, SolveInfo* info) const {
  if (!impl_->ready) throw std::logic_error("SpdSolver::solve: no factorization");
  const SparseSymmetricMatrix& A = impl_->A;
  if (b.size() != A.rows()) throw SolverError(SolverError::Kind::DimensionMismatch, "solve_spd: size mismatch");
  const double nb = b.norm();
  if (nb == 0.0) {
    if (info) *info = {};
    return Eigen::VectorXd::Zero(b.size());
  }
  Eigen::VectorXd x = impl_->llt.solve(b);
  Eigen::VectorXd r = A.residual(b, x);
  double rel = r.norm() / nb;
  int steps = 0;
  // Iterative refinement with the residual accumulated in extended precision;
  // stops once the residual no longer halves.
  while (rel > kResidualTolerance && steps < kMaxRefinement) {
    const Eigen::VectorXd xn = x + impl_->llt.solve(r);
    const Eigen::VectorXd rn = A.residual(b, xn);
    const double reln = rn.norm() / nb;
    ++steps;
    if (!(reln < rel)) break;
    const bool stalled = reln > 0.5 * rel;
    x = xn;
    r = rn;
    rel = reln;
    if (stalled) break;
  }
  const double backward = r.lpNorm<Eigen::Infinity>() /
                          (A.norm_inf() * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>());
  if (info) *info = {rel, backward, steps, rel > kResidualTolerance};
  if (!(rel <= kResidualTolerance) && !(backward <= kBackwardTolerance)) {
    std::ostringstream msg;
    msg << "solve_spd: relative residual " << std::scientific << rel << " exceeds tolerance (backward error "
        << backward << ")";
    throw SolverError(SolverError::Kind::ResidualTooLarge, msg.str());
  }
  return x;
}

Eigen::VectorXd solve_spd(const SparseSymmetricMatrix& A, const Eigen::VectorXd& b, SolveInfo* info) {
  SpdSolver s;
  s.factorize(A);
  return s.solve(b, info);
}

int rank_dense(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() > kMaxDenseRankDim || M.cols() > kMaxDenseRankDim) {
    throw std::invalid_argument("rank_dense: matrix larger than " + std::to_string(kMaxDenseRankDim));
  }
  if (M.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

}  // namespace sgefem
