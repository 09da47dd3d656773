#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgefem {

/// Compressed rows of the lower triangle (diagonal included), sorted columns.
struct SparsityPattern {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;

  [[nodiscard]] std::size_t nnz() const { return col.size(); }
  /// Position of (i, j), i >= j, or -1.
  [[nodiscard]] int find(int i, int j) const;

  /// Pattern from element connectivity lists (negative entries skipped).
  static std::shared_ptr<SparsityPattern> from_elements(int n, const std::vector<std::vector<int>>& elements);
};

class SparseSymmetricMatrix {
 public:
  SparseSymmetricMatrix() = default;
  SparseSymmetricMatrix(std::shared_ptr<const SparsityPattern> p, std::vector<double> values);

  [[nodiscard]] int rows() const { return pattern_ ? pattern_->n : 0; }
  [[nodiscard]] std::size_t nnz() const { return values_.size(); }
  [[nodiscard]] const SparsityPattern& pattern() const { return *pattern_; }
  [[nodiscard]] std::shared_ptr<const SparsityPattern> pattern_ptr() const { return pattern_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::vector<double>& values() { return values_; }

  [[nodiscard]] double coeff(int i, int j) const;
  [[nodiscard]] Eigen::VectorXd multiply(const Eigen::VectorXd& x) const;
  /// b - A x, accumulated in long double.
  [[nodiscard]] Eigen::VectorXd residual(const Eigen::VectorXd& b, const Eigen::VectorXd& x) const;
  [[nodiscard]] double max_abs() const;
  [[nodiscard]] double norm_inf() const;
  [[nodiscard]] int max_row_nnz() const;  // full (symmetric) row counts
  [[nodiscard]] Eigen::MatrixXd to_dense() const;
  /// Upper triangle in column-major form (same arrays as the lower CSR).
  [[nodiscard]] Eigen::SparseMatrix<double> upper() const;

 private:
  std::shared_ptr<const SparsityPattern> pattern_;
  std::vector<double> values_;
};

class SolverError : public std::runtime_error {
 public:
  enum class Kind { NotPositiveDefinite, ResidualTooLarge, DimensionMismatch };
  SolverError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct SolveInfo {
  double relative_residual = 0.0;  // |b - Ax| / |b|
  double backward_error = 0.0;     // |b - Ax|_inf / (|A|_inf |x|_inf + |b|_inf)
  int refinement_steps = 0;
  bool rounding_limited = false;   // accepted on the backward-error test
};

/// Sparse Cholesky (supernodal, fill-reducing ordering).  The symbolic
/// analysis is kept between factorizations with the same pattern.
class SpdSolver {
 public:
  SpdSolver();
  ~SpdSolver();
  SpdSolver(const SpdSolver&) = delete;
  SpdSolver& operator=(const SpdSolver&) = delete;

  void factorize(const SparseSymmetricMatrix& A);
  Eigen::VectorXd solve(const Eigen::VectorXd& b, SolveInfo* info = nullptr) const;

  /// A solve succeeds when the relative residual is below kResidualTolerance,
  /// or, failing that, when refinement has driven the normwise backward error
  /// down to rounding level (fourth-order systems on fine meshes have a
  /// residual floor of about eps * |A| |x| / |b|).
  static constexpr double kResidualTolerance = 1e-10;
  static constexpr double kBackwardTolerance = 1e-13;
  static constexpr int kMaxRefinement = 5;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Eigen::VectorXd solve_spd(const SparseSymmetricMatrix& A, const Eigen::VectorXd& b, SolveInfo* info = nullptr);

/// Numerical rank by column-pivoted Householder QR; pivots below
/// tol * (largest pivot) count as zero.
int rank_dense(const Eigen::MatrixXd& M, double tol = 1e-9);
inline constexpr int kMaxDenseRankDim = 2000;

}  // namespace sgefem
