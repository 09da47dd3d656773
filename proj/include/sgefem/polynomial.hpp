#pragma once

#include <Eigen/Dense>

#include <vector>

namespace sgefem {

/// Polynomial in the barycentric coordinates (lambda_1, ..., lambda_d) of a
/// simplex; lambda_0 = 1 - sum of the others.  Coefficients live in a dense
/// box indexed by exponent tuples, only total degree <= degree() is used.
class Poly {
 public:
  Poly() = default;
  Poly(int nvars, int max_degree);

  static Poly constant(int nvars, double c);
  static Poly barycentric(int nvars, int i);
  static Poly monomial(int nvars, const std::vector<int>& exps, double c = 1.0);

  [[nodiscard]] int nvars() const { return n_; }
  [[nodiscard]] int capacity() const { return cap_; }
  [[nodiscard]] int degree() const;
  [[nodiscard]] bool is_zero(double tol = 0.0) const;

  [[nodiscard]] double coef(const std::vector<int>& exps) const;
  void add_coef(const std::vector<int>& exps, double c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(double s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

  /// d/d lambda_{k+1} with the other free coordinates held fixed.
  [[nodiscard]] Poly dxi(int k) const;
  /// Physical derivative d/dx_m, where G(k, m) = d lambda_{k+1} / d x_m.
  [[nodiscard]] Poly dx(int m, const Eigen::MatrixXd& G) const;

  /// Value, xi-gradient (nvars) and xi-Hessian (nvars^2, row major) at xi.
  void eval(const double* xi, int order, double* value, double* grad, double* hess) const;
  [[nodiscard]] double operator()(const double* xi) const;

  /// Coefficients padded to a box of the given degree, for linear algebra on
  /// polynomial spaces.
  [[nodiscard]] Eigen::VectorXd flatten(int max_degree) const;

 private:
  void resize(int cap);
  [[nodiscard]] int index(const int* e) const;

  int n_ = 0;
  int cap_ = 0;
  std::vector<double> c_;
};

/// Scalar (1 component) or vector valued polynomial.
struct PolyField {
  std::vector<Poly> comp;

  PolyField() = default;
  explicit PolyField(std::vector<Poly> c) : comp(std::move(c)) {}
  static PolyField zero(int nvars, int ncomp);

  [[nodiscard]] int ncomp() const { return static_cast<int>(comp.size()); }
  [[nodiscard]] int degree() const;
  PolyField& operator+=(const PolyField& o);
  PolyField& axpy(double a, const PolyField& o);
  PolyField& operator*=(double s);
  [[nodiscard]] Eigen::VectorXd flatten(int max_degree) const;
};

/// Storage of value, gradient and Hessian of an ncomp-valued field at one
/// point: per component [v, d_0 v .. d_{d-1} v, H_00 .. H_{d-1,d-1}].
struct JetLayout {
  int dim = 2;
  int ncomp = 1;

  [[nodiscard]] int stride() const { return 1 + dim + dim * dim; }
  [[nodiscard]] int size() const { return ncomp * stride(); }
  [[nodiscard]] int value(int c) const { return c * stride(); }
  [[nodiscard]] int grad(int c, int m) const { return c * stride() + 1 + m; }
  [[nodiscard]] int hess(int c, int m, int n) const { return c * stride() + 1 + dim + m * dim + n; }
};

/// Affine simplex.  Row i of `vertices` is vertex i.  Face i is opposite to
/// vertex i.
class Simplex {
 public:
  Simplex() = default;
  explicit Simplex(Eigen::MatrixXd vertices);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] const Eigen::MatrixXd& vertices() const { return v_; }
  [[nodiscard]] Eigen::VectorXd vertex(int i) const { return v_.row(i).transpose(); }
  /// G(k, m) = d lambda_{k+1} / d x_m.
  [[nodiscard]] const Eigen::MatrixXd& G() const { return G_; }
  /// Row i = grad lambda_i.
  [[nodiscard]] const Eigen::MatrixXd& grad_lambda() const { return grad_lambda_; }
  [[nodiscard]] double measure() const { return measure_; }
  [[nodiscard]] double signed_measure() const { return signed_measure_; }
  [[nodiscard]] double diameter() const;
  [[nodiscard]] Eigen::VectorXd centroid() const;

  [[nodiscard]] Eigen::VectorXd to_physical(const Eigen::VectorXd& bary) const;
  [[nodiscard]] Eigen::VectorXd to_barycentric(const Eigen::VectorXd& x) const;

  /// Local vertex indices of face i in increasing order.
  [[nodiscard]] std::vector<int> face_vertices(int i) const;
  [[nodiscard]] double face_measure(int i) const;
  [[nodiscard]] Eigen::VectorXd outward_normal(int i) const;

  /// Value and physical derivatives of a PolyField at a barycentric point.
  void eval_jet(const PolyField& f, const Eigen::VectorXd& bary, int order, double* jet) const;

 private:
  int dim_ = 0;
  Eigen::MatrixXd v_;
  Eigen::MatrixXd G_;
  Eigen::MatrixXd grad_lambda_;
  double measure_ = 0.0;
  double signed_measure_ = 0.0;
};

double factorial(int n);

}  // namespace sgefem
