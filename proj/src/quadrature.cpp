#include "sgefem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sgefem {

double QuadratureRule::reference_measure() const {
  switch (dim) {
    case 1: return 1.0;
    case 2: return 0.5;
    case 3: return 1.0 / 6.0;
    default: return 1.0;
  }
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Three-term recurrence for P_n and its derivative.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pm = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = (n == 1) ? x : p1;
      const double pm = (n == 1) ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1,1] -> [0,1].
    nodes[i] = 0.5 * (1.0 - x);
    nodes[n - 1 - i] = 0.5 * (1.0 + x);
    weights[i] = 0.5 * w;
    weights[n - 1 - i] = 0.5 * w;
  }
}

namespace {

void check_degree(int degree, int max_degree, const char* what) {
  if (degree < 0 || degree > max_degree) {
    throw std::invalid_argument(std::string(what) + ": degree " + std::to_string(degree) +
                                " outside [0, " + std::to_string(max_degree) + "]");
  }
}

}  // namespace

QuadratureRule edge_rule(int degree) {
  check_degree(degree, 31, "edge_rule");
  const int n = degree / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.dim = 1;
  rule.degree = degree;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd b(2);
    b << 1.0 - x[i], x[i];
    rule.points.push_back(b);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

// Collapsed (Duffy) products of Gauss-Legendre rules.  The collapsing Jacobian
// raises the polynomial degree along the collapsed directions, hence the
// extra points.
QuadratureRule triangle_rule(int degree) {
  check_degree(degree, 20, "triangle_rule");
  const int n = (degree + 3) / 2;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.dim = 2;
  rule.degree = degree;
  for (int j = 0; j < n; ++j) {
    const double t = x[j];
    for (int i = 0; i < n; ++i) {
      const double s = x[i];
      const double xi1 = s * (1.0 - t);
      const double xi2 = t;
      Eigen::VectorXd b(3);
      b << 1.0 - xi1 - xi2, xi1, xi2;
      rule.points.push_back(b);
      rule.weights.push_back(w[i] * w[j] * (1.0 - t));
    }
  }
  return rule;
}

QuadratureRule tetrahedron_rule(int degree) {
  check_degree(degree, 20, "tetrahedron_rule");
  const int n = (degree + 4) / 2;
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  QuadratureRule rule;
  rule.dim = 3;
  rule.degree = degree;
  for (int k = 0; k < n; ++k) {
    const double r = x[k];
    for (int j = 0; j < n; ++j) {
      const double t = x[j];
      for (int i = 0; i < n; ++i) {
        const double s = x[i];
        const double xi3 = r;
        const double xi2 = t * (1.0 - r);
        const double xi1 = s * (1.0 - t) * (1.0 - r);
        Eigen::VectorXd b(4);
        b << 1.0 - xi1 - xi2 - xi3, xi1, xi2, xi3;
        rule.points.push_back(b);
        rule.weights.push_back(w[i] * w[j] * w[k] * (1.0 - t) * (1.0 - r) * (1.0 - r));
      }
    }
  }
  return rule;
}

QuadratureRule simplex_rule(int dim, int degree) {
  switch (dim) {
    case 1: return edge_rule(degree);
    case 2: return triangle_rule(degree);
    case 3: return tetrahedron_rule(degree);
    default: throw std::invalid_argument("simplex_rule: dimension must be 1, 2 or 3");
  }
}

}  // namespace sgefem
