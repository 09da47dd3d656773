#pragma once

#include "sgefem/dofs.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace sgefem {

/// Truncated Taylor series c[k] = f^(k)(t) / k!.
template <int N>
struct Taylor {
  std::array<double, N> c{};

  static Taylor variable(double t) {
    Taylor r;
    r.c[0] = t;
    if (N > 1) r.c[1] = 1.0;
    return r;
  }
  static Taylor constant(double v) {
    Taylor r;
    r.c[0] = v;
    return r;
  }
  [[nodiscard]] double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  friend Taylor operator+(Taylor a, const Taylor& b) {
    for (int k = 0; k < N; ++k) a.c[k] += b.c[k];
    return a;
  }
  friend Taylor operator-(Taylor a, const Taylor& b) {
    for (int k = 0; k < N; ++k) a.c[k] -= b.c[k];
    return a;
  }
  friend Taylor operator*(double s, Taylor a) {
    for (auto& x : a.c) x *= s;
    return a;
  }
  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (int k = 0; k < N; ++k)
      for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
  }
};

template <int N>
void sincos(const Taylor<N>& u, Taylor<N>& s, Taylor<N>& c) {
  s = {};
  c = {};
  s.c[0] = std::sin(u.c[0]);
  c.c[0] = std::cos(u.c[0]);
  for (int k = 1; k < N; ++k) {
    double ds = 0.0, dc = 0.0;
    for (int j = 1; j <= k; ++j) {
      ds += j * u.c[j] * c.c[k - j];
      dc -= j * u.c[j] * s.c[k - j];
    }
    s.c[k] = ds / k;
    c.c[k] = dc / k;
  }
}

template <int N>
Taylor<N> sin(const Taylor<N>& u) {
  Taylor<N> s, c;
  sincos(u, s, c);
  return s;
}

template <int N>
Taylor<N> cos(const Taylor<N>& u) {
  Taylor<N> s, c;
  sincos(u, s, c);
  return c;
}

template <int N>
Taylor<N> exp(const Taylor<N>& u) {
  Taylor<N> e;
  e.c[0] = std::exp(u.c[0]);
  for (int k = 1; k < N; ++k) {
    double d = 0.0;
    for (int j = 1; j <= k; ++j) d += j * u.c[j] * e.c[k - j];
    e.c[k] = d / k;
  }
  return e;
}

/// Derivatives 0..4 of a univariate function.
using UniJet = std::array<double, 5>;
using UniFn = std::function<UniJet(double)>;

/// u = (a(x1) b(x2), -b(x1) a(x2)), the shape shared by both benchmark fields.
class AnalyticField {
 public:
  AnalyticField() = default;
  AnalyticField(UniFn a, UniFn b) : a_(std::move(a)), b_(std::move(b)) {}

  [[nodiscard]] Eigen::Vector2d value(const Eigen::Vector2d& x) const;
  /// G(i, j) = d_j u_i
  [[nodiscard]] Eigen::Matrix2d gradient(const Eigen::Vector2d& x) const;
  /// H[i](j, k) = d_j d_k u_i
  [[nodiscard]] std::array<Eigen::Matrix2d, 2> hessian(const Eigen::Vector2d& x) const;
  [[nodiscard]] double divergence(const Eigen::Vector2d& x) const;
  [[nodiscard]] Eigen::Vector2d laplacian(const Eigen::Vector2d& x) const;
  [[nodiscard]] Eigen::Vector2d bilaplacian(const Eigen::Vector2d& x) const;

  /// JetLayout{2, 2} up to order 2.
  void jet(const Eigen::Vector2d& x, int order, double* out) const;
  [[nodiscard]] SmoothField smooth() const;

 private:
  UniFn a_, b_;
};

struct ManufacturedProblem {
  int id = 1;
  AnalyticField u;  // exact solution (Example 1) or reference u0 (Example 2)
  std::function<Eigen::Vector2d(const Eigen::Vector2d&)> f;
};

/// Clamped, divergence-free field without boundary layers; f = -mu (Lap u - iota^2 Lap^2 u).
ManufacturedProblem example1(double mu, double iota);
/// Divergence-free linear-elasticity solution u0; f = -mu Lap u0.
ManufacturedProblem example2(double mu);
ManufacturedProblem make_example(int id, double mu, double iota);

}  // namespace sgefem
