#include "sgefem/manufactured.hpp"

#include <numbers>
#include <stdexcept>

namespace sgefem {

namespace {

using T5 = Taylor<5>;

UniJet to_jet(const T5& t) {
  UniJet j;
  for (int k = 0; k < 5; ++k) j[k] = t.derivative(k);
  return j;
}

constexpr double kPi = std::numbers::pi;

// sin^3(pi t)
UniJet ex1_a(double t) {
  const T5 s = sin(kPi * T5::variable(t));
  return to_jet(s * s * s);
}

// sin(2 pi t) sin(pi t)
UniJet ex1_b(double t) {
  const T5 x = T5::variable(t);
  return to_jet(sin(2.0 * kPi * x) * sin(kPi * x));
}

// e^{cos 2 pi t} - e
UniJet ex2_a(double t) {
  const T5 e = exp(cos(2.0 * kPi * T5::variable(t)));
  return to_jet(e - T5::constant(std::numbers::e));
}

// sin(2 pi t) e^{cos 2 pi t}
UniJet ex2_b(double t) {
  const T5 x = 2.0 * kPi * T5::variable(t);
  T5 s, c;
  sincos(x, s, c);
  return to_jet(s * exp(c));
}

}  // namespace

Eigen::Vector2d AnalyticField::value(const Eigen::Vector2d& x) const {
  const UniJet a1 = a_(x[0]), a2 = a_(x[1]), b1 = b_(x[0]), b2 = b_(x[1]);
  return {a1[0] * b2[0], -b1[0] * a2[0]};
}

Eigen::Matrix2d AnalyticField::gradient(const Eigen::Vector2d& x) const {
  const UniJet a1 = a_(x[0]), a2 = a_(x[1]), b1 = b_(x[0]), b2 = b_(x[1]);
  Eigen::Matrix2d G;
  G << a1[1] * b2[0], a1[0] * b2[1], -b1[1] * a2[0], -b1[0] * a2[1];
  return G;
}

std::array<Eigen::Matrix2d, 2> AnalyticField::hessian(const Eigen::Vector2d& x) const {
  double jet[14];
  this->jet(x, 2, jet);
  std::array<Eigen::Matrix2d, 2> H;
  for (int i = 0; i < 2; ++i) H[i] << jet[7 * i + 3], jet[7 * i + 4], jet[7 * i + 5], jet[7 * i + 6];
  return H;
}

double AnalyticField::divergence(const Eigen::Vector2d& x) const { return gradient(x).trace(); }

Eigen::Vector2d AnalyticField::laplacian(const Eigen::Vector2d& x) const {
  const UniJet a1 = a_(x[0]), a2 = a_(x[1]), b1 = b_(x[0]), b2 = b_(x[1]);
  return {a1[2] * b2[0] + a1[0] * b2[2], -(b1[2] * a2[0] + b1[0] * a2[2])};
}

Eigen::Vector2d AnalyticField::bilaplacian(const Eigen::Vector2d& x) const {
  const UniJet a1 = a_(x[0]), a2 = a_(x[1]), b1 = b_(x[0]), b2 = b_(x[1]);
  return {a1[4] * b2[0] + 2.0 * a1[2] * b2[2] + a1[0] * b2[4],
          -(b1[4] * a2[0] + 2.0 * b1[2] * a2[2] + b1[0] * a2[4])};
}

void AnalyticField::jet(const Eigen::Vector2d& x, int order, double* out) const {
  const UniJet a1 = a_(x[0]), a2 = a_(x[1]), b1 = b_(x[0]), b2 = b_(x[1]);
  // u1 = a(x1) b(x2), u2 = -b(x1) a(x2)
  const UniJet* f[2][2] = {{&a1, &b2}, {&b1, &a2}};
  const double sign[2] = {1.0, -1.0};
  for (int i = 0; i < 2; ++i) {
    const UniJet& p = *f[i][0];
    const UniJet& q = *f[i][1];
    double* o = out + 7 * i;
    o[0] = sign[i] * p[0] * q[0];
    if (order >= 1) {
      o[1] = sign[i] * p[1] * q[0];
      o[2] = sign[i] * p[0] * q[1];
    }
    if (order >= 2) {
      o[3] = sign[i] * p[2] * q[0];
      o[4] = o[5] = sign[i] * p[1] * q[1];
      o[6] = sign[i] * p[0] * q[2];
    }
  }
}

SmoothField AnalyticField::smooth() const {
  SmoothField s;
  s.dim = 2;
  s.ncomp = 2;
  s.fn = [self = *this](const Eigen::VectorXd& x, int order, double* jet) {
    self.jet(Eigen::Vector2d(x[0], x[1]), order, jet);
  };
  return s;
}

ManufacturedProblem example1(double mu, double iota) {
  ManufacturedProblem p;
  p.id = 1;
  p.u = AnalyticField(ex1_a, ex1_b);
  p.f = [u = p.u, mu, iota](const Eigen::Vector2d& x) -> Eigen::Vector2d {
    return -mu * (u.laplacian(x) - iota * iota * u.bilaplacian(x));
  };
  return p;
}

ManufacturedProblem example2(double mu) {
  ManufacturedProblem p;
  p.id = 2;
  p.u = AnalyticField(ex2_a, ex2_b);
  p.f = [u = p.u, mu](const Eigen::Vector2d& x) -> Eigen::Vector2d { return -mu * u.laplacian(x); };
  return p;
}

ManufacturedProblem make_example(int id, double mu, double iota) {
  if (id == 1) return example1(mu, iota);
  if (id == 2) return example2(mu);
  throw std::invalid_argument("unknown example " + std::to_string(id));
}

}  // namespace sgefem
