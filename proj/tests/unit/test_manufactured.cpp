#include "oracles.hpp"
#include "sgefem/manufactured.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sgefem;

namespace {

constexpr double kPi = std::numbers::pi;

const Eigen::Vector2d kPoints[] = {{0.25, 0.25}, {0.13, 0.71}, {0.62, 0.38}, {0.9, 0.55}, {0.47, 0.03}};

// div sigma(v)_i = mu sum_j d_j (d_j v_i + d_i v_j) + lambda d_i div v, by finite differences of v.
template <class Field>
Eigen::Vector2d fd_div_sigma(Field&& v, const Eigen::Vector2d& x, double mu, double lambda) {
  auto comp = [&](int i) { return oracle::Scalar2([&, i](const Eigen::Vector2d& y) { return v(y)[i]; }); };
  Eigen::Vector2d r;
  for (int i = 0; i < 2; ++i) {
    double s = 0.0;
    for (int j = 0; j < 2; ++j) {
      s += mu * (oracle::d2(comp(i), x, j, j) + oracle::d2(comp(j), x, j, i));
      s += lambda * oracle::d2(comp(j), x, i, j);
    }
    r[i] = s;
  }
  return r;
}

}  // namespace

TEST(Taylor, ElementaryFunctionsHaveKnownDerivatives) {
  const double t = 0.37;
  const auto x = Taylor<5>::variable(t);
  const auto s = sin(x), c = cos(x), e = exp(x);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(s.derivative(k), std::sin(t + k * kPi / 2), 1e-13);
    EXPECT_NEAR(c.derivative(k), std::cos(t + k * kPi / 2), 1e-13);
    EXPECT_NEAR(e.derivative(k), std::exp(t), 1e-13);
  }
  // (x^2)'' = 2, (x^2)''' = 0
  const auto sq = x * x;
  EXPECT_NEAR(sq.derivative(2), 2.0, 1e-15);
  EXPECT_NEAR(sq.derivative(3), 0.0, 1e-15);
}

TEST(Taylor, CompositionMatchesFiniteDifferences) {
  auto f = [](double t) { return std::exp(std::cos(2 * kPi * t)); };
  const double t = 0.21, h = 1e-3;
  const auto jet = exp(cos(2.0 * kPi * Taylor<5>::variable(t)));
  const double fd2 = (f(t + h) - 2 * f(t) + f(t - h)) / (h * h);
  EXPECT_NEAR(jet.derivative(2), fd2, 1e-4 * std::abs(fd2));
}

TEST(Example1, KnownValue) {
  const auto p = example1(1.0, 1.0);
  const Eigen::Vector2d u = p.u.value({0.25, 0.25});
  EXPECT_NEAR(u[0], 0.25, 1e-15);
  EXPECT_NEAR(u[1], -0.25, 1e-15);
}

TEST(Example1, ClosedFormAndAntisymmetry) {
  const auto p = example1(1.0, 1.0);
  for (const auto& x : kPoints) {
    const double s1 = std::sin(kPi * x[0]), s2 = std::sin(kPi * x[1]);
    const Eigen::Vector2d u = p.u.value(x);
    EXPECT_NEAR(u[0], s1 * s1 * s1 * std::sin(2 * kPi * x[1]) * s2, 1e-14);
    EXPECT_NEAR(u[1], -s2 * s2 * s2 * std::sin(2 * kPi * x[0]) * s1, 1e-14);
    EXPECT_NEAR(u[1], -p.u.value({x[1], x[0]})[0], 1e-15);
  }
}

TEST(Example1, DerivativesMatchFiniteDifferences) {
  for (const auto& prob : {example1(1.0, 1.0), example2(1.0)}) {
    const AnalyticField& u = prob.u;
    for (const auto& x : kPoints) {
      const Eigen::Matrix2d G = u.gradient(x);
      const auto H = u.hessian(x);
      const Eigen::Vector2d L = u.laplacian(x), B = u.bilaplacian(x);
      const double scale = 1.0 + G.cwiseAbs().maxCoeff();
      for (int i = 0; i < 2; ++i) {
        const oracle::Scalar2 ui = [&](const Eigen::Vector2d& y) { return u.value(y)[i]; };
        const oracle::Scalar2 Li = [&](const Eigen::Vector2d& y) { return u.laplacian(y)[i]; };
        for (int j = 0; j < 2; ++j) {
          EXPECT_NEAR(G(i, j), oracle::d1(ui, x, j), 1e-8 * scale);
          for (int k = 0; k < 2; ++k) {
            const oracle::Scalar2 gij = [&](const Eigen::Vector2d& y) { return u.gradient(y)(i, j); };
            EXPECT_NEAR(H[i](j, k), oracle::d1(gij, x, k), 1e-7 * (1 + std::abs(H[i](j, k))));
          }
        }
        EXPECT_NEAR(L[i], H[i].trace(), 1e-11 * (1 + std::abs(L[i])));
        const double fd = oracle::d2(Li, x, 0, 0) + oracle::d2(Li, x, 1, 1);
        EXPECT_NEAR(B[i], fd, 1e-6 * (1 + std::abs(B[i])));
      }
      double jet[14];
      u.jet(x, 2, jet);
      EXPECT_NEAR(jet[0], u.value(x)[0], 0.0);
      EXPECT_NEAR(jet[7 + 2], G(1, 1), 0.0);
      EXPECT_NEAR(jet[4], jet[5], 0.0);
    }
  }
}

TEST(Example1, DivergenceFreeAndClamped) {
  const auto p = example1(1.0, 1.0);
  for (const auto& x : kPoints) EXPECT_NEAR(p.u.divergence(x), 0.0, 1e-13);
  for (double s : {0.0, 0.17, 0.5, 0.83, 1.0}) {
    for (const Eigen::Vector2d& x : {Eigen::Vector2d(s, 0), Eigen::Vector2d(s, 1), Eigen::Vector2d(0, s),
                                    Eigen::Vector2d(1, s)}) {
      EXPECT_NEAR(p.u.value(x).norm(), 0.0, 1e-14);
      EXPECT_NEAR(p.u.gradient(x).norm(), 0.0, 1e-13);
    }
  }
}

TEST(Example1, LoadMatchesTheStrainGradientOperator) {
  // f = -div sigma(u) + iota^2 div sigma(Lap u); independent of lambda since div u = 0.
  for (double iota : {1.0, 1e-2}) {
    const double mu = 1.3;
    const auto p = example1(mu, iota);
    for (double lambda : {0.0, 7.0}) {
      for (const auto& x : kPoints) {
        const Eigen::Vector2d a = fd_div_sigma([&](const Eigen::Vector2d& y) { return p.u.value(y); }, x, mu, lambda);
        const Eigen::Vector2d b =
            fd_div_sigma([&](const Eigen::Vector2d& y) { return p.u.laplacian(y); }, x, mu, lambda);
        const Eigen::Vector2d f = -a + iota * iota * b;
        const Eigen::Vector2d got = p.f(x);
        EXPECT_NEAR(got[0], f[0], 1e-6 * (1 + f.norm()));
        EXPECT_NEAR(got[1], f[1], 1e-6 * (1 + f.norm()));
      }
    }
  }
}

TEST(Example2, LoadIsLinearElasticityOperator) {
  const double mu = 1.0;
  const auto p = example2(mu);
  for (const auto& x : kPoints) {
    const Eigen::Vector2d f = -fd_div_sigma([&](const Eigen::Vector2d& y) { return p.u.value(y); }, x, mu, 3.0);
    EXPECT_NEAR((p.f(x) - f).norm(), 0.0, 1e-6 * (1 + f.norm()));
    EXPECT_NEAR(p.u.divergence(x), 0.0, 1e-12);
    // independent of iota
    EXPECT_EQ(make_example(2, mu, 1e-8).f(x), make_example(2, mu, 1.0).f(x));
  }
}

TEST(Example2, VanishesOnBoundaryWithNonzeroNormalDerivative) {
  const auto p = example2(1.0);
  double dn = 0.0;
  for (double s : {0.1, 0.3, 0.6}) {
    EXPECT_NEAR(p.u.value({s, 0}).norm(), 0.0, 1e-13);
    EXPECT_NEAR(p.u.value({0, s}).norm(), 0.0, 1e-13);
    EXPECT_NEAR(p.u.value({s, 1}).norm(), 0.0, 1e-13);
    EXPECT_NEAR(p.u.value({1, s}).norm(), 0.0, 1e-13);
    dn = std::max(dn, p.u.gradient({s, 0}).col(1).norm());
  }
  EXPECT_GT(dn, 1.0);
}

TEST(Examples, UnknownIdThrows) { EXPECT_THROW(make_example(3, 1.0, 1.0), std::invalid_argument); }
