#include "sgefem/interp.hpp"
#include "sgefem/selfcheck.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace sgefem;

namespace {

constexpr double kPi = std::numbers::pi;

SmoothField scalar(std::function<double(double, double)> f) {
  SmoothField s;
  s.dim = 2;
  s.ncomp = 1;
  s.fn = [f](const Eigen::VectorXd& x, int order, double* jet) {
    jet[0] = f(x[0], x[1]);
    const double h = 1e-5;
    if (order >= 1) {
      jet[1] = (f(x[0] + h, x[1]) - f(x[0] - h, x[1])) / (2 * h);
      jet[2] = (f(x[0], x[1] + h) - f(x[0], x[1] - h)) / (2 * h);
    }
    if (order >= 2) throw std::logic_error("second derivatives not provided");
  };
  return s;
}

SmoothField combine(const SmoothField& a, double sa, const SmoothField& b, double sb) {
  SmoothField s = a;
  s.fn = [=](const Eigen::VectorXd& x, int order, double* jet) {
    const int n = JetLayout{2, a.ncomp}.size();
    std::vector<double> ja(n), jb(n);
    a.fn(x, order, ja.data());
    b.fn(x, order, jb.data());
    for (int k = 0; k < n; ++k) jet[k] = sa * ja[k] + sb * jb[k];
  };
  return s;
}

// Local polynomial of a global coefficient vector on cell c.
PolyField local_function(const LocalBasis& b, const GlobalSpace& s, const Eigen::VectorXd& x, int c) {
  Eigen::VectorXd loc(s.local_size);
  for (int k = 0; k < s.local_size; ++k) loc[k] = s.dof(c, k) >= 0 ? x[s.dof(c, k)] : 0.0;
  return b.combine(loc);
}

}  // namespace

TEST(Interpolation, ZeroFieldGivesZeroCoefficients) {
  const Mesh m = Mesh::uniform_unit_square(2);
  const Interpolator in(m);
  SmoothField zero2{2, 2, [](const Eigen::VectorXd&, int, double* j) { std::fill(j, j + 14, 0.0); }};
  SmoothField zero1{2, 1, [](const Eigen::VectorXd&, int, double* j) { std::fill(j, j + 7, 0.0); }};
  EXPECT_EQ(in.interp_Vh(zero2).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(in.interp_Qh(zero1).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(in.interp_Wh(zero1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Interpolation, IsLinear) {
  const Mesh m = Mesh::uniform_unit_square(2, MeshPattern::UnionJack);
  const Interpolator in(m);
  const auto fields = commutativity_fields();
  const SmoothField v = combine(fields[0].field, 2.0, fields[1].field, -0.5);
  const Eigen::VectorXd lhs = in.interp_Vh(v);
  const Eigen::VectorXd rhs = 2.0 * in.interp_Vh(fields[0].field) - 0.5 * in.interp_Vh(fields[1].field);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12 * (1 + rhs.cwiseAbs().maxCoeff()));
  const auto ws = stream_functions();
  const SmoothField w = combine(ws[0].field, 1.5, ws[2].field, 3.0);
  const Eigen::VectorXd wl = in.interp_Wh(w);
  const Eigen::VectorXd wr = 1.5 * in.interp_Wh(ws[0].field) + 3.0 * in.interp_Wh(ws[2].field);
  EXPECT_LT((wl - wr).cwiseAbs().maxCoeff(), 1e-12 * (1 + wr.cwiseAbs().maxCoeff()));
}

TEST(Interpolation, QReproducesLinearFunctionsUpToTheMean) {
  const Mesh m = Mesh::uniform_unit_square(3);
  const Interpolator in(m);
  const GlobalSpace& Q = in.complex().Qh();
  const Eigen::VectorXd q = in.interp_Qh(scalar([](double x, double y) { return 1.0 + 2.0 * x - y; }));
  // mean of 1 + 2x - y over the square is 1.5
  auto exact = [](const Eigen::Vector2d& p) { return 2.0 * p.x() - p.y() - 0.5; };
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto sv = m.sorted_vertices(c);
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (int i = 0; i < 3; ++i) centroid += m.vertex(sv[i]) / 3.0;
    EXPECT_NEAR(q[Q.dof(c, slot::q_cell)], exact(centroid), 1e-12);
    for (int i = 0; i < 3; ++i) {
      const auto ed = m.edge(m.face_edge(c, i));
      const Eigen::Vector2d mid = 0.5 * (m.vertex(ed[0]) + m.vertex(ed[1]));
      EXPECT_NEAR(q[Q.dof(c, slot::q_face(i))], exact(mid), 1e-12);
    }
  }
  const Eigen::VectorXd again = in.deflate(q);
  EXPECT_LT((again - q).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Interpolation, BoundaryPreconditionsAreEnforced) {
  const Mesh m = Mesh::uniform_unit_square(2);
  const Interpolator in(m);
  SmoothField constant{2, 2, [](const Eigen::VectorXd&, int, double* j) {
                         std::fill(j, j + 14, 0.0);
                         j[0] = 1.0;
                       }};
  EXPECT_THROW((void)in.interp_Vh(constant), PreconditionError);
  // value vanishes on the boundary, gradient does not
  EXPECT_THROW((void)in.interp_Wh(scalar([](double x, double y) { return x * (1 - x) * y * (1 - y); })),
               PreconditionError);
  EXPECT_THROW((void)in.interp_Wh(scalar([](double x, double y) { return x + y; })), std::invalid_argument);
}

TEST(Interpolation, VertexValuesOfWAreSampled) {
  const Mesh m = Mesh::uniform_unit_square(4);
  const Interpolator in(m);
  const auto ws = stream_functions();
  const Eigen::VectorXd w = in.interp_Wh(ws[1].field);
  const GlobalSpace& W = in.complex().Wh();
  for (int v = 0; v < m.num_vertices(); ++v) {
    if (m.boundary_vertex(v)) continue;
    double jet[7];
    ws[1].field.fn(m.vertex(v), 0, jet);
    EXPECT_NEAR(w[W.vertex_dofs[v][0]], jet[0], 1e-14);
  }
}

TEST(Commutativity, DivergenceIdentityOnSeveralMeshes) {
  for (int n : {2, 4}) {
    const Mesh mesh = Mesh::uniform_unit_square(n);
    const Interpolator in(mesh);
    for (const auto& f : commutativity_fields()) {
      const auto r = commutativity_check(f.field, in);
      EXPECT_LE(r.residual, 1e-10 * std::max(1.0, r.scale)) << f.name << " n=" << n;
    }
  }
}

TEST(Commutativity, CurlIdentityOnSeveralMeshes) {
  for (int n : {2, 4}) {
    const Mesh mesh = Mesh::uniform_unit_square(n, MeshPattern::CrissCross);
    const Interpolator in(mesh);
    for (const auto& f : stream_functions()) {
      const auto r = curl_commutativity_check(f.field, in);
      EXPECT_LE(r.residual, 1e-10 * std::max(1.0, r.scale)) << f.name << " n=" << n;
    }
  }
}

TEST(Commutativity, CurlOfWInterpolantEqualsVInterpolantPointwise) {
  const Mesh m = Mesh::uniform_unit_square(3);
  const Interpolator in(m);
  const SmoothField w = stream_functions()[2].field;
  const Eigen::VectorXd wI = in.interp_Wh(w);
  const Eigen::VectorXd vI = in.interp_Vh(curl_of(w));
  const auto& el = in.complex().elements();
  double worst = 0.0, scale = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const Simplex T = el.simplex(c);
    const PolyField psi = local_function(*el.entry(c).W, in.complex().Wh(), wI, c);
    const PolyField phi = local_function(*el.entry(c).V, in.complex().Vh(), vI, c);
    const PolyField cpsi = curl(psi, T);
    for (const Eigen::Vector3d& b : {Eigen::Vector3d(0.2, 0.3, 0.5), Eigen::Vector3d(0.6, 0.1, 0.3),
                                    Eigen::Vector3d(1.0, 0.0, 0.0)}) {
      for (int k = 0; k < 2; ++k) {
        const double a = cpsi.comp[k](b.data() + 1), e = phi.comp[k](b.data() + 1);
        worst = std::max(worst, std::abs(a - e));
        scale = std::max(scale, std::abs(e));
      }
    }
  }
  EXPECT_GT(scale, 1e-3);
  EXPECT_LT(worst, 1e-10 * scale);
}

TEST(Commutativity, DivergenceOfDivergenceFreeInterpolantVanishes) {
  // curl of a stream function is divergence free, so is its interpolant
  const Mesh mesh = Mesh::uniform_unit_square(4);
  const Interpolator in(mesh);
  const SmoothField v = curl_of(stream_functions()[0].field);
  const Eigen::VectorXd d = in.complex().apply_div(in.interp_Vh(v));
  EXPECT_LT(d.cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Commutativity, MeshOverloadsAgree) {
  const Mesh m = Mesh::uniform_unit_square(2);
  const auto f = commutativity_fields()[2].field;
  EXPECT_EQ(commutativity_check(f, m).residual, commutativity_check(f, Interpolator(m)).residual);
}

TEST(FieldOperators, DivergenceAndCurlOfKnownFields) {
  SmoothField v{2, 2, [](const Eigen::VectorXd& x, int order, double* j) {
                  std::fill(j, j + 14, 0.0);
                  // v = (x^2 y, sin(pi x) y^2)
                  j[0] = x[0] * x[0] * x[1];
                  j[7] = std::sin(kPi * x[0]) * x[1] * x[1];
                  if (order >= 1) {
                    j[1] = 2 * x[0] * x[1], j[2] = x[0] * x[0];
                    j[8] = kPi * std::cos(kPi * x[0]) * x[1] * x[1], j[9] = 2 * std::sin(kPi * x[0]) * x[1];
                  }
                  if (order >= 2) {
                    j[3] = 2 * x[1], j[4] = j[5] = 2 * x[0], j[6] = 0;
                    j[10] = -kPi * kPi * std::sin(kPi * x[0]) * x[1] * x[1];
                    j[11] = j[12] = 2 * kPi * std::cos(kPi * x[0]) * x[1];
                    j[13] = 2 * std::sin(kPi * x[0]);
                  }
                }};
  const Eigen::Vector2d x(0.3, 0.7);
  double d[7];
  divergence_of(v).fn(x, 1, d);
  EXPECT_NEAR(d[0], 2 * 0.3 * 0.7 + 2 * std::sin(kPi * 0.3) * 0.7, 1e-14);
  EXPECT_NEAR(d[1], 2 * 0.7 + 2 * kPi * std::cos(kPi * 0.3) * 0.7, 1e-13);
  EXPECT_NEAR(d[2], 2 * 0.3 + 2 * std::sin(kPi * 0.3), 1e-13);

  SmoothField w{2, 1, [](const Eigen::VectorXd& x, int order, double* j) {
                  std::fill(j, j + 7, 0.0);
                  j[0] = x[0] * x[0] * x[0] * x[1];
                  if (order >= 1) j[1] = 3 * x[0] * x[0] * x[1], j[2] = x[0] * x[0] * x[0];
                  if (order >= 2) j[3] = 6 * x[0] * x[1], j[4] = j[5] = 3 * x[0] * x[0], j[6] = 0;
                }};
  double c[14];
  curl_of(w).fn(x, 1, c);
  // curl w = (d1 w, -d0 w)
  EXPECT_NEAR(c[0], 0.3 * 0.3 * 0.3, 1e-15);
  EXPECT_NEAR(c[7], -3 * 0.3 * 0.3 * 0.7, 1e-15);
  EXPECT_NEAR(c[1], 3 * 0.3 * 0.3, 1e-14);
  EXPECT_NEAR(c[8], -6 * 0.3 * 0.7, 1e-14);
}
