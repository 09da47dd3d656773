#include "oracles.hpp"
#include "sgefem/elements.hpp"
#include "sgefem/selfcheck.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace sgefem;

namespace {

// Three-point Gauss rule on [0,1], exact to degree 5.
constexpr double kG[3] = {0.5 - 0.3872983346207417, 0.5, 0.5 + 0.3872983346207417};
constexpr double kW[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};

Eigen::VectorXd at(const Simplex& T, const PolyField& f, const Eigen::VectorXd& x) {
  const Eigen::VectorXd b = T.to_barycentric(x);
  Eigen::VectorXd v(f.ncomp());
  for (int k = 0; k < f.ncomp(); ++k) v[k] = f.comp[k](b.data() + 1);
  return v;
}

// Mean over face i of g(x) with the three-point rule (2D only).
template <class G>
double face_mean(const Simplex& T, int i, G&& g) {
  const auto fv = T.face_vertices(i);
  const Eigen::VectorXd a = T.vertex(fv[0]), b = T.vertex(fv[1]);
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += kW[k] * g((1 - kG[k]) * a + kG[k] * b, kG[k]);
  return s;
}

class RandomTriangles : public ::testing::Test {
 protected:
  std::mt19937_64 rng{17};
};

}  // namespace

TEST_F(RandomTriangles, ShapeSpaceDimensions) {
  const Simplex T = random_simplex(2, rng);
  const auto fr = default_frames(T);
  EXPECT_EQ(shape_space_V(T, fr).size(), 22u);
  EXPECT_EQ(shape_space_Q(T).size(), 4u);
  EXPECT_EQ(shape_space_W(T).size(), 19u);
  EXPECT_EQ(shape_space_BDM2(T).size(), 12u);
  EXPECT_EQ(span_rank(shape_space_V(T, fr)), 22);
  EXPECT_EQ(span_rank(shape_space_W(T)), 19);
  EXPECT_EQ(dofs_V(T, fr).size(), 22);
  EXPECT_EQ(dofs_Q(T).size(), 4);
  EXPECT_EQ(dofs_W(T, fr).size(), 19);
  EXPECT_EQ(dofs_BDM2(T).size(), 12);
}

TEST_F(RandomTriangles, SpacesContainTheirPolynomialCores) {
  const Simplex T = random_simplex(2, rng);
  const auto fr = default_frames(T);
  std::uniform_real_distribution<double> U(-1, 1);
  auto random_poly = [&](int deg) {
    Poly p(2, deg);
    for (int a = 0; a <= deg; ++a)
      for (int b = 0; a + b <= deg; ++b) p.add_coef({a, b}, U(rng));
    return p;
  };
  EXPECT_LT(fit_residual(shape_space_V(T, fr), PolyField({random_poly(2), random_poly(2)})), 1e-12);
  EXPECT_LT(fit_residual(shape_space_Q(T), PolyField({random_poly(1)})), 1e-12);
  EXPECT_LT(fit_residual(shape_space_W(T), PolyField({random_poly(3)})), 1e-12);
  // a cubic vector field is not in V(T)
  EXPECT_GT(fit_residual(shape_space_V(T, fr), PolyField({random_poly(3), Poly::constant(2, 0.0)})), 1e-3);
}

TEST_F(RandomTriangles, DifferentialOperatorsMapBetweenSpaces) {
  const Simplex T = random_simplex(2, rng);
  const auto fr = default_frames(T);
  const auto V = shape_space_V(T, fr), Q = shape_space_Q(T);
  // Some images vanish identically, so residuals are measured against the largest image.
  auto worst_fit = [](const std::vector<PolyField>& span, const std::vector<PolyField>& images) {
    double worst = 0.0, scale = 0.0;
    for (const auto& f : images) {
      const double norm = f.flatten(f.degree()).norm();
      scale = std::max(scale, norm);
      worst = std::max(worst, fit_residual(span, f) * norm);
    }
    return worst / scale;
  };
  std::vector<PolyField> divs, curls;
  for (const auto& v : V) divs.push_back(div(v, T));
  for (const auto& w : shape_space_W(T)) curls.push_back(curl(w, T));
  EXPECT_LT(worst_fit(Q, divs), 1e-11);
  EXPECT_LT(worst_fit(V, curls), 1e-11);
}

TEST_F(RandomTriangles, NodalBasesAreDual) {
  for (int k = 0; k < 20; ++k) {
    const Simplex T = random_simplex(2, rng);
    const auto fr = default_frames(T);
    for (const LocalBasis& b : {local_V(T, fr), local_Q(T), local_W(T, fr), local_BDM2(T)}) {
      EXPECT_LT(b.scaled_duality_error, 1e-9);
      const Eigen::MatrixXd D = duality_matrix(b);
      EXPECT_LT((D - Eigen::MatrixXd::Identity(b.size(), b.size())).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST_F(RandomTriangles, VertexAndNormalDofsOfVMatchDirectEvaluation) {
  const Simplex T = random_simplex(2, rng);
  const auto fr = default_frames(T);
  const LocalBasis b = local_V(T, fr);
  for (int j = 0; j < b.size(); ++j) {
    const PolyField& phi = b.basis[j];
    for (int i = 0; i < 3; ++i) {
      const Eigen::VectorXd v = at(T, phi, T.vertex(i));
      for (int c = 0; c < 2; ++c) EXPECT_NEAR(v[c], j == slot::v_vertex(i, c) ? 1.0 : 0.0, 1e-9);
      const double mn = face_mean(T, i, [&](const Eigen::VectorXd& x, double) { return at(T, phi, x).dot(fr[i].n); });
      EXPECT_NEAR(mn, j == slot::v_face(i, 0) ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST_F(RandomTriangles, VertexDofsOfWMatchDirectEvaluation) {
  const Simplex T = random_simplex(2, rng);
  const auto fr = default_frames(T);
  const LocalBasis b = local_W(T, fr);
  for (int j = 0; j < b.size(); ++j) {
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector2d x = T.vertex(i);
      const oracle::Scalar2 w = [&](const Eigen::Vector2d& y) { return at(T, b.basis[j], y)[0]; };
      EXPECT_NEAR(w(x), j == slot::w_vertex(i, 0) ? 1.0 : 0.0, 1e-9);
      for (int m = 0; m < 2; ++m)
        EXPECT_NEAR(oracle::d1(w, x, m), j == slot::w_vertex(i, 1 + m) ? 1.0 : 0.0, 1e-6);
    }
  }
}

TEST_F(RandomTriangles, QDofsAreFaceAndCellMeans) {
  const Simplex T = random_simplex(2, rng);
  const LocalBasis b = local_Q(T);
  const auto rule = triangle_rule(4);
  for (int j = 0; j < b.size(); ++j) {
    for (int i = 0; i < 3; ++i) {
      const double m = face_mean(T, i, [&](const Eigen::VectorXd& x, double) { return at(T, b.basis[j], x)[0]; });
      EXPECT_NEAR(m, j == slot::q_face(i) ? 1.0 : 0.0, 1e-10);
    }
    double cm = 0.0;
    for (std::size_t p = 0; p < rule.size(); ++p) cm += 2.0 * rule.weights[p] * b.basis[j].comp[0](rule.points[p].data() + 1);
    EXPECT_NEAR(cm, j == slot::q_cell ? 1.0 : 0.0, 1e-10);
  }
}

TEST(Bubbles, DivergenceOfDivBubbleIsTheNonconformingBubble) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 0; k < 10; ++k) {
    const Simplex T = random_simplex(2, rng);
    const PolyField phi = div_bubble(T);
    for (int s = 0; s < 5; ++s) {
      double a = U(rng), c = U(rng);
      if (a + c > 1) a = 1 - a, c = 1 - c;
      const Eigen::Vector3d bary(1 - a - c, a, c);
      const Eigen::Vector2d x = T.to_physical(bary);
      double fd = 0.0;
      for (int m = 0; m < 2; ++m)
        fd += oracle::d1([&](const Eigen::Vector2d& y) { return at(T, phi, y)[m]; }, x, m);
      const double expected = 2.0 - 3.0 * bary.squaredNorm();
      EXPECT_NEAR(fd, expected, 1e-8);
      EXPECT_NEAR(bubble_nc(2, bary), expected, 1e-15);
      EXPECT_NEAR(div(phi, T).comp[0](bary.data() + 1), expected, 1e-12);
    }
  }
}

TEST(Bubbles, NonconformingBubbleIsOrthogonalToFaceP1) {
  const Poly b = bubble_nc_poly(2);
  Eigen::MatrixXd V(3, 2);
  V << 0, 0, 1, 0, 0, 1;
  const Simplex T(V);
  for (int i = 0; i < 3; ++i) {
    const auto fv = T.face_vertices(i);
    for (int test = 0; test < 2; ++test) {
      const double m = face_mean(T, i, [&](const Eigen::VectorXd& x, double s) {
        const Eigen::VectorXd bary = T.to_barycentric(x);
        return b(bary.data() + 1) * (test == 0 ? 1.0 : s);
      });
      EXPECT_NEAR(m, 0.0, 1e-14) << "face " << i << " vertex " << fv[0];
    }
  }
  // tetrahedron: face means of b and b * lambda_j via the triangle rule
  const Poly b3 = bubble_nc_poly(3);
  const auto rule = triangle_rule(6);
  for (int i = 0; i < 4; ++i) {
    for (int test = 0; test < 4; ++test) {
      double s = 0.0;
      for (std::size_t p = 0; p < rule.size(); ++p) {
        Eigen::Vector4d bary = Eigen::Vector4d::Zero();
        int k = 0;
        for (int j = 0; j < 4; ++j)
          if (j != i) bary[j] = rule.points[p][k++];
        s += 2.0 * rule.weights[p] * b3(bary.data() + 1) * (test == i ? 1.0 : bary[test]);
      }
      EXPECT_NEAR(s, 0.0, 1e-14);
    }
  }
}

TEST(Unisolvence, TetrahedronElementsAreDual) {
  std::mt19937_64 rng(3);
  const Simplex T = random_simplex(3, rng);
  const auto fr = default_frames(T);
  const LocalBasis v = local_V(T, fr);
  EXPECT_EQ(v.size(), static_cast<int>(shape_space_V(T, fr).size()));
  EXPECT_LT(v.scaled_duality_error, 1e-9);
  EXPECT_LT(local_Q(T).scaled_duality_error, 1e-9);
  EXPECT_LT(local_BDM2(T).scaled_duality_error, 1e-9);
  EXPECT_EQ(local_Q(T).size(), 5);
  EXPECT_EQ(local_BDM2(T).size(), 30);
}

TEST(Unisolvence, PerturbedCoefficientIsDetected) {
  std::mt19937_64 rng(9);
  const Simplex T = random_simplex(2, rng);
  LocalBasis b = local_V(T, default_frames(T));
  EXPECT_LT(b.scaled_duality_error, 1e-9);
  b.coeffs(0, 0) += 1e-3;
  refresh_basis(b);
  EXPECT_GT(b.scaled_duality_error, 1e-6);
}

TEST(Unisolvence, SuiteAndFaultInjection) {
  const auto ok = unisolvence_suite(10, 1, 1);
  EXPECT_EQ(ok.failed, 0);
  EXPECT_EQ(ok.tested, 10 * 4 + 3);
  EXPECT_LT(ok.worst, 1e-9);
  const auto bad = unisolvence_suite(3, 0, 1, true);
  EXPECT_EQ(bad.failed, 3);
}
