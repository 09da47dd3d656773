#include "sgefem/selfcheck.hpp"

#include "sgefem/audit.hpp"
#include "sgefem/complexcheck.hpp"
#include "sgefem/elements.hpp"
#include "sgefem/interp.hpp"
#include "sgefem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

namespace sgefem {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  std::ostringstream os;
  os.setf(std::ios::scientific);
  os.precision(2);
  os << x;
  return os.str();
}

// Value, gradient and Hessian of a scalar function of two variables.
struct Jet2 {
  double v = 0, d0 = 0, d1 = 0, h00 = 0, h01 = 0, h11 = 0;

  friend Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.v * b.v,
            a.d0 * b.v + a.v * b.d0,
            a.d1 * b.v + a.v * b.d1,
            a.h00 * b.v + 2 * a.d0 * b.d0 + a.v * b.h00,
            a.h01 * b.v + a.d0 * b.d1 + a.d1 * b.d0 + a.v * b.h01,
            a.h11 * b.v + 2 * a.d1 * b.d1 + a.v * b.h11};
  }
  void store(double* o) const {
    o[0] = v;
    o[1] = d0;
    o[2] = d1;
    o[3] = h00;
    o[4] = o[5] = h01;
    o[6] = h11;
  }
};

// f(x_k) with f, f', f'' given.
Jet2 in_x(int k, double f, double df, double ddf) {
  Jet2 j;
  j.v = f;
  (k == 0 ? j.d0 : j.d1) = df;
  (k == 0 ? j.h00 : j.h11) = ddf;
  return j;
}

Jet2 sin_pi(int k, const Eigen::VectorXd& x) {
  const double s = std::sin(kPi * x[k]), c = std::cos(kPi * x[k]);
  return in_x(k, s, kPi * c, -kPi * kPi * s);
}

Jet2 bubble1(int k, const Eigen::VectorXd& x) {
  const double t = x[k];
  return in_x(k, t * (1 - t), 1 - 2 * t, -2.0);
}

Jet2 exp_x(int k, const Eigen::VectorXd& x, double a) {
  const double e = std::exp(a * x[k]);
  return in_x(k, e, a * e, a * a * e);
}

Jet2 linear(const Eigen::VectorXd& x, double c, double a0, double a1) {
  return {c + a0 * x[0] + a1 * x[1], a0, a1, 0, 0, 0};
}

SmoothField vector_field(std::function<void(const Eigen::VectorXd&, Jet2&, Jet2&)> f) {
  SmoothField s;
  s.dim = 2;
  s.ncomp = 2;
  s.fn = [f = std::move(f)](const Eigen::VectorXd& x, int, double* jet) {
    Jet2 a, b;
    f(x, a, b);
    a.store(jet);
    b.store(jet + 7);
  };
  return s;
}

SmoothField scalar_field(std::function<Jet2(const Eigen::VectorXd&)> f) {
  SmoothField s;
  s.dim = 2;
  s.ncomp = 1;
  s.fn = [f = std::move(f)](const Eigen::VectorXd& x, int, double* jet) { f(x).store(jet); };
  return s;
}

template <class Fn>
CheckResult run_check(const std::string& name, std::ostream* log, Fn&& fn) {
  CheckResult r;
  r.name = name;
  try {
    fn(r);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  if (log) *log << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << std::endl;
  return r;
}

}  // namespace

Simplex random_simplex(int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double quality = dim == 2 ? 0.05 : 0.01;
  for (;;) {
    Eigen::MatrixXd V(dim + 1, dim);
    for (int i = 0; i <= dim; ++i)
      for (int k = 0; k < dim; ++k) V(i, k) = U(rng);
    double diam = 0.0;
    for (int i = 0; i <= dim; ++i)
      for (int j = i + 1; j <= dim; ++j) diam = std::max(diam, (V.row(i) - V.row(j)).norm());
    double vol = 0.0;
    {
      Eigen::MatrixXd E(dim, dim);
      for (int i = 0; i < dim; ++i) E.row(i) = V.row(i + 1) - V.row(0);
      vol = std::abs(E.determinant());
    }
    if (vol >= quality * std::pow(diam, dim)) return Simplex(V);
  }
}

UnisolvenceSummary unisolvence_suite(int triangles, int tetrahedra, std::uint64_t seed, bool inject_fault,
                                     double tol) {
  std::mt19937_64 rng(seed);
  UnisolvenceSummary s;
  auto record = [&](const std::string& what, const std::function<LocalBasis()>& build, bool fault) {
    ++s.tested;
    double err = 0.0;
    try {
      LocalBasis b = build();
      if (fault) {
        b.coeffs(0, 0) += 1e-3;
        refresh_basis(b);
      }
      err = b.scaled_duality_error;
    } catch (const UnisolvenceError&) {
      err = INFINITY;
    }
    if (!(err <= tol)) ++s.failed;
    if (!(err <= s.worst)) {
      s.worst = err;
      s.worst_case = what;
    }
  };
  for (int k = 0; k < triangles + tetrahedra; ++k) {
    const int d = k < triangles ? 2 : 3;
    const Simplex T = random_simplex(d, rng);
    const auto fr = default_frames(T);
    const std::string tag = (d == 2 ? "triangle " : "tetrahedron ") + std::to_string(d == 2 ? k : k - triangles);
    record("V(T) on " + tag, [&] { return local_V(T, fr); }, inject_fault);
    record("Q(T) on " + tag, [&] { return local_Q(T); }, false);
    if (d == 2) record("W(T) on " + tag, [&] { return local_W(T, fr); }, false);
    record("BDM2 on " + tag, [&] { return local_BDM2(T); }, false);
  }
  return s;
}

BubbleSummary bubble_identities(int triangles, int tetrahedra, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  BubbleSummary s;
  for (int k = 0; k < triangles + tetrahedra; ++k) {
    const int d = k < triangles ? 2 : 3;
    const Simplex T = random_simplex(d, rng);
    ++s.simplices;
    const PolyField dphi = div(div_bubble(T), T);
    for (int p = 0; p < 20; ++p) {
      Eigen::VectorXd b(d + 1);
      for (int i = 0; i <= d; ++i) b[i] = -std::log(1.0 - U(rng));  // uniform on the simplex
      b /= b.sum();
      double jet[16];
      T.eval_jet(dphi, b, 0, jet);
      s.div_identity = std::max(s.div_identity, std::abs(jet[0] - bubble_nc(d, b)));
    }
    const QuadratureRule r = d == 2 ? edge_rule(6) : triangle_rule(6);
    for (int f = 0; f <= d; ++f) {
      const auto fv = T.face_vertices(f);
      for (std::size_t a = 0; a < fv.size(); ++a) {
        double m = 0.0;
        for (std::size_t q = 0; q < r.size(); ++q) {
          Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
          for (std::size_t j = 0; j < fv.size(); ++j) b[fv[j]] = r.points[q][static_cast<Eigen::Index>(j)];
          m += r.weights[q] / r.reference_measure() * bubble_nc(d, b) * b[fv[a]];
        }
        s.face_moments = std::max(s.face_moments, std::abs(m));
      }
    }
  }
  return s;
}

std::vector<NamedField> commutativity_fields(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double c0 = U(rng), c1 = U(rng), c2 = U(rng), c3 = U(rng), c4 = U(rng), c5 = U(rng);
  std::vector<NamedField> out;
  out.push_back({"sin(pi x) sin(pi y) (1, 1)", vector_field([](const Eigen::VectorXd& x, Jet2& a, Jet2& b) {
                   a = sin_pi(0, x) * sin_pi(1, x);
                   b = a;
                 })});
  // x(1-x) y(1-y) times random affine components: degree 5, exact in every rule.
  out.push_back({"polynomial bubble field", vector_field([=](const Eigen::VectorXd& x, Jet2& a, Jet2& b) {
                   const Jet2 B = bubble1(0, x) * bubble1(1, x);
                   a = B * linear(x, c0, c1, c2);
                   b = B * linear(x, c3, c4, c5);
                 })});
  out.push_back({"sin(pi x) sin(pi y) (e^(x+y), x - y)", vector_field([](const Eigen::VectorXd& x, Jet2& a, Jet2& b) {
                   const Jet2 S = sin_pi(0, x) * sin_pi(1, x);
                   a = S * (exp_x(0, x, 1.0) * exp_x(1, x, 1.0));
                   b = S * linear(x, 0.0, 1.0, -1.0);
                 })});
  return out;
}

std::vector<NamedField> stream_functions() {
  std::vector<NamedField> out;
  out.push_back({"(x(1-x) y(1-y))^2", scalar_field([](const Eigen::VectorXd& x) {
                   const Jet2 B = bubble1(0, x) * bubble1(1, x);
                   return B * B;
                 })});
  out.push_back({"(x(1-x) y(1-y))^2 sin(pi y)", scalar_field([](const Eigen::VectorXd& x) {
                   const Jet2 B = bubble1(0, x) * bubble1(1, x);
                   return B * B * sin_pi(1, x);
                 })});
  out.push_back({"(x(1-x) y(1-y))^2 e^(x - y)", scalar_field([](const Eigen::VectorXd& x) {
                   const Jet2 B = bubble1(0, x) * bubble1(1, x);
                   return B * B * (exp_x(0, x, 1.0) * exp_x(1, x, -1.0));
                 })});
  return out;
}

bool SelfcheckReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

SelfcheckReport run_selfcheck(const SelfcheckOptions& opt, std::ostream* log) {
  SelfcheckReport rep;
  rep.checks.push_back(run_check("unisolvence", log, [&](CheckResult& r) {
    const UnisolvenceSummary s = unisolvence_suite(opt.triangles, opt.tetrahedra, opt.seed, opt.inject_fault);
    r.passed = s.failed == 0;
    r.detail = std::to_string(s.tested - s.failed) + "/" + std::to_string(s.tested) +
               " elements dual to 1e-9, worst " + sci(s.worst) + " (" + s.worst_case + ")";
  }));
  rep.checks.push_back(run_check("bubble identities", log, [&](CheckResult& r) {
    const BubbleSummary s = bubble_identities(opt.triangles, opt.tetrahedra, opt.seed + 1);
    r.passed = s.div_identity <= 1e-12 && s.face_moments <= 1e-13;
    r.detail = "div identity " + sci(s.div_identity) + ", face moments " + sci(s.face_moments) + " on " +
               std::to_string(s.simplices) + " simplices";
  }));
  for (int n : opt.meshes) {
    const Mesh mesh = Mesh::uniform_unit_square(n);
    const MeshElements el(mesh, ElementKinds{});
    for (SpaceKind k : {SpaceKind::Vh, SpaceKind::Vh0}) {
      rep.checks.push_back(run_check(std::string("weak continuity ") + to_string(k) + " n=" + std::to_string(n),
                                       log, [&](CheckResult& r) {
                                         const GlobalSpace sp = build_space(mesh, k);
                                         const ContinuityReport c =
                                             weak_continuity_audit(mesh, sp, el, opt.continuity_samples, opt.seed);
                                         r.passed = c.ok;
                                         r.detail = std::to_string(c.samples) + " samples, grad " +
                                                    sci(c.grad_jump) + ", trace " + sci(c.trace_jump) + ", normal " +
                                                    sci(c.normal_jump) + ", boundary " + sci(c.boundary_dofs);
                                       }));
    }
  }
  for (int n : opt.meshes) {
    const Mesh mesh = Mesh::uniform_unit_square(n);
    rep.checks.push_back(run_check("complex exactness n=" + std::to_string(n), log, [&](CheckResult& r) {
      const ComplexReport c = exactness_report(mesh);
      r.passed = c.exact();
      r.detail = "rank D " + std::to_string(c.rank_D) + "/" + std::to_string(c.dim_Q) + ", rank C " +
                 std::to_string(c.rank_C) + "/" + std::to_string(c.dim_W) + ", dim V " + std::to_string(c.dim_V) +
                 ", |DC| " + sci(c.DC_max);
    }));
    if (n < 2) continue;
    const Interpolator in(mesh);
    rep.checks.push_back(run_check("div commutes n=" + std::to_string(n), log, [&](CheckResult& r) {
      double worst = 0.0;
      r.passed = true;
      for (const auto& f : commutativity_fields()) {
        const CommutativityResult c = commutativity_check(f.field, in);
        worst = std::max(worst, c.residual);
        r.passed = r.passed && c.residual <= 1e-10 * std::max(1.0, c.scale);
      }
      r.detail = "max residual " + sci(worst) + " over 3 fields";
    }));
    rep.checks.push_back(run_check("curl commutes n=" + std::to_string(n), log, [&](CheckResult& r) {
      double worst = 0.0;
      r.passed = true;
      for (const auto& f : stream_functions()) {
        const CommutativityResult c = curl_commutativity_check(f.field, in);
        worst = std::max(worst, c.residual);
        r.passed = r.passed && c.residual <= 1e-10 * std::max(1.0, c.scale);
      }
      r.detail = "max residual " + sci(worst) + " over 3 fields";
    }));
  }
  return rep;
}

}  // namespace sgefem
