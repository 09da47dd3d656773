// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include "sgefem/audit.hpp"
#include "sgefem/complexcheck.hpp"
#include "sgefem/interp.hpp"
#include "sgefem/selfcheck.hpp"
#include "sgefem/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace sgefem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Reference errors at h = 1/8 .. 1/128 and rates of the last four transitions.
struct Reference {
  double lambda, iota;
  std::array<double, 5> error;
  std::array<double, 4> rate;
};

// Example 1, weak scheme, triple norm.
const std::vector<Reference> kExample1 = {
    {1, 1, {1.242e+01, 6.132e+00, 3.056e+00, 1.533e+00, 7.740e-01}, {1.02, 1.01, 1.00, 0.99}},
    {1, 1e-2, {2.943e-01, 9.317e-02, 3.518e-02, 1.593e-02, 7.816e-03}, {1.66, 1.41, 1.14, 1.03}},
    {1, 1e-4, {2.424e-01, 6.361e-02, 1.606e-02, 4.030e-03, 1.014e-03}, {1.93, 1.99, 1.99, 1.99}},
    {1, 1e-6, {2.421e-01, 6.347e-02, 1.601e-02, 4.009e-03, 1.002e-03}, {1.93, 1.99, 2.00, 2.00}},
    {1, 1e-8, {2.421e-01, 6.347e-02, 1.601e-02, 4.009e-03, 1.002e-03}, {1.93, 1.99, 2.00, 2.00}},
    {1e6, 1, {1.816e+01, 1.341e+01, 8.336e+00, 4.539e+00, 2.335e+00}, {0.44, 0.69, 0.88, 0.96}},
    {1e6, 1e-2, {4.005e-01, 1.936e-01, 9.523e-02, 4.719e-02, 2.354e-02}, {1.05, 1.02, 1.01, 1.00}},
    {1e6, 1e-4, {3.138e-01, 1.051e-01, 3.030e-02, 7.979e-03, 2.050e-03}, {1.58, 1.79, 1.93, 1.96}},
    {1e6, 1e-6, {3.133e-01, 1.049e-01, 3.018e-02, 7.905e-03, 2.002e-03}, {1.58, 1.80, 1.93, 1.98}},
    {1e6, 1e-8, {3.133e-01, 1.049e-01, 3.018e-02, 7.905e-03, 2.002e-03}, {1.58, 1.80, 1.93, 1.98}},
};

// Example 2, strong scheme, plain norm.
const std::vector<Reference> kExample2Strong = {
    {1, 1e-6, {4.678e+00, 2.956e+00, 2.027e+00, 1.423e+00, 1.004e+00}, {0.66, 0.54, 0.51, 0.50}},
    {1, 1e-8, {4.678e+00, 2.956e+00, 2.027e+00, 1.423e+00, 1.004e+00}, {0.66, 0.54, 0.51, 0.50}},
    {1e6, 1e-6, {5.291e+00, 3.296e+00, 2.220e+00, 1.546e+00, 1.089e+00}, {0.68, 0.57, 0.52, 0.51}},
    {1e6, 1e-8, {5.291e+00, 3.296e+00, 2.220e+00, 1.546e+00, 1.089e+00}, {0.68, 0.57, 0.52, 0.51}},
};

// Example 2, weak scheme, plain norm.
const std::vector<Reference> kExample2Weak = {
    {1, 1e-6, {1.523e+00, 4.195e-01, 1.071e-01, 2.690e-02, 6.731e-03}, {1.86, 1.97, 1.99, 2.00}},
    {1, 1e-8, {1.523e+00, 4.195e-01, 1.071e-01, 2.689e-02, 6.730e-03}, {1.86, 1.97, 1.99, 2.00}},
    {1e6, 1e-6, {2.225e+00, 6.630e-01, 1.840e-01, 4.816e-02, 1.222e-02}, {1.75, 1.85, 1.93, 1.98}},
    {1e6, 1e-8, {2.225e+00, 6.629e-01, 1.840e-01, 4.815e-02, 1.222e-02}, {1.75, 1.85, 1.93, 1.98}},
};

constexpr double kValueTol = 0.02;
constexpr double kRateTol = 0.1;
constexpr int kLevelMin = 3, kLevelMax = 7;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

int failures = 0;

void verdict(int id, bool ok, const std::string& what) {
  std::printf("C%d %s %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void detail(const std::string& s) {
  std::printf("    %s\n", s.c_str());
  std::fflush(stdout);
}

struct StudyRun {
  std::map<std::pair<double, double>, std::vector<ConvergenceRow>> rows;  // (lambda, iota) -> levels
  bool solved = true;
  std::string error;
  double seconds = 0.0;
};

StudyRun run(int example, Scheme scheme, std::vector<double> lambdas, std::vector<double> iotas) {
  RunConfig cfg;
  cfg.example = example;
  cfg.scheme = scheme;
  cfg.lambdas = std::move(lambdas);
  cfg.iotas = std::move(iotas);
  cfg.level_min = kLevelMin;
  cfg.level_max = kLevelMax;
  StudyRun out;
  const auto t0 = Clock::now();
  try {
    for (auto& r : run_study(cfg)) out.rows[{r.lambda, r.iota}].push_back(r);
  } catch (const StudyError& e) {
    out.solved = false;
    out.error = e.what();
  }
  out.seconds = seconds_since(t0);
  return out;
}

struct TableCheck {
  int value_misses = 0;
  int rate_misses = 0;
  double worst_value = 0.0;  // largest relative deviation
  double worst_rate = 0.0;   // largest absolute deviation
};

// Compares every value and every rate, printing one line per (lambda, iota).
TableCheck compare_table(const StudyRun& run, const std::vector<Reference>& refs) {
  TableCheck t;
  for (const auto& ref : refs) {
    const auto& rows = run.rows.at({ref.lambda, ref.iota});
    std::string line = "lambda=" + fmt("%g", ref.lambda) + " iota=" + fmt("%g", ref.iota) + ":";
    for (int k = 0; k < 5; ++k) {
      const double dev = rows[k].error / ref.error[k] - 1.0;
      t.worst_value = std::max(t.worst_value, std::abs(dev));
      if (std::abs(dev) > kValueTol) ++t.value_misses;
      line += " " + fmt("%.4e", rows[k].error) + " (" + fmt("%+.1f%%", 100 * dev) + ")";
      if (k > 0) {
        const double rd = *rows[k].rate - ref.rate[k - 1];
        t.worst_rate = std::max(t.worst_rate, std::abs(rd));
        if (std::abs(rd) > kRateTol) ++t.rate_misses;
        line += " r=" + fmt("%.2f", *rows[k].rate);
      }
    }
    detail(line);
  }
  return t;
}

void table_verdict(int id, const std::string& label, const StudyRun& run, const std::vector<Reference>& refs) {
  if (!run.solved) {
    verdict(id, false, label + ": solver failure: " + run.error);
    return;
  }
  const TableCheck t = compare_table(run, refs);
  const int cells = static_cast<int>(refs.size());
  verdict(id, t.value_misses == 0 && t.rate_misses == 0,
          label + ": " + std::to_string(5 * cells - t.value_misses) + "/" + std::to_string(5 * cells) +
              " values within 2% (worst " + fmt("%.1f%%", 100 * t.worst_value) + "), " +
              std::to_string(4 * cells - t.rate_misses) + "/" + std::to_string(4 * cells) +
              " rates within 0.1 (worst " + fmt("%.2f", t.worst_rate) + ")");
}

// Finest-level value and finest-transition rate against a target rate.
void finest_verdict(int id, const std::string& label, const StudyRun& run, const std::vector<Reference>& refs,
                    const std::function<double(const Reference&)>& target_rate, double rate_tol) {
  if (!run.solved) {
    verdict(id, false, label + ": solver failure: " + run.error);
    return;
  }
  compare_table(run, refs);
  bool ok = true;
  double worst_value = 0.0, worst_rate = 0.0;
  for (const auto& ref : refs) {
    const auto& last = run.rows.at({ref.lambda, ref.iota}).back();
    const double dev = last.error / ref.error[4] - 1.0;
    const double rd = *last.rate - target_rate(ref);
    worst_value = std::max(worst_value, std::abs(dev));
    worst_rate = std::max(worst_rate, std::abs(rd));
    ok = ok && std::abs(dev) <= kValueTol && std::abs(rd) <= rate_tol;
  }
  verdict(id, ok,
          label + ": finest values worst deviation " + fmt("%.1f%%", 100 * worst_value) + " (tolerance 2%), " +
              "finest rates worst deviation " + fmt("%.3f", worst_rate) + " (tolerance " + fmt("%.2f", rate_tol) +
              ")");
}

}  // namespace

int main() {
  std::printf("acceptance run, levels %d..%d (h = 1/%d .. 1/%d)\n", kLevelMin, kLevelMax, 1 << kLevelMin,
              1 << kLevelMax);

  // Example 1 studies serve C1, C2 and the eta = 100 half of C10.
  const StudyRun ex1 = run(1, Scheme::Weak, {1.0, 1e6}, {1.0, 1e-2, 1e-4, 1e-6, 1e-8});
  detail("example 1 study: " + fmt("%.1f", ex1.seconds) + " s");
  {
    std::vector<Reference> r1, r6;
    for (const auto& r : kExample1) (r.lambda == 1.0 ? r1 : r6).push_back(r);
    table_verdict(1, "example 1, weak scheme, lambda=1", ex1, r1);
    table_verdict(2, "example 1, weak scheme, lambda=1e6", ex1, r6);
  }

  {
    const StudyRun s = run(2, Scheme::Strong, {1.0, 1e6}, {1e-6, 1e-8});
    detail("example 2 strong study: " + fmt("%.1f", s.seconds) + " s");
    finest_verdict(3, "example 2, strong scheme, rate 0.50 +- 0.05", s, kExample2Strong,
                   [](const Reference&) { return 0.50; }, 0.05);
  }
  {
    const StudyRun s = run(2, Scheme::Weak, {1.0, 1e6}, {1e-6, 1e-8});
    detail("example 2 weak study: " + fmt("%.1f", s.seconds) + " s");
    finest_verdict(4, "example 2, weak scheme, rate +- 0.1", s, kExample2Weak,
                   [](const Reference& r) { return r.rate[3]; }, kRateTol);
  }

  {
    const auto t0 = Clock::now();
    const UnisolvenceSummary u = unisolvence_suite(100, 1, 2024);
    const double t = seconds_since(t0);
    if (u.failed) detail("worst case: " + u.worst_case);
    verdict(5, u.failed == 0 && t <= 30.0,
            "unisolvence: " + std::to_string(u.tested - u.failed) + "/" + std::to_string(u.tested) +
                " bases dual to 1e-9 on 100 triangles and 1 tetrahedron (worst " + fmt("%.1e", u.worst) + ", " +
                fmt("%.1f", t) + " s)");
  }

  {
    const BubbleSummary b = bubble_identities(100, 10, 2025);
    verdict(6, b.div_identity <= 1e-12 && b.face_moments <= 1e-13,
            "bubble identities on " + std::to_string(b.simplices) + " simplices: div " + fmt("%.1e", b.div_identity) +
                " (<= 1e-12), face moments " + fmt("%.1e", b.face_moments) + " (<= 1e-13)");
  }

  {
    double worst_div = 0.0, worst_curl = 0.0;
    for (int n : {2, 4, 8}) {
      const Mesh mesh = Mesh::uniform_unit_square(n);
      const Interpolator in(mesh);
      for (const auto& f : commutativity_fields()) {
        const auto c = commutativity_check(f.field, in);
        worst_div = std::max(worst_div, c.residual);
        detail("n=" + std::to_string(n) + " div  " + f.name + ": " + fmt("%.1e", c.residual));
      }
      for (const auto& f : stream_functions()) {
        const auto c = curl_commutativity_check(f.field, in);
        worst_curl = std::max(worst_curl, c.residual);
        detail("n=" + std::to_string(n) + " curl " + f.name + ": " + fmt("%.1e", c.residual));
      }
    }
    verdict(7, worst_div <= 1e-10 && worst_curl <= 1e-10,
            "commuting interpolants on n=2,4,8: div residual " + fmt("%.1e", worst_div) + ", curl residual " +
                fmt("%.1e", worst_curl) + " (<= 1e-10)");
  }

  {
    const auto t0 = Clock::now();
    bool ok = true;
    for (int n : {2, 4, 8}) {
      const ComplexReport r = exactness_report(Mesh::uniform_unit_square(n));
      ok = ok && r.exact();
      detail("n=" + std::to_string(n) + ": dim W " + std::to_string(r.dim_W) + ", dim V " + std::to_string(r.dim_V) +
             ", dim Q " + std::to_string(r.dim_Q) + ", rank D " + std::to_string(r.rank_D) + ", rank C " +
             std::to_string(r.rank_C) + ", |DC| " + fmt("%.1e", r.DC_max) + (r.exact() ? "" : "  NOT EXACT"));
    }
    const double t = seconds_since(t0);
    verdict(8, ok && t <= 60.0, std::string("discrete complex exact on n=2,4,8") + " (" + fmt("%.1f", t) + " s)");
  }

  {
    const Mesh m = Mesh::uniform_unit_square(4);
    const MeshElements el(m, ElementKinds{});
    const ContinuityReport r = weak_continuity_audit(m, build_Vh(m), el, 50, 7, 1e-10);
    verdict(9, r.ok,
            "weak continuity of 50 random V_h members on n=4: gradient jump " + fmt("%.1e", r.grad_jump) +
                ", trace moments " + fmt("%.1e", r.trace_jump) + ", scale " + fmt("%.1e", r.scale));
  }

  {
    // eta = 100: every (lambda, iota) cell of example 1 was factorized at every level.
    bool spd = ex1.solved;
    int cells = 0;
    for (const auto& [key, rows] : ex1.rows) cells += static_cast<int>(rows.size());
    detail("eta=100: " + std::to_string(cells) + " factorizations " + (spd ? "succeeded" : "failed: " + ex1.error));

    // eta = 1 at n = 8: report what happens in each cell.
    const Mesh mesh = Mesh::uniform_unit_square(8);
    const Discretization disc(mesh, Scheme::Weak);
    int failed = 0, degraded = 0, total = 0;
    for (double lambda : {1.0, 1e6})
      for (double iota : {1.0, 1e-2, 1e-4, 1e-6, 1e-8}) {
        ++total;
        const auto prob = example1(1.0, iota);
        const Eigen::VectorXd b = disc.assemble_load(prob.f);
        const MaterialParams good{1.0, lambda, iota, 100.0}, weak{1.0, lambda, iota, 1.0};
        const double ref = disc.error_norm(&prob.u, solve_spd(disc.assemble_matrix(good), b), good, NormKind::Triple);
        std::string line = "eta=1 n=8 lambda=" + fmt("%g", lambda) + " iota=" + fmt("%g", iota) + ": ";
        try {
          const Eigen::VectorXd x = solve_spd(disc.assemble_matrix(weak), b);
          const double err = disc.error_norm(&prob.u, x, weak, NormKind::Triple);
          const bool bad = !(err <= 10.0 * ref);
          degraded += bad ? 1 : 0;
          line += "factorized, error " + fmt("%.3e", err) + " vs " + fmt("%.3e", ref) + " at eta=100" +
                  (bad ? " (degraded)" : "");
        } catch (const SolverError& e) {
          ++failed;
          line += std::string("not positive definite (") + e.what() + ")";
        }
        detail(line);
      }
    verdict(10, spd,
            "eta=100 SPD in all " + std::to_string(cells) + " example 1 solves; eta=1 at n=8: " +
                std::to_string(failed) + "/" + std::to_string(total) + " cells not SPD, " + std::to_string(degraded) +
                " degraded, all reported");
  }

  std::printf("%d of 10 criteria failed\n", failures);
  return failures;
}
