#include "sgefem/study.hpp"

#include "sgefem/manufactured.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace sgefem {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

}  // namespace

void RunConfig::validate() const {
  if (example != 1 && example != 2) throw ConfigError("example must be 1 or 2");
  if (!(mu > 0.0)) throw ConfigError("mu must be positive");
  if (!(eta > 0.0)) throw ConfigError("eta must be positive");
  if (lambdas.empty() || iotas.empty()) throw ConfigError("lambda and iota lists must not be empty");
  for (double l : lambdas)
    if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("lambda must be nonnegative");
  for (double i : iotas)
    if (!(i > 0.0) || !std::isfinite(i)) throw ConfigError("iota must be positive");
  if (level_min < 0 || level_max < level_min) throw ConfigError("levels must be increasing and nonnegative");
  if (level_max > 10) throw ConfigError("levels above 10 are not supported");
  if (quad_degree && (*quad_degree < 2 || *quad_degree > 20)) throw ConfigError("quadrature degree must be in 2..20");
}

QuadDegrees RunConfig::quad() const {
  QuadDegrees q;
  if (quad_degree) {
    q.cell = *quad_degree;
    q.edge = *quad_degree + 1;
  }
  return q;
}

NormKind RunConfig::norm() const { return example == 1 ? NormKind::Triple : NormKind::Plain; }

std::vector<ConvergenceRow> run_study(const RunConfig& cfg, std::ostream* log) {
  cfg.validate();
  const Execution ex = cfg.deterministic ? Execution::Serial : Execution::Parallel;
  const std::size_t nl = cfg.lambdas.size(), ni = cfg.iotas.size();
  const int nlev = cfg.level_max - cfg.level_min + 1;
  std::vector<ConvergenceRow> rows(nl * ni * nlev);
  auto row = [&](std::size_t a, std::size_t b, int lev) -> ConvergenceRow& {
    return rows[(a * ni + b) * nlev + (lev - cfg.level_min)];
  };

  for (int lev = cfg.level_min; lev <= cfg.level_max; ++lev) {
    const int n = 1 << lev;
    const Mesh mesh = Mesh::uniform_unit_square(n, cfg.pattern);
    const Discretization disc(mesh, cfg.scheme, cfg.quad());
    SpdSolver solver;
    for (std::size_t bi = 0; bi < ni; ++bi) {
      const double iota_value = cfg.iotas[bi];
      // The load of Example 1 depends on iota only.
      const ManufacturedProblem prob = make_example(cfg.example, cfg.mu, iota_value);
      auto t0 = Clock::now();
      const Eigen::VectorXd b = disc.assemble_load(prob.f, ex);
      const double load_seconds = seconds_since(t0);
      for (std::size_t a = 0; a < nl; ++a) {
        const MaterialParams p{cfg.mu, cfg.lambdas[a], iota_value, cfg.eta};
        ConvergenceRow& r = row(a, bi, lev);
        r.example = cfg.example;
        r.scheme = cfg.scheme;
        r.mu = p.mu;
        r.lambda = p.lambda;
        r.iota = p.iota;
        r.eta = p.eta;
        r.level = lev;
        r.h = 1.0 / n;
        r.dofs = disc.space().ndofs;

        t0 = Clock::now();
        const SparseSymmetricMatrix A = disc.assemble_matrix(p, ex);
        r.assemble_seconds = seconds_since(t0) + load_seconds;
        t0 = Clock::now();
        Eigen::VectorXd x;
        try {
          solver.factorize(A);
          x = solver.solve(b, &r.solve);
        } catch (const SolverError& e) {
          std::ostringstream os;
          os << "example " << cfg.example << ", " << to_string(cfg.scheme) << " scheme, level " << lev
             << " (h = 1/" << n << "), lambda = " << p.lambda << ", iota = " << p.iota << ", eta = " << p.eta << ": "
             << e.what();
          throw StudyError(os.str(), e.kind());
        }
        r.solve_seconds = seconds_since(t0);
        r.error = disc.error_norm(&prob.u, x, p, cfg.norm(), ex);
        if (lev > cfg.level_min) {
          const double prev = row(a, bi, lev - 1).error;
          if (prev > 0.0 && r.error > 0.0) r.rate = std::log2(prev / r.error);
        }
        if (log) {
          *log << "level " << lev << " (h = 1/" << n << ", " << r.dofs << " dofs) lambda = " << p.lambda
               << " iota = " << p.iota << ": error " << fmt("%.4e", r.error);
          if (r.rate) *log << ", rate " << fmt("%.2f", *r.rate);
          if (!cfg.deterministic)
            *log << "  [assemble " << fmt("%.2f", r.assemble_seconds) << " s, solve " << fmt("%.2f", r.solve_seconds)
                 << " s]";
          if (r.solve.rounding_limited)
            *log << "  (residual " << fmt("%.1e", r.solve.relative_residual) << " at rounding level, backward error "
                 << fmt("%.1e", r.solve.backward_error) << ")";
          *log << "\n";
        }
      }
    }
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows, bool deterministic) {
  os << kCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.example << ',' << to_string(r.scheme) << ',' << fmt("%.10g", r.mu) << ',' << fmt("%.10g", r.lambda) << ','
       << fmt("%.10g", r.iota) << ',' << fmt("%.10g", r.eta) << ',' << r.level << ',' << fmt("%.10g", r.h) << ','
       << r.dofs << ',' << fmt("%.6e", r.error) << ',' << (r.rate ? fmt("%.4f", *r.rate) : std::string()) << ','
       << (deterministic ? "0" : fmt("%.4f", r.assemble_seconds)) << ','
       << (deterministic ? "0" : fmt("%.4f", r.solve_seconds)) << "\n";
  }
}

void write_markdown(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
  if (rows.empty()) return;
  std::vector<int> levels;
  std::vector<double> lambdas, iotas;
  auto add = [](auto& v, auto x) {
    for (auto y : v)
      if (y == x) return;
    v.push_back(x);
  };
  for (const auto& r : rows) {
    add(levels, r.level);
    add(lambdas, r.lambda);
    add(iotas, r.iota);
  }
  std::map<std::tuple<double, double, int>, const ConvergenceRow*> at;
  for (const auto& r : rows) at[{r.lambda, r.iota, r.level}] = &r;

  const ConvergenceRow& f = rows.front();
  for (double lam : lambdas) {
    os << "Example " << f.example << ", " << to_string(f.scheme) << " scheme, mu = " << f.mu << ", lambda = " << lam
       << ", eta = " << f.eta << "\n\n";
    os << "| iota \\ h |";
    for (int l : levels) os << " 1/" << (1 << l) << " |";
    os << "\n|---|";
    for (std::size_t k = 0; k < levels.size(); ++k) os << "---|";
    os << "\n";
    for (double io : iotas) {
      os << "| " << fmt("%g", io) << " |";
      for (int l : levels) os << " " << fmt("%.3e", at[{lam, io, l}]->error) << " |";
      os << "\n| rate |";
      for (int l : levels) {
        const auto* r = at[{lam, io, l}];
        os << " " << (r->rate ? fmt("%.2f", *r->rate) : std::string()) << " |";
      }
      os << "\n";
    }
    os << "\n";
  }
}

std::pair<int, int> parse_levels(const std::string& s) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const int l = std::stoi(s, &used);
      if (used != s.size()) throw ConfigError("");
      return {l, l};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw ConfigError("");
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw ConfigError("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw ConfigError("cannot parse levels '" + s + "' (expected a..b)");
  }
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("cannot parse number '" + item + "' in list '" + s + "'");
    }
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

}  // namespace sgefem
