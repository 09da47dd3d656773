// Command line driver: convergence studies, self checks, mesh listings and
// complex reports.

#include "sgefem/complexcheck.hpp"
#include "sgefem/mesh.hpp"
#include "sgefem/selfcheck.hpp"
#include "sgefem/study.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitSelfcheck = 4;

sgefem::MeshPattern parse_pattern(const std::string& s) {
  static const std::map<std::string, sgefem::MeshPattern> names{
      {"diagonal", sgefem::MeshPattern::Diagonal},
      {"antidiagonal", sgefem::MeshPattern::AntiDiagonal},
      {"unionjack", sgefem::MeshPattern::UnionJack},
      {"crisscross", sgefem::MeshPattern::CrissCross}};
  const auto it = names.find(s);
  if (it == names.end()) throw sgefem::ConfigError("unknown mesh pattern '" + s + "'");
  return it->second;
}

sgefem::Scheme parse_scheme(const std::string& s) {
  if (s == "weak") return sgefem::Scheme::Weak;
  if (s == "strong") return sgefem::Scheme::Strong;
  throw sgefem::ConfigError("scheme must be weak or strong");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw sgefem::ConfigError("cannot open '" + path + "' for writing");
  f << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonconforming finite elements for strain gradient elasticity"};
  app.require_subcommand(1);

  // study
  auto* study = app.add_subcommand("study", "Convergence study on uniform meshes of the unit square");
  int example = 1;
  std::string scheme = "weak", lambdas = "1", iotas = "1", levels = "3..7", out, pattern = "diagonal";
  double mu = 1.0, eta = 100.0;
  int quad_degree = 0;
  bool deterministic = false;
  study->add_option("--example", example, "Manufactured example (1 or 2)")->capture_default_str();
  study->add_option("--scheme", scheme, "weak (Nitsche) or strong (clamped DoFs)")->capture_default_str();
  study->add_option("--lambda", lambdas, "Lame lambda, comma list")->capture_default_str();
  study->add_option("--iota", iotas, "Size parameter, comma list")->capture_default_str();
  study->add_option("--mu", mu, "Lame mu")->capture_default_str();
  study->add_option("--eta", eta, "Nitsche penalty")->capture_default_str();
  study->add_option("--levels", levels, "Mesh levels a..b, h = 2^-level")->capture_default_str();
  study->add_option("--quad-degree", quad_degree, "Cell quadrature degree (edges use one more)");
  study->add_option("--mesh", pattern, "diagonal, antidiagonal, unionjack or crisscross")->capture_default_str();
  study->add_option("--out", out, "Output prefix: writes PREFIX.csv and PREFIX.md");
  study->add_flag("--deterministic", deterministic, "Serial kernels and zero timings in the CSV");

  // selfcheck
  auto* selfcheck = app.add_subcommand("selfcheck", "Property suite on small meshes");
  bool inject_fault = false;
  selfcheck->add_flag("--inject-fault", inject_fault, "Perturb one basis coefficient to show detection");

  // mesh
  auto* mesh_cmd = app.add_subcommand("mesh", "List a uniform mesh");
  int mesh_n = 2;
  std::string mesh_pattern = "diagonal";
  mesh_cmd->add_option("-n", mesh_n, "Subdivisions per side")->capture_default_str();
  mesh_cmd->add_option("--mesh", mesh_pattern, "Splitting pattern")->capture_default_str();

  // complex
  auto* complex_cmd = app.add_subcommand("complex", "Exactness report of the discrete Stokes complex");
  int complex_n = 2;
  complex_cmd->add_option("-n", complex_n, "Subdivisions per side (at most 8)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*study) {
      sgefem::RunConfig cfg;
      cfg.example = example;
      cfg.scheme = parse_scheme(scheme);
      cfg.mu = mu;
      cfg.eta = eta;
      cfg.lambdas = sgefem::parse_list(lambdas);
      cfg.iotas = sgefem::parse_list(iotas);
      std::tie(cfg.level_min, cfg.level_max) = sgefem::parse_levels(levels);
      if (study->count("--quad-degree")) cfg.quad_degree = quad_degree;
      cfg.pattern = parse_pattern(pattern);
      cfg.deterministic = deterministic;
      cfg.validate();

      const auto rows = sgefem::run_study(cfg, &std::cout);
      std::ostringstream csv, md;
      sgefem::write_csv(csv, rows, cfg.deterministic);
      sgefem::write_markdown(md, rows);
      if (out.empty()) {
        std::cout << "\n" << md.str();
      } else {
        write_file(out + ".csv", csv.str());
        write_file(out + ".md", md.str());
        std::cout << "wrote " << out << ".csv and " << out << ".md\n";
      }
      return 0;
    }
    if (*selfcheck) {
      sgefem::SelfcheckOptions opt;
      opt.inject_fault = inject_fault;
      const auto rep = sgefem::run_selfcheck(opt, &std::cout);
      int failed = 0;
      for (const auto& c : rep.checks) failed += c.passed ? 0 : 1;
      std::cout << (rep.ok() ? "selfcheck passed" : "selfcheck FAILED") << " (" << rep.checks.size() - failed << "/"
                << rep.checks.size() << " checks)\n";
      return rep.ok() ? 0 : kExitSelfcheck;
    }
    if (*mesh_cmd) {
      if (mesh_n < 1) throw sgefem::ConfigError("-n must be positive");
      sgefem::Mesh::uniform_unit_square(mesh_n, parse_pattern(mesh_pattern)).dump(std::cout);
      return 0;
    }
    if (*complex_cmd) {
      if (complex_n < 1 || complex_n > 8) throw sgefem::ConfigError("-n must be in 1..8");
      const auto r = sgefem::exactness_report(sgefem::Mesh::uniform_unit_square(complex_n));
      sgefem::print_report(std::cout, r);
      return r.exact() ? 0 : kExitSelfcheck;
    }
  } catch (const sgefem::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sgefem::StudyError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const sgefem::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return 0;
}
