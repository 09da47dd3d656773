#pragma once

#include "sgefem/forms.hpp"
#include "sgefem/mesh.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgefem {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Solver failure at one (level, lambda, iota) cell of a study.
class StudyError : public std::runtime_error {
 public:
  StudyError(const std::string& what, SolverError::Kind kind) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] SolverError::Kind kind() const { return kind_; }

 private:
  SolverError::Kind kind_;
};

struct RunConfig {
  int example = 1;
  Scheme scheme = Scheme::Weak;
  double mu = 1.0;
  std::vector<double> lambdas{1.0};
  std::vector<double> iotas{1.0};
  double eta = 100.0;
  int level_min = 3;  // h = 2^-level
  int level_max = 7;
  std::optional<int> quad_degree;  // cell degree; edges use one more
  MeshPattern pattern = MeshPattern::Diagonal;
  bool deterministic = false;  // serial kernels, zero timings in the CSV

  /// Throws ConfigError.
  void validate() const;
  [[nodiscard]] QuadDegrees quad() const;
  /// Triple for Example 1, Plain for Example 2.
  [[nodiscard]] NormKind norm() const;
};

struct ConvergenceRow {
  int example = 1;
  Scheme scheme = Scheme::Weak;
  double mu = 1.0, lambda = 1.0, iota = 1.0, eta = 100.0;
  int level = 0;
  double h = 0.0;
  int dofs = 0;
  double error = 0.0;
  std::optional<double> rate;  // log2(error(2h) / error(h))
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  SolveInfo solve;
};

/// Rows ordered by lambda, then iota, then level, following the config.
/// Progress goes to `log` when given.  Throws StudyError.
std::vector<ConvergenceRow> run_study(const RunConfig& cfg, std::ostream* log = nullptr);

inline constexpr const char* kCsvHeader =
    "example,scheme,mu,lambda,iota,eta,level,h,dofs,error,rate,assemble_seconds,solve_seconds";

/// Deterministic mode writes zero timings so repeated runs are byte-identical.
void write_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows, bool deterministic);

/// One table per lambda: rows are iota with a rate row under each, columns h.
void write_markdown(std::ostream& os, const std::vector<ConvergenceRow>& rows);

/// Parses "a..b" or a single level.
std::pair<int, int> parse_levels(const std::string& s);
/// Parses a comma separated list of positive numbers.
std::vector<double> parse_list(const std::string& s);

}  // namespace sgefem
