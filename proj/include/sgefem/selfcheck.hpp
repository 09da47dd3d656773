#pragma once

#include "sgefem/dofs.hpp"
#include "sgefem/polynomial.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace sgefem {

/// Random simplex in the unit cube with a lower bound on its shape quality.
Simplex random_simplex(int dim, std::mt19937_64& rng);

struct UnisolvenceSummary {
  int tested = 0;
  int failed = 0;
  double worst = 0.0;  // largest scaled duality error
  std::string worst_case;
};

/// nodal_basis for V(T), Q(T), W(T) and BDM2 on random triangles and for
/// V(T), Q(T) and BDM2 on random tetrahedra.  With `inject_fault` one
/// coefficient of each V(T) basis is perturbed by 1e-3 before checking.
UnisolvenceSummary unisolvence_suite(int triangles, int tetrahedra, std::uint64_t seed, bool inject_fault = false,
                                     double tol = 1e-9);

struct BubbleSummary {
  int simplices = 0;
  double div_identity = 0.0;  // max |div Phi_T - b_T^NC| at random points
  double face_moments = 0.0;  // max |mean_F b_T^NC q| over faces and P1(F) tests
};

BubbleSummary bubble_identities(int triangles, int tetrahedra, std::uint64_t seed);

struct NamedField {
  std::string name;
  SmoothField field;
};

/// Vector fields vanishing on the boundary of the unit square.  Jets up to
/// second order.  `seed` fixes the coefficients of the polynomial field.
std::vector<NamedField> commutativity_fields(std::uint64_t seed = 11);
/// Scalar fields with vanishing value and gradient on the boundary.
std::vector<NamedField> stream_functions();

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfcheckOptions {
  std::vector<int> meshes{1, 2, 4, 8};
  int triangles = 100;
  int tetrahedra = 1;
  int continuity_samples = 50;
  std::uint64_t seed = 2024;
  bool inject_fault = false;
};

struct SelfcheckReport {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool ok() const;
};

/// Unisolvence, bubble identities, weak continuity, both commuting
/// identities and exactness of the discrete complex.  Each check is printed
/// to `log` as it finishes.
SelfcheckReport run_selfcheck(const SelfcheckOptions& opt, std::ostream* log = nullptr);

}  // namespace sgefem
