// Serial reference kernels against their colored parallel versions.

#include "sgefem/forms.hpp"
#include "sgefem/manufactured.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

using namespace sgefem;

namespace {

struct Fixture {
  Mesh mesh;
  std::unique_ptr<Discretization> disc;
  ManufacturedProblem prob;
  Eigen::VectorXd x;
};

const Fixture& fixture(int n) {
  static std::map<int, std::unique_ptr<Fixture>> cache;
  auto& f = cache[n];
  if (!f) {
    f = std::make_unique<Fixture>();
    f->mesh = Mesh::uniform_unit_square(n);
    f->disc = std::make_unique<Discretization>(f->mesh, Scheme::Weak);
    f->prob = example1(1.0, 1e-2);
    f->x = Eigen::VectorXd::LinSpaced(f->disc->space().ndofs, 0.0, 1.0).array().sin();
  }
  return *f;
}

const MaterialParams kParams{1.0, 1.0, 1e-2, 100.0};

Execution execution(const benchmark::State& s) { return s.range(1) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& s, const Fixture& f) {
  s.SetLabel(std::string(s.range(1) ? "parallel" : "serial") + ", " + std::to_string(f.disc->space().ndofs) + " dofs");
}

void BM_AssembleMatrix(benchmark::State& s) {
  const Fixture& f = fixture(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(f.disc->assemble_matrix(kParams, execution(s)));
  label(s, f);
}

void BM_AssembleLoad(benchmark::State& s) {
  const Fixture& f = fixture(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(f.disc->assemble_load(f.prob.f, execution(s)));
  label(s, f);
}

void BM_ErrorNorm(benchmark::State& s) {
  const Fixture& f = fixture(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(f.disc->error_norm(&f.prob.u, f.x, kParams, NormKind::Triple, execution(s)));
  label(s, f);
}

}  // namespace

BENCHMARK(BM_AssembleMatrix)->ArgsProduct({{32, 64, 128}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AssembleLoad)->ArgsProduct({{32, 64, 128}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ErrorNorm)->ArgsProduct({{32, 64, 128}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
