#include <benchmark/benchmark.h>

#include <vector>

#include "perspcone/bench.hpp"
#include "perspcone/lambert.hpp"
#include "perspcone/persp_prox.hpp"
#include "perspcone/projection.hpp"
#include "perspcone/testgen.hpp"

namespace {

using namespace perspcone;

void BM_LambertW(benchmark::State& state) {
  double z = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w(z));
    z = z * 1.0000001 + 1e-9;
  }
}
BENCHMARK(BM_LambertW);

void BM_LambertWOfExp(benchmark::State& state) {
  double s = 1e3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w_of_exp(s));
    s += 1.0;
  }
}
BENCHMARK(BM_LambertWOfExp);

void BM_HyperbolicProx(benchmark::State& state) {
  HyperbolicFunction f;
  double x = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.prox(0.7, x));
    x += 1e-7;
  }
}
BENCHMARK(BM_HyperbolicProx);

void BM_PerspProx(benchmark::State& state) {
  ExpFunction f;
  const SolverConfig cfg = SolverConfig::with_tolerance(1e-9);
  double eta = 2.0; // interior branch: exercises the nested nu solve
  for (auto _ : state) {
    benchmark::DoNotOptimize(persp_prox(f, 1.3, 0.8, eta, cfg));
    eta += 1e-7;
  }
}
BENCHMARK(BM_PerspProx);

void project_region(benchmark::State& state, const char* cone_name,
                    const char* region_name, double tol, int dim) {
  const ConeSpec cone = make_cone(cone_name);
  const RegionSpec spec = RegionSpec::for_name(region_name, dim);
  const SolverConfig cfg = solver_config(tol, "brent");
  std::vector<LabeledSample> samples;
  for (std::uint64_t i = 0; i < 256; ++i)
    samples.push_back(generate_sample(*cone.fn, spec, 7, i));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_cone(cone, samples[i].input, cfg));
    i = (i + 1) & 255;
  }
}

void BM_ProjectExpR1(benchmark::State& state) { project_region(state, "exp", "r1", 1e-9, 0); }
void BM_ProjectExpR2(benchmark::State& state) { project_region(state, "exp", "r2", 1e-9, 0); }
void BM_ProjectHyperbolicR4(benchmark::State& state) {
  project_region(state, "hyperbolic", "r4", 1e-12, 0);
}
BENCHMARK(BM_ProjectExpR1);
BENCHMARK(BM_ProjectExpR2);
BENCHMARK(BM_ProjectHyperbolicR4);

void BM_ProjectRadial(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  project_region(state, "exp-radial", "r3", 5e-10, dim);
}
BENCHMARK(BM_ProjectRadial)->Arg(16)->Arg(1024)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
