#ifndef PERSPCONE_BENCH_HPP
#define PERSPCONE_BENCH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "perspcone/projection.hpp"
#include "perspcone/testgen.hpp"

namespace perspcone {

inline constexpr int kReportSchemaVersion = 1;

// Names accepted by the CLI: "exp", "exp-radial", "hyperbolic", "quadratic".
struct ConeSpec {
  std::string name;
  std::shared_ptr<const ScalarConvexFunction> fn;
  bool radial = false;
};

ConeSpec make_cone(const std::string& name); // throws std::invalid_argument

ProjectionResult project_cone(const ConeSpec& cone, const ConePoint& p,
                              const SolverConfig& cfg);

// Euclidean error in R^{n+2} between a projection and the labeled exact point.
double sample_error(const ConePoint& a, const ConePoint& b);

// Error/timing statistics for one region; the exit-code threshold is keyed by
// region, matching the acceptance gates.
struct BenchReport {
  std::string cone;
  std::string region;
  int n_points = 0;
  int dim = 1;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string solver;
  double error_mean = 0.0;
  double error_std = 0.0;
  double time_mean_ns = 0.0;
  double time_std_ns = 0.0;
  double threshold = 0.0;
  bool pass = false;

  std::string to_json() const;
};

double region_error_threshold(Region region);

// Mean and standard deviation accumulated in index order, so a recomputation
// from round-tripped CSV values reproduces the figures bit-for-bit.
struct RunningStats {
  void add(double v) { values.push_back(v); }
  double mean() const;
  double stddev() const;
  std::vector<double> values;
};

// Generate, project, and report on one region. Samples are generated per
// index and never stored wholesale, so high-dimensional regions stay cheap.
// Projection runs in parallel across samples; 100 warm-up projections are
// excluded from the timing statistics.
BenchReport run_bench(const std::string& cone_name, const std::string& region_name,
                      int count, std::uint64_t seed, double tol,
                      const std::string& solver, int dim);

// CSV schema: x_0..x_{d-1},eta,delta,exact_x_0..exact_x_{d-1},exact_eta,
// exact_delta,t. Written by cmd_gen, consumed by cmd_project.
void cmd_gen(const std::string& cone_name, const std::string& region_name, int count,
             std::uint64_t seed, const std::string& out_path, int dim);

// Appends proj_x_*,proj_eta,proj_delta,mu,nu,outer_iters,residual,time_ns and
// an error column (empty unless the row failed; failures do not stop the run).
void cmd_project(const std::string& cone_name, const std::string& in_path, double tol,
                 const std::string& solver, const std::string& out_path);

// Parallel loop with deterministic result placement.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

SolverConfig solver_config(double tol, const std::string& solver_name);

} // namespace perspcone

#endif
