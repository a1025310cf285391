// Command-line front end: generate labeled datasets with exact projections,
// run batch projections over CSV files, and reproduce the per-region
// error/timing tables.
//
// Exit codes: 0 success, 1 threshold breach, 2 usage error, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "perspcone/bench.hpp"
#include "perspcone/csv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitThreshold = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projections onto cones generated by epigraphs of perspective functions"};
  app.require_subcommand(1);

  std::string cone = "exp";
  std::string region = "r2";
  std::string solver = "brent";
  std::string in_path, out_path;
  int n = 1000;
  int dim = 0; // 0 = region default
  std::uint64_t seed = 1;
  double tol = 1e-9;
  bool json_only = false;

  auto add_cone = [&](CLI::App* cmd) {
    cmd->add_option("--cone", cone, "Cone: exp, exp-radial, hyperbolic, quadratic")
        ->required();
  };

  CLI::App* gen = app.add_subcommand(
      "gen", "Generate labeled samples (inputs with exactly known projections)");
  add_cone(gen);
  gen->add_option("--region", region, "Sampling region: r1, r2, r3, r4")->required();
  gen->add_option("--n", n, "Number of samples")->required();
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--dim", dim, "Ambient dimension (radial regions only)");
  gen->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* project = app.add_subcommand("project", "Project every row of a CSV file");
  add_cone(project);
  project->add_option("--in", in_path, "Input CSV path")->required();
  project->add_option("--tol", tol, "Outer solver tolerance");
  project->add_option("--solver", solver, "Root solver: brent or bisect");
  project->add_option("--out", out_path, "Output CSV path")->required();

  CLI::App* bench = app.add_subcommand(
      "bench", "Generate, project and report error/timing statistics (JSON)");
  add_cone(bench);
  bench->add_option("--region", region, "Sampling region: r1, r2, r3, r4")->required();
  bench->add_option("--n", n, "Number of samples")->required();
  bench->add_option("--seed", seed, "RNG seed");
  bench->add_option("--dim", dim, "Ambient dimension (radial regions only)");
  bench->add_option("--tol", tol, "Outer solver tolerance");
  bench->add_option("--solver", solver, "Root solver: brent or bisect");
  bench->add_flag("--json", json_only, "Suppress the human-readable summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e); // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (n < 1) {
        std::cerr << "gen: --n must be >= 1\n";
        return kExitUsage;
      }
      perspcone::cmd_gen(cone, region, n, seed, out_path, dim);
      return kExitOk;
    }
    if (project->parsed()) {
      perspcone::cmd_project(cone, in_path, tol, solver, out_path);
      return kExitOk;
    }
    if (bench->parsed()) {
      if (n < 1) {
        std::cerr << "bench: --n must be >= 1\n";
        return kExitUsage;
      }
      const perspcone::BenchReport rep =
          perspcone::run_bench(cone, region, n, seed, tol, solver, dim);
      std::cout << rep.to_json() << "\n";
      if (!json_only) {
        std::cerr << rep.cone << "/" << rep.region << " n=" << rep.n_points
                  << " tol=" << rep.tol << " solver=" << rep.solver
                  << ": error mean " << rep.error_mean << " (std " << rep.error_std
                  << "), time mean " << rep.time_mean_ns / 1e3 << " us/point"
                  << (rep.pass ? "" : "  [threshold breached]") << "\n";
      }
      return rep.pass ? kExitOk : kExitThreshold;
    }
  } catch (const perspcone::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
