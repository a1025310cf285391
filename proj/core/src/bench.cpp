#include "perspcone/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "perspcone/csv.hpp"

namespace perspcone {

ConeSpec make_cone(const std::string& name) {
  if (name == "exp") return {name, make_function("exp"), false};
  if (name == "hyperbolic") return {name, make_function("hyperbolic"), false};
  if (name == "quadratic") return {name, make_function("quadratic"), false};
  if (name == "exp-radial") return {name, make_function("abs-exp"), true};
  throw std::invalid_argument("unknown cone: " + name);
}

ProjectionResult project_cone(const ConeSpec& cone, const ConePoint& p,
                              const SolverConfig& cfg) {
  return cone.radial ? project_epi_radial(*cone.fn, p, cfg)
                     : project_epi(*cone.fn, p, cfg);
}

double sample_error(const ConePoint& a, const ConePoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    const double d = a.x[i] - b.x[i];
    s += d * d;
  }
  const double de = a.eta - b.eta;
  const double dd = a.delta - b.delta;
  return std::sqrt(s + de * de + dd * dd);
}

double region_error_threshold(Region region) {
  switch (region) {
    case Region::r1: return 3.2e-3;
    case Region::r2: return 1e-9;
    case Region::r3: return 1e-8;
    case Region::r4: return 1e-10;
    default: return 1e-6;
  }
}

double RunningStats::mean() const {
  if (values.empty()) return 0.0;
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double RunningStats::stddev() const {
  if (values.size() < 2) return 0.0;
  const double m = mean();
  double s = 0.0;
  for (double v : values) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(values.size()));
}

SolverConfig solver_config(double tol, const std::string& solver_name) {
  RootMethod m;
  if (solver_name == "brent")
    m = RootMethod::brent;
  else if (solver_name == "bisect")
    m = RootMethod::bisection;
  else
    throw std::invalid_argument("unknown solver: " + solver_name);
  return SolverConfig::with_tolerance(tol, m);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = std::min<std::size_t>(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

RegionSpec region_for(const std::string& cone_name, const std::string& region_name,
                      int dim) {
  RegionSpec spec = RegionSpec::for_name(region_name, dim);
  if (spec.cone != cone_name)
    throw std::invalid_argument("region " + region_name + " is not defined for cone " +
                                cone_name);
  return spec;
}

} // namespace

BenchReport run_bench(const std::string& cone_name, const std::string& region_name,
                      int count, std::uint64_t seed, double tol,
                      const std::string& solver, int dim) {
  if (count < 1) throw std::invalid_argument("bench: n must be >= 1");
  const ConeSpec cone = make_cone(cone_name);
  const RegionSpec spec = region_for(cone_name, region_name, dim);
  const SolverConfig cfg = solver_config(tol, solver);

  BenchReport rep;
  rep.cone = cone_name;
  rep.region = region_name;
  rep.n_points = count;
  rep.dim = spec.dim;
  rep.seed = seed;
  rep.tol = tol;
  rep.solver = solver;

  // Warm-up projections keep cold-start effects out of the per-point clock.
  const int warmup = std::min(count, 100);
  for (int i = 0; i < warmup; ++i) {
    const LabeledSample s = generate_sample(*cone.fn, spec, seed, static_cast<std::uint64_t>(i));
    (void)project_cone(cone, s.input, cfg);
  }

  std::vector<double> errors(static_cast<std::size_t>(count));
  std::vector<double> times(static_cast<std::size_t>(count));
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    try {
      const LabeledSample s = generate_sample(*cone.fn, spec, seed, i);
      const auto t0 = std::chrono::steady_clock::now();
      const ProjectionResult pr = project_cone(cone, s.input, cfg);
      const auto t1 = std::chrono::steady_clock::now();
      errors[i] = sample_error(pr.point, s.exact);
      times[i] = static_cast<double>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    } catch (const std::exception& e) {
      if (!failed.exchange(true)) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
      }
    }
  });
  if (failed) throw std::runtime_error("bench: projection failed: " + failure);

  RunningStats err_stats, time_stats;
  err_stats.values = std::move(errors);
  time_stats.values = std::move(times);
  rep.error_mean = err_stats.mean();
  rep.error_std = err_stats.stddev();
  rep.time_mean_ns = time_stats.mean();
  rep.time_std_ns = time_stats.stddev();
  rep.threshold = region_error_threshold(spec.region);
  rep.pass = rep.error_mean <= rep.threshold;
  return rep;
}

std::string BenchReport::to_json() const {
  std::ostringstream os;
  os << "{";
  os << "\"schema_version\":" << kReportSchemaVersion;
  os << ",\"cone\":\"" << cone << "\"";
  os << ",\"region\":\"" << region << "\"";
  os << ",\"n_points\":" << n_points;
  os << ",\"dim\":" << dim;
  os << ",\"seed\":" << seed;
  os << ",\"tol\":" << format_double(tol);
  os << ",\"solver\":\"" << solver << "\"";
  os << ",\"error_mean\":" << format_double(error_mean);
  os << ",\"error_std\":" << format_double(error_std);
  os << ",\"time_mean_ns\":" << format_double(time_mean_ns);
  os << ",\"time_std_ns\":" << format_double(time_std_ns);
  os << ",\"threshold\":" << format_double(threshold);
  os << ",\"pass\":" << (pass ? "true" : "false");
  os << "}";
  return os.str();
}

void cmd_gen(const std::string& cone_name, const std::string& region_name, int count,
             std::uint64_t seed, const std::string& out_path, int dim) {
  if (count < 1) throw std::invalid_argument("gen: n must be >= 1");
  const ConeSpec cone = make_cone(cone_name);
  const RegionSpec spec = region_for(cone_name, region_name, dim);
  const int d = spec.dim;

  CsvTable table;
  for (int i = 0; i < d; ++i) table.header.push_back("x_" + std::to_string(i));
  table.header.emplace_back("eta");
  table.header.emplace_back("delta");
  for (int i = 0; i < d; ++i) table.header.push_back("exact_x_" + std::to_string(i));
  table.header.emplace_back("exact_eta");
  table.header.emplace_back("exact_delta");
  table.header.emplace_back("t");

  table.rows.resize(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const LabeledSample s =
        generate_sample(*cone.fn, spec, seed, static_cast<std::uint64_t>(i));
    auto& row = table.rows[static_cast<std::size_t>(i)];
    row.reserve(2 * d + 5);
    for (double c : s.input.x) row.push_back(format_double(c));
    row.push_back(format_double(s.input.eta));
    row.push_back(format_double(s.input.delta));
    for (double c : s.exact.x) row.push_back(format_double(c));
    row.push_back(format_double(s.exact.eta));
    row.push_back(format_double(s.exact.delta));
    row.push_back(format_double(s.t));
  }
  write_csv(out_path, table);
}

void cmd_project(const std::string& cone_name, const std::string& in_path, double tol,
                 const std::string& solver, const std::string& out_path) {
  const ConeSpec cone = make_cone(cone_name);
  const SolverConfig cfg = solver_config(tol, solver);
  CsvTable table = read_csv(in_path);

  int d = 0;
  while (table.column("x_" + std::to_string(d)) >= 0) ++d;
  const int col_eta = table.column("eta");
  const int col_delta = table.column("delta");
  if (d == 0 || col_eta < 0 || col_delta < 0)
    throw IoError("missing x_*/eta/delta columns in " + in_path);
  if (!cone.radial && d != 1)
    throw std::invalid_argument("cone " + cone_name + " expects 1-dimensional rows");

  for (int i = 0; i < d; ++i) table.header.push_back("proj_x_" + std::to_string(i));
  table.header.emplace_back("proj_eta");
  table.header.emplace_back("proj_delta");
  table.header.emplace_back("mu");
  table.header.emplace_back("nu");
  table.header.emplace_back("outer_iters");
  table.header.emplace_back("residual");
  table.header.emplace_back("time_ns");
  table.header.emplace_back("error");

  const std::size_t rows = table.rows.size();
  std::vector<std::vector<std::string>> extra(rows);
  parallel_for(rows, [&](std::size_t i) {
    auto& row = table.rows[i];
    auto& out = extra[i];
    out.reserve(static_cast<std::size_t>(d) + 8);
    try {
      ConePoint p;
      p.x.resize(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) p.x[static_cast<std::size_t>(k)] = std::stod(row[static_cast<std::size_t>(k)]);
      p.eta = std::stod(row[static_cast<std::size_t>(col_eta)]);
      p.delta = std::stod(row[static_cast<std::size_t>(col_delta)]);

      const auto t0 = std::chrono::steady_clock::now();
      const ProjectionResult pr = project_cone(cone, p, cfg);
      const auto t1 = std::chrono::steady_clock::now();

      for (double c : pr.point.x) out.push_back(format_double(c));
      out.push_back(format_double(pr.point.eta));
      out.push_back(format_double(pr.point.delta));
      out.push_back(format_double(pr.mu));
      out.push_back(pr.nu ? format_double(*pr.nu) : "");
      out.push_back(std::to_string(pr.outer_iterations));
      out.push_back(format_double(pr.outer_residual));
      out.push_back(std::to_string(
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
      out.emplace_back();
    } catch (const std::exception& e) {
      out.clear();
      const double nan = std::nan("");
      for (int k = 0; k < d + 2; ++k) out.push_back(format_double(nan));
      out.push_back(format_double(nan)); // mu
      out.emplace_back();                // nu
      out.emplace_back("0");
      out.push_back(format_double(nan));
      out.emplace_back("0");
      std::string msg = e.what();
      for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
      out.push_back(std::move(msg));
    }
  });
  for (std::size_t i = 0; i < rows; ++i)
    for (auto& f : extra[i]) table.rows[i].push_back(std::move(f));

  write_csv(out_path, table);
}

} // namespace perspcone
