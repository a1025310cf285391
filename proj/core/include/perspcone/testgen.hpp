#ifndef PERSPCONE_TESTGEN_HPP
#define PERSPCONE_TESTGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "perspcone/functions.hpp"
#include "perspcone/projection.hpp"

namespace perspcone {

// SplitMix64: a portable 64-bit generator whose streams can be split per
// sample index, so generated datasets are reproducible across platforms.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double next_open_closed() { return 1.0 - next_double(); }

  // Uniform on (0, 1).
  double next_open_open() {
    double u = next_double();
    while (u == 0.0) u = next_double();
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  double log_uniform(double lo, double hi);
  double gaussian();

  // Independent stream for sample `index` of a seeded run.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return SplitMix64(mixer.next_u64());
  }

private:
  std::uint64_t state_;
  double gauss_spare_ = 0.0;
  bool has_spare_ = false;
};

enum class Region { r1, r2, r3, r4, custom };

std::string to_string(Region r);

// Boundary sampling box for one experiment region plus the normal-step range
// of the synthetic construction.
struct RegionSpec {
  std::string cone;      // "exp", "exp-radial", "hyperbolic", "quadratic"
  Region region = Region::custom;
  double eta_floor = 1e-15; // lower bound for eta (drawn log-uniformly)
  double eta_max = 20.0;
  double multiplier = 10.0; // M in the x (or ||x||) bound
  double x_min = 0.0;       // fixed x-range regions only
  double x_max = 0.0;
  double t_max = 10.0;      // normal steps are drawn from (0, t_max]
  bool t_open_above = false;
  int dim = 1;

  static RegionSpec r1();
  static RegionSpec r2();
  static RegionSpec r3(int dim = 10000);
  static RegionSpec r4();
  static RegionSpec for_name(const std::string& region_name, int dim);
};

// A synthetic test point with its exactly known projection: the input sits at
// exact + t * (gradient, -1) for a boundary point `exact`, so the projection
// of `input` is `exact`.
struct LabeledSample {
  ConePoint input;
  ConePoint exact;
  double t = 0.0;
  Region region = Region::custom;
};

// Deterministic per (seed, index); sample i of a run can be generated without
// generating the others.
LabeledSample generate_sample(const ScalarConvexFunction& fn, const RegionSpec& spec,
                              std::uint64_t seed, std::uint64_t index);

std::vector<LabeledSample> generate_labeled(const ScalarConvexFunction& fn,
                                            const RegionSpec& spec, int count,
                                            std::uint64_t seed);

// Brute-force projection by nested grid refinement over (x, eta) with
// delta = max(p.delta, persp(x, eta)); independent of the prox machinery.
// Supports dim <= 3 (radial cones beyond dim 1 need an even phi).
ConePoint oracle_project(const ScalarConvexFunction& fn, const ConePoint& p,
                         double box_halfwidth, int rounds);

} // namespace perspcone

#endif
