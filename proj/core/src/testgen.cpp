#include "perspcone/testgen.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace perspcone {

double SplitMix64::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double SplitMix64::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return gauss_spare_;
  }
  const double u1 = next_open_open();
  const double u2 = next_double();
  const double m = std::sqrt(-2.0 * std::log(u1));
  const double a = 6.283185307179586 * u2;
  gauss_spare_ = m * std::sin(a);
  has_spare_ = true;
  return m * std::cos(a);
}

std::string to_string(Region r) {
  switch (r) {
    case Region::r1: return "r1";
    case Region::r2: return "r2";
    case Region::r3: return "r3";
    case Region::r4: return "r4";
    default: return "custom";
  }
}

RegionSpec RegionSpec::r1() {
  RegionSpec s;
  s.cone = "exp";
  s.region = Region::r1;
  s.eta_floor = 1e-15;
  s.eta_max = 20.0;
  s.multiplier = 10.0;
  s.t_max = 10.0;
  return s;
}

RegionSpec RegionSpec::r2() {
  RegionSpec s = r1();
  s.region = Region::r2;
  s.x_min = -10.0;
  s.x_max = 0.0;
  return s;
}

RegionSpec RegionSpec::r3(int dim) {
  RegionSpec s;
  s.cone = "exp-radial";
  s.region = Region::r3;
  s.eta_floor = 1.0;
  s.eta_max = 10.0;
  s.multiplier = 5.0;
  s.t_max = 1.0;
  s.t_open_above = true;
  s.dim = dim;
  return s;
}

RegionSpec RegionSpec::r4() {
  RegionSpec s;
  s.cone = "hyperbolic";
  s.region = Region::r4;
  s.eta_floor = 1e-15;
  s.eta_max = 100.0;
  s.x_min = -100.0;
  s.t_max = 10.0;
  return s;
}

RegionSpec RegionSpec::for_name(const std::string& region_name, int dim) {
  if (region_name == "r1") return r1();
  if (region_name == "r2") return r2();
  if (region_name == "r3") return r3(dim > 0 ? dim : 10000);
  if (region_name == "r4") return r4();
  throw std::invalid_argument("unknown region: " + region_name);
}

namespace {

// Gradient of persp(f) at a boundary point with eta > 0:
// (f'(s), f(s) - s f'(s)) for s = x/eta.
std::pair<double, double> persp_gradient(const ScalarConvexFunction& fn, double s) {
  const double d = fn.derivative(s);
  return {d, fn.value(s) - s * d};
}

} // namespace

LabeledSample generate_sample(const ScalarConvexFunction& fn, const RegionSpec& spec,
                              std::uint64_t seed, std::uint64_t index) {
  SplitMix64 rng = SplitMix64::stream(seed, index);

  LabeledSample out;
  out.region = spec.region;
  const double eta_hat = rng.log_uniform(spec.eta_floor, spec.eta_max);
  const double t = spec.t_open_above ? spec.t_max * rng.next_open_open()
                                     : spec.t_max * rng.next_open_closed();
  out.t = t;

  if (spec.region == Region::r3) {
    // Radial: boundary norm in (0, M*eta], direction uniform on the sphere.
    const int n = spec.dim;
    const double r_hat = spec.multiplier * eta_hat * rng.next_open_closed();
    std::vector<double> dir(n);
    double nn = 0.0;
    do {
      nn = 0.0;
      for (int i = 0; i < n; ++i) {
        dir[i] = rng.gaussian();
        nn += dir[i] * dir[i];
      }
      nn = std::sqrt(nn);
    } while (nn == 0.0);

    const double s = r_hat / eta_hat;
    const double delta_hat = fn.perspective(r_hat, eta_hat);
    const auto [gr, geta] = persp_gradient(fn, s);

    std::vector<double> x_hat(n), x_in(n);
    for (int i = 0; i < n; ++i) {
      const double u = dir[i] / nn;
      x_hat[i] = r_hat * u;
      x_in[i] = x_hat[i] + t * gr * u;
    }
    out.exact = ConePoint(std::move(x_hat), eta_hat, delta_hat);
    out.input = ConePoint(std::move(x_in), eta_hat + t * geta, delta_hat - t);
    return out;
  }

  double x_hat = 0.0;
  switch (spec.region) {
    case Region::r1:
      x_hat = rng.uniform(0.0, spec.multiplier * eta_hat);
      break;
    case Region::r2:
      x_hat = rng.uniform(spec.x_min, spec.x_max);
      break;
    case Region::r4:
      x_hat = rng.uniform(spec.x_min, eta_hat);
      while (x_hat >= eta_hat) x_hat = rng.uniform(spec.x_min, eta_hat);
      break;
    default:
      throw std::invalid_argument("generate_sample: region has no sampling rule");
  }

  const double s = x_hat / eta_hat;
  const double delta_hat = fn.perspective(x_hat, eta_hat);
  const auto [gx, geta] = persp_gradient(fn, s);
  out.exact = ConePoint::scalar(x_hat, eta_hat, delta_hat);
  out.input = ConePoint::scalar(x_hat + t * gx, eta_hat + t * geta, delta_hat - t);
  return out;
}

std::vector<LabeledSample> generate_labeled(const ScalarConvexFunction& fn,
                                            const RegionSpec& spec, int count,
                                            std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("generate_labeled: count must be >= 1");
  std::vector<LabeledSample> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(generate_sample(fn, spec, seed, static_cast<std::uint64_t>(i)));
  return out;
}

ConePoint oracle_project(const ScalarConvexFunction& fn, const ConePoint& p,
                         double box_halfwidth, int rounds) {
  if (rounds < 3) throw std::invalid_argument("oracle_project: rounds must be >= 3");
  const std::size_t n = p.x.size();
  if (n > 3) throw std::invalid_argument("oracle_project: dimension above 3");
  if (n > 1 && !fn.radial_capable())
    throw std::invalid_argument("oracle_project: multi-dimensional cones need an even phi");

  const auto persp_of = [&](const std::vector<double>& x, double eta) {
    if (n == 1) return fn.perspective(x[0], eta);
    double s = 0.0;
    for (double c : x) s += c * c;
    return fn.perspective(std::sqrt(s), eta);
  };
  const auto objective = [&](const std::vector<double>& x, double eta, double delta) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x[i] - p.x[i];
      s += d * d;
    }
    const double de = eta - p.eta, dd = delta - p.delta;
    return s + de * de + dd * dd;
  };

  // For fixed x the slice objective is convex in eta, so golden-section over
  // eta >= 0 resolves it essentially exactly; the remaining function of x is
  // strongly convex, which keeps the shrinking grid from losing the minimum.
  const double eta_hi0 = std::max(0.0, p.eta) + box_halfwidth;
  const double invphi = 0.6180339887498949;
  const auto slice = [&](const std::vector<double>& x, double& eta_out, double& delta_out) {
    const auto value_at = [&](double eta) {
      const double v = persp_of(x, eta);
      if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
      return objective(x, eta, std::max(p.delta, v));
    };
    double lo = 0.0, hi = eta_hi0;
    double m1 = hi - invphi * (hi - lo);
    double m2 = lo + invphi * (hi - lo);
    double f1 = value_at(m1), f2 = value_at(m2);
    for (int it = 0; it < 90; ++it) {
      if (f1 <= f2) {
        hi = m2;
        m2 = m1;
        f2 = f1;
        m1 = hi - invphi * (hi - lo);
        f1 = value_at(m1);
      } else {
        lo = m1;
        m1 = m2;
        f1 = f2;
        m2 = lo + invphi * (hi - lo);
        f2 = value_at(m2);
      }
    }
    // candidates: golden minimum and the eta = 0 edge
    double eta = 0.5 * (lo + hi);
    double best = value_at(eta);
    if (value_at(0.0) <= best) {
      best = value_at(0.0);
      eta = 0.0;
    }
    eta_out = eta;
    const double v = persp_of(x, eta);
    delta_out = std::isfinite(v) ? std::max(p.delta, v) : p.delta;
    return best;
  };

  std::vector<double> best_x(n, 0.0);
  double best_eta = 0.0, best_delta = 0.0;
  double best_obj = slice(best_x, best_eta, best_delta);

  constexpr int kHalfGrid = 20; // 41 points per axis, spacing w/20
  std::vector<double> cx = p.x;
  double w = box_halfwidth;

  std::vector<int> idx(n, 0);
  std::vector<double> trial(n, 0.0);
  for (int round = 0; round < rounds; ++round) {
    const double step = w / kHalfGrid;
    std::fill(idx.begin(), idx.end(), -kHalfGrid);
    bool done = false;
    while (!done) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = cx[i] + idx[i] * step;
      double eta = 0.0, delta = 0.0;
      const double obj = slice(trial, eta, delta);
      if (obj < best_obj) {
        best_obj = obj;
        best_x = trial;
        best_eta = eta;
        best_delta = delta;
      }
      std::size_t k = 0;
      for (; k < n; ++k) {
        if (++idx[k] <= kHalfGrid) break;
        idx[k] = -kHalfGrid;
      }
      done = (k == n);
    }
    cx = best_x;
    w = 2.0 * step; // keep two old grid steps of slack while shrinking 10x
  }
  return ConePoint(std::move(best_x), best_eta, best_delta);
}

} // namespace perspcone
