#include "perspcone/lambert.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace perspcone {

namespace {

constexpr double kInvE = 0.36787944117144233; // 1/e
constexpr double kBranchSlack = 1e-12;

// Expansion of W around the branch point z = -1/e in powers of
// p = sqrt(2*(1 + e*z)). Accurate to O(p^6).
double branch_point_series(double p) {
  const double c3 = 11.0 / 72.0;
  const double c4 = -43.0 / 540.0;
  const double c5 = 769.0 / 17280.0;
  return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (c3 + p * (c4 + p * c5))));
}

// Newton on g(w) = w + log(w) - s, which is increasing and concave on
// ]0, +inf[. Starting below the root, the iterates increase monotonically.
double solve_w_plus_log_w(double s) {
  double w = s - std::log(s);
  if (w <= 0.0) w = std::numeric_limits<double>::min();
  for (int i = 0; i < 50; ++i) {
    const double g = w + std::log(w) - s;
    const double step = g * w / (w + 1.0);
    w -= step;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * w) break;
  }
  return w;
}

double halley(double z, double w) {
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    if (std::abs(f) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    const double fp = ew * (w + 1.0);
    const double fpp = ew * (w + 2.0);
    const double step = f / (fp - 0.5 * f * fpp / fp);
    w -= step;
    if (w < -1.0) w = -1.0;
    if (std::abs(step) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

} // namespace

double lambert_w(double z) {
  if (std::isnan(z)) throw std::domain_error("lambert_w: NaN argument");
  if (z < -kInvE - kBranchSlack)
    throw std::domain_error("lambert_w: argument below -1/e");
  if (z < -kInvE) z = -kInvE;
  if (z == 0.0) return 0.0;

  // 1 + e*z measures the distance to the branch point.
  const double q = 1.0 + z / kInvE;
  if (q <= 0.0) return -1.0;
  if (q <= 1e-8) return branch_point_series(std::sqrt(2.0 * q));

  // Large arguments: w + log(w) = log(z) is perfectly conditioned and
  // avoids exp() overflow during the iteration.
  if (z >= 8.0) return solve_w_plus_log_w(std::log(z));

  double w0;
  if (z < -0.25) {
    w0 = branch_point_series(std::sqrt(2.0 * q));
  } else if (z < 1.0) {
    w0 = z * (1.0 - z * (1.0 - 1.5 * z));
  } else {
    w0 = 0.5 * std::log1p(z); // crude, Halley does the rest
  }
  return halley(z, w0);
}

double lambert_w_of_exp(double s) {
  if (std::isnan(s)) throw std::domain_error("lambert_w_of_exp: NaN argument");
  if (std::isinf(s)) return s > 0.0 ? s : 0.0;
  if (s >= 2.0) return solve_w_plus_log_w(s);
  return lambert_w(std::exp(s));
}

double lambert_w_scaled_exp(double scale, double x) {
  if (x > -700.0 && x < 700.0) {
    const double z = scale * std::exp(x);
    if (std::isfinite(z)) return lambert_w(z);
  }
  return lambert_w_of_exp(std::log(scale) + x);
}

} // namespace perspcone
