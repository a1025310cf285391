#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "perspcone/functions.hpp"
#include "perspcone/testgen.hpp"
#include "oracles.hpp"

using namespace perspcone;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<std::shared_ptr<const ScalarConvexFunction>> builtins() {
  return {make_function("exp"), make_function("hyperbolic"), make_function("quadratic"),
          make_function("abs-exp")};
}

} // namespace

TEST_CASE("exp prox examples") {
  ExpFunction f;
  CHECK(f.prox(1.0, 0.0) ==
        doctest::Approx(-oracles::lambert_newton(1.0)).epsilon(1e-12));
  CHECK(f.prox(1.0, 0.0) == doctest::Approx(-0.5671432904).epsilon(1e-9));
  CHECK(f.prox(1.0, 1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  const double tiny = f.prox(1e-300, 0.0);
  CHECK(std::abs(tiny + 1e-300) <= 1e-312);
}

TEST_CASE("exp prox satisfies x - p = gamma * e^p, including overflow range") {
  ExpFunction f;
  SplitMix64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const double gamma = rng.log_uniform(1e-6, 1e6);
    const double x = rng.uniform(-700.0, 750.0); // gamma*e^x overflows at the top
    const double p = f.prox(gamma, x);
    const double lhs = x - p;
    const double rhs = gamma * std::exp(p);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({1.0, std::abs(lhs), rhs}));
  }
}

TEST_CASE("exp value at prox") {
  ExpFunction f;
  CHECK(f.value_at_prox(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.value_at_prox(1.0, 0.0) ==
        doctest::Approx(oracles::lambert_newton(1.0)).epsilon(1e-10));
  CHECK(f.value_at_prox(2.0, 0.0) ==
        doctest::Approx(oracles::lambert_newton(2.0) / 2.0).epsilon(1e-10));
  CHECK(f.value_at_prox(2.0, 0.0) == doctest::Approx(0.4263027510).epsilon(1e-9));
  // agrees with the composition where it is computable
  SplitMix64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const double g = rng.log_uniform(1e-3, 1e3);
    const double x = rng.uniform(-30.0, 30.0);
    CHECK(f.value_at_prox(g, x) ==
          doctest::Approx(f.value(f.prox(g, x))).epsilon(1e-10));
  }
  // no overflow for large arguments
  const double v = f.value_at_prox(1.0, 900.0);
  CHECK(std::isfinite(v));
}

TEST_CASE("hyperbolic prox solves its cubic") {
  HyperbolicFunction f;
  for (const double gamma : {1e-6, 1e-2, 1.0, 1e3}) {
    CHECK(f.prox(gamma, gamma) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  }
  // root of (-5 - p)(1 - p)^2 = 1 located by an independent bisection
  const double expected = oracles::bisect(
      [](double p) { return 1.0 - (-5.0 - p) * (1.0 - p) * (1.0 - p); }, -10.0, 1.0);
  CHECK(f.prox(1.0, -5.0) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(f.prox(1e-14, 0.5) == doctest::Approx(0.5).epsilon(1e-10));

  // spec-scale residual bound
  SplitMix64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const double gamma = rng.log_uniform(1e-6, 1e2);
    const double x = rng.uniform(-5.0, 5.0);
    const double p = f.prox(gamma, x);
    CHECK(p < 1.0);
    CHECK(std::abs((x - p) * (1.0 - p) * (1.0 - p) - gamma) <=
          1e-12 * std::max(1.0, gamma));
  }
  // wider ranges: allow for the rounding envelope of the evaluated cubic,
  // which is dominated by eps * |x| * (1-p)^2 from the x - p cancellation
  for (int i = 0; i < 500; ++i) {
    const double gamma = rng.log_uniform(1e-8, 1e6);
    const double x = rng.uniform(-40.0, 40.0);
    const double p = f.prox(gamma, x);
    CHECK(p < 1.0);
    const double u = 1.0 - p;
    const double envelope =
        8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) * u * u;
    CHECK(std::abs((x - p) * u * u - gamma) <= 1e-12 * std::max(1.0, gamma) + envelope);
  }
}

TEST_CASE("hyperbolic conjugate prox solves its cubic") {
  HyperbolicFunction f;
  CHECK(f.prox_conjugate(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (const double gamma : {1e-4, 0.5, 8.0, 1e4}) {
    CHECK(f.prox_conjugate(gamma, gamma) ==
          doctest::Approx(std::pow(gamma, 2.0 / 3.0)).epsilon(1e-12));
  }
  const double expected = oracles::bisect(
      [](double q) { return q * q * q - 6.0 * q * q + 9.0 * q - 1.0; }, 3.0, 10.0);
  CHECK(f.prox_conjugate(1.0, 4.0) == doctest::Approx(expected).epsilon(1e-10));

  // spec-scale residual bound
  SplitMix64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const double gamma = rng.log_uniform(1e-4, 1e2);
    const double x = rng.uniform(-5.0, 5.0);
    const double q = f.prox_conjugate(gamma, x);
    CHECK(q > std::max(x - gamma, 0.0));
    const double r = q + gamma - x;
    CHECK(std::abs(q * r * r - gamma * gamma) <= 1e-12 * std::max(1.0, gamma * gamma));
  }
  // wider ranges with the rounding envelope of the evaluated cubic
  for (int i = 0; i < 500; ++i) {
    const double gamma = rng.log_uniform(1e-8, 1e6);
    const double x = rng.uniform(-40.0, 40.0);
    const double q = f.prox_conjugate(gamma, x);
    CHECK(q > std::max(x - gamma, 0.0));
    const double r = q + gamma - x;
    const double envelope = 8.0 * std::numeric_limits<double>::epsilon() *
                            std::max({1.0, std::abs(x), gamma}) * (r * r + 2.0 * q * r);
    CHECK(std::abs(q * r * r - gamma * gamma) <=
          1e-12 * std::max(1.0, gamma * gamma) + envelope);
  }
}

TEST_CASE("Moreau decomposition holds for every builtin") {
  SplitMix64 rng(2024);
  for (const auto& fn : builtins()) {
    for (int i = 0; i < 200; ++i) {
      const double gamma = rng.log_uniform(1e-3, 1e3);
      const double x = rng.uniform(-50.0, 50.0);
      const double lhs = fn->prox(gamma, x) + gamma * fn->prox_conjugate(1.0 / gamma, x / gamma);
      CHECK(std::abs(lhs - x) <= 1e-9 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("prox characterization x - p = gamma f'(p) at interior points") {
  SplitMix64 rng(77);
  for (const auto& fn : builtins()) {
    for (int i = 0; i < 200; ++i) {
      const double gamma = rng.log_uniform(1e-2, 1e2);
      const double x = rng.uniform(-10.0, 10.0);
      const double p = fn->prox(gamma, x);
      if (p == 0.0 && fn->name() == "abs-exp") continue; // kink of |.|
      CHECK(std::abs(x - p - gamma * fn->derivative(p)) <= 1e-9 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("prox is nonexpansive") {
  SplitMix64 rng(99);
  for (const auto& fn : builtins()) {
    for (int i = 0; i < 200; ++i) {
      const double gamma = rng.log_uniform(1e-3, 1e3);
      const double x1 = rng.uniform(-40.0, 40.0);
      const double x2 = rng.uniform(-40.0, 40.0);
      const double d = std::abs(fn->prox(gamma, x1) - fn->prox(gamma, x2));
      CHECK(d <= std::abs(x1 - x2) + 1e-12 * std::max(1.0, std::abs(x1 - x2)));
    }
  }
}

TEST_CASE("conjugate values") {
  ExpFunction e;
  CHECK(e.conjugate(0.0) == 0.0);
  CHECK(e.conjugate(1.0) == doctest::Approx(-1.0));
  CHECK(e.conjugate(std::exp(1.0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(e.conjugate(-0.5) == kInf);

  HyperbolicFunction h;
  CHECK(h.conjugate(0.0) == 1.0);
  CHECK(h.conjugate(1.0) == 0.0);
  CHECK(h.conjugate(4.0) == 1.0);
  CHECK(h.conjugate(-1.0) == kInf);

  QuadraticFunction q;
  CHECK(q.conjugate(3.0) == q.value(3.0)); // self-conjugate

  AbsExpFunction a;
  CHECK(a.conjugate(0.0) == -1.0);     // = -phi(0) by evenness
  CHECK(a.conjugate(0.5) == -1.0);
  CHECK(a.conjugate(-2.0) == a.conjugate(2.0));
  CHECK(a.conjugate(std::exp(1.0)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("perspective definition and positive homogeneity") {
  SplitMix64 rng(123);
  for (const auto& fn : builtins()) {
    for (int i = 0; i < 200; ++i) {
      const double x = rng.uniform(-5.0, 5.0);
      const double eta = rng.log_uniform(1e-2, 10.0);
      const double v = fn->perspective(x, eta);
      if (!std::isfinite(v)) continue;
      CHECK(v == doctest::Approx(eta * fn->value(x / eta)).epsilon(1e-12));
      for (const double lam : {0.5, 2.0, 10.0}) {
        CHECK(fn->perspective(lam * x, lam * eta) ==
              doctest::Approx(lam * v).epsilon(1e-12));
      }
    }
    CHECK(fn->perspective(0.5, -1.0) == kInf);
    CHECK(fn->perspective(0.0, 0.0) == fn->recession(0.0));
  }
}

TEST_CASE("perspective at eta = 0 equals the recession function") {
  ExpFunction e;
  CHECK(e.perspective(-3.0, 0.0) == 0.0);
  CHECK(e.perspective(0.0, 0.0) == 0.0);
  CHECK(e.perspective(0.1, 0.0) == kInf);
  QuadraticFunction q;
  CHECK(q.perspective(0.0, 0.0) == 0.0);
  CHECK(q.perspective(1e-9, 0.0) == kInf);
  CHECK(q.perspective(2.0, 4.0) == doctest::Approx(0.5)); // x^2/(2 eta)
}

TEST_CASE("recession equals the support of cl dom f* where finite") {
  ExpFunction e;
  HyperbolicFunction h;
  // cl dom f* = [0, inf) for both, so sup_{u >= 0} x*u = 0 whenever x <= 0.
  for (double x = -20.0; x <= 0.0; x += 0.7) {
    double sup = -kInf;
    for (double u = 0.0; u <= 50.0; u += 0.1) sup = std::max(sup, x * u);
    CHECK(e.recession(x) == sup);
    CHECK(h.recession(x) == sup);
  }
  CHECK(e.recession(0.5) == kInf);
  QuadraticFunction q;
  CHECK(q.recession(0.0) == 0.0);
  CHECK(q.recession(1e-12) == kInf);
}

TEST_CASE("domain projections") {
  ExpFunction e;
  CHECK(e.project_dom_conjugate(-3.0) == 0.0);
  CHECK(e.project_dom_conjugate(2.5) == 2.5);
  // idempotent
  SplitMix64 rng(8);
  for (const auto& fn : builtins()) {
    for (int i = 0; i < 100; ++i) {
      const double u = rng.uniform(-20.0, 20.0);
      const double pu = fn->project_dom_conjugate(u);
      CHECK(fn->project_dom_conjugate(pu) == pu);
    }
  }

  HyperbolicFunction h;
  const auto p1 = h.project_dom_perspective(-3.0, -1.0);
  CHECK(p1.first == -3.0);
  CHECK(p1.second == 0.0);
  const auto p2 = h.project_dom_perspective(5.0, -1.0);
  CHECK(p2.first == 2.0);
  CHECK(p2.second == 2.0);
  const auto p3 = h.project_dom_perspective(-1.0, 2.0);
  CHECK(p3.first == -1.0);
  CHECK(p3.second == 2.0);
  const auto p4 = h.project_dom_perspective(0.5, -1.0);
  CHECK(p4.first == 0.0);
  CHECK(p4.second == 0.0);
}

TEST_CASE("domain projection lands on (the closure of) dom persp") {
  SplitMix64 rng(31);
  for (const auto& fn : builtins()) {
    for (int i = 0; i < 200; ++i) {
      const double x = rng.uniform(-8.0, 8.0);
      const double eta = rng.uniform(-4.0, 4.0);
      const auto [px, peta] = fn->project_dom_perspective(x, eta);
      // the projection is a fixed point
      const auto [qx, qeta] = fn->project_dom_perspective(px, peta);
      CHECK(qx == px);
      CHECK(qeta == peta);
      // nudging eta into the open half-line gives a finite value whenever the
      // result stays inside the double range
      const double etp = peta + 1e-9;
      if (px <= 0.0 && std::abs(px) / etp <= 700.0)
        CHECK(std::isfinite(fn->perspective(px, etp)));
    }
  }
}

TEST_CASE("log-domain perspective evaluation for large x/eta") {
  ExpFunction e;
  const double eta = 1.0 / 705.0;
  const double v = e.perspective(1.0, eta);
  CHECK(std::isfinite(v));
  CHECK(std::log(v) == doctest::Approx(std::log(eta) + 705.0).epsilon(1e-12));
  CHECK(e.perspective(1.0, 1e-3) == kInf); // genuinely above the double range
  CHECK(e.perspective_dom_leq(1.0, eta, v * 1.0000001));
  CHECK(!e.perspective_dom_leq(1.0, eta, v * 0.9999999));
}

TEST_CASE("gamma floor keeps prox total") {
  for (const auto& fn : builtins()) {
    const double p = fn->prox(0.0, 0.25); // clamped internally
    CHECK(std::isfinite(p));
    CHECK(std::abs(p - 0.25) <= 1e-9);
  }
}
