#ifndef PERSPCONE_PERSP_PROX_HPP
#define PERSPCONE_PERSP_PROX_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "perspcone/functions.hpp"
#include "perspcone/rootfind.hpp"

namespace perspcone {

struct InnerSolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ProxBranch { recession_branch, interior_branch };

// prox of mu * persp(f) at (x, eta), together with the function value at the
// prox point. On the interior branch nu equals the prox point's eta component
// and solves nu = eta + mu * f*(prox_{(nu/mu) f*}(x/mu)).
struct PerspProxResult {
  double x = 0.0;
  double eta = 0.0;
  double value = 0.0;
  std::optional<double> nu;
  ProxBranch branch = ProxBranch::recession_branch;
  int inner_iterations = 0;
};

PerspProxResult persp_prox(const ScalarConvexFunction& fn, double mu, double x,
                           double eta, const SolverConfig& cfg,
                           double nu_hint = 0.0);

// Radial variant for even full-domain functions: the prox of mu * persp(phi o ||.||)
// reduces to the scalar problem at ||x|| and a rescaling of x.
struct RadialPerspProxResult {
  std::vector<double> x;
  double eta = 0.0;
  double value = 0.0;
  std::optional<double> nu;
  ProxBranch branch = ProxBranch::recession_branch;
  int inner_iterations = 0;
};

RadialPerspProxResult persp_prox_radial(const ScalarConvexFunction& phi, double mu,
                                        std::span<const double> x, double eta,
                                        const SolverConfig& cfg);

} // namespace perspcone

#endif
