#pragma once

// Cohn-Elkies conditions for a radial candidate, the resulting density bound,
// and a Poisson-summation check on E8.

#include <functional>
#include <span>
#include <vector>

#include "spherepack/lattice.hpp"

namespace spherepack {

/// f0 / fhat0 * Vol(B_d(1/2)). Throws NonpositiveFhat0.
double ce_bound(double f0, double fhat0, int d);

/// Bound for f(x) = g(scale x): (g0 scale^d / ghat0) Vol(B_d(1/2)).
double rescaled_bound(double g0, double ghat0, double scale = 1.4142135623730951, int d = 8);

/// pi^4 / 384
double e8_density_target();

/// Step 0.05 on [0, 6] merged with step 0.005 on [sqrt(2), 1.6].
std::vector<double> default_ce_grid();

struct CEOptions {
  double rel_tol = 1e-7;    // CE2 / CE3 tolerance, relative to |g(0)|
  double bound_tol = 1e-6;  // |bound - target|
  unsigned threads = 0;
};

struct CEReport {
  std::vector<double> grid;
  double g0 = 0.0;
  double ghat0 = 0.0;
  bool ce1_pass = false;
  double ce2_max_violation = 0.0;  // max g over r > sqrt(2)(1 + 1e-6)
  double ce2_argmax = 0.0;
  double ce3_min_value = 0.0;  // min g_hat over the grid
  double ce3_argmin = 0.0;
  double tol = 0.0;
  double bound = 0.0;
  double target = 0.0;
  bool pass = false;
};

using RadialFunction = std::function<double(double)>;

/// Evaluates g and g_hat on the grid (in parallel) and checks CE1-CE3 for
/// f(x) = g(sqrt(2) x). Throws InsufficientGrid if the grid does not start at 0,
/// reach 6, and contain a point above sqrt(2).
CEReport verify_ce(const RadialFunction& g, const RadialFunction& g_hat, std::span<const double> grid,
                   const CEOptions& opts = {});

struct PoissonResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_tail = 0.0;  // bound on the omitted shells
  double rhs_tail = 0.0;
  double residual = 0.0;  // |lhs - rhs| / lhs
};

/// lhs = sum_v e^{-pi sigma |v|^2}, rhs = sigma^{-4} sum_v e^{-pi |v|^2 / sigma}.
PoissonResult poisson_check(double sigma, long max_shell_norm2 = 40);
PoissonResult poisson_check(double sigma, std::span<const Shell> shells, long max_shell_norm2);

}  // namespace spherepack
