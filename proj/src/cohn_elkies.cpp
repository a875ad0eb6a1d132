#include "spherepack/cohn_elkies.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "spherepack/error.hpp"
#include "spherepack/packing.hpp"

namespace spherepack {

double ce_bound(double f0, double fhat0, int d) {
  if (!(fhat0 > 0.0)) throw Error(ErrorKind::NonpositiveFhat0, "fhat(0) = " + std::to_string(fhat0));
  return f0 / fhat0 * ball_volume(d, 0.5);
}

double rescaled_bound(double g0, double ghat0, double scale, int d) {
  if (!(scale > 0.0)) throw Error(ErrorKind::InvalidArgument, "scale must be positive");
  if (!(ghat0 > 0.0)) throw Error(ErrorKind::NonpositiveFhat0, "ghat(0) = " + std::to_string(ghat0));
  return g0 * std::pow(scale, d) / ghat0 * ball_volume(d, 0.5);
}

double e8_density_target() {
  const double p2 = std::numbers::pi * std::numbers::pi;
  return p2 * p2 / 384.0;
}

std::vector<double> default_ce_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 120; ++i) g.push_back(0.05 * i);
  const double s = std::sqrt(2.0);
  for (int i = 0; s + 0.005 * i <= 1.6 + 1e-12; ++i) g.push_back(s + 0.005 * i);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }), g.end());
  return g;
}

CEReport verify_ce(const RadialFunction& g, const RadialFunction& g_hat, std::span<const double> grid,
                   const CEOptions& opts) {
  const double cutoff = std::sqrt(2.0) * (1.0 + 1e-6);
  if (grid.empty() || grid.front() != 0.0 || grid.back() < 6.0 ||
      std::none_of(grid.begin(), grid.end(), [&](double r) { return r > cutoff; })) {
    throw Error(ErrorKind::InsufficientGrid, "grid must start at 0, reach r >= 6 and contain points above sqrt(2)");
  }
  const std::size_t n = grid.size();
  std::vector<double> gv(n);
  std::vector<double> hv(n);
  const unsigned nt = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(opts.threads ? opts.threads : default_thread_count(), n)));
  std::vector<std::exception_ptr> errors(nt);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < n; i += nt) {
        gv[i] = g(grid[i]);
        hv[i] = g_hat(grid[i]);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  CEReport rep;
  rep.grid.assign(grid.begin(), grid.end());
  rep.g0 = gv[0];
  rep.ghat0 = hv[0];
  rep.tol = opts.rel_tol * std::abs(rep.g0);
  rep.ce1_pass = rep.g0 > 0.0 && rep.ghat0 > 0.0;
  rep.ce2_max_violation = -INFINITY;
  rep.ce3_min_value = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    if (grid[i] > cutoff && gv[i] > rep.ce2_max_violation) {
      rep.ce2_max_violation = gv[i];
      rep.ce2_argmax = grid[i];
    }
    if (hv[i] < rep.ce3_min_value) {
      rep.ce3_min_value = hv[i];
      rep.ce3_argmin = grid[i];
    }
  }
  rep.target = e8_density_target();
  rep.bound = rep.ghat0 > 0.0 ? rescaled_bound(rep.g0, rep.ghat0) : NAN;
  rep.pass = rep.ce1_pass && rep.ce2_max_violation <= rep.tol && rep.ce3_min_value >= -rep.tol &&
             std::abs(rep.bound - rep.target) <= opts.bound_tol;
  return rep;
}

namespace {

// Bound on sum_{m > m0} r(2m) e^{-pi a 2m} using r(2m) = 240 sigma_3(m) <= 240 zeta(3) m^3.
double theta_tail(double a, long m0) {
  double s = 0.0;
  for (long m = m0 + 1; m <= m0 + 2000; ++m) {
    const double term = 240.0 * 1.2020569031595942 * std::pow(static_cast<double>(m), 3) *
                        std::exp(-2.0 * std::numbers::pi * a * m);
    s += term;
    if (term < 1e-30 * s) break;
  }
  return s;
}

}  // namespace

PoissonResult poisson_check(double sigma, long max_shell_norm2) {
  const auto shells = enumerate_shells(max_shell_norm2, false);
  return poisson_check(sigma, shells, max_shell_norm2);
}

PoissonResult poisson_check(double sigma, std::span<const Shell> shells, long max_shell_norm2) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  const double pi = std::numbers::pi;
  PoissonResult p;
  double lhs = 0.0;
  double rhs = 0.0;
  // smallest terms first
  for (auto it = shells.rbegin(); it != shells.rend(); ++it) {
    if (it->norm2 > max_shell_norm2) continue;
    const double c = static_cast<double>(it->count);
    const double n = static_cast<double>(it->norm2);
    lhs += c * std::exp(-pi * sigma * n);
    rhs += c * std::exp(-pi * n / sigma);
  }
  lhs += 1.0;
  rhs = (rhs + 1.0) / std::pow(sigma, 4);
  p.lhs_tail = theta_tail(sigma, max_shell_norm2 / 2);
  p.rhs_tail = theta_tail(1.0 / sigma, max_shell_norm2 / 2) / std::pow(sigma, 4);
  if (p.lhs_tail > 1e-12 * lhs || p.rhs_tail > 1e-12 * rhs) {
    throw Error(ErrorKind::TailBoundViolated, "shells up to norm^2 " + std::to_string(max_shell_norm2) +
                                                  " leave a tail above 1e-12 for sigma = " + std::to_string(sigma));
  }
  p.lhs = lhs;
  p.rhs = rhs;
  p.residual = std::abs(lhs - rhs) / lhs;
  return p;
}

}  // namespace spherepack
