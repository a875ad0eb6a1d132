#pragma once

// Exact q-expansions of the (quasi)modular forms used by the magic function,
// the derivative operators D and the Serre derivative, and the classical
// identities between them.

#include <gmpxx.h>

#include "spherepack/qseries.hpp"

namespace spherepack {

enum class ThetaKind { T00, T01, T10 };

/// sigma_k(n) = sum of d^k over the divisors d of n.
mpz_class divisor_sum(long n, int k);

/// E2 = 1 - 24 sum sigma_1(n) q^n, E4 = 1 + 240 sum sigma_3(n) q^n,
/// E6 = 1 - 504 sum sigma_5(n) q^n, in nome Q2 through q^order.
QSeries eisenstein_qseries(int weight, int order);

/// Jacobi theta constants in nome Q4 = e^{pi i tau/4}:
/// theta00 = sum q4^{4n^2}, theta01 = sum (-1)^n q4^{4n^2}, theta10 = sum q4^{(2n+1)^2}.
QSeries theta_qseries(ThetaKind kind, int order);

/// (E4^3 - E6^2)/1728.
QSeries delta_qseries(int order);
/// q prod (1 - q^n)^24, an independent route to the discriminant.
QSeries delta_eta_product_qseries(int order);

/// phi0 = (E2 E4 - E6)^2 / Delta, exact through q^order.
QSeries phi0_qseries(int order);

/// psi_S = 128((theta01^4 - theta10^4)/theta00^8 - (theta10^4 + theta00^4)/theta01^8)
/// in nome Q4 through q4^order.
QSeries psiS_qseries(int order);

/// psi_I(z) = z^2 psi_S(-1/z) = 128((theta00^4 + theta01^4)/theta10^8 + (theta01^4 - theta10^4)/theta00^8).
/// Laurent series in Q4 starting at q4^-8; exact through q4^order.
QSeries psiI_qseries(int order);

/// Companions of phi0 under tau -> -1/tau:
///   z^2 phi0(-1/z) = z^2 phi0(z) - (12 i z / pi) X(z) - (36/pi^2) Y(z)
/// with X = (E2 E4 - E6) E4 / Delta and Y = E4^2 / Delta (Laurent, starts at q^-1).
QSeries phi0_x_qseries(int order);
QSeries phi0_y_qseries(int order);

/// D = (1/2 pi i) d/dtau: c_k -> k c_k in Q2, c_k -> (k/8) c_k in Q4.
QSeries normalized_derivative(const QSeries& s);

/// Serre derivative D s - (k/12) E2 s. `s` must be in nome Q2.
QSeries serre_derivative(const QSeries& s, int weight);

struct RamanujanResiduals {
  QSeries e2;  // D E2 - (E2^2 - E4)/12
  QSeries e4;  // D E4 - (E2 E4 - E6)/3
  QSeries e6;  // D E6 - (E2 E6 - E4^2)/2
  bool all_zero() const { return e2.is_zero() && e4.is_zero() && e6.is_zero(); }
};

RamanujanResiduals check_ramanujan(int order);

/// theta00^4 - theta10^4 - theta01^4 through q4^order.
QSeries jacobi_residual_qseries(int order);

}  // namespace spherepack
