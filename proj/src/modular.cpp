#include "spherepack/modular.hpp"

#include "spherepack/error.hpp"

namespace spherepack {

mpz_class divisor_sum(long n, int k) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "divisor_sum requires n >= 1");
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "divisor_sum requires k >= 1");
  mpz_class total = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    total += p;
    const long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      total += p;
    }
  }
  return total;
}

QSeries eisenstein_qseries(int weight, int order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be >= 0");
  int scale = 0;
  int k = 0;
  switch (weight) {
    case 2: scale = -24; k = 1; break;
    case 4: scale = 240; k = 3; break;
    case 6: scale = -504; k = 5; break;
    default: throw Error(ErrorKind::InvalidArgument, "Eisenstein weight must be 2, 4 or 6");
  }
  std::vector<QSeries::Coeff> c(static_cast<std::size_t>(order + 1));
  c[0] = 1;
  for (int n = 1; n <= order; ++n) c[n] = mpq_class(divisor_sum(n, k) * scale);
  return QSeries(Nome::Q2, 0, order, std::move(c));
}

QSeries theta_qseries(ThetaKind kind, int order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be >= 0");
  std::vector<QSeries::Coeff> c(static_cast<std::size_t>(order + 1));
  if (kind == ThetaKind::T10) {
    // n and -1-n give the same odd square.
    for (long m = 1; m * m <= order; m += 2) c[m * m] += 2;
  } else {
    c[0] = 1;
    for (long n = 1; 4 * n * n <= order; ++n) {
      const int sign = (kind == ThetaKind::T01 && (n % 2 == 1)) ? -1 : 1;
      c[4 * n * n] += 2 * sign;
    }
  }
  return QSeries(Nome::Q4, 0, order, std::move(c));
}

QSeries delta_qseries(int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "delta_qseries requires order >= 1");
  const QSeries e4 = eisenstein_qseries(4, order);
  const QSeries e6 = eisenstein_qseries(6, order);
  return series_scale(series_pow(e4, 3) - e6 * e6, mpq_class(1, 1728));
}

QSeries delta_eta_product_qseries(int order) {
  if (order < 1) throw Error(ErrorKind::InvalidArgument, "order must be >= 1");
  // prod (1 - q^n)^24 through q^(order-1), shifted by one.
  const int m = order - 1;
  std::vector<mpz_class> p(static_cast<std::size_t>(m + 1));
  p[0] = 1;
  for (int n = 1; n <= m; ++n) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int e = m; e >= n; --e) p[e] -= p[e - n];
    }
  }
  std::vector<QSeries::Coeff> c(static_cast<std::size_t>(m + 1));
  for (int e = 0; e <= m; ++e) c[e] = mpq_class(p[e]);
  return QSeries(Nome::Q2, 1, order, std::move(c));
}

namespace {

QSeries e2e4_minus_e6(int order) {
  return eisenstein_qseries(2, order) * eisenstein_qseries(4, order) - eisenstein_qseries(6, order);
}

struct ThetaPowers {
  QSeries t00_4, t01_4, t10_4;
};

ThetaPowers theta_fourth_powers(int order) {
  return {series_pow(theta_qseries(ThetaKind::T00, order), 4),
          series_pow(theta_qseries(ThetaKind::T01, order), 4),
          series_pow(theta_qseries(ThetaKind::T10, order), 4)};
}

}  // namespace

QSeries phi0_qseries(int order) {
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "phi0_qseries requires order >= 2");
  const QSeries num = e2e4_minus_e6(order);
  return (num * num / delta_qseries(order)).truncated(order);
}

QSeries psiS_qseries(int order) {
  if (order < 8) throw Error(ErrorKind::InvalidArgument, "psiS_qseries requires order >= 8");
  const auto [a, b, c] = theta_fourth_powers(order);
  const QSeries first = (b - c) / (a * a);
  const QSeries second = (c + a) / (b * b);
  return series_scale(first - second, 128);
}

QSeries psiI_qseries(int order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "order must be >= 0");
  // theta10^8 has valuation 8, so the first quotient loses 16 orders.
  const int work = order + 16;
  const auto [a, b, c] = theta_fourth_powers(work);
  const QSeries first = (a + b) / (c * c);
  const QSeries second = (b - c) / (a * a);
  return series_scale(first + second, 128).truncated(order);
}

QSeries phi0_x_qseries(int order) {
  const int work = order + 1;
  return (e2e4_minus_e6(work) * eisenstein_qseries(4, work) / delta_qseries(work)).truncated(order);
}

QSeries phi0_y_qseries(int order) {
  const int work = order + 2;
  const QSeries e4 = eisenstein_qseries(4, work);
  return (e4 * e4 / delta_qseries(work)).truncated(order);
}

QSeries normalized_derivative(const QSeries& s) {
  std::vector<QSeries::Coeff> c(s.coeffs().begin(), s.coeffs().end());
  const mpq_class unit = s.nome() == Nome::Q2 ? mpq_class(1) : mpq_class(1, 8);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= unit * (s.lowest() + static_cast<int>(k));
  return QSeries(s.nome(), s.lowest(), s.order(), std::move(c));
}

QSeries serre_derivative(const QSeries& s, int weight) {
  if (s.nome() != Nome::Q2) {
    throw Error(ErrorKind::NomeMismatch, "serre_derivative expects a Q2 series");
  }
  const QSeries e2 = eisenstein_qseries(2, std::max(s.order(), 0));
  mpq_class w(weight, 12);
  w.canonicalize();
  return normalized_derivative(s) - series_scale(e2 * s, w);
}

RamanujanResiduals check_ramanujan(int order) {
  if (order < 2) throw Error(ErrorKind::InvalidArgument, "check_ramanujan requires order >= 2");
  const QSeries e2 = eisenstein_qseries(2, order);
  const QSeries e4 = eisenstein_qseries(4, order);
  const QSeries e6 = eisenstein_qseries(6, order);
  return {
      normalized_derivative(e2) - series_scale(e2 * e2 - e4, mpq_class(1, 12)),
      normalized_derivative(e4) - series_scale(e2 * e4 - e6, mpq_class(1, 3)),
      normalized_derivative(e6) - series_scale(e2 * e6 - e4 * e4, mpq_class(1, 2)),
  };
}

QSeries jacobi_residual_qseries(int order) {
  if (order < 8) throw Error(ErrorKind::InvalidArgument, "check_jacobi requires order >= 8");
  const auto [a, b, c] = theta_fourth_powers(order);
  return a - c - b;
}

}  // namespace spherepack
