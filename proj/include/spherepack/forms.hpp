#pragma once

// Numerical evaluation of the exact q-series on the upper half-plane, and the
// restrictions of phi0 / psi_S to the positive imaginary axis.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spherepack/modular.hpp"
#include "spherepack/qseries.hpp"

namespace spherepack {

using Complex = std::complex<double>;

/// A point tau with Im tau > 0.
class HalfPlanePoint {
 public:
  HalfPlanePoint(double re, double im);
  static HalfPlanePoint from_complex(Complex z) { return {z.real(), z.imag()}; }

  double re() const noexcept { return re_; }
  double im() const noexcept { return im_; }
  Complex value() const noexcept { return {re_, im_}; }

 private:
  double re_;
  double im_;
};

enum class FormId { E2, E4, E6, Delta, Theta00, Theta01, Theta10, Phi0, PsiS };

std::string_view to_string(FormId id) noexcept;
/// Parses the names produced by to_string (case-sensitive). Throws InvalidArgument.
FormId form_from_string(std::string_view name);
std::span<const FormId> all_forms() noexcept;

struct EvalConfig {
  double eta_min = 0.5;
  double tol = 1e-12;
};

/// Double-precision Horner evaluator for a fixed QSeries.
///
/// The series is evaluated as nome^v * P(nome^d) where v is the valuation and d
/// the exponent stride, so sparse series (thetas, psi_S) cost only their support.
class SeriesEvaluator {
 public:
  explicit SeriesEvaluator(const QSeries& s);

  Complex evaluate(HalfPlanePoint tau, const EvalConfig& cfg = {}) const;
  /// Geometric tail estimate max_k |c_k| |w|^k / (1 - |w|) over the last quarter of the terms.
  double tail_estimate(HalfPlanePoint tau) const;

 private:
  Complex nome_power(Complex tau, double exponent) const;

  Nome nome_;
  int valuation_;
  int stride_;
  std::vector<double> coeffs_;  // coefficient of nome^(valuation + stride*j)
};

/// Horner evaluation of `s` at tau with the Im tau >= eta_min guard and a tail check.
Complex eval_series(const QSeries& s, HalfPlanePoint tau, const EvalConfig& cfg = {});

/// (c0 + c1 t) e^{pi * rate * t}: a growing term of an axis kernel for t -> infinity.
struct PrincipalTerm {
  double rate;
  double c0;
  double c1;
};

struct FormsConfig {
  int series_order = 50;  // Q2 order; Q4 series carry 8x this
  double eta_min = 0.5;
  double tol = 1e-12;
};

/// All series of the toolkit at a fixed working order, with cached evaluators.
/// Immutable after construction; safe to share between threads.
class FormLibrary {
 public:
  explicit FormLibrary(FormsConfig cfg = {});

  const FormsConfig& config() const noexcept { return cfg_; }
  EvalConfig eval_config() const noexcept { return {cfg_.eta_min, cfg_.tol}; }

  const QSeries& series(FormId id) const;
  const QSeries& psiI_series() const noexcept { return psiI_; }
  const QSeries& x_series() const noexcept { return x_; }
  const QSeries& y_series() const noexcept { return y_; }

  /// Direct series evaluation (Im tau >= eta_min).
  Complex eval(FormId id, HalfPlanePoint tau) const;
  Complex eval_phi0(HalfPlanePoint tau) const { return eval(FormId::Phi0, tau); }
  /// psi_S from its own Q4 series.
  Complex eval_psiS(HalfPlanePoint tau) const { return eval(FormId::PsiS, tau); }
  /// psi_S assembled from theta evaluations.
  Complex eval_psiS_from_thetas(HalfPlanePoint tau) const;
  /// psi_I = 128((t00^4 + t01^4)/t10^8 + (t01^4 - t10^4)/t00^8) from theta evaluations.
  Complex eval_psiI_from_thetas(HalfPlanePoint tau) const;

  /// F(it) for any t > 0, switching to the tau -> -1/tau transformation law below t = 1.
  Complex eval_axis(FormId id, double t) const;
  /// phi0(it), real. Throws NonRealValue if |Im| > 1e-9 |value|.
  double eval_phi0_axis(double t) const;
  double eval_psiS_axis(double t) const;

  /// t^2 phi0(i/t), the weight-(-2) S-image of phi0 on the axis (up to sign: z^2 phi0(-1/z) at z = it).
  double phi0_s_weighted(double t) const;
  /// psi_I(it) = z^2 psi_S(-1/z) at z = it = -t^2 psi_S(i/t).
  double psiI_axis(double t) const;

  /// w_phi * t^2 phi0(i/t) + w_psi * psi_I(it), evaluated without cancellation of the
  /// growing e^{2 pi t} parts for t > 1.
  double s_combination(double t, double w_phi, double w_psi) const;

  /// Growing part of t^2 phi0(i/t) as t -> infinity and the decaying remainder (t >= 1).
  std::span<const PrincipalTerm> phi0_s_principal() const noexcept { return phi0_principal_; }
  double phi0_s_remainder(double t) const;
  std::span<const PrincipalTerm> psiI_principal() const noexcept { return psiI_principal_; }
  double psiI_remainder(double t) const;

 private:
  FormsConfig cfg_;
  std::vector<QSeries> series_;  // indexed by FormId
  QSeries psiI_;
  QSeries x_;
  QSeries y_;
  std::vector<SeriesEvaluator> evaluators_;  // indexed by FormId
  SeriesEvaluator x_eval_;
  SeriesEvaluator y_eval_;
  SeriesEvaluator x_tail_;
  SeriesEvaluator y_tail_;
  SeriesEvaluator psiI_tail_;
  std::vector<PrincipalTerm> phi0_principal_;
  std::vector<PrincipalTerm> psiI_principal_;
};

struct JacobiSample {
  Complex tau;
  double residual;
};

struct JacobiReport {
  QSeries residual_series;
  std::vector<JacobiSample> samples;
  bool series_zero() const { return residual_series.is_zero(); }
  double max_residual() const;
};

/// theta00^4 - theta10^4 - theta01^4 exactly through q4^order and numerically at each tau.
JacobiReport check_jacobi(int order, std::span<const Complex> taus, const FormLibrary& forms);

}  // namespace spherepack
