#include "spherepack/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "spherepack/error.hpp"

namespace spherepack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

constexpr std::array<FormId, 9> kAllForms = {FormId::E2,      FormId::E4,      FormId::E6,
                                             FormId::Delta,   FormId::Theta00, FormId::Theta01,
                                             FormId::Theta10, FormId::Phi0,    FormId::PsiS};

std::size_t index_of(FormId id) { return static_cast<std::size_t>(id); }

double checked_real(Complex v, double rel, const char* what) {
  if (std::abs(v.imag()) > rel * std::abs(v) && std::abs(v.imag()) > 1e-300) {
    throw Error(ErrorKind::NonRealValue,
                std::string(what) + " has imaginary part " + std::to_string(v.imag()) +
                    " against value " + std::to_string(v.real()));
  }
  return v.real();
}

// Adds the principal (exponent <= 0) part of `s`, evaluated at tau = it, as
// growing terms: nome^e = e^{pi * rate * t}.
void collect_principal(const QSeries& s, double c0_weight, double c1_weight,
                       std::map<double, PrincipalTerm>& out) {
  const double per_exponent = s.nome() == Nome::Q2 ? -2.0 : -0.25;
  for (int e = s.lowest(); e <= std::min(0, s.order()); ++e) {
    const double c = s.coeff(e).get_d();
    if (c == 0.0) continue;
    const double rate = per_exponent * e;
    auto [it, inserted] = out.try_emplace(rate, PrincipalTerm{rate, 0.0, 0.0});
    it->second.c0 += c0_weight * c;
    it->second.c1 += c1_weight * c;
  }
}

std::vector<PrincipalTerm> to_vector(const std::map<double, PrincipalTerm>& m) {
  std::vector<PrincipalTerm> v;
  for (const auto& [rate, term] : m) v.push_back(term);
  return v;
}

double principal_value(std::span<const PrincipalTerm> terms, double t) {
  double s = 0.0;
  for (const auto& p : terms) s += (p.c0 + p.c1 * t) * std::exp(kPi * p.rate * t);
  return s;
}

}  // namespace

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!(im > 0.0) || !std::isfinite(im) || !std::isfinite(re)) {
    throw Error(ErrorKind::InvalidArgument, "HalfPlanePoint requires finite re and im > 0");
  }
}

std::string_view to_string(FormId id) noexcept {
  switch (id) {
    case FormId::E2: return "E2";
    case FormId::E4: return "E4";
    case FormId::E6: return "E6";
    case FormId::Delta: return "Delta";
    case FormId::Theta00: return "Theta00";
    case FormId::Theta01: return "Theta01";
    case FormId::Theta10: return "Theta10";
    case FormId::Phi0: return "Phi0";
    case FormId::PsiS: return "PsiS";
  }
  return "?";
}

FormId form_from_string(std::string_view name) {
  for (FormId id : kAllForms) {
    if (to_string(id) == name) return id;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown form '" + std::string(name) + "'");
}

std::span<const FormId> all_forms() noexcept { return kAllForms; }

// ---------------------------------------------------------------------------

SeriesEvaluator::SeriesEvaluator(const QSeries& s)
    : nome_(s.nome()), valuation_(s.valuation()), stride_(std::max(s.exponent_stride(), 1)) {
  for (int e = valuation_; e <= s.order(); e += stride_) coeffs_.push_back(s.coeff(e).get_d());
}

Complex SeriesEvaluator::nome_power(Complex tau, double exponent) const {
  const double scale = nome_ == Nome::Q2 ? 2.0 * kPi : kPi / 4.0;
  return std::exp(kI * tau * (scale * exponent));
}

double SeriesEvaluator::tail_estimate(HalfPlanePoint tau) const {
  if (coeffs_.empty()) return 0.0;
  const double log_w = std::log(std::abs(nome_power(tau.value(), stride_)));
  const double log_lead = std::log(std::abs(nome_power(tau.value(), valuation_)));
  const std::size_t n = coeffs_.size();
  const std::size_t window = std::max<std::size_t>(1, n / 4);
  double best = -INFINITY;
  for (std::size_t j = n - window; j < n; ++j) {
    if (coeffs_[j] == 0.0) continue;
    best = std::max(best, std::log(std::abs(coeffs_[j])) + static_cast<double>(j) * log_w);
  }
  if (best == -INFINITY) return 0.0;
  return std::exp(best + log_lead) / (1.0 - std::exp(log_w));
}

Complex SeriesEvaluator::evaluate(HalfPlanePoint tau, const EvalConfig& cfg) const {
  if (tau.im() < cfg.eta_min) {
    throw Error(ErrorKind::DomainTooLow, "Im tau = " + std::to_string(tau.im()) +
                                             " is below eta_min = " + std::to_string(cfg.eta_min));
  }
  if (coeffs_.empty()) return 0.0;
  const Complex w = nome_power(tau.value(), stride_);
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + *it;
  const Complex value = acc * nome_power(tau.value(), valuation_);
  const double tail = tail_estimate(tau);
  if (tail > cfg.tol * std::max(1.0, std::abs(value))) {
    throw Error(ErrorKind::TruncationInsufficient,
                "tail estimate " + std::to_string(tail) + " exceeds tolerance at Im tau = " +
                    std::to_string(tau.im()));
  }
  return value;
}

Complex eval_series(const QSeries& s, HalfPlanePoint tau, const EvalConfig& cfg) {
  return SeriesEvaluator(s).evaluate(tau, cfg);
}

// ---------------------------------------------------------------------------

FormLibrary::FormLibrary(FormsConfig cfg)
    : cfg_(cfg),
      psiI_(psiI_qseries(8 * cfg.series_order)),
      x_(phi0_x_qseries(cfg.series_order)),
      y_(phi0_y_qseries(cfg.series_order)),
      x_eval_(x_),
      y_eval_(y_),
      x_tail_(x_.tail_from(1)),
      y_tail_(y_.tail_from(1)),
      psiI_tail_(psiI_.tail_from(1)) {
  if (cfg.series_order < 2) throw Error(ErrorKind::InvalidArgument, "series_order must be >= 2");
  if (!(cfg.eta_min > 0.0)) throw Error(ErrorKind::InvalidArgument, "eta_min must be positive");
  const int n = cfg.series_order;
  const int n4 = 8 * n;
  series_ = {eisenstein_qseries(2, n),
             eisenstein_qseries(4, n),
             eisenstein_qseries(6, n),
             delta_qseries(n),
             theta_qseries(ThetaKind::T00, n4),
             theta_qseries(ThetaKind::T01, n4),
             theta_qseries(ThetaKind::T10, n4),
             phi0_qseries(n),
             psiS_qseries(n4)};
  for (const auto& s : series_) evaluators_.emplace_back(s);

  // t^2 phi0(i/t) = t^2 phi0(it) - (12 t/pi) X(it) + (36/pi^2) Y(it)
  std::map<double, PrincipalTerm> phi;
  collect_principal(y_, 36.0 / (kPi * kPi), 0.0, phi);
  collect_principal(x_, 0.0, -12.0 / kPi, phi);
  phi0_principal_ = to_vector(phi);
  std::map<double, PrincipalTerm> psi;
  collect_principal(psiI_, 1.0, 0.0, psi);
  psiI_principal_ = to_vector(psi);
}

const QSeries& FormLibrary::series(FormId id) const { return series_[index_of(id)]; }

Complex FormLibrary::eval(FormId id, HalfPlanePoint tau) const {
  return evaluators_[index_of(id)].evaluate(tau, eval_config());
}

Complex FormLibrary::eval_psiS_from_thetas(HalfPlanePoint tau) const {
  const Complex a = std::pow(eval(FormId::Theta00, tau), 4);
  const Complex b = std::pow(eval(FormId::Theta01, tau), 4);
  const Complex c = std::pow(eval(FormId::Theta10, tau), 4);
  return 128.0 * ((b - c) / (a * a) - (c + a) / (b * b));
}

Complex FormLibrary::eval_psiI_from_thetas(HalfPlanePoint tau) const {
  const Complex a = std::pow(eval(FormId::Theta00, tau), 4);
  const Complex b = std::pow(eval(FormId::Theta01, tau), 4);
  const Complex c = std::pow(eval(FormId::Theta10, tau), 4);
  return 128.0 * ((a + b) / (c * c) + (b - c) / (a * a));
}

Complex FormLibrary::eval_axis(FormId id, double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "axis evaluation requires t > 0");
  if (t >= 1.0) return eval(id, HalfPlanePoint(0.0, t));
  const HalfPlanePoint inv(0.0, 1.0 / t);
  switch (id) {
    case FormId::E2: return -eval(FormId::E2, inv) / (t * t) + 6.0 / (kPi * t);
    case FormId::E4: return eval(FormId::E4, inv) / std::pow(t, 4);
    case FormId::E6: return -eval(FormId::E6, inv) / std::pow(t, 6);
    case FormId::Delta: return eval(FormId::Delta, inv) / std::pow(t, 12);
    case FormId::Theta00: return eval(FormId::Theta00, inv) / std::sqrt(t);
    case FormId::Theta01: return eval(FormId::Theta10, inv) / std::sqrt(t);
    case FormId::Theta10: return eval(FormId::Theta01, inv) / std::sqrt(t);
    case FormId::Phi0: {
      const Complex x = x_eval_.evaluate(inv, eval_config());
      const Complex y = y_eval_.evaluate(inv, eval_config());
      return eval(FormId::Phi0, inv) - (12.0 * t / kPi) * x + (36.0 * t * t / (kPi * kPi)) * y;
    }
    case FormId::PsiS: return -t * t * eval_psiI_from_thetas(inv);
  }
  return 0.0;
}

double FormLibrary::eval_phi0_axis(double t) const {
  return checked_real(eval_axis(FormId::Phi0, t), 1e-9, "phi0(it)");
}

double FormLibrary::eval_psiS_axis(double t) const {
  return checked_real(eval_axis(FormId::PsiS, t), 1e-9, "psi_S(it)");
}

double FormLibrary::phi0_s_remainder(double t) const {
  const HalfPlanePoint tau(0.0, t);
  const auto cfg = eval_config();
  const Complex v = t * t * eval(FormId::Phi0, tau) - (12.0 * t / kPi) * x_tail_.evaluate(tau, cfg) +
                    (36.0 / (kPi * kPi)) * y_tail_.evaluate(tau, cfg);
  return v.real();
}

double FormLibrary::psiI_remainder(double t) const {
  return psiI_tail_.evaluate(HalfPlanePoint(0.0, t), eval_config()).real();
}

double FormLibrary::phi0_s_weighted(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "requires t > 0");
  if (t <= 1.0) return t * t * eval(FormId::Phi0, HalfPlanePoint(0.0, 1.0 / t)).real();
  return principal_value(phi0_principal_, t) + phi0_s_remainder(t);
}

double FormLibrary::psiI_axis(double t) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "requires t > 0");
  if (t <= 1.0) return -t * t * eval(FormId::PsiS, HalfPlanePoint(0.0, 1.0 / t)).real();
  return principal_value(psiI_principal_, t) + psiI_remainder(t);
}

double FormLibrary::s_combination(double t, double w_phi, double w_psi) const {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "requires t > 0");
  if (t <= 1.0) return w_phi * phi0_s_weighted(t) + w_psi * psiI_axis(t);
  // Group the growing terms by rate first so matching leading terms cancel exactly.
  std::map<double, PrincipalTerm> merged;
  for (const auto& p : phi0_principal_) {
    auto [it, _] = merged.try_emplace(p.rate, PrincipalTerm{p.rate, 0.0, 0.0});
    it->second.c0 += w_phi * p.c0;
    it->second.c1 += w_phi * p.c1;
  }
  for (const auto& p : psiI_principal_) {
    auto [it, _] = merged.try_emplace(p.rate, PrincipalTerm{p.rate, 0.0, 0.0});
    it->second.c0 += w_psi * p.c0;
    it->second.c1 += w_psi * p.c1;
  }
  const auto terms = to_vector(merged);
  return principal_value(terms, t) + w_phi * phi0_s_remainder(t) + w_psi * psiI_remainder(t);
}

// ---------------------------------------------------------------------------

double JacobiReport::max_residual() const {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.residual);
  return m;
}

JacobiReport check_jacobi(int order, std::span<const Complex> taus, const FormLibrary& forms) {
  JacobiReport report{jacobi_residual_qseries(order), {}};
  for (Complex z : taus) {
    const auto tau = HalfPlanePoint::from_complex(z);
    const Complex a = std::pow(forms.eval(FormId::Theta00, tau), 4);
    const Complex b = std::pow(forms.eval(FormId::Theta01, tau), 4);
    const Complex c = std::pow(forms.eval(FormId::Theta10, tau), 4);
    report.samples.push_back({z, std::abs(a - c - b)});
  }
  return report;
}

}  // namespace spherepack
