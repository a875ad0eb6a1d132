#include "spherepack/magic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

#include "spherepack/error.hpp"
#include "spherepack/packing.hpp"

namespace spherepack {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Growth bounds for the ray tails: |phi0(z)| <= 2 * 518400 e^{-2 pi Im z},
// |psi_S(z)| <= 2 * 10240 e^{-pi Im z} for Im z >= 1.
constexpr double kPhi0TailC = 2.0 * 518400.0;
constexpr double kPsiTailC = 2.0 * 10240.0;

bool is_phi0(Integrand k) {
  return k == Integrand::Phi0ShiftPlus || k == Integrand::Phi0ShiftMinus || k == Integrand::Phi0Inverted ||
         k == Integrand::Phi0Direct;
}

Complex integrand_value(Integrand k, Complex z, double r2, const FormLibrary& forms) {
  if (!(z.imag() > 0.0)) return 0.0;  // the real line is approached vertically; integrands vanish there
  const FormId form = is_phi0(k) ? FormId::Phi0 : FormId::PsiS;
  Complex w;
  Complex factor;
  switch (k) {
    case Integrand::Phi0ShiftPlus:
    case Integrand::PsiSShiftPlus:
      w = -1.0 / (z + 1.0);
      factor = (z + 1.0) * (z + 1.0);
      break;
    case Integrand::Phi0ShiftMinus:
    case Integrand::PsiSShiftMinus:
      w = -1.0 / (z - 1.0);
      factor = (z - 1.0) * (z - 1.0);
      break;
    case Integrand::Phi0Inverted:
    case Integrand::PsiSInverted:
      w = -1.0 / z;
      factor = z * z;
      break;
    default:
      w = z;
      factor = 1.0;
      break;
  }
  const Complex f = forms.eval(form, HalfPlanePoint::from_complex(w));
  return f * factor * std::exp(kI * (kPi * r2) * z);
}

// Integral of f over [lo, hi] with `panels` equal Gauss panels.
template <class F>
double panel_quad(F&& f, double lo, double hi, int panels, const GaussRule& rule) {
  const double width = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    const double half = 0.5 * width;
    const double mid = a + half;
    double s = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) s += rule.weights[j] * f(mid + half * rule.nodes[j]);
    total += half * s;
  }
  return total;
}

// int_1^inf (c0 + c1 t) e^{pi rate t} e^{-pi r2 t} dt.
double principal_laplace(std::span<const PrincipalTerm> terms, double r2) {
  double s = 0.0;
  for (const auto& p : terms) {
    const double lambda = kPi * (r2 - p.rate);
    const double e = std::exp(-lambda);
    s += e * (p.c0 / lambda + p.c1 * (1.0 / lambda + 1.0 / (lambda * lambda)));
  }
  return s;
}

double sin2_half(double r2) {
  const double s = std::sin(0.5 * kPi * r2);
  return s * s;
}

// Laplace transform of an axis kernel at r^2 = r2 > 2: direct quadrature on
// (0, 1], remainder quadrature on [1, T], closed form for the growing part.
template <class Direct, class Remainder>
double laplace_kernel(Direct&& direct, Remainder&& remainder, std::span<const PrincipalTerm> principal, double r2,
                      const QuadratureConfig& quad) {
  const GaussRule rule = gauss_legendre(quad.gauss_order);
  const auto damp = [r2](double t) { return std::exp(-kPi * r2 * t); };
  const double head = panel_quad([&](double t) { return direct(t) * damp(t); }, 0.0, 1.0,
                                 quad.panels_per_segment, rule);
  const double body = panel_quad([&](double t) { return remainder(t) * damp(t); }, 1.0, quad.ray_truncation,
                                 quad.panels_per_segment, rule);
  return head + body + principal_laplace(principal, r2);
}

void check_propagated_domain(double r) {
  if (!(r >= std::sqrt(2.0) * (1.0 - 1e-12)) || !std::isfinite(r)) {
    throw Error(ErrorKind::DomainError, "propagated representation needs r >= sqrt(2), got " + std::to_string(r));
  }
}

}  // namespace

std::string_view to_string(Integrand k) noexcept {
  switch (k) {
    case Integrand::Phi0ShiftPlus: return "Phi0ShiftPlus";
    case Integrand::Phi0ShiftMinus: return "Phi0ShiftMinus";
    case Integrand::Phi0Inverted: return "Phi0Inverted";
    case Integrand::Phi0Direct: return "Phi0Direct";
    case Integrand::PsiSShiftPlus: return "PsiSShiftPlus";
    case Integrand::PsiSShiftMinus: return "PsiSShiftMinus";
    case Integrand::PsiSInverted: return "PsiSInverted";
    case Integrand::PsiSDirect: return "PsiSDirect";
  }
  return "?";
}

void QuadratureConfig::validate() const {
  if (gauss_order < 2) throw Error(ErrorKind::Config, "gauss_order must be >= 2");
  if (panels_per_segment < 1) throw Error(ErrorKind::Config, "panels_per_segment must be >= 1");
  if (!(ray_truncation >= 2.0)) throw Error(ErrorKind::Config, "ray_truncation must be >= 2");
  if (!(tail_tol > 0.0)) throw Error(ErrorKind::Config, "tail_tol must be positive");
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

std::vector<ContourSegment> contour_segments(double r2, bool phi0, Complex ray_coefficient) {
  if (!(r2 >= 0.0)) throw Error(ErrorKind::InvalidArgument, "r2 must be >= 0");
  const Integrand plus = phi0 ? Integrand::Phi0ShiftPlus : Integrand::PsiSShiftPlus;
  const Integrand minus = phi0 ? Integrand::Phi0ShiftMinus : Integrand::PsiSShiftMinus;
  const Integrand inverted = phi0 ? Integrand::Phi0Inverted : Integrand::PsiSInverted;
  const Integrand direct = phi0 ? Integrand::Phi0Direct : Integrand::PsiSDirect;
  const Complex i = kI;
  // The leg i -> 0 carries +2: it is the -2 int_0^i term with the orientation of the figure.
  return {
      {-1.0, -1.0 + i, plus, 1.0, false},
      {-1.0 + i, i, plus, 1.0, false},
      {1.0, 1.0 + i, minus, 1.0, false},
      {1.0 + i, i, minus, 1.0, false},
      {i, 0.0, inverted, 2.0, false},
      {i, Complex(0.0, INFINITY), direct, ray_coefficient, true},
  };
}

}  // namespace

std::vector<ContourSegment> contour_segments_a(double r2) { return contour_segments(r2, true, 2.0); }
std::vector<ContourSegment> contour_segments_b(double r2) { return contour_segments(r2, false, -2.0); }

Complex segment_integral(const ContourSegment& seg, double r2, const QuadratureConfig& quad,
                         const FormLibrary& forms) {
  quad.validate();
  const GaussRule rule = gauss_legendre(quad.gauss_order);
  Complex start = seg.start;
  Complex delta;
  if (seg.is_ray) {
    const double height = quad.ray_truncation - seg.start.imag();
    if (!(height > 0.0)) throw Error(ErrorKind::Config, "ray starts above the truncation height");
    delta = kI * height;
    const bool phi = is_phi0(seg.integrand);
    const double k = phi ? 2.0 : 1.0;
    const double c = phi ? kPhi0TailC : kPsiTailC;
    const double tail = std::abs(seg.coefficient) * c * std::exp(-k * kPi * quad.ray_truncation) / (k * kPi);
    if (tail > quad.tail_tol) {
      throw Error(ErrorKind::TailBoundViolated, "ray tail bound " + std::to_string(tail) + " exceeds tail_tol at T = " +
                                                    std::to_string(quad.ray_truncation));
    }
  } else {
    delta = seg.end - seg.start;
  }
  if (delta == 0.0) return 0.0;
  const int panels = quad.panels_per_segment;
  Complex total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double half = 0.5 / panels;
    const double mid = (p + 0.5) / panels;
    Complex s = 0.0;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const Complex z = start + delta * (mid + half * rule.nodes[j]);
      s += rule.weights[j] * integrand_value(seg.integrand, z, r2, forms);
    }
    total += half * s;
  }
  return seg.coefficient * delta * total;
}

// ---------------------------------------------------------------------------

std::string_view to_string(RadialKind k) noexcept {
  switch (k) {
    case RadialKind::A: return "A";
    case RadialKind::B: return "B";
    case RadialKind::G: return "G";
    case RadialKind::GHat: return "GHat";
  }
  return "?";
}

RadialKind radial_kind_from_string(std::string_view name) {
  for (RadialKind k : {RadialKind::A, RadialKind::B, RadialKind::G, RadialKind::GHat}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown table kind '" + std::string(name) + "'");
}

MagicFunction::MagicFunction(QuadratureConfig quad, FormsConfig forms) : quad_(quad), forms_(forms) {
  quad_.validate();
  a0_ = contour_sum(contour_segments_a(0.0), 0.0);
  b0_ = contour_sum(contour_segments_b(0.0), 0.0);
  const Complex g = (kPi * kI / 8640.0) * a0_ + (kI / (240.0 * kPi)) * b0_;
  const Complex gh = (kPi * kI / 8640.0) * a0_ - (kI / (240.0 * kPi)) * b0_;
  g0_ = g.real();
  ghat0_ = gh.real();
}

Complex MagicFunction::contour_sum(const std::vector<ContourSegment>& segs, double r) const {
  const double r2 = r * r;
  Complex total = 0.0;
  for (const auto& seg : segs) total += segment_integral(seg, r2, quad_, forms_);
  return total;
}

namespace {

void check_imaginary(Complex v, double scale, const char* what) {
  if (std::abs(v.real()) > 1e-8 * (std::abs(v) + scale)) {
    throw Error(ErrorKind::NonRealValue, std::string(what) + " should be purely imaginary, real part " +
                                             std::to_string(v.real()));
  }
}

}  // namespace

Complex MagicFunction::eval_a(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "r must be finite and >= 0");
  const Complex v = contour_sum(contour_segments_a(r * r), r);
  check_imaginary(v, std::abs(a0_), "a(r)");
  return v;
}

Complex MagicFunction::eval_b(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "r must be finite and >= 0");
  const Complex v = contour_sum(contour_segments_b(r * r), r);
  check_imaginary(v, std::abs(a0_), "b(r)");
  return v;
}

Complex MagicFunction::eval_a_propagated(double r) const {
  check_propagated_domain(r);
  const double r2 = r * r;
  if (r2 - 2.0 <= 0.0) return 0.0;
  const double j = laplace_kernel([&](double t) { return forms_.phi0_s_weighted(t); },
                                  [&](double t) { return forms_.phi0_s_remainder(t); }, forms_.phi0_s_principal(),
                                  r2, quad_);
  return 4.0 * kI * sin2_half(r2) * j;
}

Complex MagicFunction::eval_b_propagated(double r) const {
  check_propagated_domain(r);
  const double r2 = r * r;
  if (r2 - 2.0 <= 0.0) return 0.0;
  const double j = laplace_kernel([&](double t) { return forms_.psiI_axis(t); },
                                  [&](double t) { return forms_.psiI_remainder(t); }, forms_.psiI_principal(), r2,
                                  quad_);
  return -4.0 * kI * sin2_half(r2) * j;
}

double MagicFunction::combine(Complex a, Complex b, double sign, const char* what) const {
  const Complex v = (kPi * kI / 8640.0) * a + sign * (kI / (240.0 * kPi)) * b;
  if (std::abs(v.imag()) >= 1e-7 * (std::abs(v) + std::abs(g0_))) {
    throw Error(ErrorKind::NonRealValue, std::string(what) + " has imaginary part " + std::to_string(v.imag()));
  }
  return v.real();
}

double MagicFunction::eval_g(double r) const { return combine(eval_a(r), eval_b(r), 1.0, "g(r)"); }
double MagicFunction::eval_g_hat(double r) const { return combine(eval_a(r), eval_b(r), -1.0, "g_hat(r)"); }

double MagicFunction::eval(RadialKind k, double r) const {
  switch (k) {
    case RadialKind::A: return eval_a(r).imag();
    case RadialKind::B: return eval_b(r).imag();
    case RadialKind::G: return eval_g(r);
    case RadialKind::GHat: return eval_g_hat(r);
  }
  return 0.0;
}

RadialTable MagicFunction::tabulate_radial(RadialKind k, std::span<const double> radii, unsigned threads) const {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0) || (i > 0 && !(radii[i] > radii[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument, "radii must be nonnegative and strictly increasing");
    }
  }
  RadialTable table{std::vector<double>(radii.begin(), radii.end()), std::vector<double>(radii.size()), k};
  const std::size_t n = radii.size();
  const unsigned nt = static_cast<unsigned>(std::max<std::size_t>(
      1, std::min<std::size_t>(threads ? threads : default_thread_count(), n)));
  std::vector<std::exception_ptr> errors(nt);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < n; i += nt) table.values[i] = eval(k, radii[i]);
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
  return table;
}

// ---------------------------------------------------------------------------

double bessel_j(int n, double x) {
  if (n < 0 || n > 3) throw Error(ErrorKind::InvalidArgument, "bessel_j supports orders 0..3");
  if (!(x >= 0.0)) throw Error(ErrorKind::InvalidArgument, "bessel_j needs x >= 0");
  return std::cyl_bessel_j(static_cast<double>(n), x);
}

double interpolate(const RadialTable& t, double s) {
  const std::size_t n = t.radii.size();
  if (n < 4) throw Error(ErrorKind::InsufficientTable, "interpolation needs at least 4 points");
  if (s < t.radii.front() || s > t.radii.back()) {
    throw Error(ErrorKind::InsufficientTable, "s = " + std::to_string(s) + " outside the table");
  }
  std::size_t k = static_cast<std::size_t>(std::upper_bound(t.radii.begin(), t.radii.end(), s) - t.radii.begin());
  // stencil t[k-2 .. k+1] around the interval [k-1, k]
  std::size_t first = k >= 2 ? k - 2 : 0;
  first = std::min(first, n - 4);
  double v = 0.0;
  for (std::size_t i = first; i < first + 4; ++i) {
    double l = 1.0;
    for (std::size_t j = first; j < first + 4; ++j)
      if (j != i) l *= (s - t.radii[j]) / (t.radii[i] - t.radii[j]);
    v += l * t.values[i];
  }
  return v;
}

double hankel8(const RadialTable& table, double r) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "hankel8 needs r > 0");
  const std::size_t n = table.radii.size();
  if (n < 4 || table.radii.front() > 0.0) {
    throw Error(ErrorKind::InsufficientTable, "table must start at 0 and have at least 4 points");
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) peak = std::max(peak, std::abs(table.values[i]) * std::pow(table.radii[i], 4));
  const double last = std::abs(table.values.back()) * std::pow(table.radii.back(), 4);
  if (!(last < 1e-10 * peak)) {
    throw Error(ErrorKind::InsufficientTable, "table does not reach the decay region (|f| s^4 = " +
                                                  std::to_string(last) + ")");
  }
  const GaussRule rule = gauss_legendre(8);
  const double k = 2.0 * kPi * r;
  // keep >= 10 nodes per period 1/r of the Bessel kernel
  const double max_width = 8.0 / (10.0 * r);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = table.radii[i];
    const double hi = table.radii[i + 1];
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
    total += panel_quad(
        [&](double s) {
          const double s2 = s * s;
          return interpolate(table, s) * bessel_j(3, k * s) * s2 * s2;
        },
        lo, hi, panels, rule);
  }
  return 2.0 * kPi * total / (r * r * r);
}

}  // namespace spherepack
