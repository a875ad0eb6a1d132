#include "spherepack/axis.hpp"

#include <algorithm>
#include <cmath>

#include "spherepack/error.hpp"

namespace spherepack {

std::string_view to_string(KernelConvention c) noexcept {
  return c == KernelConvention::Direct ? "direct" : "sweighted";
}

KernelConvention convention_from_string(std::string_view name) {
  if (name == "direct") return KernelConvention::Direct;
  if (name == "sweighted") return KernelConvention::STransformedWeighted;
  throw Error(ErrorKind::InvalidArgument, "unknown convention '" + std::string(name) + "'");
}

Complex res_to_imag_axis(const FormLibrary& forms, FormId id, double t) {
  if (!(t > 0.0)) return 0.0;
  return forms.eval_axis(id, t);
}

double check_realness(const FormLibrary& forms, FormId id, std::span<const double> ts) {
  double worst = 0.0;
  for (double t : ts) {
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid must be positive");
    const Complex v = forms.eval_axis(id, t);
    if (v != 0.0) worst = std::max(worst, std::abs(v.imag()) / std::abs(v));
  }
  return worst;
}

namespace {

// S-weighted quantities at s; Direct(t) = t^2 * SWeighted(1/t).
AxisSample sweighted(const FormLibrary& forms, double s) {
  AxisSample a;
  a.t = s;
  a.phi0 = forms.phi0_s_weighted(s);
  a.psiS = -forms.psiI_axis(s);
  a.combo_plus = forms.s_combination(s, 1.0, -kEq2Weight);
  a.combo_minus = forms.s_combination(s, 1.0, kEq2Weight);
  return a;
}

}  // namespace

AxisSample eq2_sample(const FormLibrary& forms, double t, KernelConvention c) {
  if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "axis samples need t > 0");
  if (c == KernelConvention::STransformedWeighted) return sweighted(forms, t);
  AxisSample a = sweighted(forms, 1.0 / t);
  const double w = t * t;
  a.t = t;
  a.phi0 *= w;
  a.psiS *= w;
  a.combo_plus *= w;
  a.combo_minus *= w;
  return a;
}

std::vector<AxisSample> eq2_samples(const FormLibrary& forms, std::span<const double> ts, KernelConvention c) {
  std::vector<AxisSample> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(eq2_sample(forms, t, c));
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || n < 1) throw Error(ErrorKind::InvalidArgument, "bad logarithmic grid");
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

InequalityReport verify_inequalities(const FormLibrary& forms, std::span<const double> ts, KernelConvention c) {
  if (ts.empty()) throw Error(ErrorKind::InvalidArgument, "empty grid");
  InequalityReport r;
  r.convention = c;
  const auto samples = eq2_samples(forms, ts, c);
  r.samples = samples.size();
  std::size_t ip = 0;
  std::size_t im = 0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].combo_plus < samples[ip].combo_plus) ip = i;
    if (samples[i].combo_minus < samples[im].combo_minus) im = i;
  }
  r.min_plus = samples[ip].combo_plus;
  r.argmin_plus = samples[ip].t;
  r.min_minus = samples[im].combo_minus;
  r.argmin_minus = samples[im].t;

  // Refine on the neighbouring grid cells of a small minimum.
  auto refine = [&](std::size_t k, bool plus) {
    const double m = plus ? r.min_plus : r.min_minus;
    if (!(m < 1e-3 * std::abs(samples[k].phi0))) return;
    r.refined = true;
    const double lo = samples[k > 0 ? k - 1 : k].t;
    const double hi = samples[k + 1 < samples.size() ? k + 1 : k].t;
    if (!(hi > lo)) return;
    for (double t : log_grid(lo, hi, 9)) {
      const AxisSample s = eq2_sample(forms, t, c);
      ++r.samples;
      const double v = plus ? s.combo_plus : s.combo_minus;
      if (plus && v < r.min_plus) {
        r.min_plus = v;
        r.argmin_plus = t;
      }
      if (!plus && v < r.min_minus) {
        r.min_minus = v;
        r.argmin_minus = t;
      }
    }
  };
  refine(ip, true);
  refine(im, false);
  r.pass = r.min_plus > 0.0 && r.min_minus > 0.0;
  return r;
}

}  // namespace spherepack
