#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spherepack/axis.hpp"
#include "spherepack/error.hpp"
#include "spherepack/magic.hpp"

using namespace spherepack;

namespace {

constexpr double kPi = std::numbers::pi;

const MagicFunction& magic() {
  static const MagicFunction m;
  return m;
}

const FormLibrary& lib() { return magic().forms(); }

}  // namespace

TEST_CASE("restriction to the imaginary axis") {
  for (FormId id : all_forms()) {
    CHECK(res_to_imag_axis(lib(), id, -1.0) == Complex(0.0));
    CHECK(res_to_imag_axis(lib(), id, 0.0) == Complex(0.0));
  }
  const Complex e4 = res_to_imag_axis(lib(), FormId::E4, 1.0);
  CHECK(e4.real() == doctest::Approx(1.4557628922687).epsilon(1e-12));
  CHECK(e4.imag() == 0.0);
}

TEST_CASE("realness on the axis") {
  const auto g = log_grid(0.1, 10.0, 60);
  CHECK(check_realness(lib(), FormId::Phi0, g) < 1e-9);
  CHECK(check_realness(lib(), FormId::PsiS, g) < 1e-9);
  const std::vector<double> one = {1.0};
  CHECK(check_realness(lib(), FormId::E2, one) < 1e-12);
}

TEST_CASE("phi0 is positive on the axis") {
  for (double t : log_grid(0.05, 20.0, 400)) CHECK(lib().eval_phi0_axis(t) > 0.0);
  CHECK(eq2_sample(lib(), 1.0, KernelConvention::Direct).phi0 > 0.0);
}

TEST_CASE("combination algebra") {
  for (auto c : {KernelConvention::Direct, KernelConvention::STransformedWeighted}) {
    for (const auto& s : eq2_samples(lib(), log_grid(0.05, 20.0, 40), c)) {
      const double scale = std::abs(s.phi0) + kEq2Weight * std::abs(s.psiS);
      CHECK(std::abs(s.combo_plus + s.combo_minus - 2.0 * s.phi0) <= 1e-14 * scale);
      CHECK(std::abs(s.combo_plus - (s.phi0 + kEq2Weight * s.psiS)) <= 1e-14 * scale);
    }
  }
}

TEST_CASE("conventions are related by t -> 1/t with weight t^2") {
  for (double t : {0.1, 0.5, 2.0, 7.0}) {
    const auto d = eq2_sample(lib(), t, KernelConvention::Direct);
    const auto s = eq2_sample(lib(), 1.0 / t, KernelConvention::STransformedWeighted);
    CHECK(d.combo_minus == doctest::Approx(t * t * s.combo_minus).epsilon(1e-14));
    // the Direct fields are the plain axis values
    CHECK(d.phi0 == doctest::Approx(lib().eval_phi0_axis(t)).epsilon(1e-9));
    CHECK(d.psiS == doctest::Approx(lib().eval_psiS_axis(t)).epsilon(1e-9));
  }
}

TEST_CASE("S-weighted kernels control g and g_hat beyond sqrt 2") {
  // g = -(pi/2160) sin^2(pi r^2/2) int combo_plus e^{-pi r^2 t} dt and the same for
  // g_hat with combo_minus; checked against the contour values at r = 2.5.
  const double r = 2.5;
  const double r2 = r * r;
  const auto rule = gauss_legendre(32);
  double ip = 0.0;
  double im = 0.0;
  // [0, 24] in 48 panels; both kernels are O(t) e^{0} at large t so the tail is e^{-pi r2 24}
  for (int p = 0; p < 48; ++p) {
    const double lo = 0.5 * p;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double t = lo + 0.25 * (1.0 + rule.nodes[j]);
      const auto s = eq2_sample(lib(), t, KernelConvention::STransformedWeighted);
      const double w = 0.25 * rule.weights[j] * std::exp(-kPi * r2 * t);
      ip += w * s.combo_plus;
      im += w * s.combo_minus;
    }
  }
  const double sin2 = std::pow(std::sin(0.5 * kPi * r2), 2);
  const double g = -(kPi / 2160.0) * sin2 * ip;
  const double gh = -(kPi / 2160.0) * sin2 * im;
  CHECK(g == doctest::Approx(magic().eval_g(r)).epsilon(1e-8));
  CHECK(gh == doctest::Approx(magic().eval_g_hat(r)).epsilon(1e-8));
}

TEST_CASE("inequality report") {
  const std::vector<double> one = {1.0};
  const auto r = verify_inequalities(lib(), one, KernelConvention::STransformedWeighted);
  CHECK(r.samples >= 1);
  const auto s = eq2_sample(lib(), 1.0, KernelConvention::STransformedWeighted);
  CHECK(r.min_plus == s.combo_plus);
  CHECK(r.min_minus == s.combo_minus);
  CHECK(r.pass == (s.combo_plus > 0.0 && s.combo_minus > 0.0));
}

TEST_CASE("grids and names") {
  const auto g = log_grid(0.05, 20.0, 400);
  CHECK(g.size() == 400);
  CHECK(g.front() == 0.05);
  CHECK(g.back() == 20.0);
  CHECK(g[1] / g[0] == doctest::Approx(g[200] / g[199]));
  CHECK(convention_from_string("direct") == KernelConvention::Direct);
  CHECK(convention_from_string("sweighted") == KernelConvention::STransformedWeighted);
  CHECK_THROWS_AS(convention_from_string("lee"), Error);
  CHECK_THROWS_AS(eq2_sample(lib(), 0.0, KernelConvention::Direct), Error);
}
