#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spherepack/error.hpp"
#include "spherepack/magic.hpp"

using namespace spherepack;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

const MagicFunction& magic() {
  static const MagicFunction m;
  return m;
}

std::vector<double> radii(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// sum_{k<60} (-1)^k (x/2)^{2k+n} / (k! (k+n)!)
double bessel_series(int n, double x) {
  double term = std::pow(x / 2.0, n) / std::tgamma(n + 1.0);
  double s = term;
  for (int k = 1; k < 60; ++k) {
    term *= -(x * x / 4.0) / (k * double(k + n));
    s += term;
  }
  return s;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {2, 5, 32}) {
    const auto g = gauss_legendre(n);
    double w = 0.0;
    for (double x : g.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    // exact for x^(2n-2)
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
    CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("contour layout") {
  const auto a = contour_segments_a(1.0);
  const auto b = contour_segments_b(1.0);
  REQUIRE(a.size() == 6);
  REQUIRE(b.size() == 6);
  const std::vector<Complex> starts = {-1.0, -1.0 + kI, 1.0, 1.0 + kI, kI, kI};
  const std::vector<Complex> ends = {-1.0 + kI, kI, 1.0 + kI, kI, 0.0};
  for (int k = 0; k < 6; ++k) {
    CHECK(a[k].start == starts[k]);
    if (k < 5) CHECK(a[k].end == ends[k]);
  }
  CHECK(a[5].is_ray);
  CHECK(a[5].coefficient == Complex(2.0));
  CHECK(b[5].coefficient == Complex(-2.0));
  for (int k = 0; k < 5; ++k) CHECK(b[k].coefficient == a[k].coefficient);
  CHECK(a[4].coefficient == Complex(2.0));
  CHECK(a[4].integrand == Integrand::Phi0Inverted);
  CHECK(b[0].integrand == Integrand::PsiSShiftPlus);
  CHECK_THROWS_AS(contour_segments_a(-1.0), Error);
}

TEST_CASE("form arguments stay at Im >= 1/2 on every Gauss node") {
  const auto rule = gauss_legendre(32);
  for (const auto& seg : contour_segments_b(4.0)) {
    if (seg.is_ray) continue;
    for (double x : rule.nodes) {
      const Complex z = seg.start + (seg.end - seg.start) * (0.5 + 0.5 * x);
      Complex w;
      switch (seg.integrand) {
        case Integrand::PsiSShiftPlus: w = -1.0 / (z + 1.0); break;
        case Integrand::PsiSShiftMinus: w = -1.0 / (z - 1.0); break;
        default: w = -1.0 / z; break;
      }
      CHECK(w.imag() >= 0.5);
    }
  }
}

TEST_CASE("segment integrals") {
  const QuadratureConfig q;
  const FormLibrary& f = magic().forms();
  ContourSegment seg{kI, kI, Integrand::Phi0Inverted, 1.0, false};
  CHECK(segment_integral(seg, 1.0, q, f) == Complex(0.0));
  ContourSegment fwd{-1.0 + kI, kI, Integrand::Phi0ShiftPlus, 1.0, false};
  ContourSegment back{kI, -1.0 + kI, Integrand::Phi0ShiftPlus, 1.0, false};
  const Complex x = segment_integral(fwd, 1.7, q, f);
  const Complex y = segment_integral(back, 1.7, q, f);
  CHECK(std::abs(x + y) < 1e-14 * std::abs(x));

  // self-convergence of the ray segment at r^2 = 4
  const auto ray = contour_segments_a(4.0)[5];
  QuadratureConfig fine = q;
  fine.gauss_order = 64;
  const Complex c1 = segment_integral(ray, 4.0, q, f);
  const Complex c2 = segment_integral(ray, 4.0, fine, f);
  CHECK(std::abs(c1 - c2) < 1e-10 * std::abs(c2));
}

TEST_CASE("quadrature configuration checks") {
  QuadratureConfig q;
  q.gauss_order = 1;
  CHECK_THROWS_AS(q.validate(), Error);
  QuadratureConfig shallow;
  shallow.ray_truncation = 2.0;
  try {
    (void)segment_integral(contour_segments_b(1.0)[5], 1.0, shallow, magic().forms());
    FAIL("expected TailBoundViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TailBoundViolated);
  }
}

TEST_CASE("values at the origin") {
  const Complex a0 = magic().a0();
  CHECK(std::abs(a0 - Complex(0.0, -8640.0 / kPi)) < 1e-9 * std::abs(a0));
  CHECK(std::abs(magic().b0()) < 1e-6 * std::abs(a0));
  CHECK(magic().g0() > 0.0);
  CHECK(magic().g_hat0() > 0.0);
  CHECK(magic().g0() / magic().g_hat0() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("a and b are purely imaginary") {
  const double scale = std::abs(magic().a0());
  for (double r : radii(0.0, 4.0, 20)) {
    CHECK(std::abs(magic().eval_a(r).real()) < 1e-7 * scale);
    CHECK(std::abs(magic().eval_b(r).real()) < 1e-7 * scale);
  }
}

TEST_CASE("sin^2 factor kills a and b at sqrt 2") {
  const double s = std::sqrt(2.0);
  CHECK(std::abs(magic().eval_a(s)) < 1e-6 * std::abs(magic().a0()));
  CHECK(std::abs(magic().eval_b(s)) < 1e-6 * std::abs(magic().a0()));
  CHECK(std::abs(magic().eval_a_propagated(s)) < 1e-12 * std::abs(magic().a0()));
  CHECK(std::abs(magic().eval_g(s)) < 1e-6 * magic().g0());
}

TEST_CASE("propagated representation matches the contour") {
  const double scale = std::abs(magic().a0());
  for (double r : {1.5, 2.0, 2.5, 3.0}) {
    CHECK(std::abs(magic().eval_a(r) - magic().eval_a_propagated(r)) < 1e-6 * scale);
    CHECK(std::abs(magic().eval_b(r) - magic().eval_b_propagated(r)) < 1e-6 * scale);
  }
  const double r = std::sqrt(2.0) * 1.0001;
  const Complex a = magic().eval_a(r);
  CHECK(std::abs(a - magic().eval_a_propagated(r)) < 1e-5 * std::abs(a));
  const Complex b = magic().eval_b(r);
  CHECK(std::abs(b - magic().eval_b_propagated(r)) < 1e-5 * std::abs(b));
  try {
    (void)magic().eval_a_propagated(1.4);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DomainError);
  }
}

TEST_CASE("sign of a beyond sqrt 2") {
  // a is imaginary; its contribution (pi i / 8640) a to g is real and negative at r = 3
  const Complex w = (kPi * kI / 8640.0) * magic().eval_a(3.0);
  CHECK(w.real() < 0.0);
  CHECK(std::abs(w.imag()) < 1e-6 * std::abs(w.real()));
}

TEST_CASE("quadrature self-convergence") {
  QuadratureConfig fine;
  fine.gauss_order = 64;
  fine.panels_per_segment = 16;
  const MagicFunction m2(fine);
  const double scale = std::abs(magic().a0());
  for (double r : {0.0, 1.0, 2.0}) {
    CHECK(std::abs(magic().eval_a(r) - m2.eval_a(r)) < 1e-8 * scale);
    CHECK(std::abs(magic().eval_b(r) - m2.eval_b(r)) < 1e-8 * scale);
    CHECK(std::abs(magic().eval_g(r) - m2.eval_g(r)) < 1e-8 * magic().g0());
  }
}

TEST_CASE("tables") {
  const std::vector<double> zeros = {std::sqrt(2.0), 2.0, std::sqrt(6.0)};
  const auto t = magic().tabulate_radial(RadialKind::G, zeros, 1);
  for (double v : t.values) CHECK(std::abs(v) < 1e-6 * magic().g0());
  CHECK(t.radii == zeros);
  const auto grid = radii(0.0, 3.0, 31);
  const auto a = magic().tabulate_radial(RadialKind::GHat, grid, 1);
  const auto b = magic().tabulate_radial(RadialKind::GHat, grid, 3);
  CHECK(a.values == b.values);
  const std::vector<double> bad = {0.0, 1.0, 0.5};
  CHECK_THROWS_AS(magic().tabulate_radial(RadialKind::A, bad), Error);
  CHECK(radial_kind_from_string("GHat") == RadialKind::GHat);
}

TEST_CASE("Bessel functions") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(3, 0.0) == 0.0);
  for (double x : {1.0, 5.0, 20.0}) {
    const double h = 1e-5;
    const double d = (bessel_j(0, x + h) - bessel_j(0, x - h)) / (2 * h);
    CHECK(std::abs(bessel_j(1, x) + d) < 1e-8);
  }
  CHECK(std::abs(bessel_j(3, 5.0) - bessel_series(3, 5.0)) < 1e-10);
  CHECK(std::abs(bessel_j(2, 7.5) - bessel_series(2, 7.5)) < 1e-10);
  CHECK_THROWS_AS(bessel_j(4, 1.0), Error);
}

TEST_CASE("Hankel transform of the Gaussian") {
  RadialTable t;
  t.radii = radii(0.0, 6.0, 601);
  for (double s : t.radii) t.values.push_back(std::exp(-kPi * s * s));
  for (double r : {0.5, 1.0, 1.7}) {
    CHECK(hankel8(t, r) == doctest::Approx(std::exp(-kPi * r * r)).epsilon(1e-6));
  }
  RadialTable short_table = t;
  short_table.radii.resize(101);
  short_table.values.resize(101);
  try {
    (void)hankel8(short_table, 1.0);
    FAIL("expected InsufficientTable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientTable);
  }
}

TEST_CASE("cubic interpolation is exact on cubics") {
  RadialTable t;
  t.radii = {0.0, 0.3, 0.7, 1.0, 1.6, 2.0};
  for (double s : t.radii) t.values.push_back(2 - s + 3 * s * s * s);
  for (double s : {0.1, 0.5, 1.3, 1.99}) CHECK(interpolate(t, s) == doctest::Approx(2 - s + 3 * s * s * s));
  CHECK_THROWS_AS(interpolate(t, 2.5), Error);
}
