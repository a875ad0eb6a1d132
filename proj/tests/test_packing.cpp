#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "spherepack/error.hpp"
#include "spherepack/lattice.hpp"
#include "spherepack/packing.hpp"

using namespace spherepack;

namespace {

constexpr double kPi = std::numbers::pi;

double target() { return kPi * kPi * kPi * kPi / 384.0; }

// Volume of the cap of height h cut from the 8-ball of radius a.
double cap8(double a, double h) {
  if (h <= 0.0) return 0.0;
  if (h >= 2.0 * a) return ball_volume(8, a);
  if (h > a) return ball_volume(8, a) - cap8(a, 2.0 * a - h);
  return 0.5 * ball_volume(8, a) * boost::math::ibeta(4.5, 0.5, (2.0 * a * h - h * h) / (a * a));
}

// Volume of B(0, R) intersected with B(c, r), |c| = d.
double lens8(double R, double r, double d) {
  if (d >= R + r) return 0.0;
  if (d + r <= R) return ball_volume(8, r);
  if (d + R <= r) return ball_volume(8, R);
  const double x = (d * d + R * R - r * r) / (2.0 * d);
  return cap8(R, R - x) + cap8(r, r - (d - x));
}

// Exact finite density of the E8 packing in B(0, R) from lens volumes over the shells.
double exact_finite_density(double R) {
  const double rho = std::sqrt(2.0) / 2.0;
  const long n2 = static_cast<long>(std::ceil((R + rho) * (R + rho)));
  double v = lens8(R, rho, 0.0);
  for (const auto& s : enumerate_shells(n2, false)) v += s.count * lens8(R, rho, std::sqrt(double(s.norm2)));
  return v / ball_volume(8, R);
}

}  // namespace

TEST_CASE("ball volumes") {
  CHECK(ball_volume(1, 1.0) == doctest::Approx(2.0));
  CHECK(ball_volume(2, 1.0) == doctest::Approx(kPi));
  CHECK(ball_volume(3, 2.0) == doctest::Approx(4.0 / 3.0 * kPi * 8.0));
  CHECK(ball_volume(8, 0.5) == doctest::Approx(kPi * kPi * kPi * kPi / 6144.0).epsilon(1e-14));
  CHECK(ball_volume(8, 0.0) == 0.0);
  CHECK_THROWS_AS(ball_volume(0, 1.0), Error);
}

TEST_CASE("ball volume against cube sampling") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const int n = 1'000'000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double x = u(rng);
      s += x * x;
    }
    inside += s <= 0.25;
  }
  const double p = ball_volume(8, 0.5);
  const double est = double(inside) / n;
  CHECK(std::abs(est - p) < 5.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("periodic densities") {
  CHECK(periodic_density(e8_packing()) == doctest::Approx(target()).epsilon(1e-14));
  CHECK(periodic_density(z8_packing()) == doctest::Approx(kPi * kPi * kPi * kPi / 6144.0).epsilon(1e-14));
  CHECK_THROWS_AS(periodic_density(z8_packing(2.0)), Error);
  auto flat = e8_packing();
  flat.basis[7] = flat.basis[6];
  try {
    (void)periodic_density(flat);
    FAIL("expected DegenerateBasis");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateBasis);
  }
}

TEST_CASE("periodic density is invariant under unimodular changes and lattice shifts") {
  auto p = e8_packing();
  for (int j = 0; j < 8; ++j) p.basis[2][j] += p.basis[5][j];
  std::swap(p.basis[0], p.basis[4]);
  CHECK(periodic_density(p) == doctest::Approx(target()).epsilon(1e-13));
  auto q = e8_packing();
  q.offsets[0] = e8_basis().rows[3].coords();
  CHECK(periodic_density(q) == doctest::Approx(target()).epsilon(1e-14));
}

TEST_CASE("separation checks") {
  CHECK(check_separation(std::vector<Vec8>{Vec8{}}, 10.0));
  std::vector<Vec8> roots;
  const auto shells = enumerate_shells(2, true);
  for (const auto& v : shells[0].vectors.value()) roots.push_back(v.coords());
  REQUIRE(roots.size() == 240);
  CHECK(check_separation(roots, std::sqrt(2.0)));
  CHECK_FALSE(check_separation(roots, 1.5));
  CHECK_FALSE(check_separation(std::vector<Vec8>{Vec8{}, Vec8{1.0}}, std::sqrt(2.0)));
}

TEST_CASE("samples are uniform in the ball") {
  const int n = 200000;
  double m2 = 0.0;
  double max_r = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec8 y = sample_ball(42, i, 2.0);
    double s = 0.0;
    for (double x : y) s += x * x;
    m2 += s;
    max_r = std::max(max_r, std::sqrt(s));
  }
  // E|y|^2 = d/(d+2) R^2 for the uniform d-ball
  CHECK(m2 / n == doctest::Approx(0.8 * 4.0).epsilon(5e-3));
  CHECK(max_r <= 2.0);
  CHECK(sample_ball(1, 5, 1.0) == sample_ball(1, 5, 1.0));
  CHECK(sample_ball(1, 5, 1.0) != sample_ball(2, 5, 1.0));
}

TEST_CASE("Monte-Carlo edge cases") {
  auto big = z8_packing(1.0);
  MonteCarloConfig c{0.4, 10000, 1, 1};
  CHECK(finite_density_mc(big, c).value == 1.0);
  auto empty = e8_packing();
  empty.offsets.clear();
  CHECK(finite_density_mc(empty, c).value == 0.0);
  auto other = e8_packing();
  other.kind = LatticeKind::Other;
  try {
    (void)finite_density_mc(other, c);
    FAIL("expected UnsupportedLattice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedLattice);
  }
  CHECK_THROWS_AS(finite_density_mc(big, MonteCarloConfig{-1.0, 10, 1, 1}), Error);
  CHECK_THROWS_AS(finite_density_mc(big, MonteCarloConfig{1.0, 0, 1, 1}), Error);
}

TEST_CASE("Monte-Carlo estimate is deterministic across thread counts") {
  MonteCarloConfig c{3.0, 100000, 9, 1};
  const auto a = finite_density_mc(e8_packing(), c);
  for (unsigned t : {2u, 3u, 7u}) {
    c.threads = t;
    const auto b = finite_density_mc(e8_packing(), c);
    CHECK(a.hits == b.hits);
    CHECK(a.value == b.value);
  }
  CHECK(a.std_error == doctest::Approx(std::sqrt(a.value * (1 - a.value) / a.samples)));
  CHECK(a.value >= 0.0);
  CHECK(a.value <= 1.0);
}

TEST_CASE("Monte-Carlo estimate agrees with the exact finite density") {
  for (double R : {2.0, 3.0}) {
    const double exact = exact_finite_density(R);
    const auto e = finite_density_mc(e8_packing(), MonteCarloConfig{R, 400000, 42, 0});
    CHECK(std::abs(e.value - exact) < 4.0 * e.std_error);
  }
  // finite-R densities approach the periodic density
  CHECK(std::abs(exact_finite_density(8.0) - target()) < 1e-4 * target());
}

TEST_CASE("Z8 Monte-Carlo against the closed form") {
  const auto e = finite_density_mc(z8_packing(), MonteCarloConfig{6.0, 400000, 5, 0});
  const double p = ball_volume(8, 0.5);
  CHECK(std::abs(e.value - p) < 5.0 * e.std_error + 0.02 * p);
}
