#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "spherepack/error.hpp"
#include "spherepack/lattice.hpp"
#include "spherepack/modular.hpp"

using namespace spherepack;

namespace {

// Every lattice vector with |v|^2 <= 8 by scanning boxes of doubled coordinates:
// integers in [-2, 2] and half-integers in [-5/2, 5/2].
const std::vector<LatticeVector>& brute_force_ball8() {
  static const std::vector<LatticeVector> out = [] {
    std::vector<LatticeVector> v;
    const std::vector<int> even = {-4, -2, 0, 2, 4};
    const std::vector<int> odd = {-5, -3, -1, 1, 3, 5};
    for (const auto* set : {&even, &odd}) {
      const std::size_t k = set->size();
      std::size_t total = 1;
      for (int i = 0; i < 8; ++i) total *= k;
      for (std::size_t code = 0; code < total; ++code) {
        LatticeVector x;
        std::size_t c = code;
        long n4 = 0;
        int sum = 0;
        for (int i = 0; i < 8; ++i) {
          x.half_coords[i] = (*set)[c % k];
          c /= k;
          n4 += x.half_coords[i] * x.half_coords[i];
          sum += x.half_coords[i];
        }
        if (n4 <= 32 && sum % 4 == 0) v.push_back(x);
      }
    }
    std::sort(v.begin(), v.end());
    return v;
  }();
  return out;
}

double dist2(const LatticeVector& p, const std::array<double, 8>& y) {
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += (0.5 * p.half_coords[i] - y[i]) * (0.5 * p.half_coords[i] - y[i]);
  return s;
}

// Exhaustive nearest point: a D8 base point within distance 2 of y plus every
// lattice vector of norm^2 <= 8.
double exhaustive_distance(const std::array<double, 8>& y) {
  LatticeVector base;
  int sum = 0;
  for (int i = 0; i < 8; ++i) {
    base.half_coords[i] = 2 * static_cast<int>(std::lround(y[i]));
    sum += base.half_coords[i] / 2;
  }
  if (sum % 2 != 0) base.half_coords[7] += 2;
  double best = INFINITY;
  for (const auto& v : brute_force_ball8()) best = std::min(best, dist2(base + v, y));
  return std::sqrt(best);
}

}  // namespace

TEST_CASE("membership") {
  CHECK(e8_membership(LatticeVector{}));
  CHECK(e8_membership(LatticeVector{{2, 2, 0, 0, 0, 0, 0, 0}}));
  CHECK_FALSE(e8_membership(LatticeVector{{2, 0, 0, 0, 0, 0, 0, 0}}));
  CHECK(e8_membership(LatticeVector{{1, 1, 1, 1, 1, 1, 1, 1}}));
  CHECK_FALSE(e8_membership(LatticeVector{{1, 1, 1, 1, 1, 1, 1, -1}}));
  CHECK_FALSE(e8_membership(LatticeVector{{1, 2, 0, 0, 0, 0, 0, 1}}));
}

TEST_CASE("basis is unimodular with even Gram diagonal") {
  const auto b = e8_basis();
  for (const auto& row : b.rows) CHECK(e8_membership(row));
  const mpq_class det = basis_determinant(b);
  CHECK(abs(det) == 1);
  const auto g = gram_matrix(b);
  for (int i = 0; i < 8; ++i) {
    CHECK(g[i][i].get_den() == 1);
    CHECK(g[i][i].get_num() % 2 == 0);
  }
  auto swapped = b;
  std::swap(swapped.rows[0], swapped.rows[5]);
  CHECK(basis_determinant(swapped) == -det);
  CHECK(covolume() == 1.0);
}

TEST_CASE("Gram determinant is one") {
  std::array<std::array<mpq_class, 8>, 8> m = gram_matrix(e8_basis());
  mpq_class det = 1;
  for (int c = 0; c < 8; ++c) {
    int p = c;
    while (m[p][c] == 0) ++p;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 8; ++r) {
      const mpq_class f = m[r][c] / m[c][c];
      for (int j = c; j < 8; ++j) m[r][j] -= f * m[c][j];
    }
  }
  CHECK(det == 1);
}

TEST_CASE("shell enumeration matches brute force up to norm^2 8") {
  std::map<long, std::vector<LatticeVector>> oracle;
  for (const auto& v : brute_force_ball8())
    if (v.norm2_times4() > 0) oracle[v.norm2()].push_back(v);
  const auto shells = enumerate_shells(8, true);
  REQUIRE(shells.size() == oracle.size());
  for (const auto& s : shells) {
    REQUIRE(oracle.count(s.norm2) == 1);
    REQUIRE(s.vectors.has_value());
    CHECK(s.count == s.vectors->size());
    CHECK(*s.vectors == oracle[s.norm2]);
    for (const auto& v : *s.vectors) CHECK(v.norm2() == s.norm2);
  }
  CHECK(shells[0].norm2 == 2);
  CHECK(shells[0].count == 240);
  CHECK(shells[1].count == 2160);
}

TEST_CASE("no odd shells") {
  for (const auto& s : enumerate_shells(30, false)) CHECK(s.norm2 % 2 == 0);
}

TEST_CASE("theta coefficients equal the E4 coefficients") {
  const auto r = theta_coefficients(10);
  const QSeries e4 = eisenstein_qseries(4, 10);
  REQUIRE(r.size() == 11);
  for (int n = 0; n <= 10; ++n) CHECK(mpz_class(std::to_string(r[n])) == e4.coeff(n));
}

TEST_CASE("minimal norm") {
  CHECK(min_norm() == std::sqrt(2.0));
  CHECK(enumerate_shells(1, false).empty());
}

TEST_CASE("resource guard") {
  try {
    (void)enumerate_shells(102, false);
    FAIL("expected ResourceLimit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceLimit);
  }
  CHECK_THROWS_AS(enumerate_shells(-2, false), Error);
}

TEST_CASE("decoder examples") {
  const std::array<double, 8> y = {0.9, 0.9, 0, 0, 0, 0, 0, 0};
  const auto d = nearest_point(y);
  CHECK(d.point == LatticeVector{{2, 2, 0, 0, 0, 0, 0, 0}});
  CHECK(d.distance == doctest::Approx(std::sqrt(0.02)));
  const std::array<double, 8> h = {0.5, 0.5, 0.5, 0.5, -0.5, 0.5, -0.5, 0.5};
  const auto e = nearest_point(h);
  CHECK(e.distance == 0.0);
  CHECK(e8_membership(e.point));
}

TEST_CASE("decoder matches exhaustive search on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<double, 8> y;
    for (double& x : y) x = u(rng);
    const auto d = nearest_point(y);
    CHECK(e8_membership(d.point));
    CHECK(d.distance == doctest::Approx(exhaustive_distance(y)).epsilon(1e-12));
    CHECK(d.distance <= 1.0 + 1e-12);  // covering radius of E8
  }
}

TEST_CASE("sums of lattice vectors stay in the lattice") {
  const auto& v = brute_force_ball8();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
  for (int i = 0; i < 1000; ++i) CHECK(e8_membership(v[pick(rng)] + v[pick(rng)]));
}
