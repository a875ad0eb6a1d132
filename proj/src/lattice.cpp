#include "spherepack/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spherepack/error.hpp"

namespace spherepack {

long LatticeVector::norm2_times4() const noexcept {
  long s = 0;
  for (int h : half_coords) s += static_cast<long>(h) * h;
  return s;
}

std::array<double, 8> LatticeVector::coords() const noexcept {
  std::array<double, 8> c{};
  for (int i = 0; i < 8; ++i) c[i] = 0.5 * half_coords[i];
  return c;
}

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r;
  for (int i = 0; i < 8; ++i) r.half_coords[i] = a.half_coords[i] + b.half_coords[i];
  return r;
}

bool e8_membership(std::span<const int, 8> h) noexcept {
  const int parity = h[0] & 1;
  long sum = 0;
  for (int x : h) {
    if ((x & 1) != parity) return false;
    sum += x;
  }
  // sum of true coordinates even <=> sum of doubled coordinates divisible by 4
  return sum % 4 == 0;
}

bool e8_membership(const LatticeVector& v) noexcept { return e8_membership(std::span<const int, 8>(v.half_coords)); }

LatticeBasis e8_basis() {
  // Simple roots of E8 in the even coordinate system.
  LatticeBasis b;
  b.rows[0].half_coords = {2, -2, 0, 0, 0, 0, 0, 0};
  b.rows[1].half_coords = {0, 2, -2, 0, 0, 0, 0, 0};
  b.rows[2].half_coords = {0, 0, 2, -2, 0, 0, 0, 0};
  b.rows[3].half_coords = {0, 0, 0, 2, -2, 0, 0, 0};
  b.rows[4].half_coords = {0, 0, 0, 0, 2, -2, 0, 0};
  b.rows[5].half_coords = {0, 0, 0, 0, 0, 2, -2, 0};
  b.rows[6].half_coords = {0, 0, 0, 0, 0, 2, 2, 0};
  b.rows[7].half_coords = {-1, -1, -1, -1, -1, -1, -1, -1};
  return b;
}

mpq_class basis_determinant(const LatticeBasis& b) {
  std::array<std::array<mpq_class, 8>, 8> m;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      m[i][j] = mpq_class(b.rows[i].half_coords[j], 2);
      m[i][j].canonicalize();
    }
  mpq_class det = 1;
  for (int c = 0; c < 8; ++c) {
    int pivot = c;
    while (pivot < 8 && m[pivot][c] == 0) ++pivot;
    if (pivot == 8) return 0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 8; ++r) {
      if (m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[c][c];
      for (int j = c; j < 8; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

std::array<std::array<mpq_class, 8>, 8> gram_matrix(const LatticeBasis& b) {
  std::array<std::array<mpq_class, 8>, 8> g;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      long s = 0;
      for (int k = 0; k < 8; ++k) s += static_cast<long>(b.rows[i].half_coords[k]) * b.rows[j].half_coords[k];
      g[i][j] = mpq_class(s, 4);
      g[i][j].canonicalize();
    }
  }
  return g;
}

namespace {

// Depth-first search over doubled coordinates of one parity class, pruned by
// the remaining norm budget.
struct ShellSearch {
  long budget4;  // 4 * max_norm2
  bool with_vectors;
  std::map<long, Shell>& shells;
  std::array<int, 8> h{};

  void run(int parity) { descend(0, budget4, 0, parity); }

  void descend(int i, long remaining, long sum, int parity) {
    if (i == 8) {
      if (sum % 4 != 0) return;
      const long n4 = budget4 - remaining;
      if (n4 == 0) return;
      Shell& s = shells[n4 / 4];
      s.norm2 = n4 / 4;
      ++s.count;
      if (with_vectors) {
        if (!s.vectors) s.vectors.emplace();
        s.vectors->push_back(LatticeVector{h});
      }
      return;
    }
    const int limit = static_cast<int>(std::floor(std::sqrt(static_cast<double>(remaining))));
    int start = -limit;
    if ((start & 1) != parity) ++start;
    for (int x = start; x <= limit; x += 2) {
      const long sq = static_cast<long>(x) * x;
      if (sq > remaining) continue;
      h[i] = x;
      descend(i + 1, remaining - sq, sum + x, parity);
    }
  }
};

}  // namespace

std::vector<Shell> enumerate_shells(long max_norm2, bool with_vectors, EnumerationConfig cfg) {
  if (max_norm2 < 0) throw Error(ErrorKind::InvalidArgument, "max_norm2 must be >= 0");
  if (max_norm2 > cfg.cap) {
    throw Error(ErrorKind::ResourceLimit,
                "max_norm2 = " + std::to_string(max_norm2) + " exceeds cap " + std::to_string(cfg.cap));
  }
  std::map<long, Shell> shells;
  ShellSearch search{4 * max_norm2, with_vectors, shells};
  search.run(0);
  search.run(1);
  std::vector<Shell> out;
  out.reserve(shells.size());
  for (auto& [n, s] : shells) {
    if (s.vectors) std::sort(s.vectors->begin(), s.vectors->end());
    out.push_back(std::move(s));
  }
  return out;
}

double min_norm() {
  const auto shells = enumerate_shells(2, false);
  if (shells.empty()) throw Error(ErrorKind::InvalidArgument, "no vectors of norm^2 <= 2");
  return std::sqrt(static_cast<double>(shells.front().norm2));
}

namespace {

// Closest point of D8 (+ shift) to y, in doubled coordinates.
Decoded decode_d8(std::span<const double, 8> y, double shift) {
  std::array<double, 8> z{};
  std::array<long, 8> r{};
  long sum = 0;
  int worst = 0;
  double worst_err = -1.0;
  for (int i = 0; i < 8; ++i) {
    z[i] = y[i] - shift;
    r[i] = std::lround(z[i]);
    sum += r[i];
    const double err = std::abs(z[i] - static_cast<double>(r[i]));
    if (err > worst_err) {
      worst_err = err;
      worst = i;
    }
  }
  if (((sum % 2) + 2) % 2 != 0) {
    r[worst] += z[worst] > static_cast<double>(r[worst]) ? 1 : -1;
  }
  Decoded d;
  double dist2 = 0.0;
  for (int i = 0; i < 8; ++i) {
    d.point.half_coords[i] = static_cast<int>(2 * r[i] + (shift != 0.0 ? 1 : 0));
    const double diff = y[i] - 0.5 * d.point.half_coords[i];
    dist2 += diff * diff;
  }
  d.distance = std::sqrt(dist2);
  return d;
}

}  // namespace

Decoded nearest_point(std::span<const double, 8> y) {
  for (double v : y) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "nearest_point needs finite coordinates");
  }
  const Decoded a = decode_d8(y, 0.0);
  const Decoded b = decode_d8(y, 0.5);
  return b.distance < a.distance ? b : a;
}

double covolume() { return std::abs(basis_determinant(e8_basis()).get_d()); }

std::vector<std::uint64_t> theta_coefficients(int max_n, EnumerationConfig cfg) {
  if (max_n < 0) throw Error(ErrorKind::InvalidArgument, "max_n must be >= 0");
  std::vector<std::uint64_t> r(static_cast<std::size_t>(max_n) + 1, 0);
  r[0] = 1;
  for (const auto& s : enumerate_shells(2L * max_n, false, cfg)) r[s.norm2 / 2] = s.count;
  return r;
}

}  // namespace spherepack
