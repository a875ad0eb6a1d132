#include "spherepack/packing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "spherepack/error.hpp"

namespace spherepack {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1), 53 bits.
double unit(std::uint64_t seed, std::uint64_t index, std::uint64_t k) {
  const std::uint64_t bits = splitmix64(seed ^ splitmix64(index * 16 + k));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

double dist2(const Vec8& a, const Vec8& b) {
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

// Squared distance from y to the nearest lattice point.
double lattice_dist2(LatticeKind kind, const Vec8& y) {
  if (kind == LatticeKind::E8) {
    const auto d = nearest_point(std::span<const double, 8>(y));
    return d.distance * d.distance;
  }
  double s = 0.0;
  for (double v : y) {
    const double e = v - std::nearbyint(v);
    s += e * e;
  }
  return s;
}

}  // namespace

PeriodicPackingSpec e8_packing() {
  PeriodicPackingSpec spec;
  const auto b = e8_basis();
  for (int i = 0; i < 8; ++i) spec.basis[i] = b.rows[i].coords();
  spec.kind = LatticeKind::E8;
  spec.offsets = {Vec8{}};
  spec.separation = std::sqrt(2.0);
  return spec;
}

PeriodicPackingSpec z8_packing(double separation) {
  PeriodicPackingSpec spec;
  for (int i = 0; i < 8; ++i) spec.basis[i][i] = 1.0;
  spec.kind = LatticeKind::Z8;
  spec.offsets = {Vec8{}};
  spec.separation = separation;
  return spec;
}

double ball_volume(int d, double r) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be >= 1");
  if (!(r >= 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be >= 0");
  return std::pow(std::numbers::pi, d / 2.0) * std::pow(r, d) / std::tgamma(d / 2.0 + 1.0);
}

double determinant(const Matrix8& m) {
  Matrix8 a = m;
  double det = 1.0;
  for (int c = 0; c < 8; ++c) {
    int p = c;
    for (int r = c + 1; r < 8; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < 8; ++r) {
      const double f = a[r][c] / a[c][c];
      for (int j = c; j < 8; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

void validate_packing(const PeriodicPackingSpec& spec) {
  if (!(spec.separation > 0.0)) throw Error(ErrorKind::InvalidArgument, "separation must be positive");
  const double sep2 = spec.separation * spec.separation * (1.0 - 1e-12);
  std::array<int, 8> c{};
  for (int code = 0; code < 6561; ++code) {
    int x = code;
    for (int i = 0; i < 8; ++i) {
      c[i] = x % 3 - 1;
      x /= 3;
    }
    Vec8 v{};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) v[j] += c[i] * spec.basis[i][j];
    for (std::size_t a = 0; a < spec.offsets.size(); ++a) {
      for (std::size_t b = 0; b < spec.offsets.size(); ++b) {
        if (code == 3280 && a == b) continue;  // all coefficients zero
        Vec8 p = spec.offsets[a];
        for (int j = 0; j < 8; ++j) p[j] += v[j];
        if (dist2(p, spec.offsets[b]) < sep2) {
          throw Error(ErrorKind::InvalidArgument,
                      "centers closer than separation " + std::to_string(spec.separation));
        }
      }
    }
  }
}

double periodic_density(const PeriodicPackingSpec& spec) {
  const double det = std::abs(determinant(spec.basis));
  if (!(det > 1e-12)) throw Error(ErrorKind::DegenerateBasis, "basis determinant is zero");
  validate_packing(spec);
  return static_cast<double>(spec.offsets.size()) * ball_volume(8, spec.separation / 2.0) / det;
}

bool check_separation(std::span<const Vec8> centers, double separation) {
  const double lim = separation - 1e-12;
  for (std::size_t i = 0; i < centers.size(); ++i)
    for (std::size_t j = i + 1; j < centers.size(); ++j)
      if (std::sqrt(dist2(centers[i], centers[j])) < lim) return false;
  return true;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("SPHEREPACK_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Vec8 sample_ball(std::uint64_t seed, std::uint64_t index, double radius) {
  Vec8 g{};
  double norm2 = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double u1 = unit(seed, index, 2 * k);
    const double u2 = unit(seed, index, 2 * k + 1);
    const double rho = std::sqrt(-2.0 * std::log(u1));
    g[2 * k] = rho * std::cos(2.0 * std::numbers::pi * u2);
    g[2 * k + 1] = rho * std::sin(2.0 * std::numbers::pi * u2);
    norm2 += g[2 * k] * g[2 * k] + g[2 * k + 1] * g[2 * k + 1];
  }
  const double scale = radius * std::pow(unit(seed, index, 8), 1.0 / 8.0) / std::sqrt(norm2);
  for (double& x : g) x *= scale;
  return g;
}

DensityEstimate finite_density_mc(const PeriodicPackingSpec& spec, const MonteCarloConfig& cfg) {
  if (!(cfg.radius > 0.0) || !std::isfinite(cfg.radius))
    throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  if (cfg.samples < 1) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  if (spec.kind == LatticeKind::Other)
    throw Error(ErrorKind::UnsupportedLattice, "Monte-Carlo decoding needs an E8 or Z8 basis");
  const double rho2 = 0.25 * spec.separation * spec.separation;

  auto count = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const Vec8 y = sample_ball(cfg.seed, i, cfg.radius);
      for (const Vec8& o : spec.offsets) {
        Vec8 shifted;
        for (int j = 0; j < 8; ++j) shifted[j] = y[j] - o[j];
        if (lattice_dist2(spec.kind, shifted) < rho2) {
          ++hits;
          break;
        }
      }
    }
    return hits;
  };

  const unsigned threads = static_cast<unsigned>(
      std::min<std::uint64_t>(cfg.threads ? cfg.threads : default_thread_count(), cfg.samples));
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  const std::uint64_t chunk = cfg.samples / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = t * chunk;
    const std::uint64_t end = t + 1 == threads ? cfg.samples : begin + chunk;
    if (threads == 1) {
      partial[t] = count(begin, end);
    } else {
      pool.emplace_back([&, t, begin, end] { partial[t] = count(begin, end); });
    }
  }
  for (auto& th : pool) th.join();

  DensityEstimate est;
  for (auto h : partial) est.hits += h;
  est.samples = cfg.samples;
  est.seed = cfg.seed;
  est.radius = cfg.radius;
  est.value = static_cast<double>(est.hits) / static_cast<double>(est.samples);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(est.samples));
  return est;
}

}  // namespace spherepack
