#pragma once

// Periodic sphere packings in R^8: closed-form density and a Monte-Carlo
// estimate of the finite density inside B(0, R).

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "spherepack/lattice.hpp"

namespace spherepack {

using Vec8 = std::array<double, 8>;
using Matrix8 = std::array<Vec8, 8>;

/// Which nearest-point decoder applies to the basis. Other bases get the closed
/// form only.
enum class LatticeKind { E8, Z8, Other };

struct PeriodicPackingSpec {
  Matrix8 basis{};
  LatticeKind kind = LatticeKind::Other;
  std::vector<Vec8> offsets;
  double separation = 0.0;
};

PeriodicPackingSpec e8_packing();
PeriodicPackingSpec z8_packing(double separation = 1.0);

struct DensityEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
  double radius = 0.0;
};

double ball_volume(int d, double r);

/// Determinant by partial-pivot elimination.
double determinant(const Matrix8& m);

/// Checks separation between centers o_i + v and o_j for lattice vectors v
/// with coefficients in {-1, 0, 1}. Throws InvalidArgument on a violation.
void validate_packing(const PeriodicPackingSpec& spec);

/// m * Vol(B_8(separation / 2)) / |det basis|.
double periodic_density(const PeriodicPackingSpec& spec);

bool check_separation(std::span<const Vec8> centers, double separation);

struct MonteCarloConfig {
  double radius = 5.0;
  std::uint64_t samples = 2'000'000;
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: SPHEREPACK_THREADS or hardware concurrency
};

/// Threads to use when none are requested explicitly.
unsigned default_thread_count();

/// Uniform sample in B(0, radius) for sample `index`; depends only on (seed, index).
Vec8 sample_ball(std::uint64_t seed, std::uint64_t index, double radius);

DensityEstimate finite_density_mc(const PeriodicPackingSpec& spec, const MonteCarloConfig& cfg);

}  // namespace spherepack
