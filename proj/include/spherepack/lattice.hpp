#pragma once

// The E8 lattice in doubled coordinates.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spherepack {

/// An 8-vector with half-integer coordinates, stored as twice the coordinates.
struct LatticeVector {
  std::array<int, 8> half_coords{};

  /// 4 |v|^2, the squared norm of the doubled coordinates.
  long norm2_times4() const noexcept;
  /// |v|^2; exact for lattice vectors (always an even integer).
  long norm2() const noexcept { return norm2_times4() / 4; }
  std::array<double, 8> coords() const noexcept;

  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
};

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);

struct Shell {
  long norm2 = 0;
  std::uint64_t count = 0;
  std::optional<std::vector<LatticeVector>> vectors;
};

struct LatticeBasis {
  std::array<LatticeVector, 8> rows;
};

/// Membership for doubled coordinates: same parity everywhere and sum of coordinates even.
bool e8_membership(std::span<const int, 8> half_coords) noexcept;
bool e8_membership(const LatticeVector& v) noexcept;

LatticeBasis e8_basis();

/// Exact determinant of the rows in true (undoubled) coordinates.
mpq_class basis_determinant(const LatticeBasis& b);
/// Gram matrix B B^T in true coordinates.
std::array<std::array<mpq_class, 8>, 8> gram_matrix(const LatticeBasis& b);

struct EnumerationConfig {
  long cap = 100;
};

/// Every nonzero v in E8 with |v|^2 <= max_norm2, grouped into shells by norm^2.
std::vector<Shell> enumerate_shells(long max_norm2, bool with_vectors, EnumerationConfig cfg = {});

double min_norm();

struct Decoded {
  LatticeVector point;
  double distance = 0.0;
};

/// Closest point of D8 union (D8 + 1/2) to y.
Decoded nearest_point(std::span<const double, 8> y);

double covolume();

/// r(n) = #{v : |v|^2 = 2n}, n = 0..max_n.
std::vector<std::uint64_t> theta_coefficients(int max_n, EnumerationConfig cfg = {});

}  // namespace spherepack
