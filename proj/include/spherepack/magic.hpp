#pragma once

// The radial eigenfunctions a, b and their combinations g, g_hat, by contour
// quadrature, plus the d = 8 radial Fourier (Hankel) transform used to check them.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "spherepack/forms.hpp"

namespace spherepack {

enum class Integrand {
  Phi0ShiftPlus,   // phi0(-1/(z+1)) (z+1)^2
  Phi0ShiftMinus,  // phi0(-1/(z-1)) (z-1)^2
  Phi0Inverted,    // phi0(-1/z) z^2
  Phi0Direct,      // phi0(z)
  PsiSShiftPlus,
  PsiSShiftMinus,
  PsiSInverted,
  PsiSDirect,
};

std::string_view to_string(Integrand k) noexcept;

struct ContourSegment {
  Complex start;
  Complex end;  // for rays: start + i * infinity
  Integrand integrand;
  Complex coefficient;
  bool is_ray = false;
};

struct QuadratureConfig {
  int gauss_order = 32;
  int panels_per_segment = 8;
  double ray_truncation = 12.0;
  double tail_tol = 1e-12;

  /// Throws Config on out-of-range fields.
  void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

std::vector<ContourSegment> contour_segments_a(double r2);
std::vector<ContourSegment> contour_segments_b(double r2);

/// coefficient * integral of the integrand times e^{pi i r2 z} along the segment.
Complex segment_integral(const ContourSegment& seg, double r2, const QuadratureConfig& quad,
                         const FormLibrary& forms);

enum class RadialKind { A, B, G, GHat };

std::string_view to_string(RadialKind k) noexcept;
RadialKind radial_kind_from_string(std::string_view name);

struct RadialTable {
  std::vector<double> radii;
  std::vector<double> values;
  RadialKind which = RadialKind::A;
};

/// a, b, g, g_hat at a fixed quadrature configuration. a and b are purely
/// imaginary; tables of A and B hold their imaginary parts.
class MagicFunction {
 public:
  explicit MagicFunction(QuadratureConfig quad = {}, FormsConfig forms = {});

  const QuadratureConfig& quadrature() const noexcept { return quad_; }
  const FormLibrary& forms() const noexcept { return forms_; }

  /// Sum of the six segment integrals. Throws NonRealValue if Re is not negligible.
  Complex eval_a(double r) const;
  Complex eval_b(double r) const;

  /// Single-integral representation valid for r >= sqrt(2).
  Complex eval_a_propagated(double r) const;
  Complex eval_b_propagated(double r) const;

  /// Re((pi i/8640) a + (i/(240 pi)) b).
  double eval_g(double r) const;
  /// Re((pi i/8640) a - (i/(240 pi)) b).
  double eval_g_hat(double r) const;

  Complex a0() const noexcept { return a0_; }
  Complex b0() const noexcept { return b0_; }
  double g0() const noexcept { return g0_; }
  double g_hat0() const noexcept { return ghat0_; }

  double eval(RadialKind k, double r) const;

  /// Evaluates on every radius; threads = 0 picks the default count.
  RadialTable tabulate_radial(RadialKind k, std::span<const double> radii, unsigned threads = 0) const;

 private:
  Complex contour_sum(const std::vector<ContourSegment>& segs, double r) const;
  double combine(Complex a, Complex b, double sign, const char* what) const;

  QuadratureConfig quad_;
  FormLibrary forms_;
  Complex a0_;
  Complex b0_;
  double g0_ = 0.0;
  double ghat0_ = 0.0;
};

/// Bessel function of the first kind J_n, 0 <= n <= 3, x >= 0.
double bessel_j(int n, double x);

/// Cubic interpolation of the table at s (local four-point Lagrange).
double interpolate(const RadialTable& table, double s);

/// 2 pi r^{-3} int_0^smax f(s) J_3(2 pi r s) s^4 ds for the interpolated table.
double hankel8(const RadialTable& table, double r);

}  // namespace spherepack
