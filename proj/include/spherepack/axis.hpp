#pragma once

// Restriction of forms to the positive imaginary axis and the sign checks on
// phi0 +- (36/pi^2) psi_S there.

#include <span>
#include <string_view>
#include <vector>

#include "spherepack/forms.hpp"

namespace spherepack {

/// 36 / pi^2
inline constexpr double kEq2Weight = 36.0 / (3.141592653589793 * 3.141592653589793);

enum class KernelConvention { Direct, STransformedWeighted };

std::string_view to_string(KernelConvention c) noexcept;
/// Accepts "direct" and "sweighted".
KernelConvention convention_from_string(std::string_view name);

/// F(it) for t > 0, exactly 0 for t <= 0.
Complex res_to_imag_axis(const FormLibrary& forms, FormId id, double t);

/// max |Im F(it)| / |F(it)| over the grid.
double check_realness(const FormLibrary& forms, FormId id, std::span<const double> ts);

struct AxisSample {
  double t = 0.0;
  double phi0 = 0.0;
  double psiS = 0.0;
  double combo_plus = 0.0;   // phi0 + (36/pi^2) psiS
  double combo_minus = 0.0;  // phi0 - (36/pi^2) psiS
};

/// Direct: phi0(it), psi_S(it). STransformedWeighted: t^2 phi0(i/t), t^2 psi_S(i/t) = -psi_I(it).
/// The combinations are evaluated with the growing parts cancelled analytically.
AxisSample eq2_sample(const FormLibrary& forms, double t, KernelConvention c);
std::vector<AxisSample> eq2_samples(const FormLibrary& forms, std::span<const double> ts, KernelConvention c);

/// n logarithmically spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

struct InequalityReport {
  KernelConvention convention = KernelConvention::STransformedWeighted;
  std::size_t samples = 0;
  double min_plus = 0.0;
  double argmin_plus = 0.0;
  double min_minus = 0.0;
  double argmin_minus = 0.0;
  bool refined = false;
  bool pass = false;
};

/// Minima of both combinations over the grid, refined 4x around any minimum
/// below 1e-3 |phi0|. pass <=> both minima > 0.
InequalityReport verify_inequalities(const FormLibrary& forms, std::span<const double> ts, KernelConvention c);

}  // namespace spherepack
