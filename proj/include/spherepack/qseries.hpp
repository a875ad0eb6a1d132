#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

namespace spherepack {

/// Expansion variable of a truncated series. Q2 = e^{2 pi i tau}, Q4 = e^{pi i tau / 4}.
enum class Nome { Q2, Q4 };

const char* to_string(Nome nome) noexcept;

/// Truncated Laurent series in a nome with exact rational coefficients.
///
/// The stored window covers exponents lowest() ... order(); every coefficient in
/// that window is exact, everything above order() is unknown. Arithmetic tracks
/// the order through which results remain exact.
class QSeries {
 public:
  using Coeff = mpq_class;

  QSeries(Nome nome, int lowest, int order, std::vector<Coeff> coeffs);

  static QSeries zero(Nome nome, int order);
  static QSeries constant(Nome nome, const Coeff& value, int order);
  static QSeries monomial(Nome nome, int exponent, const Coeff& value, int order);

  Nome nome() const noexcept { return nome_; }
  int lowest() const noexcept { return lowest_; }
  int order() const noexcept { return order_; }
  std::span<const Coeff> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of nome^exponent; zero below lowest(). Throws above order().
  Coeff coeff(int exponent) const;

  /// Exponent of the first nonzero coefficient, or order() + 1 for the zero series.
  int valuation() const;
  bool is_zero() const;

  QSeries truncated(int order) const;
  /// Drops every term with exponent below `exponent`.
  QSeries tail_from(int exponent) const;
  /// Re-expresses a Q2 series in Q4 (exponents scale by 8). Identity on Q4.
  QSeries to_q4() const;

  /// Largest d with every nonzero exponent congruent to valuation() mod d (0 if at most one term).
  int exponent_stride() const;

  std::string to_string(int max_terms = 8) const;

 private:
  Nome nome_;
  int lowest_;
  int order_;
  std::vector<Coeff> coeffs_;
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator/(const QSeries& a, const QSeries& b);

QSeries series_add(const QSeries& a, const QSeries& b);
QSeries series_mul(const QSeries& a, const QSeries& b);
QSeries series_scale(const QSeries& a, const QSeries::Coeff& factor);
QSeries series_pow(const QSeries& a, unsigned exponent);
QSeries series_div(const QSeries& a, const QSeries& b);

}  // namespace spherepack
