#include "spherepack/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

#include "spherepack/error.hpp"

namespace spherepack {

const char* to_string(Nome nome) noexcept { return nome == Nome::Q2 ? "Q2" : "Q4"; }

namespace {

void require_same_nome(const QSeries& a, const QSeries& b) {
  if (a.nome() != b.nome()) {
    throw Error(ErrorKind::NomeMismatch,
                std::string("cannot combine ") + to_string(a.nome()) + " and " + to_string(b.nome()));
  }
}

std::vector<int> nonzero_offsets(std::span<const QSeries::Coeff> c) {
  std::vector<int> idx;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) != 0) idx.push_back(static_cast<int>(k));
  }
  return idx;
}

}  // namespace

QSeries::QSeries(Nome nome, int lowest, int order, std::vector<Coeff> coeffs)
    : nome_(nome), lowest_(lowest), order_(order), coeffs_(std::move(coeffs)) {
  if (order_ < lowest_ - 1) order_ = lowest_ - 1;
  coeffs_.resize(static_cast<std::size_t>(order_ - lowest_ + 1));
}

QSeries QSeries::zero(Nome nome, int order) { return QSeries(nome, 0, order, {}); }

QSeries QSeries::constant(Nome nome, const Coeff& value, int order) {
  return monomial(nome, 0, value, order);
}

QSeries QSeries::monomial(Nome nome, int exponent, const Coeff& value, int order) {
  std::vector<Coeff> c(static_cast<std::size_t>(std::max(order - exponent + 1, 0)));
  if (!c.empty()) c[0] = value;
  return QSeries(nome, exponent, order, std::move(c));
}

QSeries::Coeff QSeries::coeff(int exponent) const {
  if (exponent > order_) {
    throw Error(ErrorKind::InvalidArgument, "coefficient " + std::to_string(exponent) +
                                                " requested beyond truncation order " +
                                                std::to_string(order_));
  }
  if (exponent < lowest_) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - lowest_)];
}

int QSeries::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) != 0) return lowest_ + static_cast<int>(k);
  }
  return order_ + 1;
}

bool QSeries::is_zero() const { return valuation() > order_; }

QSeries QSeries::truncated(int order) const {
  if (order >= order_) return *this;
  std::vector<Coeff> c(coeffs_.begin(),
                       coeffs_.begin() + std::max(order - lowest_ + 1, 0));
  return QSeries(nome_, lowest_, order, std::move(c));
}

QSeries QSeries::tail_from(int exponent) const {
  if (exponent <= lowest_) return *this;
  const int start = std::min(exponent, order_ + 1);
  std::vector<Coeff> c(coeffs_.begin() + (start - lowest_), coeffs_.end());
  return QSeries(nome_, start, order_, std::move(c));
}

QSeries QSeries::to_q4() const {
  if (nome_ == Nome::Q4) return *this;
  const int lo = 8 * lowest_;
  const int hi = 8 * order_ + 7;  // exact up to the next Q2 power
  std::vector<Coeff> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[8 * k] = coeffs_[k];
  return QSeries(Nome::Q4, lo, hi, std::move(c));
}

int QSeries::exponent_stride() const {
  int g = 0;
  const int v = valuation();
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) != 0) g = std::gcd(g, lowest_ + static_cast<int>(k) - v);
  }
  return g;
}

std::string QSeries::to_string(int max_terms) const {
  std::ostringstream os;
  int shown = 0;
  for (std::size_t k = 0; k < coeffs_.size() && shown < max_terms; ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (shown++) os << " + ";
    os << coeffs_[k].get_str() << "*" << spherepack::to_string(nome_) << "^"
       << (lowest_ + static_cast<int>(k));
  }
  if (shown == 0) os << "0";
  os << " + O(" << spherepack::to_string(nome_) << "^" << order_ + 1 << ")";
  return os.str();
}

QSeries series_add(const QSeries& a, const QSeries& b) {
  require_same_nome(a, b);
  const int lo = std::min(a.lowest(), b.lowest());
  const int hi = std::min(a.order(), b.order());
  std::vector<QSeries::Coeff> c(static_cast<std::size_t>(std::max(hi - lo + 1, 0)));
  for (int e = lo; e <= hi; ++e) c[e - lo] = a.coeff(e) + b.coeff(e);
  return QSeries(a.nome(), lo, hi, std::move(c));
}

QSeries series_scale(const QSeries& a, const QSeries::Coeff& factor) {
  std::vector<QSeries::Coeff> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= factor;
  return QSeries(a.nome(), a.lowest(), a.order(), std::move(c));
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
  require_same_nome(a, b);
  const int va = a.valuation();
  const int vb = b.valuation();
  const int lo = a.lowest() + b.lowest();
  const int hi = std::min(a.order() + vb, b.order() + va);
  std::vector<QSeries::Coeff> c(static_cast<std::size_t>(std::max(hi - lo + 1, 0)));
  const auto ia = nonzero_offsets(a.coeffs());
  const auto ib = nonzero_offsets(b.coeffs());
  for (int i : ia) {
    for (int j : ib) {
      const int k = i + j;
      if (lo + k > hi) break;
      c[k] += a.coeffs()[i] * b.coeffs()[j];
    }
  }
  return QSeries(a.nome(), lo, hi, std::move(c));
}

QSeries series_pow(const QSeries& a, unsigned exponent) {
  if (exponent == 0) return QSeries::constant(a.nome(), 1, a.order() - a.valuation());
  std::optional<QSeries> result;
  QSeries base = a;
  while (true) {
    if (exponent & 1U) result = result ? series_mul(*result, base) : base;
    exponent >>= 1U;
    if (exponent == 0) break;
    base = series_mul(base, base);
  }
  return *result;
}

QSeries series_div(const QSeries& a, const QSeries& b) {
  require_same_nome(a, b);
  const int vb = b.valuation();
  if (vb > b.order()) throw Error(ErrorKind::DivisionByZeroSeries, "divisor is the zero series");
  const int va = a.valuation();
  const int lo = va - vb;
  // a = x^va A, b = x^vb B, A/B exact through x^(min(Na - va, Nb - vb)).
  const int width = std::min(a.order() - va, b.order() - vb);
  if (width < 0) return QSeries::zero(a.nome(), a.order() - vb);
  std::vector<QSeries::Coeff> bn(static_cast<std::size_t>(b.order() - vb + 1));
  for (int e = vb; e <= b.order(); ++e) bn[e - vb] = b.coeff(e);
  const auto ib = nonzero_offsets(bn);
  const QSeries::Coeff lead_inv = 1 / bn[0];
  std::vector<QSeries::Coeff> c(static_cast<std::size_t>(width + 1));
  for (int k = 0; k <= width; ++k) {
    QSeries::Coeff s = a.coeff(va + k);
    for (int j : ib) {
      if (j == 0) continue;
      if (j > k) break;
      if (sgn(c[k - j]) != 0) s -= c[k - j] * bn[j];
    }
    c[k] = s * lead_inv;
  }
  return QSeries(a.nome(), lo, lo + width, std::move(c));
}

QSeries operator+(const QSeries& a, const QSeries& b) { return series_add(a, b); }
QSeries operator-(const QSeries& a) { return series_scale(a, -1); }
QSeries operator-(const QSeries& a, const QSeries& b) { return series_add(a, -b); }
QSeries operator*(const QSeries& a, const QSeries& b) { return series_mul(a, b); }
QSeries operator/(const QSeries& a, const QSeries& b) { return series_div(a, b); }

}  // namespace spherepack
