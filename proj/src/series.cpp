#include "hyperlab/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace hyperlab {

RationalSeries::RationalSeries(std::size_t order) : coeffs_(order + 1) {}

RationalSeries::RationalSeries(std::vector<mpq_class> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.resize(1);
}

RationalSeries RationalSeries::constant(const mpq_class& c, std::size_t order) {
  RationalSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

RationalSeries RationalSeries::variable(std::size_t order) {
  RationalSeries s(order);
  if (order >= 1) s.coeffs_[1] = 1;
  return s;
}

RationalSeries& RationalSeries::operator+=(const RationalSeries& rhs) {
  const std::size_t n = std::min(coeffs_.size(), rhs.coeffs_.size());
  coeffs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

RationalSeries& RationalSeries::operator-=(const RationalSeries& rhs) {
  const std::size_t n = std::min(coeffs_.size(), rhs.coeffs_.size());
  coeffs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

RationalSeries& RationalSeries::operator*=(const mpq_class& scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
  const std::size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
  RationalSeries out(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t t = 0; i + t < n; ++t) out.coeffs_[i + t] += a.coeffs_[i] * b.coeffs_[t];
  }
  return out;
}

RationalSeries RationalSeries::shifted() const {
  RationalSeries out(order());
  for (std::size_t i = 1; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i - 1];
  return out;
}

RationalSeries RationalSeries::pow(unsigned exponent) const {
  RationalSeries result = constant(1, order());
  RationalSeries base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

RationalSeries RationalSeries::exp() const {
  if (sgn(coeffs_[0]) != 0) throw std::domain_error("series exp: constant term must be zero");
  // E' = f' E  =>  n e_n = sum_{i=1}^{n} i f_i e_{n-i}
  const std::size_t n = coeffs_.size();
  RationalSeries out(n - 1);
  out.coeffs_[0] = 1;
  for (std::size_t m = 1; m < n; ++m) {
    mpq_class acc = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      if (sgn(coeffs_[i]) != 0) acc += mpq_class(static_cast<unsigned long>(i)) * coeffs_[i] * out.coeffs_[m - i];
    }
    acc /= static_cast<unsigned long>(m);
    out.coeffs_[m] = acc;
  }
  return out;
}

RationalSeries RationalSeries::compose(const RationalSeries& inner) const {
  if (sgn(inner.coeffs_[0]) != 0) throw std::domain_error("series compose: inner constant term must be zero");
  const std::size_t ord = std::min(order(), inner.order());
  RationalSeries trimmed_inner(std::vector<mpq_class>(inner.coeffs_.begin(), inner.coeffs_.begin() + ord + 1));
  // Horner: f(g) = c0 + g (c1 + g (c2 + ...))
  RationalSeries acc = constant(coeffs_[ord], ord);
  for (std::size_t i = ord; i-- > 0;) {
    acc = acc * trimmed_inner;
    acc.coeffs_[0] += coeffs_[i];
  }
  return acc;
}

}  // namespace hyperlab
