#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace hyperlab {

/// Truncated formal power series with exact rational coefficients.
/// Holds [z^0] .. [z^order]; products and compositions drop higher terms.
class RationalSeries {
 public:
  explicit RationalSeries(std::size_t order);
  explicit RationalSeries(std::vector<mpq_class> coefficients);

  static RationalSeries constant(const mpq_class& c, std::size_t order);
  static RationalSeries variable(std::size_t order);  ///< z

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const mpq_class& operator[](std::size_t i) const { return coeffs_.at(i); }
  mpq_class& operator[](std::size_t i) { return coeffs_.at(i); }
  const std::vector<mpq_class>& coefficients() const noexcept { return coeffs_; }

  RationalSeries& operator+=(const RationalSeries& rhs);
  RationalSeries& operator-=(const RationalSeries& rhs);
  RationalSeries& operator*=(const mpq_class& scale);

  friend RationalSeries operator+(RationalSeries a, const RationalSeries& b) { return a += b; }
  friend RationalSeries operator-(RationalSeries a, const RationalSeries& b) { return a -= b; }
  friend RationalSeries operator*(RationalSeries a, const mpq_class& s) { return a *= s; }
  friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
  friend bool operator==(const RationalSeries& a, const RationalSeries& b) { return a.coeffs_ == b.coeffs_; }

  /// Multiplication by z (the top coefficient falls off).
  RationalSeries shifted() const;
  RationalSeries pow(unsigned exponent) const;
  /// exp(f) for f with zero constant term (throws std::domain_error otherwise).
  RationalSeries exp() const;
  /// f(g(z)) for g with zero constant term.
  RationalSeries compose(const RationalSeries& inner) const;

 private:
  std::vector<mpq_class> coeffs_;
};

}  // namespace hyperlab
