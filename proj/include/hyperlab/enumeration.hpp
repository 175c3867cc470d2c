#pragma once

#include <cstdint>

#include <gmpxx.h>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/series.hpp"

namespace hyperlab {

// ---------------------------------------------------------------------------
// Series

/// W(z)^r where z = W e^W, from the closed form
/// [z^i] W^r = -r (-i)^(i - r - 1) / (i - r)!  for i >= r.
RationalSeries lambert_power_coefficients(unsigned r, std::size_t i_max);

/// The series T with T(0) = 0 and T = exp(z (1 + T)^c0) - 1, to order s_max.
/// Computed by fixed-point iteration; each pass fixes one more coefficient.
RationalSeries tj_series_fixed_point(std::uint64_t c0, std::size_t s_max);

// ---------------------------------------------------------------------------
// Rooted two-type trees

/// F_s = sum_{r=1}^{s} c0^(s-r) s^(s-r-1) / ((r-1)! (s-r)!), exact.
mpq_class f_s(std::uint64_t c0, std::uint64_t s);
/// log F_s in floating point, for s too large to keep exact.
double log_f_s(std::uint64_t c0, std::uint64_t s);

/// B_s = C(n, j) C(n-j, k-j)^s F_s, exact.
mpq_class b_s(const TheoryParams& params, std::uint64_t s);
double log_b_s(const TheoryParams& params, std::uint64_t s);

/// Two-sided rational bounds on exp(x) for 0 <= x <= 1: the partial sum up
/// to x^terms/terms! below, plus a geometric bound on the tail above.
struct ExpBounds {
  mpq_class lower;
  mpq_class upper;
};
ExpBounds exp_bounds(const mpq_class& x, unsigned terms);

/// F_s against base = c0^(s-1) s^(s-1) / s!:  base <= F_s <= base e^(1/c0).
struct FsBracket {
  mpq_class base;
  mpq_class upper;       ///< base times a rational upper bound on e^(1/c0)
  bool holds = false;    ///< base <= F_s <= upper
  bool strict = false;   ///< F_s < base times a rational lower bound on e^(1/c0)
};
FsBracket fs_bracket(std::uint64_t c0, std::uint64_t s);

struct EnumReport {
  std::uint64_t s = 0;
  mpq_class f_s;
  mpq_class b_s;
  mpq_class lower;
  mpq_class upper;
  bool bounds_hold = false;
};
EnumReport enum_report(const TheoryParams& params, std::uint64_t s);

/// Exhaustive count of branching-process trees with s type-k vertices:
/// sibling k-labels distinct, repeats across generations allowed.
/// `hypertree_only` counts those whose labels are all distinct.
/// Guarded to C(n, k) <= 64 and s <= 4.
struct BsCensus {
  std::uint64_t total = 0;
  std::uint64_t hypertree_only = 0;
};
BsCensus brute_force_Bs(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t s);

// ---------------------------------------------------------------------------
// Wheels, tails and bounds

/// c_w = (k-j)^j / (j! (k-j)!) * prod_{m=1}^{j-1} (1 - (C(k-m, j-m) - 1) / c0)^(-1)
mpq_class wheel_constant(std::uint32_t k, std::uint32_t j);

struct WheelBound {
  mpq_class c_w;
  mpq_class exact;  ///< c_w n^(k-j) / (p0^(ell-1) ell), p0 taken exactly
  double bound = 0.0;
};
WheelBound wheel_bound(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t ell);

struct LaplaceCheck {
  double lhs = 0.0;  ///< sum_{i=1}^{s} i^a s_(i) / s^i
  double rhs = 0.0;  ///< 5 (2a)^(a/2) s^((a+1)/2)
  bool holds = false;
};
/// Requires s >= (16a)^2.
LaplaceCheck laplace_sum_check(unsigned a, std::uint64_t s);

/// B_s p^s (1-p)^((1 + c0 s) C(n-j,k-j) - s (1 + c0)): upper bound on the
/// expected number of type-j vertices in size-s branching instances.
double expected_Rs_upper(const TheoryParams& params, std::uint64_t s);

/// B_s p^s (1-p)^((1 + s c0) C(n-j,k-j)). A reference value for the expected
/// number of j-sets in size-s hypertree components; B_s stands in for the
/// count of label-distinct trees, so this is not a rigorous lower bound.
double expected_Cs_lower_reference(const TheoryParams& params, std::uint64_t s);

inline constexpr double kUnicycleConstant = 244.0;

/// Natural log of constant * c0^2 c_w n^(k-j) p0^(1-s) s^(s+1/2) / s!.
/// The bound itself overflows doubles for moderate s. Requires s >= 1024.
double log_unicycle_bound(const TheoryParams& params, std::uint64_t s,
                          double constant = kUnicycleConstant);

/// delta^-1 (log lambda - 5/2 log log lambda). Requires lambda > e.
double predicted_L1(const TheoryParams& params);
/// c0 * predicted_L1: the matching number of j-sets.
double predicted_order(const TheoryParams& params);
/// delta L - (log lambda - 5/2 log log lambda). Requires lambda > e.
double centered_size(const TheoryParams& params, double size);

}  // namespace hyperlab
