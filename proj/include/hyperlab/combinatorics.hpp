#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hyperlab {

using Vertex = std::uint32_t;
/// A subset of [n], 1-based, sorted ascending.
using VertexSet = std::vector<Vertex>;
/// Position of a subset in colexicographic order, starting at 0.
using Rank = std::uint64_t;

// ---------------------------------------------------------------------------
// Exact arithmetic

mpz_class binomial(unsigned long n, unsigned long r);
mpz_class falling_factorial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

/// C(n, r) in 64 bits; throws std::overflow_error if it does not fit.
std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r);

/// Natural logarithm of a positive big integer / rational without
/// converting through double (which would overflow).
double log_of(const mpz_class& x);
double log_of(const mpq_class& x);

// ---------------------------------------------------------------------------
// Colex ranking. rank(S) = sum_i C(s_i - 1, i) for S = {s_1 < ... < s_r}.

/// Throws ValidationError for unsorted, duplicate or out-of-range elements.
Rank rank_subset(std::span<const Vertex> s, std::uint32_t n);

/// Inverse of rank_subset. Throws std::out_of_range if rank >= C(n, size).
VertexSet unrank_subset(Rank rank, std::uint32_t size, std::uint32_t n);

/// Unchecked variants for hot loops. `out.size()` is the subset size.
Rank rank_sorted(std::span<const Vertex> s) noexcept;
void unrank_into(Rank rank, std::span<Vertex> out) noexcept;

/// Throws ValidationError unless s is a strictly increasing subset of [n].
void validate_subset(std::span<const Vertex> s, std::uint32_t n, const char* what);

/// Calls f(subset) for each size-r subset of `set` (sorted), in colex order
/// of the chosen positions. The span passed to f is only valid during the call.
template <class F>
void for_each_subset(std::span<const Vertex> set, std::uint32_t r, F&& f) {
  const std::size_t m = set.size();
  if (r > m) return;
  std::vector<std::uint32_t> pos(r);
  for (std::uint32_t i = 0; i < r; ++i) pos[i] = i;
  std::vector<Vertex> out(r);
  while (true) {
    for (std::uint32_t i = 0; i < r; ++i) out[i] = set[pos[i]];
    f(std::span<const Vertex>(out));
    // colex successor: bump the lowest position that can move
    std::uint32_t i = 0;
    while (i < r && pos[i] + 1 == (i + 1 < r ? pos[i + 1] : m)) ++i;
    if (i == r) return;
    ++pos[i];
    for (std::uint32_t t = 0; t < i; ++t) pos[t] = t;
  }
}

/// "1,2,3"
std::string format_set(std::span<const Vertex> s);
/// Parses "1,2,3" (also accepts spaces). Does not validate ordering.
VertexSet parse_set(const std::string& text);

// ---------------------------------------------------------------------------

/// The constants derived from (n, k, j, epsilon) for the subcritical regime
/// p = (1 - epsilon) p0.
struct TheoryParams {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t j = 0;
  double epsilon = 0.0;
  std::uint64_t c0 = 0;         ///< C(k, j) - 1
  std::uint64_t supersets = 0;  ///< C(n - j, k - j): k-sets containing a fixed j-set
  double p0 = 0.0;              ///< 1 / (c0 * supersets)
  double p = 0.0;               ///< (1 - epsilon) p0
  double delta = 0.0;           ///< -epsilon - log(1 - epsilon)
  double lambda = 0.0;          ///< epsilon^3 C(n, j)
  double jsets = 0.0;           ///< C(n, j)

  /// Throws ValidationError unless k >= 2, 1 <= j <= k - 1, n >= k and
  /// 0 < epsilon < 1.
  static TheoryParams make(std::uint32_t n, std::uint32_t k, std::uint32_t j, double epsilon);
};

}  // namespace hyperlab
