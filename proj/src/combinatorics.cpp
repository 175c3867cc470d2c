#include "hyperlab/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(c, r), saturating at 2^64 - 1.
std::uint64_t saturating_binomial(std::uint64_t c, std::uint64_t r) noexcept {
  if (r > c) return 0;
  if (r > c - r) r = c - r;
  unsigned __int128 acc = 1;
  for (std::uint64_t t = 1; t <= r; ++t) {
    acc = acc * (c - r + t) / t;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace

mpz_class binomial(unsigned long n, unsigned long r) {
  mpz_class out;
  if (r > n) return out;  // zero
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

mpz_class falling_factorial(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  mpz_class out = 1;
  for (unsigned long i = 0; i < k; ++i) out *= n - i;
  return out;
}

mpz_class factorial(unsigned long n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r) {
  const std::uint64_t v = saturating_binomial(n, r);
  if (v == kSaturated) {
    throw std::overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(r) +
                              ") does not fit in 64 bits");
  }
  return v;
}

double log_of(const mpz_class& x) {
  if (sgn(x) <= 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

double log_of(const mpq_class& x) {
  if (sgn(x) <= 0) return -std::numeric_limits<double>::infinity();
  return log_of(mpz_class(x.get_num())) - log_of(mpz_class(x.get_den()));
}

void validate_subset(std::span<const Vertex> s, std::uint32_t n, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 1 || s[i] > n) {
      throw ValidationError(std::string(what) + ": element " + std::to_string(s[i]) +
                            " outside [1, " + std::to_string(n) + "]");
    }
    if (i > 0 && s[i] <= s[i - 1]) {
      throw ValidationError(std::string(what) + ": elements must be strictly increasing");
    }
  }
}

Rank rank_sorted(std::span<const Vertex> s) noexcept {
  Rank r = 0;
  for (std::size_t i = 0; i < s.size(); ++i) r += saturating_binomial(s[i] - 1, i + 1);
  return r;
}

void unrank_into(Rank rank, std::span<Vertex> out) noexcept {
  for (std::size_t i = out.size(); i > 0; --i) {
    // largest c with C(c, i) <= rank
    std::uint64_t lo = i - 1;  // C(i-1, i) = 0 <= rank
    std::uint64_t hi = i;
    while (saturating_binomial(hi, i) <= rank) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (saturating_binomial(mid, i) <= rank) lo = mid; else hi = mid;
    }
    out[i - 1] = static_cast<Vertex>(lo + 1);
    rank -= saturating_binomial(lo, i);
  }
}

Rank rank_subset(std::span<const Vertex> s, std::uint32_t n) {
  validate_subset(s, n, "rank_subset");
  if (saturating_binomial(n, s.size()) == kSaturated) {
    throw std::overflow_error("rank_subset: C(n, size) does not fit in 64 bits");
  }
  return rank_sorted(s);
}

VertexSet unrank_subset(Rank rank, std::uint32_t size, std::uint32_t n) {
  if (size > n || rank >= saturating_binomial(n, size)) {
    throw std::out_of_range("unrank_subset: rank " + std::to_string(rank) +
                            " out of range for C(" + std::to_string(n) + ", " +
                            std::to_string(size) + ")");
  }
  VertexSet out(size);
  unrank_into(rank, out);
  return out;
}

std::string format_set(std::span<const Vertex> s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out;
}

VertexSet parse_set(const std::string& text) {
  VertexSet out;
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ',' || c == '{' || c == '}' || c == '[' || c == ']') c = ' ';
  }
  std::istringstream in(cleaned);
  long long v = 0;
  while (in >> v) {
    if (v < 1 || v > std::numeric_limits<Vertex>::max()) {
      throw ValidationError("parse_set: bad vertex id in '" + text + "'");
    }
    out.push_back(static_cast<Vertex>(v));
  }
  if (!in.eof()) throw ValidationError("parse_set: cannot parse '" + text + "'");
  return out;
}

TheoryParams TheoryParams::make(std::uint32_t n, std::uint32_t k, std::uint32_t j, double epsilon) {
  if (k < 2) throw ValidationError("k must be at least 2");
  if (j < 1 || j >= k) throw ValidationError("j must satisfy 1 <= j <= k - 1");
  if (n < k) throw ValidationError("n must be at least k");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");

  TheoryParams t;
  t.n = n;
  t.k = k;
  t.j = j;
  t.epsilon = epsilon;
  t.c0 = binomial_u64(k, j) - 1;
  t.supersets = binomial_u64(n - j, k - j);
  t.p0 = 1.0 / (static_cast<double>(t.c0) * static_cast<double>(t.supersets));
  t.p = (1.0 - epsilon) * t.p0;
  t.delta = -epsilon - std::log1p(-epsilon);
  t.jsets = binomial(n, j).get_d();
  t.lambda = epsilon * epsilon * epsilon * t.jsets;
  return t;
}

}  // namespace hyperlab
