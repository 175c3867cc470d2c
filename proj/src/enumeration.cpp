#include "hyperlab/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "hyperlab/errors.hpp"

namespace hyperlab {

namespace {

mpz_class upow(std::uint64_t base, std::uint64_t e) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, e);
  return out;
}

// s^e for e >= -1
mpq_class pow_down_to_minus_one(std::uint64_t s, std::int64_t e) {
  if (e >= 0) return mpq_class(upow(s, static_cast<std::uint64_t>(e)));
  return mpq_class(1, static_cast<unsigned long>(s));
}

double log_sum_exp(const std::vector<double>& terms) {
  const double m = *std::max_element(terms.begin(), terms.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - m);
  return m + std::log(acc);
}

}  // namespace

RationalSeries lambert_power_coefficients(unsigned r, std::size_t i_max) {
  if (r < 1) throw ValidationError("lambert_power_coefficients: r must be positive");
  RationalSeries out(i_max);
  for (std::size_t i = r; i <= i_max; ++i) {
    const auto e = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(r) - 1;
    mpq_class power;  // (-i)^e
    if (e >= 0) {
      power = upow(i, static_cast<std::uint64_t>(e));
      if (e % 2) power = -power;
    } else {
      power = mpq_class(-1, static_cast<unsigned long>(i));
    }
    out[i] = -mpq_class(r) * power / factorial(i - r);
  }
  return out;
}

RationalSeries tj_series_fixed_point(std::uint64_t c0, std::size_t s_max) {
  if (s_max < 1) throw ValidationError("tj_series_fixed_point: s_max must be positive");
  const RationalSeries one = RationalSeries::constant(1, s_max);
  RationalSeries t(s_max);
  for (std::size_t iter = 0; iter <= s_max; ++iter) {
    t = (one + t).pow(static_cast<unsigned>(c0)).shifted().exp() - one;
  }
  return t;
}

mpq_class f_s(std::uint64_t c0, std::uint64_t s) {
  if (s < 1) throw ValidationError("f_s: s must be positive");
  mpq_class sum = 0;
  for (std::uint64_t r = 1; r <= s; ++r) {
    mpq_class term = pow_down_to_minus_one(s, static_cast<std::int64_t>(s - r) - 1);
    term *= upow(c0, s - r);
    term /= factorial(r - 1) * factorial(s - r);
    sum += term;
  }
  return sum;
}

double log_f_s(std::uint64_t c0, std::uint64_t s) {
  if (s < 1) throw ValidationError("log_f_s: s must be positive");
  const double lc = std::log(static_cast<double>(c0));
  const double ls = std::log(static_cast<double>(s));
  std::vector<double> terms;
  terms.reserve(s);
  for (std::uint64_t r = 1; r <= s; ++r) {
    const double dr = static_cast<double>(r);
    const double ds = static_cast<double>(s);
    terms.push_back((ds - dr) * lc + (ds - dr - 1.0) * ls - std::lgamma(dr) - std::lgamma(ds - dr + 1.0));
  }
  return log_sum_exp(terms);
}

mpq_class b_s(const TheoryParams& params, std::uint64_t s) {
  mpq_class out = f_s(params.c0, s);
  out *= binomial(params.n, params.j);
  out *= upow(params.supersets, s);
  return out;
}

double log_b_s(const TheoryParams& params, std::uint64_t s) {
  return std::log(params.jsets) + static_cast<double>(s) * std::log(static_cast<double>(params.supersets)) +
         log_f_s(params.c0, s);
}

ExpBounds exp_bounds(const mpq_class& x, unsigned terms) {
  if (sgn(x) < 0 || x > 1) throw ValidationError("exp_bounds: x must lie in [0, 1]");
  ExpBounds b;
  mpq_class term = 1;
  b.lower = 1;
  for (unsigned r = 1; r <= terms; ++r) {
    term *= x;
    term /= r;
    b.lower += term;
  }
  // tail <= x^(N+1)/(N+1)! * sum_t (x/(N+2))^t
  mpq_class next = term * x / (terms + 1);
  const mpq_class ratio = x / (terms + 2);
  b.upper = b.lower + next / (1 - ratio);
  return b;
}

FsBracket fs_bracket(std::uint64_t c0, std::uint64_t s) {
  if (c0 < 1 || s < 1) throw ValidationError("fs_bracket: need c0 >= 1 and s >= 1");
  FsBracket b;
  b.base = mpq_class(upow(c0, s - 1) * upow(s, s - 1), factorial(s));
  b.base.canonicalize();
  const ExpBounds e = exp_bounds(mpq_class(1, static_cast<unsigned long>(c0)), static_cast<unsigned>(s + 20));
  b.upper = b.base * e.upper;
  const mpq_class f = f_s(c0, s);
  b.holds = b.base <= f && f <= b.upper;
  b.strict = f < b.base * e.lower;
  return b;
}

EnumReport enum_report(const TheoryParams& params, std::uint64_t s) {
  EnumReport rep;
  rep.s = s;
  rep.f_s = f_s(params.c0, s);
  const mpq_class scale = mpq_class(binomial(params.n, params.j) * upow(params.supersets, s));
  rep.b_s = rep.f_s * scale;
  const FsBracket br = fs_bracket(params.c0, s);
  rep.lower = br.base * scale;
  rep.upper = br.upper * scale;
  rep.bounds_hold = rep.lower <= rep.b_s && rep.b_s <= rep.upper;
  return rep;
}

BsCensus brute_force_Bs(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t s) {
  if (k < 2 || j < 1 || j >= k || n < k) throw ValidationError("brute_force_Bs: need 1 <= j < k <= n");
  if (s < 1) throw ValidationError("brute_force_Bs: s must be positive");
  if (s > 4 || binomial_u64(n, k) > 64) {
    throw ResourceError("brute_force_Bs guarded to C(n, k) <= 64 and s <= 4");
  }

  // Candidate k-labels for each j-label and the j-subsets of each k-label.
  const std::uint64_t jcount = binomial_u64(n, j);
  const std::uint64_t kcount = binomial_u64(n, k);
  std::vector<std::vector<Rank>> supersets(jcount), subsets(kcount);
  VertexSet kset(k);
  for (Rank r = 0; r < kcount; ++r) {
    unrank_into(r, kset);
    for_each_subset(kset, j, [&](std::span<const Vertex> sub) {
      const Rank jr = rank_sorted(sub);
      subsets[r].push_back(jr);
      supersets[jr].push_back(r);
    });
  }

  BsCensus census;
  std::vector<Rank> jlabels, klabels;
  const auto all_distinct = [](std::vector<Rank> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };

  // Type-j vertices are expanded in creation order; the tree is fully
  // determined by the child set each one picks.
  std::function<void(std::size_t)> expand = [&](std::size_t next_j) {
    if (klabels.size() == s) {
      ++census.total;
      if (all_distinct(jlabels) && all_distinct(klabels)) ++census.hypertree_only;
      return;
    }
    if (next_j == jlabels.size()) return;
    const Rank label = jlabels[next_j];
    const auto& cand = supersets[label];
    const std::size_t budget = s - klabels.size();
    const std::size_t jmark = jlabels.size();
    const std::size_t kmark = klabels.size();
    // every subset of candidates of size <= budget, by bitmask
    const std::size_t d = cand.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > budget) continue;
      for (std::size_t t = 0; t < d; ++t) {
        if (!(mask >> t & 1u)) continue;
        klabels.push_back(cand[t]);
        for (Rank sub : subsets[cand[t]]) {
          if (sub != label) jlabels.push_back(sub);
        }
      }
      expand(next_j + 1);
      jlabels.resize(jmark);
      klabels.resize(kmark);
    }
  };

  for (Rank root = 0; root < jcount; ++root) {
    jlabels.assign(1, root);
    klabels.clear();
    expand(0);
  }
  return census;
}

mpq_class wheel_constant(std::uint32_t k, std::uint32_t j) {
  if (k < 2 || j < 1 || j >= k) throw ValidationError("wheel_constant: need 1 <= j < k");
  const mpz_class c0 = binomial(k, j) - 1;
  mpq_class cw(upow(k - j, j), factorial(j) * factorial(k - j));
  cw.canonicalize();
  for (std::uint32_t m = 1; m + 1 <= j; ++m) {
    const mpq_class factor = 1 - mpq_class(binomial(k - m, j - m) - 1, c0);
    cw /= factor;
  }
  return cw;
}

WheelBound wheel_bound(std::uint32_t n, std::uint32_t k, std::uint32_t j, std::uint32_t ell) {
  if (ell < 2) throw ValidationError("wheel_bound: ell must be at least 2");
  if (n < k) throw ValidationError("wheel_bound: need n >= k");
  WheelBound wb;
  wb.c_w = wheel_constant(k, j);
  const mpz_class inv_p0 = (binomial(k, j) - 1) * binomial(n - j, k - j);
  mpz_class inv_p0_pow;
  mpz_pow_ui(inv_p0_pow.get_mpz_t(), inv_p0.get_mpz_t(), ell - 1);
  wb.exact = wb.c_w * mpq_class(upow(n, k - j) * inv_p0_pow, ell);
  wb.exact.canonicalize();
  wb.bound = wb.exact.get_d();
  return wb;
}

LaplaceCheck laplace_sum_check(unsigned a, std::uint64_t s) {
  if (a < 1) throw ValidationError("laplace_sum_check: a must be positive");
  const std::uint64_t threshold = std::uint64_t{16} * a * 16 * a;
  if (s < threshold) {
    throw ValidationError("laplace_sum_check: requires s >= (16a)^2 = " + std::to_string(threshold));
  }
  const double ds = static_cast<double>(s);
  double log_falling = 0.0;  // log(s_(i) / s^i)
  double lhs = 0.0;
  for (std::uint64_t i = 1; i <= s; ++i) {
    if (i >= 2) log_falling += std::log1p(-static_cast<double>(i - 1) / ds);
    lhs += std::exp(a * std::log(static_cast<double>(i)) + log_falling);
  }
  LaplaceCheck out;
  out.lhs = lhs;
  out.rhs = 5.0 * std::pow(2.0 * a, a / 2.0) * std::pow(ds, (a + 1) / 2.0);
  out.holds = out.lhs <= out.rhs;
  return out;
}

double expected_Rs_upper(const TheoryParams& params, std::uint64_t s) {
  if (s < 1) throw ValidationError("expected_Rs_upper: s must be positive");
  const double ds = static_cast<double>(s);
  const double c0 = static_cast<double>(params.c0);
  const double d = static_cast<double>(params.supersets);
  const double absent = (1.0 + c0 * ds) * d - ds * (1.0 + c0);
  return std::exp(log_b_s(params, s) + ds * std::log(params.p) + absent * std::log1p(-params.p));
}

double expected_Cs_lower_reference(const TheoryParams& params, std::uint64_t s) {
  if (s < 1) throw ValidationError("expected_Cs_lower_reference: s must be positive");
  const double ds = static_cast<double>(s);
  const double absent = (1.0 + ds * static_cast<double>(params.c0)) * static_cast<double>(params.supersets);
  return std::exp(log_b_s(params, s) + ds * std::log(params.p) + absent * std::log1p(-params.p));
}

double log_unicycle_bound(const TheoryParams& params, std::uint64_t s, double constant) {
  if (s < 1024) throw ValidationError("unicycle bound requires s >= 1024");
  if (!(constant > 0.0)) throw ValidationError("unicycle bound: constant must be positive");
  const double ds = static_cast<double>(s);
  return std::log(constant) + 2.0 * std::log(static_cast<double>(params.c0)) +
         log_of(wheel_constant(params.k, params.j)) +
         static_cast<double>(params.k - params.j) * std::log(static_cast<double>(params.n)) +
         (1.0 - ds) * std::log(params.p0) + (ds + 0.5) * std::log(ds) - std::lgamma(ds + 1.0);
}

namespace {
double scale_term(const TheoryParams& params) {
  if (!(params.lambda > std::numbers::e)) {
    throw ValidationError("prediction requires lambda > e (lambda = " + std::to_string(params.lambda) + ")");
  }
  const double ll = std::log(params.lambda);
  return ll - 2.5 * std::log(ll);
}
}  // namespace

double predicted_L1(const TheoryParams& params) { return scale_term(params) / params.delta; }

double predicted_order(const TheoryParams& params) {
  return static_cast<double>(params.c0) * predicted_L1(params);
}

double centered_size(const TheoryParams& params, double size) {
  return params.delta * size - scale_term(params);
}

}  // namespace hyperlab
