#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/rng.hpp"
#include "oracles.hpp"

using namespace hyperlab;

TEST_CASE("binomial small values") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(250, 2) == 31125);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial_u64(250, 3) == 2573000);
  CHECK_THROWS_AS(binomial_u64(200, 100), std::overflow_error);
}

TEST_CASE("binomial satisfies Pascal's recurrence up to n = 64") {
  for (unsigned long n = 1; n <= 64; ++n) {
    for (unsigned long r = 1; r <= n; ++r) {
      REQUIRE(binomial(n, r) == binomial(n - 1, r - 1) + binomial(n - 1, r));
    }
  }
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(5, 2) == 20);
  CHECK(falling_factorial(3, 0) == 1);
  CHECK(falling_factorial(4, 5) == 0);
  for (unsigned long n = 0; n <= 20; ++n) {
    for (unsigned long k = 0; k <= n; ++k) REQUIRE(falling_factorial(n, k) * factorial(n - k) == factorial(n));
  }
}

TEST_CASE("log of big numbers") {
  const mpz_class big = factorial(1000);
  CHECK(log_of(big) == doctest::Approx(std::lgamma(1001.0)).epsilon(1e-12));
  CHECK(log_of(mpq_class(1, 3)) == doctest::Approx(-std::log(3.0)));
}

TEST_CASE("colex rank matches enumeration order") {
  CHECK(rank_subset(VertexSet{1, 2}, 4) == 0);
  const auto pairs = oracle::colex_subsets(4, 2);
  CHECK(pairs[4] == VertexSet{2, 4});
  CHECK(pairs[5] == VertexSet{3, 4});
  CHECK(unrank_subset(4, 2, 4) == VertexSet{2, 4});
  CHECK(unrank_subset(5, 2, 4) == VertexSet{3, 4});

  for (std::uint32_t n = 1; n <= 12; ++n) {
    for (std::uint32_t r = 0; r <= n; ++r) {
      const auto all = oracle::colex_subsets(n, r);
      REQUIRE(all.size() == binomial_u64(n, r));
      for (std::size_t i = 0; i < all.size(); ++i) {
        REQUIRE(rank_subset(all[i], n) == i);
        REQUIRE(unrank_subset(i, r, n) == all[i]);
      }
    }
  }
}

TEST_CASE("rank and unrank are inverse") {
  for (Rank r = 0; r < 120; ++r) CHECK(rank_subset(unrank_subset(r, 3, 10), 10) == r);
  CounterRng rng(99);
  for (int t = 0; t < 2000; ++t) {
    const Rank r = rng() % binomial_u64(200, 4);
    REQUIRE(rank_subset(unrank_subset(r, 4, 200), 200) == r);
  }
}

TEST_CASE("rank rejects bad input and unrank rejects out-of-range ranks") {
  CHECK_THROWS_AS(rank_subset(VertexSet{2, 1}, 4), ValidationError);
  CHECK_THROWS_AS(rank_subset(VertexSet{1, 1}, 4), ValidationError);
  CHECK_THROWS_AS(rank_subset(VertexSet{1, 5}, 4), ValidationError);
  CHECK_THROWS_AS(rank_subset(VertexSet{0, 2}, 4), ValidationError);
  CHECK_THROWS_AS(unrank_subset(6, 2, 4), std::out_of_range);
}

TEST_CASE("subset iteration visits every r-subset once in colex order") {
  const VertexSet set{2, 5, 7, 9, 11};
  std::vector<VertexSet> seen;
  for_each_subset(set, 3, [&](std::span<const Vertex> s) { seen.emplace_back(s.begin(), s.end()); });
  REQUIRE(seen.size() == 10);
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(rank_sorted(seen[i - 1]) < rank_sorted(seen[i]));
  CHECK(std::set<VertexSet>(seen.begin(), seen.end()).size() == 10);
}

TEST_CASE("set formatting round trip") {
  CHECK(format_set(VertexSet{1, 2, 3}) == "1,2,3");
  CHECK(parse_set("1,2,3") == VertexSet{1, 2, 3});
  CHECK(parse_set("{4, 7}") == VertexSet{4, 7});
  CHECK_THROWS_AS(parse_set("1,x"), ValidationError);
}

TEST_CASE("theory parameters") {
  const TheoryParams t = TheoryParams::make(250, 3, 2, 0.3);
  CHECK(t.c0 == 2);
  CHECK(t.supersets == 248);
  CHECK(t.p0 == doctest::Approx(1.0 / 496));
  CHECK(t.p == doctest::Approx(0.7 / 496));
  CHECK(t.delta == doctest::Approx(0.0566749).epsilon(1e-6));
  CHECK(t.lambda == doctest::Approx(840.375));
  CHECK_THROWS_AS(TheoryParams::make(5, 3, 3, 0.3), ValidationError);
  CHECK_THROWS_AS(TheoryParams::make(5, 3, 1, 0.0), ValidationError);
  CHECK_THROWS_AS(TheoryParams::make(2, 3, 1, 0.3), ValidationError);
}

TEST_CASE("theory parameter invariants over a grid") {
  for (std::uint32_t k = 2; k <= 5; ++k) {
    for (std::uint32_t j = 1; j < k; ++j) {
      for (double eps : {0.05, 0.2, 0.35, 0.5, 0.8}) {
        const TheoryParams t = TheoryParams::make(40, k, j, eps);
        REQUIRE(t.c0 >= 1);
        REQUIRE(t.p0 > 0.0);
        REQUIRE(t.p0 <= 1.0);
        REQUIRE(t.p < t.p0);
        REQUIRE(t.delta > 0.0);
        REQUIRE(t.lambda > 0.0);
        if (eps <= 0.5) REQUIRE(std::abs(t.delta - eps * eps / 2) <= eps * eps * eps);
      }
    }
  }
}

TEST_CASE("counter rng is reproducible and skippable") {
  CounterRng a(42), b(42);
  for (int i = 0; i < 100; ++i) REQUIRE(a() == b());
  CounterRng c(42);
  c.discard(50);
  CounterRng d(42);
  for (int i = 0; i < 50; ++i) d();
  CHECK(c() == d());
  CHECK(CounterRng(0)() == mix64(CounterRng::gamma));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
}

TEST_CASE("geometric gaps have the right mean") {
  CounterRng rng(7);
  for (double p : {0.5, 0.1, 0.01}) {
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(rng.geometric(p));
    const double mean = sum / n;
    const double sd = std::sqrt((1 - p) / (p * p) / n);
    CHECK(std::abs(mean - 1.0 / p) < 5 * sd);
  }
  CHECK(rng.geometric(1.0) == 1);
}
