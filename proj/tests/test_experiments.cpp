#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hyperlab/enumeration.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/experiments.hpp"
#include "hyperlab/rng.hpp"

using namespace hyperlab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n = 60;
  c.k = 3;
  c.j = 2;
  c.epsilon = 0.3;
  c.trials = 40;
  c.m = 3;
  c.base_seed = 17;
  return c;
}

std::string csv_of(const std::vector<TrialRecord>& trials) {
  std::ostringstream out;
  write_trials_csv(out, trials);
  return out.str();
}

}  // namespace

TEST_CASE("quantiles interpolate linearly") {
  const Quantiles q = quantiles({4, 1, 3, 2, 5});
  CHECK(q.p05 == doctest::Approx(1.2));
  CHECK(q.p25 == doctest::Approx(2.0));
  CHECK(q.p50 == doctest::Approx(3.0));
  CHECK(q.p95 == doctest::Approx(4.8));
  const Quantiles single = quantiles({7});
  CHECK(single.p05 == 7);
  CHECK(single.p95 == 7);
  CHECK_THROWS_AS(quantiles({}), ValidationError);
}

TEST_CASE("trial records are ranked and consistent") {
  const ExperimentConfig c = small_config();
  const auto res = run_experiment_serial(c);
  REQUIRE(res.trials.size() == c.trials);
  const std::uint64_t c0 = 2;
  for (const auto& rec : res.trials) {
    CHECK(rec.seed == derive_seed(c.base_seed, rec.trial));
    REQUIRE(rec.top.size() == c.m);
    for (std::size_t i = 1; i < rec.top.size(); ++i) REQUIRE(rec.top[i - 1].L >= rec.top[i].L);
    for (const auto& e : rec.top) {
      if (e.hypertree && *e.hypertree) REQUIRE(e.M == 1 + c0 * e.L);
      if (!e.hypertree) REQUIRE(e.L == 0);
    }
    REQUIRE(rec.component_size_sum == rec.edges);
  }
  const ExperimentSummary& s = res.summary;
  for (const auto& r : s.ranks) {
    CHECK(r.L.p05 <= r.L.p25);
    CHECK(r.L.p25 <= r.L.p50);
    CHECK(r.L.p50 <= r.L.p75);
    CHECK(r.L.p75 <= r.L.p95);
    if (r.hypertree_fraction) {
      CHECK(*r.hypertree_fraction >= 0.0);
      CHECK(*r.hypertree_fraction <= 1.0);
    }
  }
  CHECK(s.identity_violations == 0);
}

TEST_CASE("trial t can be replayed in isolation") {
  const ExperimentConfig c = small_config();
  const auto res = run_experiment_serial(c);
  CHECK(run_trial(c, 13) == res.trials[13]);
}

TEST_CASE("worker count does not change any output byte") {
  const ExperimentConfig c = small_config();
  const auto serial = run_experiment_serial(c);
  const std::string reference = csv_of(serial.trials);
  for (int workers : {1, 2, 3, 8}) {
    const auto par = run_experiment(c, workers);
    CHECK(csv_of(par.trials) == reference);
    std::ostringstream a, b;
    write_summary(a, serial.summary, nullptr);
    write_summary(b, par.summary, nullptr);
    CHECK(a.str() == b.str());
  }
}

TEST_CASE("empty hypergraph gives zero sizes and null fractions") {
  ExperimentConfig c = small_config();
  c.n = 3;
  c.k = 3;
  c.j = 2;
  c.epsilon = 0.999999;
  c.trials = 1;
  // p = 1e-6 * p0 on a single potential edge
  const auto res = run_experiment_serial(c);
  REQUIRE(res.trials[0].edges == 0);
  CHECK(res.trials[0].top[0].L == 0);
  CHECK(!res.trials[0].top[0].hypertree);
  CHECK(!res.summary.ranks[0].hypertree_fraction);
  std::ostringstream out;
  write_summary(out, res.summary, nullptr);
  CHECK(out.str().find("hypertree_frac_1=null") != std::string::npos);
}

TEST_CASE("csv layout") {
  ExperimentConfig c = small_config();
  c.trials = 2;
  c.m = 2;
  const auto res = run_experiment_serial(c);
  const std::string csv = csv_of(res.trials);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "trial,seed,edges,i,L_i,M_i,hypertree");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("compare_to_theory") {
  ExperimentConfig c = small_config();
  c.trials = 10;
  CHECK_THROWS_AS(compare_to_theory(run_experiment_serial(c).summary), ValidationError);

  c.trials = 30;
  ExperimentSummary s = run_experiment_serial(c).summary;
  Verdict v = compare_to_theory(s);
  REQUIRE(v.checks.size() == 4);
  CHECK(v.checks[2].name == "identity");
  CHECK(v.checks[2].passed);

  // all-hypertree summaries pass the fraction criterion at 1.0
  for (auto& r : s.ranks) r.hypertree_fraction = 1.0;
  v = compare_to_theory(s);
  CHECK(v.checks[1].passed);
  s.identity_violations = 1;
  CHECK(!compare_to_theory(s).checks[2].passed);
}

TEST_CASE("median size decreases in epsilon") {
  double prev = 1e300;
  for (double eps : {0.2, 0.3, 0.4}) {
    ExperimentConfig c = small_config();
    c.n = 200;
    c.epsilon = eps;
    c.trials = 60;
    const auto res = run_experiment_serial(c);
    const double med = res.summary.ranks[0].L.p50;
    CHECK(med < prev);
    prev = med;
  }
}

TEST_CASE("config validation, parsing and resource guard") {
  ExperimentConfig c = small_config();
  c.trials = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.j = 3;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.cap = 10;
  CHECK_THROWS_AS(run_experiment(c), ResourceError);

  std::istringstream in("# acceptance\nn = 250\nk=3\nj = 2\nepsilon=0.3\ntrials = 300\nbase_seed=5\n\nspread_width = 4.5\n");
  const ExperimentConfig parsed = parse_config(in);
  CHECK(parsed.n == 250);
  CHECK(parsed.k == 3);
  CHECK(parsed.j == 2);
  CHECK(parsed.epsilon == 0.3);
  CHECK(parsed.trials == 300);
  CHECK(parsed.base_seed == 5);
  CHECK(parsed.thresholds.spread_width == 4.5);
  std::istringstream bad_key("bogus = 1\n");
  CHECK_THROWS_AS(parse_config(bad_key), ValidationError);
  std::istringstream bad_value("n = ten\n");
  CHECK_THROWS_AS(parse_config(bad_value), ValidationError);
  std::istringstream no_eq("n 10\n");
  CHECK_THROWS_AS(parse_config(no_eq), ValidationError);
}

TEST_CASE("regime proxies") {
  ExperimentConfig c = small_config();
  c.n = 250;
  const RegimeProxies r = regime_proxies(c);
  CHECK(r.eps4_nj == doctest::Approx(std::pow(0.3, 4) * 250 * 250));
  CHECK(r.eps2_nkj_over_logn == doctest::Approx(0.09 * 250 / std::log(250.0)));
  CHECK(r.lambda == doctest::Approx(840.375));
  CHECK(r.eps4_nj_large);
  CHECK(!r.eps2_large);
}
