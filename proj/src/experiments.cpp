#include "hyperlab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

#include <omp.h>

#include "hyperlab/components.hpp"
#include "hyperlab/enumeration.hpp"
#include "hyperlab/errors.hpp"
#include "hyperlab/hypergraph.hpp"
#include "hyperlab/rng.hpp"

namespace hyperlab {

namespace {

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("config: bad value for '" + key + "': '" + value + "'");
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (k < 2) throw ValidationError("config: k must be at least 2");
  if (j < 1 || j >= k) throw ValidationError("config: need 1 <= j <= k - 1");
  if (n < k) throw ValidationError("config: need n >= k");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("config: epsilon must lie in (0, 1)");
  if (trials < 1) throw ValidationError("config: trials must be positive");
  if (m < 1) throw ValidationError("config: m must be positive");
  if (cap < 1) throw ValidationError("config: cap must be positive");
  if (!(thresholds.spread_width > 0.0)) throw ValidationError("config: spread_width must be positive");
  if (!(thresholds.hypertree_fraction >= 0.0 && thresholds.hypertree_fraction <= 1.0)) {
    throw ValidationError("config: hypertree_threshold must lie in [0, 1]");
  }
  if (!(thresholds.median_tolerance > 0.0)) throw ValidationError("config: median_tolerance must be positive");
}

TheoryParams ExperimentConfig::theory() const { return TheoryParams::make(n, k, j, epsilon); }

RegimeProxies regime_proxies(const ExperimentConfig& config) {
  const TheoryParams t = config.theory();
  const double n = config.n;
  RegimeProxies r;
  r.eps4_nj = std::pow(config.epsilon, 4) * std::pow(n, config.j);
  r.eps2_nkj_over_logn = config.epsilon * config.epsilon * std::pow(n, config.k - config.j) / std::log(n);
  r.lambda = t.lambda;
  r.eps4_nj_large = r.eps4_nj >= 10.0;
  r.eps2_large = r.eps2_nkj_over_logn >= 10.0;
  r.lambda_large = r.lambda >= 10.0;
  return r;
}

Quantiles quantiles(std::vector<double> values) {
  if (values.empty()) throw ValidationError("quantiles: no values");
  std::sort(values.begin(), values.end());
  const auto at = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {at(0.05), at(0.25), at(0.50), at(0.75), at(0.95)};
}

TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t trial) {
  const TheoryParams t = config.theory();
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = derive_seed(config.base_seed, trial);
  const Hypergraph h = sample_hypergraph(t, rec.seed);
  rec.edges = h.edge_count();
  const Decomposition d = j_components(h, config.j, false);

  std::vector<std::uint32_t> order(d.components.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return d.components[a].size > d.components[b].size;
  });
  rec.top.assign(config.m, TopEntry{});
  for (std::size_t i = 0; i < order.size() && i < config.m; ++i) {
    const auto& c = d.components[order[i]];
    rec.top[i] = TopEntry{c.size, c.order, c.is_hypertree};
  }
  for (const auto& c : d.components) {
    rec.component_size_sum += c.size;
    if (c.is_hypertree) {
      rec.largest_hypertree = std::max(rec.largest_hypertree, c.size);
    } else {
      ++rec.nonhypertree_count;
      rec.largest_nonhypertree = std::max(rec.largest_nonhypertree, c.size);
    }
  }
  return rec;
}

namespace {

void check_budget(const ExperimentConfig& config) {
  config.validate();
  const TheoryParams t = config.theory();
  const double expected = binomial(config.n, config.k).get_d() * t.p;
  if (expected > static_cast<double>(config.cap)) {
    throw ResourceError("expected edge count " + fixed(expected, 1) + " exceeds budget cap=" +
                        std::to_string(config.cap));
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
  check_budget(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.trials.resize(config.trials);
  const auto count = static_cast<std::int64_t>(config.trials);
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t t = 0; t < count; ++t) {
    res.trials[static_cast<std::size_t>(t)] = run_trial(config, static_cast<std::uint64_t>(t));
  }
  res.summary = summarize(config, res.trials);
  res.summary.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
  check_budget(config);
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.trials.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) res.trials.push_back(run_trial(config, t));
  res.summary = summarize(config, res.trials);
  res.summary.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

ExperimentSummary summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& trials) {
  if (trials.empty()) throw ValidationError("summarize: no trials");
  const TheoryParams t = config.theory();
  ExperimentSummary s;
  s.config = config;
  s.theory.c0 = t.c0;
  s.theory.p0 = t.p0;
  s.theory.p = t.p;
  s.theory.delta = t.delta;
  s.theory.lambda = t.lambda;
  if (t.lambda > std::exp(1.0)) {
    s.theory.predicted_L1 = predicted_L1(t);
    s.theory.scale = -centered_size(t, 0.0);
  }
  s.regime = regime_proxies(config);

  for (std::uint32_t i = 0; i < config.m; ++i) {
    RankStats rs;
    rs.i = i + 1;
    std::vector<double> L, centered;
    std::uint64_t present = 0, hyper = 0;
    for (const auto& rec : trials) {
      const TopEntry& e = rec.top.at(i);
      L.push_back(static_cast<double>(e.L));
      if (s.theory.scale) centered.push_back(t.delta * static_cast<double>(e.L) - *s.theory.scale);
      if (e.hypertree) {
        ++present;
        if (*e.hypertree) ++hyper;
      }
    }
    rs.L = quantiles(L);
    if (!centered.empty()) rs.centered = quantiles(centered);
    if (present) rs.hypertree_fraction = static_cast<double>(hyper) / static_cast<double>(present);
    s.ranks.push_back(rs);
  }

  std::uint64_t smaller = 0;
  for (const auto& rec : trials) {
    for (const auto& e : rec.top) {
      if (e.hypertree && *e.hypertree && e.M != 1 + t.c0 * e.L) ++s.identity_violations;
    }
    if (rec.largest_nonhypertree < rec.largest_hypertree || rec.nonhypertree_count == 0) ++smaller;
  }
  s.nonhypertree_smaller_fraction = static_cast<double>(smaller) / static_cast<double>(trials.size());
  return s;
}

bool Verdict::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Verdict compare_to_theory(const ExperimentSummary& summary) {
  if (summary.config.trials < 30) throw ValidationError("compare_to_theory needs at least 30 trials");
  const CompareThresholds& th = summary.config.thresholds;
  Verdict v;
  const RankStats& first = summary.ranks.front();

  if (first.centered) {
    const double spread = first.centered->p95 - first.centered->p05;
    v.checks.push_back({"spread", spread <= th.spread_width,
                        "p95 - p05 = " + fixed(spread) + " (max " + fixed(th.spread_width) + ")"});
  } else {
    v.checks.push_back({"spread", false, "lambda <= e: no prediction"});
  }

  // mean over the ranks that hold a component in some trial
  double total = 0.0;
  std::size_t ranks = 0;
  for (const auto& rs : summary.ranks) {
    if (!rs.hypertree_fraction) continue;
    ++ranks;
    total += *rs.hypertree_fraction;
  }
  if (ranks) {
    const double frac = total / static_cast<double>(ranks);
    v.checks.push_back({"hypertree_fraction", frac >= th.hypertree_fraction,
                        "mean over ranks " + fixed(frac) + " (min " + fixed(th.hypertree_fraction) + ")"});
  } else {
    v.checks.push_back({"hypertree_fraction", false, "no components observed"});
  }

  v.checks.push_back({"identity", summary.identity_violations == 0,
                      std::to_string(summary.identity_violations) + " violations of M = 1 + c0 L"});

  if (first.centered) {
    const double med = first.centered->p50;
    v.checks.push_back({"median", std::abs(med) <= th.median_tolerance,
                        "centered median " + fixed(med) + " (max |.| " + fixed(th.median_tolerance) + ")"});
  } else {
    v.checks.push_back({"median", false, "lambda <= e: no prediction"});
  }
  return v;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials) {
  out << "trial,seed,edges,i,L_i,M_i,hypertree\n";
  for (const auto& rec : trials) {
    for (std::size_t i = 0; i < rec.top.size(); ++i) {
      const TopEntry& e = rec.top[i];
      out << rec.trial << ',' << rec.seed << ',' << rec.edges << ',' << (i + 1) << ',' << e.L << ','
          << e.M << ',';
      if (e.hypertree) out << (*e.hypertree ? '1' : '0');
      out << '\n';
    }
  }
}

namespace {

std::string opt(const std::optional<double>& x) { return x ? fixed(*x) : std::string("null"); }

}  // namespace

void write_verdict(std::ostream& out, const Verdict& verdict) {
  for (const auto& c : verdict.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
  }
  out << "verdict=" << (verdict.passed() ? "pass" : "fail") << '\n';
}

void write_summary(std::ostream& out, const ExperimentSummary& s, const Verdict* verdict) {
  const auto& c = s.config;
  out << "experiment n=" << c.n << " k=" << c.k << " j=" << c.j << " epsilon=" << fixed(c.epsilon)
      << " trials=" << c.trials << " m=" << c.m << " base_seed=" << c.base_seed << '\n';
  out << "theory c0=" << s.theory.c0 << " p0=" << fixed(s.theory.p0, 9) << " p=" << fixed(s.theory.p, 9)
      << " delta=" << fixed(s.theory.delta) << " lambda=" << fixed(s.theory.lambda)
      << " predicted_L1=" << opt(s.theory.predicted_L1) << '\n';
  out << "regime eps^4 n^j=" << fixed(s.regime.eps4_nj, 3) << (s.regime.eps4_nj_large ? "" : " (small)")
      << " eps^2 n^(k-j)/log n=" << fixed(s.regime.eps2_nkj_over_logn, 3)
      << (s.regime.eps2_large ? "" : " (small)") << " lambda=" << fixed(s.regime.lambda, 3)
      << (s.regime.lambda_large ? "" : " (small)") << '\n';
  out << "rank   L_p05    L_p25    L_p50    L_p75    L_p95    hypertree\n";
  for (const auto& r : s.ranks) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4u %8.2f %8.2f %8.2f %8.2f %8.2f    %s\n", r.i, r.L.p05, r.L.p25,
                  r.L.p50, r.L.p75, r.L.p95, opt(r.hypertree_fraction).c_str());
    out << line;
  }
  out << "identity violations: " << s.identity_violations << '\n';
  out << "largest non-hypertree smaller than largest hypertree: " << fixed(s.nonhypertree_smaller_fraction)
      << '\n';
  if (verdict) write_verdict(out, *verdict);

  const RankStats& first = s.ranks.front();
  out << "predicted_L1=" << opt(s.theory.predicted_L1) << '\n';
  out << "median_L1=" << fixed(first.L.p50) << '\n';
  out << "centered_p05=" << (first.centered ? fixed(first.centered->p05) : "null") << '\n';
  out << "centered_p50=" << (first.centered ? fixed(first.centered->p50) : "null") << '\n';
  out << "centered_p95=" << (first.centered ? fixed(first.centered->p95) : "null") << '\n';
  for (const auto& r : s.ranks) out << "hypertree_frac_" << r.i << '=' << opt(r.hypertree_fraction) << '\n';
  out << "identity_violations=" << s.identity_violations << '\n';
}

void apply_config_key(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "n") c.n = parse_number<std::uint32_t>(key, value);
  else if (key == "k") c.k = parse_number<std::uint32_t>(key, value);
  else if (key == "j") c.j = parse_number<std::uint32_t>(key, value);
  else if (key == "epsilon") c.epsilon = parse_number<double>(key, value);
  else if (key == "trials") c.trials = parse_number<std::uint64_t>(key, value);
  else if (key == "m") c.m = parse_number<std::uint32_t>(key, value);
  else if (key == "base_seed") c.base_seed = parse_number<std::uint64_t>(key, value);
  else if (key == "cap") c.cap = parse_number<std::uint64_t>(key, value);
  else if (key == "spread_width") c.thresholds.spread_width = parse_number<double>(key, value);
  else if (key == "hypertree_threshold") c.thresholds.hypertree_fraction = parse_number<double>(key, value);
  else if (key == "median_tolerance") c.thresholds.median_tolerance = parse_number<double>(key, value);
  else throw ValidationError("config: unknown key '" + key + "'");
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    apply_config_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

}  // namespace hyperlab
