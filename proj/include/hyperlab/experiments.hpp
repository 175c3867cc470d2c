#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperlab/combinatorics.hpp"

namespace hyperlab {

struct CompareThresholds {
  double spread_width = 6.0;         ///< max 5%-95% spread of the centered L_1 statistic
  double hypertree_fraction = 0.95;  ///< min fraction of hypertree top-m components
  double median_tolerance = 3.0;     ///< max |centered median of L_1|
};

struct ExperimentConfig {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t j = 0;
  double epsilon = 0.0;
  std::uint64_t trials = 1;
  std::uint32_t m = 3;
  std::uint64_t base_seed = 1;
  /// Budget on the expected edge count C(n, k) p; larger configs are refused.
  std::uint64_t cap = 5'000'000;
  CompareThresholds thresholds;

  /// Throws ValidationError on out-of-range fields.
  void validate() const;
  TheoryParams theory() const;
};

/// Dimensionless stand-ins for the asymptotic hypotheses, informational only.
struct RegimeProxies {
  double eps4_nj = 0.0;             ///< epsilon^4 n^j
  double eps2_nkj_over_logn = 0.0;  ///< epsilon^2 n^(k-j) / log n
  double lambda = 0.0;              ///< epsilon^3 C(n, j)
  bool eps4_nj_large = false;       ///< each flag: proxy >= 10
  bool eps2_large = false;
  bool lambda_large = false;
};
RegimeProxies regime_proxies(const ExperimentConfig& config);

/// One ranked component. Slots past the number of components are padding
/// with L = M = 0 and no hypertree flag.
struct TopEntry {
  std::uint64_t L = 0;
  std::uint64_t M = 0;
  std::optional<bool> hypertree;
  friend bool operator==(const TopEntry&, const TopEntry&) = default;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t edges = 0;
  std::vector<TopEntry> top;  ///< size m, by size descending, ties by component id
  std::uint64_t nonhypertree_count = 0;
  std::uint64_t largest_nonhypertree = 0;
  std::uint64_t largest_hypertree = 0;
  std::uint64_t component_size_sum = 0;  ///< sum over all components; equals edges
  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct Quantiles {
  double p05 = 0, p25 = 0, p50 = 0, p75 = 0, p95 = 0;
};
/// Linear interpolation between order statistics. Throws on empty input.
Quantiles quantiles(std::vector<double> values);

struct RankStats {
  std::uint32_t i = 0;
  Quantiles L;
  std::optional<Quantiles> centered;  ///< absent when lambda <= e
  std::optional<double> hypertree_fraction;  ///< absent when no trial has an i-th component
};

struct TheoryBlock {
  std::uint64_t c0 = 0;
  double p0 = 0, p = 0, delta = 0, lambda = 0;
  std::optional<double> predicted_L1;
  std::optional<double> scale;  ///< log lambda - 2.5 log log lambda
};

struct ExperimentSummary {
  ExperimentConfig config;
  TheoryBlock theory;
  RegimeProxies regime;
  std::vector<RankStats> ranks;
  std::uint64_t identity_violations = 0;  ///< hypertree-flagged entries with M != 1 + c0 L
  /// Trials whose largest non-hypertree is smaller than their largest hypertree.
  double nonhypertree_smaller_fraction = 1.0;
  double runtime_seconds = 0.0;
};

/// Sample, decompose and rank one trial. Seed = derive_seed(base_seed, trial).
TrialRecord run_trial(const ExperimentConfig& config, std::uint64_t trial);

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  ExperimentSummary summary;
};

/// Trials run across `workers` OpenMP threads (0 = runtime default); the
/// records and summary do not depend on the worker count.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0);
/// Single-threaded reference.
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

ExperimentSummary summarize(const ExperimentConfig& config, const std::vector<TrialRecord>& trials);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};
struct Verdict {
  std::vector<Check> checks;
  bool passed() const;
};
/// Requires at least 30 trials (ValidationError otherwise). Checks:
/// spread of the centered L_1, top-m hypertree fraction, the M = 1 + c0 L
/// identity, and |centered median of L_1|.
Verdict compare_to_theory(const ExperimentSummary& summary);

/// Header `trial,seed,edges,i,L_i,M_i,hypertree`; one row per (trial, i);
/// hypertree is 1, 0 or empty for padding.
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& trials);
/// Human-readable block followed by key=value lines. Excludes runtime.
void write_summary(std::ostream& out, const ExperimentSummary& summary, const Verdict* verdict);
void write_verdict(std::ostream& out, const Verdict& verdict);

/// Flat `key = value` file; `#` starts a comment. Unknown keys are rejected.
ExperimentConfig parse_config(std::istream& in);
/// Applies one key/value pair (keys as in the config file).
void apply_config_key(ExperimentConfig& config, const std::string& key, const std::string& value);

}  // namespace hyperlab
