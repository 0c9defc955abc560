#pragma once

// Where the frequentist and Bayesian verdicts part ways: crossing sample
// sizes at a fixed t statistic, side-by-side tables, and seeded Monte Carlo
// runs of the large-n behaviour of p-values and Bayes factors.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "lindley/normal_testing.hpp"

namespace lindley {

struct ParadoxQuery {
  double t = 1.96;
  double target_post_prob = 0.95;
  HypothesisWeights weights{0.5};
  double alpha = 0.05;

  void validate() const;
};

class UnreachableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bayes factor needed for the posterior probability of H0 to reach target:
/// (target / (1 - target)) / prior_odds.
double required_bayes_factor(double target_post_prob, const HypothesisWeights& weights);

struct BranchMinimum {
  double n_star;
  double bf_min;
  /// t^2 <= 2: n* would sit at or below 1, so the minimum is at n = 1.
  bool at_boundary;
};

/// Minimum over real n >= 1 of the unit-information Bayes factor at fixed t:
/// n* = t^2 - 1 and B* = |t| exp(-(t^2 - 1) / 2) when t^2 > 2.
BranchMinimum bf_branch_minimum(double t);

/// Smallest integer n on the increasing branch (n > t^2 - 1) from which on
/// the posterior probability of H0 stays at or above the target. Throws
/// UnreachableTarget if the target already holds at every n >= 1, so no
/// crossing exists.
std::int64_t crossing_sample_size(const ParadoxQuery& query);

struct ParadoxRow {
  std::int64_t n;
  TestReport report;

  bool paradoxical() const { return report.paradoxical(); }
};

/// One row per n. alpha_of_n, when given, replaces query.alpha row by row
/// (a sample-size dependent significance bound supplied by the caller).
std::vector<ParadoxRow> paradox_table(const ParadoxQuery& query, std::span<const std::int64_t> n_list,
                                      const std::function<double(std::int64_t)>& alpha_of_n = {});

struct ConsistencyRun {
  double theta_true = 0.0;
  double theta0 = 0.0;
  double sigma = 1.0;
  std::vector<std::int64_t> n_grid;
  std::int64_t replications = 1;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  double small_threshold = 1e-6;

  void validate() const;
};

struct ConsistencySummary {
  std::int64_t n;
  double median_log_bf;
  double median_p_value;
  double rejection_rate;    // fraction with p <= alpha
  double bf_small_rate;     // fraction with B01 < small_threshold
  double p_small_rate;      // fraction with p < small_threshold
  double joint_small_rate;  // both of the above
};

/// Samples of xbar along a grid of sample sizes for one replicate: each grid
/// step adds an independent block of observations to a running sum, so one
/// replicate is one trajectory. Stream id = replicate index.
std::vector<double> simulate_trajectory(const ConsistencyRun& run, std::int64_t replicate);

/// xbar for every replicate (outer) and grid point (inner), row-major by grid point:
/// result[g * replications + r].
std::vector<double> simulate_sample_means(const ConsistencyRun& run);

std::vector<ConsistencySummary> consistency_simulation(const ConsistencyRun& run);

struct UniformityRun {
  std::uint64_t seed = 0;
  std::int64_t replications = 10000;
  std::int64_t n = 100;
  /// (theta_true - theta0) / sigma; 0 simulates under H0.
  double shift_in_sigmas = 0.0;

  void validate() const;
};

struct UniformityResult {
  double ks_statistic;
  /// Asymptotic 1% critical value 1.63 / sqrt(replications).
  double critical_value_1pct;
  std::int64_t replications;
};

/// Kolmogorov-Smirnov distance between simulated two-sided p-values and
/// Uniform(0, 1).
UniformityResult pvalue_uniformity_check(const UniformityRun& run);

/// sup_x |F_n(x) - x| for a sample on [0, 1]. The input is copied and sorted.
double ks_distance_uniform(std::span<const double> sample);

/// Median of a sample (mean of the two central order statistics for even size).
double median(std::span<const double> values);

}  // namespace lindley
