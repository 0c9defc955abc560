#include "lindley/paradox.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lindley/kernels.hpp"
#include "lindley/numerics.hpp"

namespace lindley {

void ParadoxQuery::validate() const {
  if (!std::isfinite(t)) throw std::invalid_argument("paradox: t must be finite");
  if (!(target_post_prob > 0.0 && target_post_prob < 1.0)) {
    throw std::invalid_argument("paradox: target posterior probability must lie in (0, 1)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("paradox: alpha must lie in (0, 1)");
}

double required_bayes_factor(double target_post_prob, const HypothesisWeights& weights) {
  return (target_post_prob / (1.0 - target_post_prob)) / weights.prior_odds();
}

BranchMinimum bf_branch_minimum(double t) {
  const double t2 = t * t;
  if (t2 <= 2.0) {
    // n* = t^2 - 1 <= 1: the increasing branch already covers every n >= 1.
    return {1.0, std::exp(log_bayes_factor_lindley(t, 1.0)), true};
  }
  return {t2 - 1.0, std::abs(t) * std::exp(-0.5 * (t2 - 1.0)), false};
}

namespace {

bool meets_target(double t, std::int64_t n, double target, const HypothesisWeights& w) {
  return posterior_prob_null(bayes_factor_lindley(t, n), w) >= target;
}

}  // namespace

std::int64_t crossing_sample_size(const ParadoxQuery& query) {
  query.validate();
  const double t = query.t;
  const double target = query.target_post_prob;
  const auto& w = query.weights;

  const BranchMinimum minimum = bf_branch_minimum(t);
  const auto first_on_branch = static_cast<std::int64_t>(std::max(1.0, std::ceil(minimum.n_star)));
  const auto below_star = static_cast<std::int64_t>(std::max(1.0, std::floor(minimum.n_star)));
  if (meets_target(t, below_star, target, w) && meets_target(t, first_on_branch, target, w)) {
    throw UnreachableTarget("required Bayes factor " +
                            std::to_string(required_bayes_factor(target, w)) +
                            " lies below the minimum over integer n; the target holds at every n");
  }
  if (meets_target(t, first_on_branch, target, w)) return first_on_branch;

  const double log_required = std::log(required_bayes_factor(target, w));
  const auto log_bf = [t](double n) { return log_bayes_factor_lindley(t, n); };
  const double root = numerics::find_crossing(log_bf, static_cast<double>(first_on_branch),
                                              log_required, 1e-13);

  auto n = std::max(first_on_branch + 1, static_cast<std::int64_t>(std::ceil(root)));
  while (n - 1 > first_on_branch && meets_target(t, n - 1, target, w)) --n;
  while (!meets_target(t, n, target, w)) ++n;
  return n;
}

std::vector<ParadoxRow> paradox_table(const ParadoxQuery& query, std::span<const std::int64_t> n_list,
                                      const std::function<double(std::int64_t)>& alpha_of_n) {
  query.validate();
  std::vector<ParadoxRow> rows;
  rows.reserve(n_list.size());
  for (const std::int64_t n : n_list) {
    const double alpha = alpha_of_n ? alpha_of_n(n) : query.alpha;
    rows.push_back({n, make_lindley_report(query.t, n, query.weights, alpha)});
  }
  return rows;
}

void ConsistencyRun::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("simulation: sigma must be positive");
  if (!std::isfinite(theta_true) || !std::isfinite(theta0)) {
    throw std::invalid_argument("simulation: theta values must be finite");
  }
  if (replications < 1) throw std::invalid_argument("simulation: replications must be at least 1");
  if (n_grid.empty()) throw std::invalid_argument("simulation: n grid is empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw std::invalid_argument("simulation: grid sizes must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("simulation: n grid must be strictly increasing");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("simulation: alpha must lie in (0, 1)");
}

std::vector<double> simulate_trajectory(const ConsistencyRun& run, std::int64_t replicate) {
  numerics::RngStream stream(run.seed, static_cast<std::uint64_t>(replicate));
  std::vector<double> means;
  means.reserve(run.n_grid.size());
  double sum = 0.0;
  std::int64_t seen = 0;
  for (const std::int64_t n : run.n_grid) {
    const auto block = static_cast<double>(n - seen);
    sum += block * run.theta_true + run.sigma * std::sqrt(block) * numerics::normal_draw(stream);
    seen = n;
    means.push_back(sum / static_cast<double>(n));
  }
  return means;
}

std::vector<double> simulate_sample_means(const ConsistencyRun& run) {
  run.validate();
  const auto reps = static_cast<std::size_t>(run.replications);
  std::vector<double> means(run.n_grid.size() * reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const std::vector<double> path = simulate_trajectory(run, static_cast<std::int64_t>(r));
    for (std::size_t g = 0; g < path.size(); ++g) means[g * reps + r] = path[g];
  }
  return means;
}

double median(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty sample");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

std::vector<ConsistencySummary> consistency_simulation(const ConsistencyRun& run) {
  const std::vector<double> means = simulate_sample_means(run);
  const auto reps = static_cast<std::size_t>(run.replications);
  const auto& k = kernels::active();
  const double log_small = std::log(run.small_threshold);

  std::vector<ConsistencySummary> out;
  std::vector<double> t(reps), log_bf(reps), p(reps);
  for (std::size_t g = 0; g < run.n_grid.size(); ++g) {
    const std::int64_t n = run.n_grid[g];
    const double nn = static_cast<double>(n);
    const std::span<const double> xbar(means.data() + g * reps, reps);
    k.t_statistic(xbar, run.theta0, std::sqrt(nn) / run.sigma, t);
    k.log_bf_lindley(t, nn, log_bf);
    k.two_sided_p(t, p);

    std::size_t rejected = 0, bf_small = 0, p_small = 0, joint = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const bool b = log_bf[r] < log_small;
      const bool q = p[r] < run.small_threshold;
      rejected += p[r] <= run.alpha;
      bf_small += b;
      p_small += q;
      joint += b && q;
    }
    const double denom = static_cast<double>(reps);
    out.push_back({n, median(log_bf), median(p), rejected / denom, bf_small / denom,
                   p_small / denom, joint / denom});
  }
  return out;
}

void UniformityRun::validate() const {
  if (replications < 100) throw std::invalid_argument("uniformity check needs at least 100 replications");
  if (n < 1) throw std::invalid_argument("uniformity check: n must be at least 1");
  if (!std::isfinite(shift_in_sigmas)) throw std::invalid_argument("uniformity check: shift must be finite");
}

double ks_distance_uniform(std::span<const double> sample) {
  if (sample.empty()) throw std::invalid_argument("KS distance of empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  const double m = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double u = std::clamp(v[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / m - u, u - static_cast<double>(i) / m});
  }
  return d;
}

UniformityResult pvalue_uniformity_check(const UniformityRun& run) {
  run.validate();
  ConsistencyRun sim;
  sim.theta0 = 0.0;
  sim.sigma = 1.0;
  sim.theta_true = run.shift_in_sigmas;
  sim.n_grid = {run.n};
  sim.replications = run.replications;
  sim.seed = run.seed;
  const std::vector<double> xbar = simulate_sample_means(sim);

  const auto& k = kernels::active();
  std::vector<double> t(xbar.size()), p(xbar.size());
  k.t_statistic(xbar, 0.0, std::sqrt(static_cast<double>(run.n)), t);
  k.two_sided_p(t, p);
  return {ks_distance_uniform(p), 1.63 / std::sqrt(static_cast<double>(run.replications)),
          run.replications};
}

}  // namespace lindley
