#include <doctest.h>

#include <chrono>
#include <cmath>

#include "lindley/paradox.hpp"

using namespace lindley;

namespace {

std::int64_t crossing(double t, double target, double rho0) {
  return crossing_sample_size({t, target, HypothesisWeights(rho0), 0.05});
}

// brute-force scan: smallest n past the branch minimum with P(H0|x) >= target
std::int64_t scan(double t, double target, double rho0, std::int64_t limit) {
  const HypothesisWeights w(rho0);
  const auto start = static_cast<std::int64_t>(std::max(1.0, std::ceil(t * t - 1.0)));
  for (std::int64_t n = start; n <= limit; ++n) {
    if (posterior_prob_null(bayes_factor_lindley(t, n), w) >= target) return n;
  }
  return -1;
}

}  // namespace

TEST_CASE("crossing sample sizes") {
  CHECK(crossing(1.96, 0.95, 0.5) == 16818);
  CHECK(crossing(1.96, 0.95, 10.0 / 11.0) == 164);
  CHECK(crossing(0.0, 0.95, 0.5) == 360);
}

TEST_CASE("crossing agrees with a brute-force scan") {
  for (double t : {1.5, 1.96, 2.5, 3.0}) {
    for (double target : {0.6, 0.8, 0.95}) {
      for (double rho0 : {0.2, 0.5, 0.8}) {
        CAPTURE(t);
        CAPTURE(target);
        CAPTURE(rho0);
        std::int64_t c = 0;
        try {
          c = crossing(t, target, rho0);
        } catch (const UnreachableTarget&) {
          continue;
        }
        if (c > 200000) continue;
        CHECK(c == scan(t, target, rho0, 200000));
      }
    }
  }
}

TEST_CASE("crossing is fast") {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) crossing(1.96, 0.95, 0.5);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  CHECK(ms / 100.0 < 10.0);
}

TEST_CASE("unreachable targets are reported") {
  // with rho0 this high, even the branch minimum leaves P(H0|x) above the target
  CHECK_THROWS_AS(crossing(1.96, 0.5, 0.99), UnreachableTarget);
  CHECK_THROWS_AS(crossing(1.96, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("branch minimum") {
  const auto m = bf_branch_minimum(1.96);
  CHECK(m.n_star == doctest::Approx(2.8416).epsilon(1e-12));
  CHECK(std::abs(m.bf_min - 0.4733) < 5e-4);
  CHECK_FALSE(m.at_boundary);
  const auto m3 = bf_branch_minimum(3.0);
  CHECK(m3.n_star == 8.0);
  CHECK(m3.bf_min == doctest::Approx(3.0 * std::exp(-4.0)).epsilon(1e-14));
  const auto m1 = bf_branch_minimum(1.0);
  CHECK(m1.at_boundary);
  CHECK(m1.n_star == 1.0);
  // grid search over real n as an independent check
  double best = 1e300;
  for (double n = 1.0; n < 20.0; n += 1e-4) best = std::min(best, std::exp(log_bayes_factor_lindley(1.96, n)));
  CHECK(best == doctest::Approx(m.bf_min).epsilon(1e-7));
}

TEST_CASE("paradox table") {
  const ParadoxQuery q{1.96, 0.95, HypothesisWeights(0.5), 0.05};
  const std::vector<std::int64_t> ns{10, 16818};
  const auto rows = paradox_table(q, ns);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].report.bf01 < 19.0);
  CHECK_FALSE(rows[0].paradoxical());
  CHECK(rows[1].paradoxical());
  CHECK(std::abs(rows[1].report.post_prob0 - 0.95) < 1e-4);

  const auto zero = paradox_table({0.0, 0.95, HypothesisWeights(0.5), 0.05}, ns);
  for (const auto& r : zero) CHECK_FALSE(r.paradoxical());

  // caller-supplied alpha(n): shrinking the bound removes the rejection
  const auto shrunk = paradox_table(q, ns, [](std::int64_t n) { return 0.05 / std::sqrt(double(n)); });
  CHECK(shrunk[1].report.alpha == doctest::Approx(0.05 / std::sqrt(16818.0)));
  CHECK_FALSE(shrunk[1].paradoxical());
}

TEST_CASE("consistency simulation under H0 and H1") {
  ConsistencyRun h0;
  h0.n_grid = {100, 10000};
  h0.replications = 2000;
  h0.seed = 42;
  const auto s = consistency_simulation(h0);
  REQUIRE(s.size() == 2);
  CHECK(s[1].median_log_bf > s[0].median_log_bf);
  // median chi2_1 is 0.455, so median ln B01 is close to 0.5 ln(1 + n) - 0.227
  CHECK(s[1].median_log_bf == doctest::Approx(0.5 * std::log(10001.0) - 0.2275).epsilon(0.03));
  CHECK(s[0].rejection_rate == doctest::Approx(0.05).epsilon(0.3));

  ConsistencyRun h1 = h0;
  h1.theta_true = 0.5;
  h1.n_grid = {1000};
  const auto a = consistency_simulation(h1);
  CHECK(a[0].joint_small_rate >= 0.99);
}

TEST_CASE("simulation is deterministic and trajectories are nested") {
  ConsistencyRun run;
  run.n_grid = {10, 100, 1000};
  run.replications = 50;
  run.seed = 9;
  CHECK(simulate_sample_means(run) == simulate_sample_means(run));
  const auto means = simulate_sample_means(run);
  for (std::int64_t r = 0; r < run.replications; ++r) {
    const auto traj = simulate_trajectory(run, r);
    for (std::size_t g = 0; g < run.n_grid.size(); ++g) {
      CHECK(traj[g] == means[g * 50 + static_cast<std::size_t>(r)]);
    }
  }
  run.seed = 10;
  CHECK(simulate_sample_means(run) != means);

  ConsistencyRun single;
  single.n_grid = {5};
  single.replications = 1;
  CHECK(consistency_simulation(single).size() == 1);

  ConsistencyRun bad = run;
  bad.n_grid = {100, 10};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.n_grid = {10};
  bad.replications = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("p-value uniformity") {
  const auto u = pvalue_uniformity_check({42, 10000, 100, 0.0});
  CHECK(u.critical_value_1pct == doctest::Approx(0.0163));
  CHECK(u.ks_statistic < u.critical_value_1pct);
  const auto tiny = pvalue_uniformity_check({42, 100, 1, 0.0});
  CHECK(tiny.replications == 100);
  const auto off = pvalue_uniformity_check({42, 10000, 100, 1.0});
  CHECK(off.ks_statistic > 0.8);
}

TEST_CASE("ks distance and median helpers") {
  const std::vector<double> even{0.4, 0.1, 0.3, 0.2};
  CHECK(median(even) == doctest::Approx(0.25));
  const std::vector<double> odd{5.0, 1.0, 3.0};
  CHECK(median(odd) == 3.0);
  const std::vector<double> half{0.5};
  CHECK(ks_distance_uniform(half) == doctest::Approx(0.5));
  const std::vector<double> grid{0.125, 0.375, 0.625, 0.875};
  CHECK(ks_distance_uniform(grid) == doctest::Approx(0.125));
}
