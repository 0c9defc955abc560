#include <doctest.h>

#include <cmath>

#include "lindley/numerics.hpp"
#include "lindley/severity.hpp"
#include "oracle.hpp"

using namespace lindley;

namespace {

const NormalProblem kStoneScale{0.2, 0.4, 527135, 106298.0 / 527135.0};

}  // namespace

TEST_CASE("severity at selected discrepancies") {
  const NormalProblem p{0.0, 1.0, 100, 0.196};
  CHECK(severity_at(p, p.xbar) == 0.5);
  CHECK(severity_at(p, 0.0) == doctest::Approx(oracle::kPhi1p96).epsilon(1e-14));
  CHECK(severity_at(p, 1e6) == 0.0);
  CHECK(severity_at(p, -1e6) == 1.0);
  CHECK(severity_threshold_probe(p, 0.1) == severity_at(p, 0.1));
  // theta1 = theta0 gives one minus the one-sided p-value of the observed t
  CHECK(severity_at(p, p.theta0) == doctest::Approx(1.0 - numerics::std_normal_sf(1.96)).epsilon(1e-15));
  // reflection about xbar
  const double th = p.theta0 + 2.0 * (p.xbar - p.theta0);
  CHECK(severity_at(p, th) == doctest::Approx(1.0 - severity_at(p, p.theta0)).epsilon(1e-14));
}

TEST_CASE("warranted discrepancy") {
  const NormalProblem p{1.0, 2.0, 30, 1.8};
  CHECK(warranted_discrepancy(p, 0.5) == p.xbar - p.theta0);
  CHECK(std::abs(warranted_discrepancy(kStoneScale, 0.9) - 0.000946) < 1e-5);
  CHECK(warranted_discrepancy(kStoneScale, 0.9) == doctest::Approx(oracle::kStoneGamma0p9).epsilon(1e-9));
  // at t = 1.96 the 0.975 bound sits at theta0, up to z_0.975 = 1.959964
  const auto q = NormalProblem::from_t(0.0, 1.0, 100, 1.96);
  const double se = 0.1;
  CHECK(std::abs(warranted_discrepancy(q, 0.975)) < 1e-4 * se);
  CHECK(warranted_discrepancy(NormalProblem::from_t(0.0, 1.0, 100, oracle::kZ0p975), 0.975) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(warranted_discrepancy(p, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(warranted_discrepancy(p, 0.0), std::invalid_argument);
}

TEST_CASE("closed form and root finder agree on random cases") {
  numerics::RngStream rng(77, 0);
  for (int i = 0; i < 100; ++i) {
    const double theta0 = -3.0 + 6.0 * rng.uniform();
    const double sigma = 0.05 + 4.0 * rng.uniform();
    const auto n = static_cast<std::int64_t>(1 + 1e6 * rng.uniform());
    const double xbar = theta0 + (rng.uniform() - 0.3) * 6.0 * sigma / std::sqrt(double(n));
    const double level = 0.01 + 0.98 * rng.uniform();
    const NormalProblem p{theta0, sigma, n, xbar};
    CHECK(std::abs(warranted_discrepancy_closed_form(p, level) - warranted_discrepancy_by_root(p, level)) <
          1e-8);
  }
}

TEST_CASE("severity curve") {
  const NormalProblem p{0.0, 1.0, 25, 0.3};
  const std::vector<double> single{p.xbar};
  const auto one = severity_curve({p, 0.9}, single);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0].severity == 0.5);

  // symmetric grid: values mirrored about 0.5
  std::vector<double> grid;
  const double d = 0.04;
  for (int k = -5; k <= 5; ++k) grid.push_back(p.xbar + k * d);
  const auto c = severity_curve({p, 0.9}, grid);
  for (int k = 0; k <= 5; ++k) {
    const double lo = c.points[5 - k].severity, hi = c.points[5 + k].severity;
    CHECK(lo + hi == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lo == doctest::Approx(numerics::std_normal_cdf(k * d * 5.0)).epsilon(1e-13));
  }

  // a grid straddling theta0 + gamma crosses the level exactly once
  const double g = c.warranted_gamma;
  std::vector<double> straddle;
  for (int k = -20; k <= 20; ++k) straddle.push_back(p.theta0 + g + k * 0.01 + 0.001);
  const auto s = severity_curve({p, 0.9}, straddle);
  int crossings = 0;
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    CHECK(s.points[i].severity < s.points[i - 1].severity);
    crossings += (s.points[i - 1].severity >= 0.9) != (s.points[i].severity >= 0.9);
  }
  CHECK(crossings == 1);

  const std::vector<double> descending{0.3, 0.1};
  CHECK_THROWS_AS(severity_curve({p, 0.9}, descending), std::invalid_argument);
  CHECK_THROWS_AS(severity_curve({p, 0.9}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("affine equivariance") {
  const NormalProblem p{0.1, 0.7, 40, 0.35};
  for (double a : {0.01, 3.0, 250.0}) {
    for (double b : {-5.0, 0.0, 11.0}) {
      const NormalProblem q{a * p.theta0 + b, a * p.sigma, p.n, a * p.xbar + b};
      for (double th : {0.0, 0.2, 0.5}) {
        CHECK(severity_at(q, a * th + b) == doctest::Approx(severity_at(p, th)).epsilon(1e-10));
      }
    }
  }
}
