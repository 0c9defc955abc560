#pragma once

// Post-data severity for claims theta > theta1 after a test of
// H0: theta = theta0 on a normal mean. With d(X) = sqrt(n) (Xbar - theta0) / sigma,
//   SEV(theta > theta1) = P_{theta1}( d(X) <= d(x0) ) = Phi( sqrt(n) (xbar - theta1) / sigma ),
// computed under theta = theta1. Claims in the other direction follow from
// the reflection x -> -x applied to (theta0, xbar, theta1).

#include <span>
#include <vector>

#include "lindley/normal_testing.hpp"

namespace lindley {

struct SeverityQuery {
  NormalProblem problem;
  double level = 0.9;

  void validate() const;
};

struct SeverityPoint {
  double theta1;
  double gamma;  // theta1 - theta0
  double severity;
};

struct SeverityCurve {
  std::vector<SeverityPoint> points;
  double level;
  double warranted_gamma;
};

double severity_at(const NormalProblem& problem, double theta1);

/// Same probability as severity_at; kept under its own name for callers
/// tabulating the severity threshold next to the significance bound.
double severity_threshold_probe(const NormalProblem& problem, double theta1);

/// gamma = (xbar - theta0) - z_level sigma / sqrt(n).
double warranted_discrepancy_closed_form(const NormalProblem& problem, double level);

/// gamma from bisection on severity_at alone (no quantile function).
double warranted_discrepancy_by_root(const NormalProblem& problem, double level);

/// Closed form, checked against the root-finding route. Throws
/// std::logic_error if the two disagree by more than
/// kWarrantedCrossCheckTol * max(1, sigma / sqrt(n)).
double warranted_discrepancy(const NormalProblem& problem, double level);

inline constexpr double kWarrantedCrossCheckTol = 1e-8;

/// Throws std::invalid_argument on an empty or non-ascending grid.
SeverityCurve severity_curve(const SeverityQuery& query, std::span<const double> theta1_grid);

}  // namespace lindley
