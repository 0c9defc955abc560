#include "lindley/severity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lindley/kernels.hpp"
#include "lindley/numerics.hpp"

namespace lindley {

namespace {

double standard_error(const NormalProblem& problem) {
  return problem.sigma / std::sqrt(static_cast<double>(problem.n));
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("severity level must lie strictly inside (0, 1)");
  }
}

}  // namespace

void SeverityQuery::validate() const {
  problem.validate();
  check_level(level);
}

double severity_at(const NormalProblem& problem, double theta1) {
  problem.validate();
  return numerics::std_normal_cdf((problem.xbar - theta1) / standard_error(problem));
}

double severity_threshold_probe(const NormalProblem& problem, double theta1) {
  return severity_at(problem, theta1);
}

double warranted_discrepancy_closed_form(const NormalProblem& problem, double level) {
  problem.validate();
  check_level(level);
  return (problem.xbar - problem.theta0) -
         numerics::std_normal_quantile(level) * standard_error(problem);
}

double warranted_discrepancy_by_root(const NormalProblem& problem, double level) {
  problem.validate();
  check_level(level);
  // Solve in standardised units u = (theta1 - xbar) / se, where severity is
  // Phi(-u), decreasing from ~1 at u = -40.
  const NormalProblem unit{0.0, 1.0, 1, 0.0};
  const auto sev = [&unit](double u) { return severity_at(unit, u); };
  const double u = numerics::find_crossing(sev, -40.0, level, 1e-16);
  return problem.xbar + u * standard_error(problem) - problem.theta0;
}

double warranted_discrepancy(const NormalProblem& problem, double level) {
  const double closed = warranted_discrepancy_closed_form(problem, level);
  const double rooted = warranted_discrepancy_by_root(problem, level);
  const double scale = std::max(1.0, standard_error(problem));
  if (std::abs(closed - rooted) > kWarrantedCrossCheckTol * scale) {
    throw std::logic_error("warranted discrepancy cross-check failed: closed form " +
                           std::to_string(closed) + " vs root " + std::to_string(rooted));
  }
  return closed;
}

SeverityCurve severity_curve(const SeverityQuery& query, std::span<const double> theta1_grid) {
  query.validate();
  if (theta1_grid.empty()) throw std::invalid_argument("severity curve: grid is empty");
  for (std::size_t i = 0; i < theta1_grid.size(); ++i) {
    if (!std::isfinite(theta1_grid[i])) throw std::invalid_argument("severity curve: non-finite grid value");
    if (i > 0 && !(theta1_grid[i] > theta1_grid[i - 1])) {
      throw std::invalid_argument("severity curve: grid must be strictly ascending");
    }
  }
  const NormalProblem& p = query.problem;
  std::vector<double> sev(theta1_grid.size());
  kernels::active().severity(theta1_grid, p.xbar, 1.0 / standard_error(p), sev);

  SeverityCurve curve;
  curve.level = query.level;
  curve.warranted_gamma = warranted_discrepancy(p, query.level);
  curve.points.reserve(theta1_grid.size());
  for (std::size_t i = 0; i < theta1_grid.size(); ++i) {
    curve.points.push_back({theta1_grid[i], theta1_grid[i] - p.theta0, sev[i]});
  }
  return curve;
}

}  // namespace lindley
