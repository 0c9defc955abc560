#include "lindley/binomial_testing.hpp"

#include <cmath>
#include <string>

#include "lindley/numerics.hpp"

namespace lindley {

void BinomialProblem::validate() const {
  if (n < 1) throw std::invalid_argument("binomial: n must be at least 1");
  if (x < 0 || x > n) {
    throw std::invalid_argument("binomial: x must lie in [0, n], got x=" + std::to_string(x) +
                                " n=" + std::to_string(n));
  }
  if (!(theta0 > 0.0 && theta0 < 1.0)) {
    throw std::invalid_argument("binomial: theta0 must lie strictly inside (0, 1)");
  }
}

double binomial_z(const BinomialProblem& problem) {
  problem.validate();
  const double nn = static_cast<double>(problem.n);
  return (problem.proportion() - problem.theta0) /
         std::sqrt(problem.theta0 * (1.0 - problem.theta0) / nn);
}

double binomial_p_value(const BinomialProblem& problem) { return p_value(binomial_z(problem)); }

double log_binomial_bf_flat(const BinomialProblem& problem) {
  problem.validate();
  const double successes = static_cast<double>(problem.x);
  const double failures = static_cast<double>(problem.n - problem.x);
  // 0 * ln(.) is taken as 0 so boundary counts stay finite.
  const double log_null = (problem.x > 0 ? successes * std::log(problem.theta0) : 0.0) +
                          (problem.n > problem.x ? failures * std::log(1.0 - problem.theta0) : 0.0);
  return log_null - numerics::log_beta(successes + 1.0, failures + 1.0);
}

double binomial_bf_flat(const BinomialProblem& problem) {
  return std::exp(log_binomial_bf_flat(problem));
}

namespace {

// a ln(a / b), with the 0 ln 0 = 0 convention.
double xlogy_ratio(double a, double b) { return a > 0.0 ? a * std::log(a / b) : 0.0; }

}  // namespace

double binomial_bf_laplace(const BinomialProblem& problem) {
  problem.validate();
  const double nn = static_cast<double>(problem.n);
  const double phat = problem.proportion();
  const double info = nn * phat * (1.0 - phat);
  if (!(info > kLaplaceMinInformation)) {
    throw ApproximationInvalid("binomial Laplace approximation requires n phat (1 - phat) > " +
                               std::to_string(kLaplaceMinInformation) + ", got " +
                               std::to_string(info));
  }
  const double lambda =
      2.0 * nn * (xlogy_ratio(phat, problem.theta0) + xlogy_ratio(1.0 - phat, 1.0 - problem.theta0));
  return std::exp(-0.5 * lambda) * std::sqrt(nn / (2.0 * numerics::kPi * phat * (1.0 - phat)));
}

NormalProblem normal_approximation(const BinomialProblem& problem) {
  problem.validate();
  NormalProblem p{problem.theta0, std::sqrt(problem.theta0 * (1.0 - problem.theta0)), problem.n,
                  problem.proportion()};
  return p;
}

}  // namespace lindley
