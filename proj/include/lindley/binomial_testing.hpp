#pragma once

// Point-null test of a binomial success probability, H0: theta = theta0,
// with a flat Beta(1, 1) alternative.

#include <cstdint>
#include <stdexcept>

#include "lindley/normal_testing.hpp"

namespace lindley {

struct BinomialProblem {
  std::int64_t n = 1;
  std::int64_t x = 0;
  double theta0 = 0.5;

  /// Throws std::invalid_argument unless n >= 1, 0 <= x <= n, 0 < theta0 < 1.
  void validate() const;

  double proportion() const { return static_cast<double>(x) / static_cast<double>(n); }
};

/// Raised when the Laplace route is asked for outside its validity range.
class ApproximationInvalid : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// (x/n - theta0) / sqrt(theta0 (1 - theta0) / n)
double binomial_z(const BinomialProblem& problem);

/// Two-sided normal-approximation p-value 2 (1 - Phi(|z|)).
double binomial_p_value(const BinomialProblem& problem);

/// ln B01 = x ln theta0 + (n - x) ln(1 - theta0) - ln B(x + 1, n - x + 1).
double log_binomial_bf_flat(const BinomialProblem& problem);
double binomial_bf_flat(const BinomialProblem& problem);

/// Minimum of n phat (1 - phat) for which the Laplace route is offered.
inline constexpr double kLaplaceMinInformation = 25.0;

/// exp(-Lambda / 2) sqrt(n / (2 pi phat (1 - phat))), Lambda the likelihood
/// ratio statistic. Throws ApproximationInvalid when
/// n phat (1 - phat) <= kLaplaceMinInformation.
double binomial_bf_laplace(const BinomialProblem& problem);

/// The normal-approximation view used for severity: theta0, the null-based
/// standard deviation sqrt(theta0 (1 - theta0)), n and xbar = x / n.
NormalProblem normal_approximation(const BinomialProblem& problem);

}  // namespace lindley
