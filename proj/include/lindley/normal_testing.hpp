#pragma once

// Point-null testing of a normal mean with known variance:
//   H0: theta = theta0   vs   H1: theta != theta0,
// from the sufficient statistic xbar ~ N(theta, sigma^2 / n).
//
// Bayes factors follow the B01 convention (evidence for H0 over H1) and are
// computed in the log domain; the exponentiated forms are convenience
// wrappers.

#include <cstdint>
#include <variant>

namespace lindley {

struct NormalProblem {
  double theta0 = 0.0;
  double sigma = 1.0;
  std::int64_t n = 1;
  double xbar = 0.0;

  /// Problem whose t statistic equals t: xbar = theta0 + t * sigma / sqrt(n).
  static NormalProblem from_t(double theta0, double sigma, std::int64_t n, double t);

  /// Throws std::invalid_argument on sigma <= 0, n < 1 or non-finite fields.
  void validate() const;

  /// sigma^2 / n, the sampling variance of xbar.
  double sampling_variance() const;
};

/// N(theta0, tau^2) prior on theta under H1.
struct ConjugatePrior {
  double tau = 1.0;
};

/// Flat "density" c on the real line under H1. The constant is arbitrary,
/// and anything computed from it inherits that arbitrariness.
struct ImproperFlatPrior {
  double c = 1.0;
};

using AlternativePrior = std::variant<ConjugatePrior, ImproperFlatPrior>;

void validate(const ConjugatePrior& prior);
void validate(const ImproperFlatPrior& prior);

class HypothesisWeights {
 public:
  /// Throws std::invalid_argument unless 0 < rho0 < 1.
  explicit HypothesisWeights(double rho0 = 0.5);

  double rho0() const { return rho0_; }
  double rho1() const { return 1.0 - rho0_; }
  /// rho0 / (1 - rho0)
  double prior_odds() const { return rho0_ / (1.0 - rho0_); }

 private:
  double rho0_;
};

struct TestReport {
  double t = 0.0;
  double p_value = 1.0;
  double bf01 = 1.0;
  double log_bf01 = 0.0;
  double post_prob0 = 0.5;
  double rho0 = 0.5;
  double alpha = 0.05;
  bool reject_frequentist = false;
  bool favor_null_bayes = true;

  /// Frequentist rejection together with a Bayes factor favouring H0.
  bool paradoxical() const { return reject_frequentist && favor_null_bayes; }
};

double t_statistic(const NormalProblem& problem);

/// Two-sided p-value 2 (1 - Phi(|t|)), evaluated as erfc(|t| / sqrt 2).
///
/// NOTE: the literature sometimes prints this as 1 - 2 Phi(|t|), which is
/// negative for t > 0; the two-sided tail probability is what is meant.
double p_value(double t);

/// ln B01 for the N(theta0, sigma^2) prior (unit-information prior), as a
/// function of real n >= 0:  0.5 ln(1 + n) - n t^2 / (2 (1 + n)).
double log_bayes_factor_lindley(double t, double n);
double bayes_factor_lindley(double t, std::int64_t n);

/// ln m0(xbar) - ln m1(xbar) with m0 = N(theta0, sigma^2/n) and
/// m1 = N(theta0, sigma^2/n + tau^2).
double log_bayes_factor_conjugate(const NormalProblem& problem, const ConjugatePrior& prior);
double bayes_factor_conjugate(const NormalProblem& problem, const ConjugatePrior& prior);

struct NormalPosterior {
  double mean;
  double variance;
};

NormalPosterior conjugate_posterior(const NormalProblem& problem, const ConjugatePrior& prior);

/// Savage-Dickey density ratio pi1(theta0 | x) / pi1(theta0), using the
/// continuous version of the prior density at theta0.
double log_savage_dickey_bf(const NormalProblem& problem, const ConjugatePrior& prior);
double savage_dickey_bf(const NormalProblem& problem, const ConjugatePrior& prior);

/// rho0 B / (rho0 B + 1 - rho0). Throws std::invalid_argument if bf01 <= 0.
double posterior_prob_null(double bf01, const HypothesisWeights& weights);
/// Same quantity from ln B01, without overflowing for extreme Bayes factors.
double posterior_prob_null_from_log(double log_bf01, const HypothesisWeights& weights);

/// One observation x = theta0 + t sigma with a N(theta0, n sigma^2) prior:
/// the sample size of the original problem recast as a prior scale.
struct PriorScaleReading {
  NormalProblem problem;
  ConjugatePrior prior;
};

PriorScaleReading reinterpret_as_prior_scale(const NormalProblem& problem);

/// m0(xbar) / c for a flat alternative with constant c. The value carries
/// no meaning on its own: scaling c by k scales it by 1/k.
struct ImproperBayesFactor {
  double value;
  double log_value;
  double c;
  bool depends_on_constant = true;
};

ImproperBayesFactor improper_bf(const NormalProblem& problem, const ImproperFlatPrior& prior);

/// Weights solving rho0 = (1 - rho0) pi1(theta0), i.e.
/// rho0 = pi1(theta0) / (1 + pi1(theta0)).
HypothesisWeights weight_compensation(double pi1_at_theta0);

/// Full frequentist/Bayesian contrast under a conjugate alternative.
TestReport make_test_report(const NormalProblem& problem, const ConjugatePrior& prior,
                            const HypothesisWeights& weights, double alpha);

/// Contrast from a t statistic alone, using the unit-information prior.
TestReport make_lindley_report(double t, std::int64_t n, const HypothesisWeights& weights,
                               double alpha);

}  // namespace lindley
