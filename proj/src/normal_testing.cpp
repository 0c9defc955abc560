#include "lindley/normal_testing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lindley/numerics.hpp"

namespace lindley {

namespace nm = numerics;

NormalProblem NormalProblem::from_t(double theta0, double sigma, std::int64_t n, double t) {
  NormalProblem p{theta0, sigma, n, 0.0};
  p.validate();
  p.xbar = theta0 + t * sigma / std::sqrt(static_cast<double>(n));
  return p;
}

void NormalProblem::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be positive and finite");
  }
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!std::isfinite(theta0) || !std::isfinite(xbar)) {
    throw std::invalid_argument("theta0 and xbar must be finite");
  }
}

double NormalProblem::sampling_variance() const {
  return sigma * sigma / static_cast<double>(n);
}

void validate(const ConjugatePrior& prior) {
  if (!(prior.tau > 0.0) || !std::isfinite(prior.tau)) {
    throw std::invalid_argument("conjugate prior requires tau > 0");
  }
}

void validate(const ImproperFlatPrior& prior) {
  if (!(prior.c > 0.0) || !std::isfinite(prior.c)) {
    throw std::invalid_argument("improper flat prior requires c > 0");
  }
}

HypothesisWeights::HypothesisWeights(double rho0) : rho0_(rho0) {
  if (!(rho0 > 0.0 && rho0 < 1.0)) {
    throw std::invalid_argument("rho0 must lie strictly inside (0, 1), got " + std::to_string(rho0));
  }
}

double t_statistic(const NormalProblem& problem) {
  problem.validate();
  return std::sqrt(static_cast<double>(problem.n)) * (problem.xbar - problem.theta0) / problem.sigma;
}

double p_value(double t) {
  if (std::isnan(t)) throw std::invalid_argument("p_value: t is NaN");
  return std::erfc(std::abs(t) / nm::kSqrt2);
}

double log_bayes_factor_lindley(double t, double n) {
  if (!(n >= 0.0)) throw std::invalid_argument("log_bayes_factor_lindley: n must be non-negative");
  return 0.5 * std::log1p(n) - n * t * t / (2.0 * (1.0 + n));
}

double bayes_factor_lindley(double t, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("bayes_factor_lindley: n must be at least 1");
  return std::exp(log_bayes_factor_lindley(t, static_cast<double>(n)));
}

double log_bayes_factor_conjugate(const NormalProblem& problem, const ConjugatePrior& prior) {
  problem.validate();
  validate(prior);
  const double s2 = problem.sampling_variance();
  const double tau2 = prior.tau * prior.tau;
  const double d = problem.xbar - problem.theta0;
  // ln N(d; 0, s2) - ln N(d; 0, s2 + tau2), grouped so tau = sigma reduces
  // term by term to the unit-information expression.
  return 0.5 * std::log1p(tau2 / s2) - 0.5 * (d * d / s2) * (tau2 / (s2 + tau2));
}

double bayes_factor_conjugate(const NormalProblem& problem, const ConjugatePrior& prior) {
  return std::exp(log_bayes_factor_conjugate(problem, prior));
}

NormalPosterior conjugate_posterior(const NormalProblem& problem, const ConjugatePrior& prior) {
  problem.validate();
  validate(prior);
  const double s2 = problem.sampling_variance();
  const double tau2 = prior.tau * prior.tau;
  const double mean = (tau2 * problem.xbar + s2 * problem.theta0) / (tau2 + s2);
  const double variance = s2 * tau2 / (tau2 + s2);
  return {mean, variance};
}

double log_savage_dickey_bf(const NormalProblem& problem, const ConjugatePrior& prior) {
  const NormalPosterior post = conjugate_posterior(problem, prior);
  return nm::normal_log_pdf(problem.theta0, post.mean, post.variance) -
         nm::normal_log_pdf(problem.theta0, problem.theta0, prior.tau * prior.tau);
}

double savage_dickey_bf(const NormalProblem& problem, const ConjugatePrior& prior) {
  return std::exp(log_savage_dickey_bf(problem, prior));
}

double posterior_prob_null(double bf01, const HypothesisWeights& weights) {
  if (!(bf01 > 0.0)) throw std::invalid_argument("posterior_prob_null: bf01 must be positive");
  if (std::isinf(bf01)) return 1.0;
  const double num = weights.rho0() * bf01;
  return num / (num + weights.rho1());
}

double posterior_prob_null_from_log(double log_bf01, const HypothesisWeights& weights) {
  // 1 / (1 + exp(-(log odds)))
  const double log_odds = log_bf01 + std::log(weights.rho0()) - std::log(weights.rho1());
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

PriorScaleReading reinterpret_as_prior_scale(const NormalProblem& problem) {
  const double t = t_statistic(problem);
  NormalProblem single{problem.theta0, problem.sigma, 1, problem.theta0 + t * problem.sigma};
  ConjugatePrior prior{problem.sigma * std::sqrt(static_cast<double>(problem.n))};
  return {single, prior};
}

ImproperBayesFactor improper_bf(const NormalProblem& problem, const ImproperFlatPrior& prior) {
  problem.validate();
  validate(prior);
  const double log_m0 = nm::normal_log_pdf(problem.xbar, problem.theta0, problem.sampling_variance());
  const double log_value = log_m0 - std::log(prior.c);
  return {std::exp(log_m0) / prior.c, log_value, prior.c, true};
}

HypothesisWeights weight_compensation(double pi1_at_theta0) {
  if (!(pi1_at_theta0 > 0.0) || !std::isfinite(pi1_at_theta0)) {
    throw std::invalid_argument("weight_compensation: prior density at theta0 must be positive");
  }
  return HypothesisWeights(pi1_at_theta0 / (1.0 + pi1_at_theta0));
}

namespace {

TestReport finish_report(double t, double log_bf, const HypothesisWeights& weights, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  TestReport r;
  r.t = t;
  r.p_value = p_value(t);
  r.log_bf01 = log_bf;
  r.bf01 = std::exp(log_bf);
  r.post_prob0 = posterior_prob_null_from_log(log_bf, weights);
  r.rho0 = weights.rho0();
  r.alpha = alpha;
  r.reject_frequentist = r.p_value <= alpha;
  r.favor_null_bayes = log_bf >= 0.0;
  return r;
}

}  // namespace

TestReport make_test_report(const NormalProblem& problem, const ConjugatePrior& prior,
                            const HypothesisWeights& weights, double alpha) {
  return finish_report(t_statistic(problem), log_bayes_factor_conjugate(problem, prior), weights,
                       alpha);
}

TestReport make_lindley_report(double t, std::int64_t n, const HypothesisWeights& weights,
                               double alpha) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return finish_report(t, log_bayes_factor_lindley(t, static_cast<double>(n)), weights, alpha);
}

}  // namespace lindley
