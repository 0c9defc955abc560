#include "lindley/scores.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lindley/kernels.hpp"
#include "lindley/numerics.hpp"

namespace lindley {

PredictiveDensity PredictiveDensity::point_null(const NormalProblem& problem) {
  problem.validate();
  return {PredictiveKind::kPointNull, problem.theta0, problem.sampling_variance(), 1.0, 1.0};
}

PredictiveDensity PredictiveDensity::conjugate(const NormalProblem& problem,
                                               const ConjugatePrior& prior) {
  problem.validate();
  lindley::validate(prior);
  return {PredictiveKind::kConjugate, problem.theta0,
          problem.sampling_variance() + prior.tau * prior.tau, 1.0, 1.0};
}

PredictiveDensity PredictiveDensity::improper_flat(const ImproperFlatPrior& prior) {
  lindley::validate(prior);
  return {PredictiveKind::kImproperFlat, 0.0, 1.0, prior.c, 1.0};
}

PredictiveDensity PredictiveDensity::alternative(const NormalProblem& problem,
                                                 const AlternativePrior& prior) {
  if (const auto* conj = std::get_if<ConjugatePrior>(&prior)) return conjugate(problem, *conj);
  return improper_flat(std::get<ImproperFlatPrior>(prior));
}

void PredictiveDensity::validate() const {
  if (!(scale > 0.0)) throw std::invalid_argument("predictive scale must be positive");
  if (kind == PredictiveKind::kImproperFlat) {
    if (!(c > 0.0)) throw std::invalid_argument("flat predictive requires c > 0");
  } else if (!(variance > 0.0)) {
    throw std::invalid_argument("predictive variance must be positive");
  }
}

double PredictiveDensity::log_density(double x) const {
  validate();
  const double base = kind == PredictiveKind::kImproperFlat
                          ? std::log(c)
                          : numerics::normal_log_pdf(x, location, variance);
  return base + std::log(scale);
}

double PredictiveDensity::log_density_gradient(double x) const {
  validate();
  return kind == PredictiveKind::kImproperFlat ? 0.0 : -(x - location) / variance;
}

double PredictiveDensity::log_density_curvature(double) const {
  validate();
  return kind == PredictiveKind::kImproperFlat ? 0.0 : -1.0 / variance;
}

std::string_view to_string(ScoreRule rule) {
  switch (rule) {
    case ScoreRule::kLog:
      return "log";
    case ScoreRule::kHyvarinen:
      return "hyvarinen";
    case ScoreRule::kSprengerKl:
      return "sprenger-kl";
  }
  return "unknown";
}

std::optional<ScoreRule> parse_score_rule(std::string_view name) {
  if (name == "log") return ScoreRule::kLog;
  if (name == "hyvarinen") return ScoreRule::kHyvarinen;
  if (name == "sprenger-kl") return ScoreRule::kSprengerKl;
  return std::nullopt;
}

std::string_view to_string(Selection selection) {
  switch (selection) {
    case Selection::kNull:
      return "null";
    case Selection::kAlternative:
      return "alternative";
    case Selection::kTie:
      return "tie";
    case Selection::kUndecided:
      return "undecided";
  }
  return "unknown";
}

double log_score(double x, const PredictiveDensity& m) { return -m.log_density(x); }

double hyvarinen_score(double x, const PredictiveDensity& m) {
  const double g = m.log_density_gradient(x);
  return 2.0 * m.log_density_curvature(x) + g * g;
}

Selection select_by_penalty(double diff) {
  if (diff < 0.0) return Selection::kNull;
  if (diff > 0.0) return Selection::kAlternative;
  return Selection::kTie;
}

ScoreReport log_score_compare(const NormalProblem& problem, const AlternativePrior& prior) {
  const auto m0 = PredictiveDensity::point_null(problem);
  const auto m1 = PredictiveDensity::alternative(problem, prior);
  ScoreReport r{ScoreRule::kLog, log_score(problem.xbar, m0), log_score(problem.xbar, m1), 0.0,
                Selection::kTie, m1.depends_on_constant(), {}};
  r.diff = r.s0 - r.s1;
  r.selection = select_by_penalty(r.diff);
  return r;
}

ScoreReport hyvarinen_compare(const NormalProblem& problem, const AlternativePrior& prior) {
  const auto m0 = PredictiveDensity::point_null(problem);
  const auto m1 = PredictiveDensity::alternative(problem, prior);
  ScoreReport r{ScoreRule::kHyvarinen, hyvarinen_score(problem.xbar, m0),
                hyvarinen_score(problem.xbar, m1), 0.0, Selection::kTie, false, {}};
  r.diff = r.s0 - r.s1;
  r.selection = select_by_penalty(r.diff);
  return r;
}

double sprenger_kl_score(const NormalProblem& problem, const ConjugatePrior& prior) {
  const NormalPosterior post = conjugate_posterior(problem, prior);
  const double offset = post.mean - problem.theta0;
  return static_cast<double>(problem.n) * (post.variance + offset * offset) /
         (2.0 * problem.sigma * problem.sigma);
}

ScoreReport sprenger_compare(const NormalProblem& problem, const ConjugatePrior& prior,
                             std::optional<double> acceptance_bound) {
  const double score = sprenger_kl_score(problem, prior);
  ScoreReport r{ScoreRule::kSprengerKl, score, 0.0, score, Selection::kUndecided, false,
                acceptance_bound};
  if (acceptance_bound) {
    r.selection = score < *acceptance_bound   ? Selection::kNull
                  : score > *acceptance_bound ? Selection::kAlternative
                                              : Selection::kTie;
  }
  return r;
}

std::vector<ScoreSelectionRates> score_consistency_sim(const ConsistencyRun& run,
                                                       const AlternativePrior& prior) {
  const std::vector<double> means = simulate_sample_means(run);
  const auto reps = static_cast<std::size_t>(run.replications);
  const auto& k = kernels::active();

  std::vector<ScoreSelectionRates> out;
  std::vector<double> s0(reps), s1(reps);
  for (std::size_t g = 0; g < run.n_grid.size(); ++g) {
    const NormalProblem problem{run.theta0, run.sigma, run.n_grid[g], run.theta0};
    const std::span<const double> xbar(means.data() + g * reps, reps);
    k.hyvarinen_normal(xbar, run.theta0, problem.sampling_variance(), s0);
    if (const auto* conj = std::get_if<ConjugatePrior>(&prior)) {
      validate(*conj);
      k.hyvarinen_normal(xbar, run.theta0, problem.sampling_variance() + conj->tau * conj->tau, s1);
    } else {
      validate(std::get<ImproperFlatPrior>(prior));
      std::fill(s1.begin(), s1.end(), 0.0);
    }
    std::size_t null = 0, alt = 0, tie = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      switch (select_by_penalty(s0[r] - s1[r])) {
        case Selection::kNull:
          ++null;
          break;
        case Selection::kAlternative:
          ++alt;
          break;
        default:
          ++tie;
          break;
      }
    }
    const double d = static_cast<double>(reps);
    out.push_back({run.n_grid[g], null / d, alt / d, tie / d});
  }
  return out;
}

}  // namespace lindley
