#pragma once

// Scoring-rule comparisons of the H0 and H1 prior predictives of xbar.
//
// All scores are penalties: smaller is better. The gain-form log score
// S(x, m) = ln m(x) therefore appears here as -ln m(x), and
//   log_score(x, m0) - log_score(x, m1) = -ln B01(x).

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lindley/normal_testing.hpp"
#include "lindley/paradox.hpp"

namespace lindley {

enum class PredictiveKind { kPointNull, kConjugate, kImproperFlat };

struct PredictiveDensity {
  PredictiveKind kind = PredictiveKind::kPointNull;
  double location = 0.0;
  double variance = 1.0;
  /// Constant density value of the improper-flat predictive.
  double c = 1.0;
  /// Positive multiplier applied to the whole density. Scores that are
  /// blind to normalising constants must not depend on it.
  double scale = 1.0;

  static PredictiveDensity point_null(const NormalProblem& problem);
  static PredictiveDensity conjugate(const NormalProblem& problem, const ConjugatePrior& prior);
  static PredictiveDensity improper_flat(const ImproperFlatPrior& prior);
  static PredictiveDensity alternative(const NormalProblem& problem, const AlternativePrior& prior);

  void validate() const;
  double log_density(double x) const;
  /// d/dx ln m(x) and d^2/dx^2 ln m(x).
  double log_density_gradient(double x) const;
  double log_density_curvature(double x) const;
  /// True when the density's overall level is an arbitrary constant.
  bool depends_on_constant() const { return kind == PredictiveKind::kImproperFlat; }
};

enum class ScoreRule { kLog, kHyvarinen, kSprengerKl };

std::string_view to_string(ScoreRule rule);
std::optional<ScoreRule> parse_score_rule(std::string_view name);

enum class Selection { kNull, kAlternative, kTie, kUndecided };

std::string_view to_string(Selection selection);

struct ScoreReport {
  ScoreRule rule;
  double s0;
  double s1;
  double diff;  // s0 - s1
  Selection selection;
  /// Set when a reported number moves with an arbitrary prior constant.
  bool depends_on_constant = false;
  /// Only for the Sprenger score: the caller's acceptance bound, if any.
  std::optional<double> acceptance_bound;
};

/// Penalty -ln m(x).
double log_score(double x, const PredictiveDensity& m);

/// Penalty 2 (ln m)''(x) + ((ln m)'(x))^2. For N(mu, s2):
/// -2 / s2 + (x - mu)^2 / s2^2; for the flat predictive: 0.
double hyvarinen_score(double x, const PredictiveDensity& m);

/// Selection from a penalty difference s0 - s1: negative selects H0,
/// positive H1, zero is a tie.
Selection select_by_penalty(double diff);

ScoreReport log_score_compare(const NormalProblem& problem, const AlternativePrior& prior);
ScoreReport hyvarinen_compare(const NormalProblem& problem, const AlternativePrior& prior);

/// Posterior expectation of the expected log-likelihood ratio of a size-n
/// replicate, E[ E_theta{ ln f(X | theta) / f(X | theta0) } | x ]
///   = n (omega^2 + (mu_n - theta0)^2) / (2 sigma^2)
/// with (mu_n, omega^2) the conjugate posterior. Divide by n for the
/// single-observation version.
double sprenger_kl_score(const NormalProblem& problem, const ConjugatePrior& prior);

/// Report for the Sprenger score: s0 is the score, s1 = 0. No selection is
/// made unless a bound is supplied; then H0 is kept when the score is below it.
ScoreReport sprenger_compare(const NormalProblem& problem, const ConjugatePrior& prior,
                             std::optional<double> acceptance_bound = std::nullopt);

struct ScoreSelectionRates {
  std::int64_t n;
  double select_null;
  double select_alternative;
  double tie;
};

/// Hyvarinen selection frequencies over simulated trajectories of xbar.
std::vector<ScoreSelectionRates> score_consistency_sim(const ConsistencyRun& run,
                                                       const AlternativePrior& prior);

}  // namespace lindley
