#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "lindley/binomial_testing.hpp"
#include "lindley/cli.hpp"
#include "lindley/kernels.hpp"
#include "lindley/numerics.hpp"
#include "lindley/paradox.hpp"
#include "lindley/scores.hpp"
#include "lindley/severity.hpp"

namespace lindley::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string format;
  std::string out_path;
  std::uint64_t seed = 42;
  int digits = 6;
};

struct Emission {
  Emission(OutputEnvelope env, Format fmt, int code = kExitOk, std::vector<std::string> comments = {})
      : envelope(std::move(env)), default_format(fmt), exit_code(code), csv_comments(std::move(comments)) {}

  OutputEnvelope envelope;
  Format default_format;
  int exit_code;
  // extra '#' lines for CSV output, after the envelope preamble
  std::vector<std::string> csv_comments;
};

// --- shared option groups ----------------------------------------------------

struct ProblemOptions {
  double theta0 = 0.0;
  double sigma = 1.0;
  std::int64_t n = 0;
  std::optional<double> xbar;
  std::optional<double> t;

  CLI::Option* n_opt = nullptr;
  CLI::Option* xbar_opt = nullptr;
  CLI::Option* t_opt = nullptr;

  void attach(CLI::App* app, bool allow_t) {
    app->add_option("--theta0", theta0, "Null value theta0")->capture_default_str();
    app->add_option("--sigma", sigma, "Known sampling standard deviation")->capture_default_str();
    n_opt = app->add_option("--n", n, "Sample size")->required();
    xbar_opt = app->add_option("--xbar", xbar, "Observed sample mean");
    if (allow_t) {
      t_opt = app->add_option("--t", t, "Observed t statistic sqrt(n)(xbar - theta0)/sigma");
    }
  }

  NormalProblem problem() const {
    const bool has_x = xbar.has_value();
    const bool has_t = t.has_value();
    if (has_x && has_t) {
      throw UsageError("--t and --xbar are mutually exclusive: give the data either as a t "
                       "statistic or as a sample mean, not both");
    }
    if (!has_x && !has_t) throw UsageError("one of --t or --xbar is required");
    if (n < 1) throw UsageError("--n must be at least 1");
    if (!(sigma > 0.0)) throw UsageError("--sigma must be positive");
    if (has_t) return NormalProblem::from_t(theta0, sigma, n, *t);
    NormalProblem p{theta0, sigma, n, *xbar};
    p.validate();
    return p;
  }

  void echo(OutputEnvelope& env) const {
    env.input("theta0", theta0).input("sigma", sigma).input("n", n);
    if (xbar) env.input("xbar", *xbar);
    if (t) env.input("t", *t);
  }
};

void check_probability(double v, const char* flag) {
  if (!(v > 0.0 && v < 1.0)) {
    throw UsageError(std::string(flag) + " must lie strictly inside (0, 1)");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* flag) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "' as an integer");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

std::vector<double> parse_real_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " is empty");
  return out;
}

// --- report ------------------------------------------------------------------

struct ReportCommand {
  ProblemOptions problem;
  std::optional<double> tau;
  double rho0 = 0.5;
  double alpha = 0.05;

  void attach(CLI::App* app) {
    problem.attach(app, true);
    app->add_option("--tau", tau, "Prior standard deviation under H1 (default: sigma)");
    app->add_option("--rho0", rho0, "Prior probability of H0")->capture_default_str();
    app->add_option("--alpha", alpha, "Significance bound")->capture_default_str();
  }

  Emission run() const {
    const NormalProblem p = problem.problem();
    check_probability(rho0, "--rho0");
    check_probability(alpha, "--alpha");
    const ConjugatePrior prior{tau.value_or(p.sigma)};
    if (!(prior.tau > 0.0)) throw UsageError("--tau must be positive");
    const HypothesisWeights w(rho0);
    const TestReport r = make_test_report(p, prior, w, alpha);
    const double bf_sd = savage_dickey_bf(p, prior);

    OutputEnvelope env("report");
    problem.echo(env);
    env.input("tau", prior.tau).input("rho0", rho0).input("alpha", alpha);
    env.result("t", r.t, "closed-form")
        .result("p_value", r.p_value, "two-sided normal tail")
        .result("bf01", r.bf01, "marginal-likelihood ratio")
        .result("bf01_savage_dickey", bf_sd, "posterior/prior density ratio at theta0")
        .result("log_bf01", r.log_bf01, "marginal-likelihood ratio")
        .result("post_prob0", r.post_prob0, "posterior odds identity")
        .result("reject_frequentist", r.reject_frequentist, "p_value <= alpha")
        .result("favor_null_bayes", r.favor_null_bayes, "bf01 >= 1")
        .result("paradox", r.paradoxical(), "reject_frequentist and favor_null_bayes");
    const HypothesisWeights compensated = weight_compensation(
        numerics::normal_pdf(p.theta0, p.theta0, prior.tau * prior.tau));
    env.result("compensated_rho0", compensated.rho0(), "rho0 = (1 - rho0) pi1(theta0)")
        .result("compensated_post_prob0", posterior_prob_null_from_log(r.log_bf01, compensated),
                "posterior odds identity with compensated weights");
    return {std::move(env), Format::kJson};
  }
};

// --- paradox -----------------------------------------------------------------

struct ParadoxCommand {
  double t = 1.96;
  double target = 0.95;
  double rho0 = 0.5;
  double alpha = 0.05;
  std::int64_t span = 2;
  std::string n_list;
  std::string alpha_list;

  void attach(CLI::App* app) {
    app->add_option("--t", t, "Fixed t statistic")->required();
    app->add_option("--target", target, "Target posterior probability of H0")->capture_default_str();
    app->add_option("--rho0", rho0, "Prior probability of H0")->capture_default_str();
    app->add_option("--alpha", alpha, "Significance bound")->capture_default_str();
    app->add_option("--span", span, "Rows on each side of the crossing")->capture_default_str();
    app->add_option("--n-list", n_list, "Explicit comma-separated sample sizes for the table");
    app->add_option("--alpha-list", alpha_list,
                    "Per-row significance bounds aligned with --n-list");
  }

  Emission run() const {
    check_probability(target, "--target");
    check_probability(rho0, "--rho0");
    check_probability(alpha, "--alpha");
    if (span < 0) throw UsageError("--span must be non-negative");
    const ParadoxQuery q{t, target, HypothesisWeights(rho0), alpha};

    OutputEnvelope env("paradox");
    env.input("t", t).input("target", target).input("rho0", rho0).input("alpha", alpha);

    const std::int64_t crossing = crossing_sample_size(q);
    const BranchMinimum minimum = bf_branch_minimum(t);
    env.result("crossing_n", crossing, "log-BF root + integer refinement")
        .result("required_bf01", required_bayes_factor(target, q.weights), "posterior odds identity")
        .result("branch_n_star", minimum.n_star, "closed-form")
        .result("branch_bf_min", minimum.bf_min, "closed-form");

    std::vector<std::int64_t> ns;
    if (!n_list.empty()) {
      ns = parse_int_list(n_list, "--n-list");
      for (const auto n : ns) {
        if (n < 1) throw UsageError("--n-list entries must be >= 1");
      }
    } else {
      for (std::int64_t n = std::max<std::int64_t>(1, crossing - span); n <= crossing + span; ++n) {
        ns.push_back(n);
      }
    }
    std::function<double(std::int64_t)> alpha_of_n;
    std::vector<double> alphas;
    if (!alpha_list.empty()) {
      if (n_list.empty()) throw UsageError("--alpha-list requires --n-list");
      alphas = parse_real_list(alpha_list, "--alpha-list");
      if (alphas.size() != ns.size()) throw UsageError("--alpha-list must match --n-list in length");
      for (const double a : alphas) check_probability(a, "--alpha-list");
      alpha_of_n = [&ns, &alphas](std::int64_t n) {
        return alphas[static_cast<std::size_t>(std::find(ns.begin(), ns.end(), n) - ns.begin())];
      };
    }

    Table table{{"n", "p_value", "bf01", "post_prob0", "alpha", "reject_frequentist",
                 "favor_null_bayes", "paradox", "at_crossing"},
                {}};
    for (const auto& row : paradox_table(q, ns, alpha_of_n)) {
      const auto& r = row.report;
      table.add_row({row.n, r.p_value, r.bf01, r.post_prob0, r.alpha, r.reject_frequentist,
                     r.favor_null_bayes, row.paradoxical(), row.n == crossing});
    }
    env.table(std::move(table));
    return {std::move(env), Format::kCsv, kExitOk, {"crossing_n=" + std::to_string(crossing)}};
  }
};

// --- severity ----------------------------------------------------------------

struct SeverityCommand {
  ProblemOptions problem;
  std::optional<std::int64_t> successes;
  double level = 0.9;
  std::string grid;
  std::optional<double> grid_from;
  std::optional<double> grid_to;
  std::int64_t grid_points = 11;

  void attach(CLI::App* app) {
    app->add_option("--theta0", problem.theta0, "Null value theta0")->capture_default_str();
    app->add_option("--sigma", problem.sigma, "Known sampling standard deviation")->capture_default_str();
    app->add_option("--n", problem.n, "Sample size")->required();
    app->add_option("--xbar", problem.xbar, "Observed sample mean");
    app->add_option("--successes", successes,
                    "Binomial success count; uses the normal approximation with "
                    "sd sqrt(theta0 (1 - theta0))");
    app->add_option("--level", level, "Severity level for the warranted discrepancy")
        ->capture_default_str();
    app->add_option("--grid", grid, "Comma-separated theta1 values (ascending)");
    app->add_option("--grid-from", grid_from, "First theta1 of an equally spaced grid");
    app->add_option("--grid-to", grid_to, "Last theta1 of an equally spaced grid");
    app->add_option("--grid-points", grid_points, "Points in the equally spaced grid")
        ->capture_default_str();
  }

  Emission run() const {
    check_probability(level, "--level");
    NormalProblem p;
    OutputEnvelope env("severity");
    if (successes) {
      if (problem.xbar) throw UsageError("--successes and --xbar are mutually exclusive");
      const BinomialProblem b{problem.n, *successes, problem.theta0};
      try {
        b.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      p = normal_approximation(b);
      env.input("theta0", b.theta0).input("n", b.n).input("successes", b.x);
      env.note("binomial severity uses the null-based standard deviation sqrt(theta0 (1 - theta0))");
    } else {
      if (!problem.xbar) throw UsageError("--xbar (or --successes) is required");
      p = problem.problem();
      problem.echo(env);
    }
    env.input("level", level);

    std::vector<double> thetas;
    if (!grid.empty()) {
      if (grid_from || grid_to) throw UsageError("--grid conflicts with --grid-from/--grid-to");
      thetas = parse_real_list(grid, "--grid");
    } else {
      const double se = p.sigma / std::sqrt(static_cast<double>(p.n));
      const double lo = grid_from.value_or(p.xbar - 3.0 * se);
      const double hi = grid_to.value_or(p.xbar + 3.0 * se);
      if (grid_points < 1) throw UsageError("--grid-points must be at least 1");
      if (grid_points == 1) {
        thetas.push_back(lo);
      } else {
        if (!(hi > lo)) throw UsageError("--grid-to must exceed --grid-from");
        for (std::int64_t i = 0; i < grid_points; ++i) {
          thetas.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1));
        }
      }
    }
    for (std::size_t i = 1; i < thetas.size(); ++i) {
      if (!(thetas[i] > thetas[i - 1])) throw UsageError("severity grid must be strictly ascending");
    }

    const SeverityCurve curve = severity_curve({p, level}, thetas);
    env.result("warranted_gamma", curve.warranted_gamma,
               "closed form, cross-checked by root finding")
        .result("warranted_theta1", p.theta0 + curve.warranted_gamma, "theta0 + gamma")
        .result("severity_at_theta0", severity_threshold_probe(p, p.theta0), "closed-form")
        .result("sd_convention", successes ? "null-based" : "known-sigma");

    Table table{{"theta1", "gamma", "severity"}, {}};
    for (const auto& pt : curve.points) table.add_row({pt.theta1, pt.gamma, pt.severity});
    table.add_row({"warranted_gamma", curve.warranted_gamma, level});
    env.table(std::move(table));
    return {std::move(env), Format::kCsv};
  }
};

// --- binomial ----------------------------------------------------------------

struct BinomialCommand {
  std::int64_t n = 0;
  std::int64_t x = 0;
  double theta0 = 0.5;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "Number of trials")->required();
    app->add_option("--x", x, "Number of successes")->required();
    app->add_option("--theta0", theta0, "Null success probability")->required();
  }

  Emission run() const {
    const BinomialProblem b{n, x, theta0};
    try {
      b.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    OutputEnvelope env("binomial");
    env.input("n", n).input("x", x).input("theta0", theta0);
    env.result("z", binomial_z(b), "normal approximation, null-based sd")
        .result("p_value", binomial_p_value(b), "two-sided normal approximation")
        .result("bf_flat", binomial_bf_flat(b), "exact Beta integral, flat prior")
        .result("log_bf_flat", log_binomial_bf_flat(b), "exact Beta integral, flat prior");
    try {
      env.result("bf_laplace", binomial_bf_laplace(b), "Laplace approximation");
    } catch (const ApproximationInvalid& e) {
      env.result("bf_laplace", nullptr, "Laplace approximation");
      env.note(e.what());
    }
    return {std::move(env), Format::kJson};
  }
};

// --- score -------------------------------------------------------------------

struct ScoreCommand {
  ProblemOptions problem;
  std::string rule;
  std::string alt = "conjugate";
  std::optional<double> tau;
  bool tau_equals_sigma = false;
  double c = 1.0;
  std::optional<double> bound;

  void attach(CLI::App* app) {
    problem.attach(app, true);
    app->add_option("--rule", rule, "log | hyvarinen | sprenger-kl")->required();
    app->add_option("--alt", alt, "Alternative prior: conjugate | flat")->capture_default_str();
    app->add_option("--tau", tau, "Conjugate prior standard deviation");
    app->add_flag("--tau-equals-sigma", tau_equals_sigma, "Use tau = sigma (the default)");
    app->add_option("--c", c, "Constant of the flat alternative")->capture_default_str();
    app->add_option("--bound", bound, "Acceptance bound for the sprenger-kl score");
  }

  Emission run() const {
    const auto r = parse_score_rule(rule);
    if (!r) throw UsageError("--rule must be one of log, hyvarinen, sprenger-kl");
    if (alt != "conjugate" && alt != "flat") throw UsageError("--alt must be conjugate or flat");
    if (tau && tau_equals_sigma) throw UsageError("--tau and --tau-equals-sigma are mutually exclusive");
    const NormalProblem p = problem.problem();

    OutputEnvelope env("score");
    problem.echo(env);
    env.input("rule", rule).input("alt", alt);

    AlternativePrior prior;
    if (alt == "flat") {
      if (*r == ScoreRule::kSprengerKl) {
        throw UsageError("sprenger-kl needs a conjugate alternative (--alt conjugate)");
      }
      if (!(c > 0.0)) throw UsageError("--c must be positive");
      prior = ImproperFlatPrior{c};
      env.input("c", c);
    } else {
      const double tv = tau.value_or(p.sigma);
      if (!(tv > 0.0)) throw UsageError("--tau must be positive");
      prior = ConjugatePrior{tv};
      env.input("tau", tv);
    }

    ScoreReport report{};
    std::string source;
    switch (*r) {
      case ScoreRule::kLog:
        report = log_score_compare(p, prior);
        source = "penalty -ln m(xbar)";
        break;
      case ScoreRule::kHyvarinen:
        report = hyvarinen_compare(p, prior);
        source = "penalty 2 (ln m)'' + ((ln m)')^2";
        break;
      case ScoreRule::kSprengerKl:
        report = sprenger_compare(p, std::get<ConjugatePrior>(prior), bound);
        source = "posterior expected log-likelihood ratio, size-n replicate";
        if (bound) env.input("bound", *bound);
        break;
    }
    env.result("rule", std::string(to_string(report.rule)))
        .result("s0", report.s0, source)
        .result("s1", report.s1, source)
        .result("diff", report.diff, "s0 - s1")
        .result("selection", std::string(to_string(report.selection)),
                report.rule == ScoreRule::kSprengerKl ? "score vs acceptance bound"
                                                      : "smaller penalty wins")
        .result("depends_on_constant", report.depends_on_constant);
    if (report.depends_on_constant) {
      env.note("s1 depends on the arbitrary constant c of the flat prior");
    }
    if (report.rule == ScoreRule::kSprengerKl && !bound) {
      env.note("no acceptance bound supplied; the score is reported without a selection");
    }
    return {std::move(env), Format::kJson};
  }
};

// --- simulate ----------------------------------------------------------------

struct SimulateCommand {
  std::string kind;
  std::int64_t reps = 2000;
  std::string grid = "100,10000";
  double theta0 = 0.0;
  double sigma = 1.0;
  double shift = 0.0;
  double alpha = 0.05;
  std::string alt = "flat";
  std::optional<double> tau;

  void attach(CLI::App* app) {
    app->add_option("--kind", kind, "consistency | uniformity | score-consistency")->required();
    app->add_option("--reps", reps, "Replications")->capture_default_str();
    app->add_option("--grid", grid, "Comma-separated increasing sample sizes")->capture_default_str();
    app->add_option("--theta0", theta0, "Null value")->capture_default_str();
    app->add_option("--sigma", sigma, "Sampling standard deviation")->capture_default_str();
    app->add_option("--shift", shift, "(theta_true - theta0) / sigma")->capture_default_str();
    app->add_option("--alpha", alpha, "Significance bound")->capture_default_str();
    app->add_option("--alt", alt, "score-consistency alternative: flat | conjugate")
        ->capture_default_str();
    app->add_option("--tau", tau, "Conjugate prior sd for score-consistency (default sigma)");
  }

  Emission run(std::uint64_t seed) const {
    if (reps < 1) throw UsageError("--reps must be at least 1");
    if (!(sigma > 0.0)) throw UsageError("--sigma must be positive");
    check_probability(alpha, "--alpha");
    OutputEnvelope env("simulate");
    env.input("kind", kind).input("seed", seed).input("reps", reps);
    env.result("simd_level", std::string(kernels::to_string(kernels::active_level())));

    if (kind == "uniformity") {
      const auto ns = parse_int_list(grid, "--grid");
      if (reps < 100) throw UsageError("uniformity needs --reps >= 100");
      env.input("shift", shift);
      Table table{{"n", "replications", "ks_statistic", "critical_value_1pct", "within_critical"}, {}};
      for (const auto n : ns) {
        if (n < 1) throw UsageError("--grid entries must be >= 1");
        const auto res = pvalue_uniformity_check({seed, reps, n, shift});
        table.add_row({n, res.replications, res.ks_statistic, res.critical_value_1pct,
                       res.ks_statistic < res.critical_value_1pct});
      }
      env.input("grid", grid);
      env.table(std::move(table));
      return {std::move(env), Format::kCsv};
    }

    ConsistencyRun run;
    run.theta0 = theta0;
    run.sigma = sigma;
    run.theta_true = theta0 + shift * sigma;
    run.n_grid = parse_int_list(grid, "--grid");
    run.replications = reps;
    run.seed = seed;
    run.alpha = alpha;
    try {
      run.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    env.input("grid", grid).input("theta0", theta0).input("sigma", sigma).input("shift", shift);

    if (kind == "consistency") {
      env.input("alpha", alpha);
      Table table{{"n", "median_log_bf", "median_p_value", "rejection_rate", "bf_small_rate",
                   "p_small_rate", "joint_small_rate"},
                  {}};
      for (const auto& s : consistency_simulation(run)) {
        table.add_row({s.n, s.median_log_bf, s.median_p_value, s.rejection_rate, s.bf_small_rate,
                       s.p_small_rate, s.joint_small_rate});
      }
      env.table(std::move(table));
      return {std::move(env), Format::kCsv};
    }
    if (kind == "score-consistency") {
      AlternativePrior prior;
      if (alt == "flat") {
        prior = ImproperFlatPrior{1.0};
      } else if (alt == "conjugate") {
        prior = ConjugatePrior{tau.value_or(sigma)};
        env.input("tau", tau.value_or(sigma));
      } else {
        throw UsageError("--alt must be flat or conjugate");
      }
      env.input("alt", alt);
      Table table{{"n", "select_null", "select_alternative", "tie"}, {}};
      for (const auto& s : score_consistency_sim(run, prior)) {
        table.add_row({s.n, s.select_null, s.select_alternative, s.tie});
      }
      env.table(std::move(table));
      return {std::move(env), Format::kCsv};
    }
    throw UsageError("--kind must be consistency, uniformity or score-consistency");
  }
};

// --- paper-check ---------------------------------------------------------------

struct PaperCheckCommand {
  std::vector<std::string> zero_tolerance;

  void attach(CLI::App* app) {
    app->add_option("--zero-tolerance", zero_tolerance,
                    "Force an anchor's tolerance to zero (repeatable); demonstrates failure reporting");
  }

  Emission run() const {
    const auto ids = anchor_ids();
    for (const auto& z : zero_tolerance) {
      if (std::find(ids.begin(), ids.end(), z) == ids.end()) {
        throw UsageError("unknown anchor id '" + z + "'");
      }
    }
    const auto anchors = evaluate_anchors({zero_tolerance});
    OutputEnvelope env("paper-check");
    if (!zero_tolerance.empty()) env.input("zero_tolerance", zero_tolerance);
    Table table{{"id", "expected", "tolerance", "observed", "abs_error", "status", "description"}, {}};
    std::size_t failed = 0;
    for (const auto& a : anchors) {
      failed += !a.passed;
      table.add_row({a.id, a.expected, a.tolerance, a.observed, std::abs(a.observed - a.expected),
                     a.passed ? "pass" : "FAIL", a.description});
    }
    env.result("anchors", static_cast<std::int64_t>(anchors.size()))
        .result("failed", static_cast<std::int64_t>(failed))
        .result("all_passed", failed == 0);
    env.table(std::move(table));
    return {std::move(env), Format::kTable, failed == 0 ? kExitOk : kExitFailure};
  }
};

std::string render(const Emission& e, Format format, const NumberFormat& fmt) {
  std::string body = e.envelope.render(format, fmt);
  if (format != Format::kCsv || e.csv_comments.empty()) return body;
  // Extra comments go after the envelope preamble, before the header row.
  std::string comments;
  for (const auto& c : e.csv_comments) comments += "# " + c + "\n";
  std::size_t pos = 0;
  while (pos < body.size() && body[pos] == '#') pos = body.find('\n', pos) + 1;
  body.insert(pos, comments);
  return body;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point-null testing calculus: p-values, Bayes factors, severity and scores",
               "lindley"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  GlobalOptions global;
  app.add_option("--format", global.format, "Output format: json | csv | table");
  app.add_option("--out", global.out_path, "Write output to PATH instead of stdout");
  app.add_option("--seed", global.seed, "Seed for simulations")->capture_default_str();
  app.add_option("--digits", global.digits, "Significant digits in output")->capture_default_str();

  ReportCommand report;
  ParadoxCommand paradox;
  SeverityCommand severity;
  BinomialCommand binomial;
  ScoreCommand score;
  SimulateCommand simulate;
  PaperCheckCommand paper_check;

  auto* report_app = app.add_subcommand("report", "Side-by-side frequentist/Bayesian verdicts");
  auto* paradox_app = app.add_subcommand("paradox", "Crossing sample size and verdict table");
  auto* severity_app = app.add_subcommand("severity", "Severity curve and warranted discrepancy");
  auto* binomial_app = app.add_subcommand("binomial", "Binomial point-null test with flat prior");
  auto* score_app = app.add_subcommand("score", "Scoring-rule comparison of H0 and H1 predictives");
  auto* simulate_app = app.add_subcommand("simulate", "Seeded Monte Carlo summaries");
  auto* check_app = app.add_subcommand("paper-check", "Reproduce every reference value");
  report.attach(report_app);
  paradox.attach(paradox_app);
  severity.attach(severity_app);
  binomial.attach(binomial_app);
  score.attach(score_app);
  simulate.attach(simulate_app);
  paper_check.attach(check_app);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  NumberFormat fmt{global.digits};
  if (global.digits < 1 || global.digits > 17) {
    err << "error: --digits must be between 1 and 17\n";
    return kExitUsage;
  }
  std::optional<Format> format;
  if (!global.format.empty()) {
    format = parse_format(global.format);
    if (!format) {
      err << "error: --format must be json, csv or table\n";
      return kExitUsage;
    }
  }

  try {
    std::optional<Emission> emission;
    if (report_app->parsed()) emission = report.run();
    else if (paradox_app->parsed()) emission = paradox.run();
    else if (severity_app->parsed()) emission = severity.run();
    else if (binomial_app->parsed()) emission = binomial.run();
    else if (score_app->parsed()) emission = score.run();
    else if (simulate_app->parsed()) emission = simulate.run(global.seed);
    else if (check_app->parsed()) emission = paper_check.run();
    if (!emission) {
      err << "error: no command given\n";
      return kExitUsage;
    }
    const std::string text = render(*emission, format.value_or(emission->default_format), fmt);
    if (!global.out_path.empty()) {
      std::ofstream file(global.out_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << global.out_path << " for writing\n";
        return kExitUsage;
      }
      file << text;
    } else {
      out << text;
    }
    if (emission->exit_code != kExitOk) err << "error: one or more checks failed\n";
    return emission->exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnreachableTarget& e) {
    err << "error: unreachable target: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace lindley::cli
