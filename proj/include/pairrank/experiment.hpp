#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace pairrank {

enum class Method { spectral, mle, mle_unregularized };

const char* method_name(Method m);

struct ExperimentConfig {
  int n = 200;
  std::vector<double> p_list{0.25};
  std::vector<int> L_list{20};
  int K = 10;
  int trials = 100;
  std::uint64_t seed = 1;

  enum class ScoreMode { uniform_half_one, two_level, explicit_scores };
  ScoreMode score_mode = ScoreMode::uniform_half_one;
  std::vector<double> delta_list{0.0};  // two_level only
  Eigen::VectorXd explicit_w;           // explicit_scores only

  std::vector<Method> methods{Method::spectral, Method::mle,
                              Method::mle_unregularized};

  enum class DRule { two_dmax, cd_np };
  DRule d_rule = DRule::two_dmax;
  double c_d = 2.0;

  enum class LambdaRule { auto_c, fixed, zero };
  LambdaRule lambda_rule = LambdaRule::auto_c;
  double c_lambda = 2.0;
  double fixed_lambda = 0.0;

  enum class SweepMode { product, zip };
  SweepMode sweep_mode = SweepMode::product;

  int threads = 1;

  void validate() const;  // throws ConfigError
};

// One sweep point of the (p, L, delta) grid.
struct SweepPoint {
  int index = 0;
  double p = 0.0;
  int L = 0;
  double delta = 0.0;
};

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config);

struct TrialRecord {
  int sweep_index = 0;
  double p = 0.0;
  int L = 0;
  double delta = 0.0;
  Method method = Method::spectral;
  int trial = 0;
  double rel_linf = 0.0;
  double rel_l2 = 0.0;
  int topk_exact = 0;
  long iterations = 0;
  double seconds = 0.0;  // wall time; never serialized (kept deterministic)
  std::uint64_t seed_used = 0;
  std::string status;  // "ok", "disconnected", or an error tag
};

// Runs trials x sweep points x methods. Spectral and MLE variants see the
// identical ComparisonData within a trial. Disconnected graphs become
// status="disconnected" records rather than errors. Record order is
// (sweep point, trial, method) regardless of thread count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

// CSV with `#` comment header lines (timestamp, config echo, timing) and
// a deterministic body:
//   n,p,L,K,delta,method,trial,rel_linf,rel_l2,topk_exact,iters,seed,status
void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<TrialRecord>& records);

struct SweepSummary {
  SweepPoint point;
  Method method = Method::spectral;
  int count = 0;     // trials included
  int excluded = 0;  // disconnected / failed trials
  double mean_rel_linf = 0.0;
  double std_rel_linf = 0.0;
  double mean_rel_l2 = 0.0;
  double std_rel_l2 = 0.0;
  double accuracy = 0.0;  // mean exact top-K recovery
};

// Per-(sweep point, method) aggregates over status == "ok" trials.
std::vector<SweepSummary> summarize(const ExperimentConfig& config,
                                    const std::vector<TrialRecord>& records);

// Self-contained gnuplot script for the per-sweep-point aggregates: one
// curve per method over whichever of delta, L, or p is being swept
// (accuracy for two-level sweeps, mean relative error otherwise).
// Plotting stays out of process; the script embeds its own data.
void write_gnuplot_script(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<SweepSummary>& summaries);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;  // of the slope
};

// Ordinary least squares of log(y) against log(x). Needs >= 2 points.
SlopeFit fit_log_slope(const std::vector<double>& x,
                       const std::vector<double>& y);

// key = value configuration text; '#' starts a comment. Lists are
// comma-separated. See README for the key set.
ExperimentConfig parse_config_text(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace pairrank
