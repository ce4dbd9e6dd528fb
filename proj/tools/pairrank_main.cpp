#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "pairrank/comparisons.hpp"
#include "pairrank/errors.hpp"
#include "pairrank/experiment.hpp"
#include "pairrank/metrics.hpp"
#include "pairrank/mle.hpp"
#include "pairrank/scores.hpp"
#include "pairrank/spectral.hpp"
#include "pairrank/theory.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

using pairrank::SeedSequence;

int cmd_simulate(int n, double p, int L, std::uint64_t seed,
                 const std::string& score_spec, double delta, int k,
                 const std::string& out_path, const std::string& scores_out) {
  SeedSequence root(seed);
  pairrank::ScoreVector scores = [&] {
    if (score_spec == "uniform") return pairrank::uniform_scores(n, root.child(0));
    if (score_spec == "two_level")
      return pairrank::two_level_scores(n, k, delta);
    throw pairrank::ConfigError("scores must be uniform or two_level");
  }();
  auto graph = pairrank::erdos_renyi(n, p, root.child(1));
  auto data = pairrank::sample_comparisons(graph, scores, L, root.child(2));

  std::ofstream out(out_path);
  if (!out) throw pairrank::IoError("cannot open " + out_path);
  pairrank::write_comparison_data(out, data);

  if (!scores_out.empty()) {
    std::ofstream sout(scores_out);
    if (!sout) throw pairrank::IoError("cannot open " + scores_out);
    sout.precision(17);
    for (int i = 0; i < scores.size(); ++i) sout << scores.w()[i] << '\n';
  }
  std::cerr << "wrote " << graph.edge_count() << " edges (connected: "
            << (graph.connected() ? "yes" : "no") << ") to " << out_path
            << '\n';
  return kExitOk;
}

int cmd_rank(const std::string& in_path, const std::string& method, int k,
             double d, double lambda, double c_lambda,
             const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw pairrank::IoError("cannot open " + in_path);
  auto data = pairrank::read_comparison_data(in);

  pairrank::RankingResult result = [&] {
    if (method == "spectral") {
      std::optional<double> dv;
      if (d > 0) dv = d;
      return pairrank::spectral_rank(data, k, dv);
    }
    pairrank::MleConfig config;
    if (method == "mle") {
      config.lambda = lambda >= 0
                          ? lambda
                          : pairrank::auto_lambda(
                                data.graph().size(),
                                pairrank::observed_density(data.graph()),
                                data.comparisons_per_edge(), c_lambda);
    } else if (method == "mle0") {
      config.lambda = 0.0;
    } else {
      throw pairrank::ConfigError("method must be spectral, mle, or mle0");
    }
    return pairrank::mle_rank(data, k, config);
  }();

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw pairrank::IoError("cannot open " + out_path);
    os = &file;
  }
  for (std::size_t r = 0; r < result.order.size(); ++r) {
    nlohmann::json line = {{"rank", r + 1},
                           {"item", result.order[r]},
                           {"score", result.estimate[result.order[r]]}};
    *os << line.dump() << '\n';
  }
  return kExitOk;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   const std::string& gnuplot_path, int threads,
                   std::int64_t seed_override, bool quiet) {
  auto config = pairrank::parse_config_file(config_path);
  if (threads > 0) config.threads = threads;
  if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);

  auto records = pairrank::run_experiment(config);
  std::ofstream out(out_path);
  if (!out) throw pairrank::IoError("cannot open " + out_path);
  pairrank::write_csv(out, config, records);

  auto summaries = pairrank::summarize(config, records);
  if (!gnuplot_path.empty()) {
    std::ofstream gp(gnuplot_path);
    if (!gp) throw pairrank::IoError("cannot open " + gnuplot_path);
    pairrank::write_gnuplot_script(gp, config, summaries);
  }

  if (!quiet) {
    std::cerr << "sweep  p        L     delta  method    trials  excl  "
                 "rel_linf    rel_l2      accuracy\n";
    for (const auto& s : summaries) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "%-5d  %-7.4g  %-4d  %-5.3g  %-8s  %-6d  %-4d  %-10.4g  "
                    "%-10.4g  %.3f",
                    s.point.index, s.point.p, s.point.L, s.point.delta,
                    pairrank::method_name(s.method), s.count, s.excluded,
                    s.mean_rel_linf, s.mean_rel_l2, s.accuracy);
      std::cerr << buf << '\n';
    }
  }
  return kExitOk;
}

int cmd_check_theory(int trials, std::uint64_t seed, int n, double p, int L,
                     int k, double eps, bool quiet) {
  // Randomized falsification of the perturbation bound: random scores on
  // random connected graphs, two sampled chains against the population one.
  SeedSequence root(seed);
  int violations = 0;
  int applicable = 0;
  for (int t = 0; t < trials; ++t) {
    auto ts = root.child(t);
    auto gen = ts.engine();
    const int nn = 5 + static_cast<int>(gen() % static_cast<std::uint64_t>(
                                                    std::max(1, n - 4)));
    auto graph = pairrank::erdos_renyi(nn, 0.7, ts.child(1));
    if (!graph.connected() || graph.edge_count() == 0) continue;
    auto scores = pairrank::uniform_scores(nn, ts.child(2));
    const double d = pairrank::default_normalization(graph);
    const int LL = 1 + static_cast<int>(gen() % 64);
    auto pstar = pairrank::build_transition(
        pairrank::population_frequencies(graph, scores), d);
    auto pa = pairrank::build_transition(
        pairrank::sample_comparisons(graph, scores, LL, ts.child(3)), d);
    auto pb = pairrank::build_transition(
        pairrank::sample_comparisons(graph, scores, LL, ts.child(4)), d);
    auto report = pairrank::check_perturbation(pa, pb, pstar);
    if (!report.applicable) continue;
    ++applicable;
    if (report.lhs > report.rhs * (1.0 + 1e-9) + 1e-12) ++violations;
  }
  if (!quiet)
    std::cout << "perturbation bound: " << applicable << " applicable cases, "
              << violations << " violations\n";

  auto scores = pairrank::two_level_scores(n, k, 0.4);
  using pairrank::ThresholdKind;
  for (auto kind : {ThresholdKind::upper_fixed_kappa, ThresholdKind::lower_dk,
                    ThresholdKind::lower_dkstar}) {
    pairrank::ThresholdReport report =
        kind == ThresholdKind::upper_fixed_kappa
            ? pairrank::upper_bound_requirement(n, p, L, scores, k, kind)
            : (kind == ThresholdKind::lower_dk
                   ? pairrank::lower_bound_dk(n, p, L, scores, k, eps)
                   : pairrank::lower_bound_dkstar(n, p, L, scores, k, eps));
    if (!quiet)
      std::cout << (report.satisfied ? "[satisfied] " : "[short]     ")
                << "required N = " << report.required_samples
                << ", available N = " << report.available_samples << "  ("
                << report.formula << ")\n";
  }
  return violations == 0 ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Top-K ranking from pairwise comparisons: spectral method and "
               "regularized MLE, with a Monte-Carlo experiment harness"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "sample comparison data to a file");
  int sim_n = 200;
  double sim_p = 0.25;
  int sim_L = 20;
  std::uint64_t sim_seed = 1;
  std::string sim_scores = "uniform";
  double sim_delta = 0.4;
  int sim_k = 10;
  std::string sim_out, sim_scores_out;
  sim->add_option("--n", sim_n, "number of items");
  sim->add_option("--p", sim_p, "edge probability");
  sim->add_option("--L", sim_L, "comparisons per edge");
  sim->add_option("--seed", sim_seed, "root seed");
  sim->add_option("--scores", sim_scores, "uniform | two_level");
  sim->add_option("--delta", sim_delta, "two-level separation");
  sim->add_option("--K", sim_k, "two-level split point");
  sim->add_option("--out", sim_out, "output path")->required();
  sim->add_option("--scores-out", sim_scores_out, "write ground-truth scores");

  // rank
  auto* rank = app.add_subcommand("rank", "rank items from a comparison file");
  std::string rank_in, rank_method = "spectral", rank_out;
  int rank_k = 10;
  double rank_d = -1, rank_lambda = -1, rank_clambda = 2.0;
  rank->add_option("--in", rank_in, "comparison data path")->required();
  rank->add_option("--method", rank_method, "spectral | mle | mle0");
  rank->add_option("--k", rank_k, "top-K size");
  rank->add_option("--d", rank_d, "normalization override (spectral)");
  rank->add_option("--lambda", rank_lambda, "ridge weight override (mle)");
  rank->add_option("--c-lambda", rank_clambda, "auto lambda multiplier");
  rank->add_option("--out", rank_out, "output path (default stdout)");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a Monte-Carlo sweep");
  std::string exp_config, exp_out, exp_gnuplot;
  int exp_threads = 0;
  std::int64_t exp_seed = -1;
  bool exp_quiet = false;
  exp->add_option("--config", exp_config, "config file path")->required();
  exp->add_option("--out", exp_out, "CSV output path")->required();
  exp->add_option("--gnuplot", exp_gnuplot, "also write a gnuplot script");
  exp->add_option("--threads", exp_threads, "worker threads");
  exp->add_option("--seed", exp_seed, "root seed override");
  exp->add_flag("--quiet", exp_quiet, "suppress the summary table");

  // check-theory
  auto* chk = app.add_subcommand("check-theory",
                                 "perturbation falsification and thresholds");
  int chk_trials = 1000, chk_n = 20, chk_L = 20, chk_k = 10;
  double chk_p = 0.25, chk_eps = 0.25;
  std::uint64_t chk_seed = 1;
  bool chk_quiet = false;
  chk->add_option("--trials", chk_trials, "falsification trials");
  chk->add_option("--seed", chk_seed, "root seed");
  chk->add_option("--n", chk_n, "max items per random instance");
  chk->add_option("--p", chk_p, "edge probability for threshold reports");
  chk->add_option("--L", chk_L, "comparisons per edge");
  chk->add_option("--K", chk_k, "top-K size");
  chk->add_option("--eps", chk_eps, "lower-bound failure probability");
  chk->add_flag("--quiet", chk_quiet, "violations-only output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim)
      return cmd_simulate(sim_n, sim_p, sim_L, sim_seed, sim_scores, sim_delta,
                          sim_k, sim_out, sim_scores_out);
    if (*rank)
      return cmd_rank(rank_in, rank_method, rank_k, rank_d, rank_lambda,
                      rank_clambda, rank_out);
    if (*exp)
      return cmd_experiment(exp_config, exp_out, exp_gnuplot, exp_threads,
                            exp_seed, exp_quiet);
    if (*chk)
      return cmd_check_theory(chk_trials, chk_seed, chk_n, chk_p, chk_L, chk_k,
                              chk_eps, chk_quiet);
  } catch (const pairrank::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
