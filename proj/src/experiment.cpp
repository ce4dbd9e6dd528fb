#include "pairrank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "pairrank/comparisons.hpp"
#include "pairrank/errors.hpp"
#include "pairrank/metrics.hpp"
#include "pairrank/mle.hpp"
#include "pairrank/ranking.hpp"
#include "pairrank/scores.hpp"
#include "pairrank/spectral.hpp"

namespace pairrank {

const char* method_name(Method m) {
  switch (m) {
    case Method::spectral: return "spectral";
    case Method::mle: return "mle";
    case Method::mle_unregularized: return "mle0";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (n < 2) throw ConfigError("n must be >= 2");
  if (p_list.empty() || L_list.empty() || delta_list.empty())
    throw ConfigError("sweep lists must be nonempty");
  for (double p : p_list)
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p must lie in [0, 1]");
  for (int L : L_list)
    if (L < 1) throw ConfigError("L must be >= 1");
  if (K < 1 || K >= n) throw ConfigError("K must satisfy 1 <= K < n");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (methods.empty()) throw ConfigError("at least one method required");
  if (score_mode == ScoreMode::explicit_scores &&
      explicit_w.size() != n)
    throw ConfigError("explicit scores must have length n");
  if (score_mode == ScoreMode::two_level)
    for (double delta : delta_list)
      if (!(delta >= 0.0 && delta < 1.0))
        throw ConfigError("delta must lie in [0, 1)");
  if (c_d < 1.0) throw ConfigError("c_d must be >= 1");
  if (c_lambda <= 0.0) throw ConfigError("c_lambda must be positive");
  if (fixed_lambda < 0.0) throw ConfigError("fixed lambda must be >= 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (sweep_mode == SweepMode::zip) {
    std::size_t len = 1;
    for (std::size_t sz : {p_list.size(), L_list.size(), delta_list.size()}) {
      if (sz == 1) continue;
      if (len == 1) len = sz;
      else if (sz != len)
        throw ConfigError("zip sweep lists must share a length (or be scalar)");
    }
  }
}

std::vector<SweepPoint> sweep_points(const ExperimentConfig& config) {
  std::vector<SweepPoint> points;
  if (config.sweep_mode == ExperimentConfig::SweepMode::product) {
    int idx = 0;
    for (double p : config.p_list)
      for (int L : config.L_list)
        for (double delta : config.delta_list)
          points.push_back({idx++, p, L, delta});
  } else {
    std::size_t len = 1;
    for (std::size_t sz :
         {config.p_list.size(), config.L_list.size(), config.delta_list.size()})
      len = std::max(len, sz);
    auto at = [](const auto& v, std::size_t k) {
      return v.size() == 1 ? v[0] : v[k];
    };
    for (std::size_t k = 0; k < len; ++k)
      points.push_back({static_cast<int>(k), at(config.p_list, k),
                        at(config.L_list, k), at(config.delta_list, k)});
  }
  return points;
}

namespace {

// Per-trial randomness: child streams for scores, the graph, and the
// comparisons, all derived from (root, sweep point, trial).
SeedSequence trial_seed(const ExperimentConfig& config, int sweep_index,
                        int trial) {
  return SeedSequence(config.seed).child(sweep_index).child(trial);
}

ScoreVector make_trial_scores(const ExperimentConfig& config,
                              const SweepPoint& point,
                              const SeedSequence& seed) {
  switch (config.score_mode) {
    case ExperimentConfig::ScoreMode::uniform_half_one:
      return uniform_scores(config.n, seed.child(0));
    case ExperimentConfig::ScoreMode::two_level:
      return two_level_scores(config.n, config.K, point.delta);
    case ExperimentConfig::ScoreMode::explicit_scores:
      return ScoreVector::from_scores(config.explicit_w);
  }
  throw ConfigError("unknown score mode");
}

void run_trial(const ExperimentConfig& config, const SweepPoint& point,
               int trial, TrialRecord* out) {
  const auto seed = trial_seed(config, point.index, trial);
  const auto scores = make_trial_scores(config, point, seed);
  const auto graph = erdos_renyi(config.n, point.p, seed.child(1));

  auto base_record = [&](Method m) {
    TrialRecord rec;
    rec.sweep_index = point.index;
    rec.p = point.p;
    rec.L = point.L;
    rec.delta = point.delta;
    rec.method = m;
    rec.trial = trial;
    rec.seed_used = seed.key();
    rec.rel_linf = std::nan("");
    rec.rel_l2 = std::nan("");
    rec.topk_exact = 0;
    return rec;
  };

  if (!graph.connected() || graph.edge_count() == 0) {
    for (std::size_t m = 0; m < config.methods.size(); ++m) {
      out[m] = base_record(config.methods[m]);
      out[m].status = "disconnected";
    }
    return;
  }

  const auto data = sample_comparisons(graph, scores, point.L, seed.child(2));
  const Eigen::VectorXd pi_star = scores.pi_star();
  const Eigen::VectorXd exp_star = scores.centered_exp_theta();
  const auto truth_top = true_top_set(scores.w(), config.K);

  const double d = config.d_rule == ExperimentConfig::DRule::two_dmax
                       ? default_normalization(graph)
                       : config.c_d * config.n * point.p;

  auto lambda_for = [&](Method m) {
    if (m == Method::mle_unregularized) return 0.0;
    switch (config.lambda_rule) {
      case ExperimentConfig::LambdaRule::auto_c:
        return auto_lambda(config.n, observed_density(graph), point.L,
                           config.c_lambda);
      case ExperimentConfig::LambdaRule::fixed:
        return config.fixed_lambda;
      case ExperimentConfig::LambdaRule::zero:
        return 0.0;
    }
    return 0.0;
  };

  for (std::size_t m = 0; m < config.methods.size(); ++m) {
    const Method method = config.methods[m];
    TrialRecord rec = base_record(method);
    const auto start = std::chrono::steady_clock::now();
    try {
      if (method == Method::spectral) {
        auto tm = build_transition(data, d);
        auto sd = stationary(tm);
        rec.iterations = sd.iterations;
        rec.rel_linf = rel_linf_error(sd.pi, pi_star);
        rec.rel_l2 = rel_l2_error(sd.pi, pi_star);
        auto ranking = make_ranking(sd.pi, config.K, RankingResult::Scale::pi);
        rec.topk_exact = static_cast<int>(topk_accuracy(ranking, truth_top));
      } else {
        MleConfig mle_config;
        mle_config.lambda = lambda_for(method);
        MleFit fit = fit_mle(data, mle_config);
        rec.iterations = fit.iterations;
        Eigen::VectorXd est = fit.exp_theta();
        rec.rel_linf = rel_linf_error(est, exp_star);
        rec.rel_l2 = rel_l2_error(est, exp_star);
        auto ranking =
            make_ranking(est, config.K, RankingResult::Scale::exp_theta);
        rec.topk_exact = static_cast<int>(topk_accuracy(ranking, truth_top));
      }
      rec.status = "ok";
    } catch (const Disconnected&) {
      rec.status = "disconnected";
    } catch (const NoConvergence&) {
      rec.status = "no_convergence";
    } catch (const Error&) {
      rec.status = "error";
    }
    rec.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    out[m] = std::move(rec);
  }
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto points = sweep_points(config);
  const std::size_t n_methods = config.methods.size();
  const std::size_t tasks = points.size() * static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(tasks * n_methods);

  // Each task owns a preassigned slot range, so scheduling order cannot
  // change the output.
  std::atomic<std::size_t> next_task{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= tasks) return;
      const auto& point = points[task / config.trials];
      const int trial = static_cast<int>(task % config.trials);
      run_trial(config, point, trial, &records[task * n_methods]);
    }
  };

  const int threads = std::max(1, config.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const ExperimentConfig& config,
               const std::vector<TrialRecord>& records) {
  double total_seconds = 0.0;
  for (const auto& rec : records) total_seconds += rec.seconds;

  std::time_t now = std::time(nullptr);
  char stamp[64];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  out << "# generated: " << stamp << "\n";
  out << "# wall_time_total_s: " << format_double(total_seconds) << "\n";
  out << "# seed: " << config.seed << "\n";

  out << "n,p,L,K,delta,method,trial,rel_linf,rel_l2,topk_exact,iters,seed,"
         "status\n";
  for (const auto& rec : records) {
    out << config.n << ',' << format_double(rec.p) << ',' << rec.L << ','
        << config.K << ',' << format_double(rec.delta) << ','
        << method_name(rec.method) << ',' << rec.trial << ','
        << format_double(rec.rel_linf) << ',' << format_double(rec.rel_l2)
        << ',' << rec.topk_exact << ',' << rec.iterations << ','
        << rec.seed_used << ',' << rec.status << '\n';
  }
  if (!out) throw IoError("CSV write failed");
}

std::vector<SweepSummary> summarize(const ExperimentConfig& config,
                                    const std::vector<TrialRecord>& records) {
  const auto points = sweep_points(config);
  std::vector<SweepSummary> result;
  for (const auto& point : points) {
    for (Method method : config.methods) {
      SweepSummary s;
      s.point = point;
      s.method = method;
      double sum_linf = 0, sum_l2 = 0, sum_acc = 0;
      double sq_linf = 0, sq_l2 = 0;
      for (const auto& rec : records) {
        if (rec.sweep_index != point.index || rec.method != method) continue;
        if (rec.status != "ok") {
          ++s.excluded;
          continue;
        }
        ++s.count;
        sum_linf += rec.rel_linf;
        sq_linf += rec.rel_linf * rec.rel_linf;
        sum_l2 += rec.rel_l2;
        sq_l2 += rec.rel_l2 * rec.rel_l2;
        sum_acc += rec.topk_exact;
      }
      if (s.count > 0) {
        s.mean_rel_linf = sum_linf / s.count;
        s.mean_rel_l2 = sum_l2 / s.count;
        s.accuracy = sum_acc / s.count;
        if (s.count > 1) {
          s.std_rel_linf = std::sqrt(std::max(
              0.0, (sq_linf - s.count * s.mean_rel_linf * s.mean_rel_linf) /
                       (s.count - 1)));
          s.std_rel_l2 = std::sqrt(std::max(
              0.0,
              (sq_l2 - s.count * s.mean_rel_l2 * s.mean_rel_l2) / (s.count - 1)));
        }
      }
      result.push_back(std::move(s));
    }
  }
  return result;
}

void write_gnuplot_script(std::ostream& out, const ExperimentConfig& config,
                          const std::vector<SweepSummary>& summaries) {
  const bool sweep_delta = config.delta_list.size() > 1;
  const bool sweep_L = !sweep_delta && config.L_list.size() > 1;
  const bool sweep_p = !sweep_delta && !sweep_L && config.p_list.size() > 1;
  const bool plot_accuracy =
      config.score_mode == ExperimentConfig::ScoreMode::two_level;

  auto x_of = [&](const SweepPoint& point) {
    if (sweep_delta) return point.delta;
    if (sweep_L) return static_cast<double>(point.L);
    if (sweep_p) return point.p;
    return static_cast<double>(point.index);
  };
  const char* x_label = sweep_delta ? "separation"
                        : sweep_L   ? "comparisons per edge L"
                        : sweep_p   ? "edge probability p"
                                    : "sweep point";
  const char* y_label =
      plot_accuracy ? "exact top-K recovery rate" : "mean relative linf error";

  for (Method method : config.methods) {
    out << "$" << method_name(method) << " << EOD\n";
    for (const auto& s : summaries) {
      if (s.method != method || s.count == 0) continue;
      out << format_double(x_of(s.point)) << ' '
          << format_double(plot_accuracy ? s.accuracy : s.mean_rel_linf)
          << '\n';
    }
    out << "EOD\n";
  }
  out << "set xlabel '" << x_label << "'\n";
  out << "set ylabel '" << y_label << "'\n";
  out << "set key left bottom\n";
  if ((sweep_L || sweep_p) && !plot_accuracy) out << "set logscale xy\n";
  out << "plot";
  bool first = true;
  for (Method method : config.methods) {
    out << (first ? " " : ", ") << "$" << method_name(method)
        << " using 1:2 with linespoints title '" << method_name(method) << "'";
    first = false;
  }
  out << '\n';
  if (!out) throw IoError("gnuplot script write failed");
}

SlopeFit fit_log_slope(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("x and y lengths differ");
  const std::size_t m = x.size();
  if (m < 2) throw InsufficientData("slope fit needs >= 2 points");
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw Error("log-log fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("x values are all equal");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (m > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = ly[i] - fit.intercept - fit.slope * lx[i];
      rss += r * r;
    }
    fit.std_error = std::sqrt(rss / static_cast<double>(m - 2) / sxx);
  }
  return fit;
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(value);
  while (std::getline(ss, item, ',')) {
    // trim
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value '" + s + "' for " + key);
  }
}

long parse_long(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value '" + s + "' for " + key);
  }
}

}  // namespace

ExperimentConfig parse_config_text(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto x = s.find_first_not_of(" \t\r");
      const auto y = s.find_last_not_of(" \t\r");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");

    if (key == "n") {
      config.n = static_cast<int>(parse_long(value, key));
    } else if (key == "p") {
      config.p_list.clear();
      for (const auto& s : split_list(value))
        config.p_list.push_back(parse_double(s, key));
    } else if (key == "L") {
      config.L_list.clear();
      for (const auto& s : split_list(value))
        config.L_list.push_back(static_cast<int>(parse_long(s, key)));
    } else if (key == "K") {
      config.K = static_cast<int>(parse_long(value, key));
    } else if (key == "trials") {
      config.trials = static_cast<int>(parse_long(value, key));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_long(value, key));
    } else if (key == "delta") {
      config.delta_list.clear();
      for (const auto& s : split_list(value))
        config.delta_list.push_back(parse_double(s, key));
    } else if (key == "scores") {
      if (value == "uniform") {
        config.score_mode = ExperimentConfig::ScoreMode::uniform_half_one;
      } else if (value == "two_level") {
        config.score_mode = ExperimentConfig::ScoreMode::two_level;
      } else if (value.rfind("explicit:", 0) == 0) {
        config.score_mode = ExperimentConfig::ScoreMode::explicit_scores;
        auto parts = split_list(value.substr(9));
        config.explicit_w.resize(static_cast<Eigen::Index>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i)
          config.explicit_w[static_cast<Eigen::Index>(i)] =
              parse_double(parts[i], key);
      } else {
        throw ConfigError("scores must be uniform, two_level, or explicit:...");
      }
    } else if (key == "methods") {
      config.methods.clear();
      for (const auto& s : split_list(value)) {
        if (s == "spectral") config.methods.push_back(Method::spectral);
        else if (s == "mle") config.methods.push_back(Method::mle);
        else if (s == "mle0")
          config.methods.push_back(Method::mle_unregularized);
        else throw ConfigError("unknown method '" + s + "'");
      }
    } else if (key == "d_rule") {
      if (value == "two_dmax") {
        config.d_rule = ExperimentConfig::DRule::two_dmax;
      } else if (value.rfind("cd_np", 0) == 0) {
        config.d_rule = ExperimentConfig::DRule::cd_np;
        if (value.size() > 5 && value[5] == ':')
          config.c_d = parse_double(value.substr(6), key);
      } else {
        throw ConfigError("d_rule must be two_dmax or cd_np[:c]");
      }
    } else if (key == "lambda_rule") {
      if (value == "zero") {
        config.lambda_rule = ExperimentConfig::LambdaRule::zero;
      } else if (value.rfind("auto", 0) == 0) {
        config.lambda_rule = ExperimentConfig::LambdaRule::auto_c;
        if (value.size() > 4 && value[4] == ':')
          config.c_lambda = parse_double(value.substr(5), key);
      } else if (value.rfind("fixed:", 0) == 0) {
        config.lambda_rule = ExperimentConfig::LambdaRule::fixed;
        config.fixed_lambda = parse_double(value.substr(6), key);
      } else {
        throw ConfigError("lambda_rule must be auto[:c], fixed:v, or zero");
      }
    } else if (key == "sweep") {
      if (value == "product") config.sweep_mode = ExperimentConfig::SweepMode::product;
      else if (value == "zip") config.sweep_mode = ExperimentConfig::SweepMode::zip;
      else throw ConfigError("sweep must be product or zip");
    } else if (key == "threads") {
      config.threads = static_cast<int>(parse_long(value, key));
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config_text(in);
}

}  // namespace pairrank
