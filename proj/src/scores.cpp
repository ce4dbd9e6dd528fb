#include "pairrank/scores.hpp"

#include <cmath>

#include "pairrank/errors.hpp"

namespace pairrank {

ScoreVector ScoreVector::from_scores(const Eigen::VectorXd& w) {
  if (w.size() < 2) throw TooFewItems("score vector needs at least 2 items");
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] > 0.0))
      throw NonPositiveScore("score " + std::to_string(i) + " is not positive");
  }
  return ScoreVector(w, w.array().log().matrix());
}

ScoreVector ScoreVector::from_log_scores(const Eigen::VectorXd& theta) {
  if (theta.size() < 2) throw TooFewItems("score vector needs at least 2 items");
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta[i]))
      throw NonPositiveScore("log score " + std::to_string(i) + " is not finite");
  }
  return ScoreVector(theta.array().exp().matrix(), theta);
}

ScoreVector uniform_scores(int n, const SeedSequence& seed) {
  auto gen = seed.engine();
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = 0.5 + 0.5 * uniform01(gen);
  return ScoreVector::from_scores(w);
}

ScoreVector two_level_scores(int n, int k, double delta) {
  if (k < 1 || k >= n) throw TooFewItems("two-level split must satisfy 1 <= k < n");
  if (!(delta >= 0.0 && delta < 1.0))
    throw NonPositiveScore("two-level delta must lie in [0, 1)");
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 - delta);
  w.head(k).setOnes();
  return ScoreVector::from_scores(w);
}

}  // namespace pairrank
