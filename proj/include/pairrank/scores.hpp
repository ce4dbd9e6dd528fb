#pragma once

#include <Eigen/Dense>

#include "pairrank/rng.hpp"

namespace pairrank {

// Latent preference scores w (all positive) and their logs theta.
// Immutable after construction; one representation is always derived
// from the other so w_i = exp(theta_i) holds exactly.
class ScoreVector {
 public:
  static ScoreVector from_scores(const Eigen::VectorXd& w);
  static ScoreVector from_log_scores(const Eigen::VectorXd& theta);

  int size() const { return static_cast<int>(w_.size()); }
  const Eigen::VectorXd& w() const { return w_; }
  const Eigen::VectorXd& theta() const { return theta_; }

  double w_min() const { return w_.minCoeff(); }
  double w_max() const { return w_.maxCoeff(); }
  double theta_min() const { return theta_.minCoeff(); }
  double theta_max() const { return theta_.maxCoeff(); }

  // Condition number kappa = w_max / w_min.
  double kappa() const { return w_max() / w_min(); }

  // Mean of theta.
  double theta_bar() const { return theta_.mean(); }

  // Normalized score vector w / sum(w): the stationary distribution of the
  // population chain.
  Eigen::VectorXd pi_star() const { return w_ / w_.sum(); }

  // exp(theta - theta_bar * 1): the ground-truth target for MLE estimates.
  Eigen::VectorXd centered_exp_theta() const {
    return (theta_.array() - theta_bar()).exp().matrix();
  }

 private:
  ScoreVector(Eigen::VectorXd w, Eigen::VectorXd theta)
      : w_(std::move(w)), theta_(std::move(theta)) {}

  Eigen::VectorXd w_;
  Eigen::VectorXd theta_;
};

// Scores drawn independently and uniformly from [0.5, 1].
ScoreVector uniform_scores(int n, const SeedSequence& seed);

// Two-level scores: w_i = 1 for i < k, w_i = 1 - delta otherwise, so the
// separation at k equals delta.
ScoreVector two_level_scores(int n, int k, double delta);

}  // namespace pairrank
