#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "pairrank/comparisons.hpp"
#include "pairrank/ranking.hpp"

namespace pairrank {

// Regularization weight rule c * sqrt(p * n * log(n) / L).
double auto_lambda(int n, double p_est, int L, double c_lambda = 2.0);

// Observed edge density 2|E| / (n(n-1)).
double observed_density(const ComparisonGraph& graph);

struct MleConfig {
  double lambda = 0.0;
  // Gradient step. Defaults to 1 / (lambda + max(n * p_est, d_max / 2)),
  // which never exceeds the 1 / (lambda + n * p_est) rule and is safe on
  // graphs whose maximum degree dwarfs the average.
  std::optional<double> step;
  // Stop when ||grad||_2 <= grad_tol; defaults to 1e-8 * n.
  std::optional<double> grad_tol;
  long max_iters = 1000000;
  // Called after each evaluation with (iteration, theta, grad_norm);
  // intended for tests and diagnostics.
  std::function<void(long, const Eigen::VectorXd&, double)> observer;
};

struct MleFit {
  Eigen::VectorXd theta;  // mean-zero
  long iterations = 0;
  double final_grad_norm = 0.0;
  double objective = 0.0;

  // Estimated scores exp(theta), the scale ranking compares on.
  Eigen::VectorXd exp_theta() const { return theta.array().exp().matrix(); }
};

// Negative log-likelihood sum over edges (i, j), i > j:
//   -y_{j,i} (theta_i - theta_j) + log(1 + exp(theta_i - theta_j)),
// with overflow-safe softplus. Invariant to adding a constant to theta.
double nll(const Eigen::VectorXd& theta, const ComparisonData& data);

// Gradient of nll; annihilated by the all-ones vector exactly.
Eigen::VectorXd nll_gradient(const Eigen::VectorXd& theta,
                             const ComparisonData& data);

// nll gradient plus lambda * theta.
Eigen::VectorXd regularized_gradient(const Eigen::VectorXd& theta,
                                     const ComparisonData& data,
                                     double lambda);

// Hessian of the regularized objective: positive-semidefinite logistic
// edge weights plus lambda * I.
Eigen::MatrixXd regularized_hessian(const Eigen::VectorXd& theta,
                                    const ComparisonData& data,
                                    double lambda);

double regularized_objective(const Eigen::VectorXd& theta,
                             const ComparisonData& data, double lambda);

// Gradient descent from theta = 0 with a constant step until the gradient
// norm drops below tolerance. theta = 0 is mean-zero and every update is
// orthogonal to the all-ones vector (up to lambda * theta, itself
// mean-zero by induction), so all iterates stay mean-zero. lambda = 0 is
// accepted; the graph must be connected either way.
MleFit fit_mle(const ComparisonData& data, const MleConfig& config);

// Fit, then report the K items with the largest fitted theta.
RankingResult mle_rank(const ComparisonData& data, int K,
                       const MleConfig& config);

}  // namespace pairrank
