#include "pairrank/mle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairrank/errors.hpp"

namespace pairrank {

namespace {

// log(1 + exp(x)) without overflow for large |x|.
inline double softplus(double x) {
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

// exp(x) / (1 + exp(x)), evaluated on the stable side.
inline double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

void check_theta(const Eigen::VectorXd& theta, const ComparisonData& data) {
  if (theta.size() != data.graph().size())
    throw DimensionMismatch("theta length differs from item count");
}

}  // namespace

double auto_lambda(int n, double p_est, int L, double c_lambda) {
  if (n < 2) throw TooFewItems("auto lambda needs n >= 2");
  if (!(p_est > 0.0 && p_est <= 1.0)) throw Error("p_est must lie in (0, 1]");
  if (L < 1) throw Error("L must be >= 1");
  return c_lambda * std::sqrt(p_est * n * std::log(static_cast<double>(n)) / L);
}

double observed_density(const ComparisonGraph& graph) {
  const double n = graph.size();
  return 2.0 * static_cast<double>(graph.edge_count()) / (n * (n - 1.0));
}

double nll(const Eigen::VectorXd& theta, const ComparisonData& data) {
  check_theta(theta, data);
  const auto& graph = data.graph();
  double total = 0.0;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];  // i < j
    const double diff = theta[j] - theta[i];
    total += -data.y_upper(static_cast<int>(e)) * diff + softplus(diff);
  }
  return total;
}

Eigen::VectorXd nll_gradient(const Eigen::VectorXd& theta,
                             const ComparisonData& data) {
  check_theta(theta, data);
  const auto& graph = data.graph();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(theta.size());
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];
    const double g = -data.y_upper(static_cast<int>(e)) +
                     logistic(theta[j] - theta[i]);
    grad[j] += g;
    grad[i] -= g;
  }
  return grad;
}

Eigen::VectorXd regularized_gradient(const Eigen::VectorXd& theta,
                                     const ComparisonData& data,
                                     double lambda) {
  return nll_gradient(theta, data) + lambda * theta;
}

Eigen::MatrixXd regularized_hessian(const Eigen::VectorXd& theta,
                                    const ComparisonData& data,
                                    double lambda) {
  check_theta(theta, data);
  const auto& graph = data.graph();
  const auto n = theta.size();
  Eigen::MatrixXd hess =
      lambda * Eigen::MatrixXd::Identity(n, n);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];
    const double s = logistic(theta[j] - theta[i]);
    const double wgt = s * (1.0 - s);  // e^a e^b / (e^a + e^b)^2
    hess(i, i) += wgt;
    hess(j, j) += wgt;
    hess(i, j) -= wgt;
    hess(j, i) -= wgt;
  }
  return hess;
}

double regularized_objective(const Eigen::VectorXd& theta,
                             const ComparisonData& data, double lambda) {
  return nll(theta, data) + 0.5 * lambda * theta.squaredNorm();
}

MleFit fit_mle(const ComparisonData& data, const MleConfig& config) {
  const auto& graph = data.graph();
  const int n = graph.size();
  if (!graph.connected())
    throw Disconnected("MLE requires a connected comparison graph");
  if (!(config.lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
  const double lambda = config.lambda;

  double step;
  if (config.step) {
    step = *config.step;
    if (!(step > 0.0)) throw ConfigError("step must be positive");
  } else {
    const double np_est = n * observed_density(graph);
    const double smooth = std::max(np_est, graph.max_degree() / 2.0);
    step = 1.0 / (lambda + smooth);
  }
  const double tol = config.grad_tol ? *config.grad_tol : 1e-8 * n;

  Eigen::VectorXd theta = Eigen::VectorXd::Zero(n);
  double grad_norm = 0.0;
  for (long it = 0; it <= config.max_iters; ++it) {
    Eigen::VectorXd grad = regularized_gradient(theta, data, lambda);
    grad_norm = grad.norm();
    if (config.observer) config.observer(it, theta, grad_norm);
    if (grad_norm <= tol) {
      MleFit fit;
      fit.theta = std::move(theta);
      fit.iterations = it;
      fit.final_grad_norm = grad_norm;
      fit.objective = regularized_objective(fit.theta, data, lambda);
      return fit;
    }
    theta -= step * grad;
  }
  throw NoConvergence("gradient descent: grad norm " +
                      std::to_string(grad_norm) + " > tol after " +
                      std::to_string(config.max_iters) + " iterations");
}

RankingResult mle_rank(const ComparisonData& data, int K,
                       const MleConfig& config) {
  const int n = data.graph().size();
  if (K < 1 || K >= n) throw BadK("K must satisfy 1 <= K < n");
  MleFit fit = fit_mle(data, config);
  return make_ranking(fit.exp_theta(), K, RankingResult::Scale::exp_theta);
}

}  // namespace pairrank
