#pragma once

#include <Eigen/Dense>

#include "pairrank/graph.hpp"
#include "pairrank/scores.hpp"
#include "pairrank/spectral.hpp"

namespace pairrank {

// ||est - truth||_inf / ||truth||_inf.
double rel_linf_error(const Eigen::VectorXd& est, const Eigen::VectorXd& truth);

// ||est - truth||_2 / ||truth||_2.
double rel_l2_error(const Eigen::VectorXd& est, const Eigen::VectorXd& truth);

// Inner-product space weighted by a strictly positive probability vector:
//   <x, y>_pi = sum_i pi_i x_i y_i,
//   ||A||_pi  = sup_{||x||_pi = 1} ||x^T A||_pi,
// the latter computed as the largest singular value of
// Pi^{1/2} A^T Pi^{-1/2}.
class PiNormSpace {
 public:
  explicit PiNormSpace(Eigen::VectorXd pi);

  int size() const { return static_cast<int>(pi_.size()); }
  const Eigen::VectorXd& pi() const { return pi_; }

  double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double vec_norm(const Eigen::VectorXd& x) const;
  double mat_norm(const Eigen::MatrixXd& a) const;

 private:
  Eigen::VectorXd pi_;
  Eigen::VectorXd sqrt_pi_;
};

// Separation (w_K - w_{K+1}) / w_max on the sorted-descending copy of w.
double separation_dk(const ScoreVector& scores, int K);

// Generalized separation
//   (w_K - w_{K+1}) / w_{K+1} * sqrt( (1/n) sum_i w_{K+1} w_i / (w_K + w_i)^2 )
// on the sorted-descending copy of w.
double generalized_separation(const ScoreVector& scores, int K);

// Unnormalized graph Laplacian sum_{(i,j) in E} (e_i - e_j)(e_i - e_j)^T.
Eigen::MatrixXd laplacian(const ComparisonGraph& graph);

// Smallest eigenvalue of a symmetric matrix restricted to the subspace
// orthogonal to the all-ones vector.
double lambda_min_perp(const Eigen::MatrixXd& a);

// Contraction margin gamma = 1 - max{lambda_2(P*), -lambda_n(P*)} -
// ||P - P*||_{pi*}. P* must be reversible with respect to pistar; its
// spectrum is obtained from the symmetrization Pi^{1/2} P* Pi^{-1/2}.
double spectral_gap_gamma(const TransitionMatrix& p,
                          const TransitionMatrix& pstar,
                          const Eigen::VectorXd& pistar);

}  // namespace pairrank
