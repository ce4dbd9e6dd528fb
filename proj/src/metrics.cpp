#include "pairrank/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "pairrank/errors.hpp"

namespace pairrank {

double rel_linf_error(const Eigen::VectorXd& est,
                      const Eigen::VectorXd& truth) {
  if (est.size() != truth.size())
    throw DimensionMismatch("estimate and truth lengths differ");
  const double denom = truth.lpNorm<Eigen::Infinity>();
  if (denom == 0.0) throw ZeroTruth("truth vector is all zero");
  return (est - truth).lpNorm<Eigen::Infinity>() / denom;
}

double rel_l2_error(const Eigen::VectorXd& est, const Eigen::VectorXd& truth) {
  if (est.size() != truth.size())
    throw DimensionMismatch("estimate and truth lengths differ");
  const double denom = truth.norm();
  if (denom == 0.0) throw ZeroTruth("truth vector is all zero");
  return (est - truth).norm() / denom;
}

PiNormSpace::PiNormSpace(Eigen::VectorXd pi) : pi_(std::move(pi)) {
  for (Eigen::Index i = 0; i < pi_.size(); ++i)
    if (!(pi_[i] > 0.0)) throw Error("pi entries must be strictly positive");
  if (std::abs(pi_.sum() - 1.0) > 1e-12)
    throw Error("pi must sum to 1 (tolerance 1e-12)");
  sqrt_pi_ = pi_.array().sqrt().matrix();
}

double PiNormSpace::inner(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) const {
  if (x.size() != pi_.size() || y.size() != pi_.size())
    throw DimensionMismatch("vector length differs from pi");
  return (pi_.array() * x.array() * y.array()).sum();
}

double PiNormSpace::vec_norm(const Eigen::VectorXd& x) const {
  return std::sqrt(inner(x, x));
}

double PiNormSpace::mat_norm(const Eigen::MatrixXd& a) const {
  if (a.rows() != pi_.size() || a.cols() != pi_.size())
    throw DimensionMismatch("matrix dimension differs from pi");
  // sigma_max of M = Pi^{1/2} A^T Pi^{-1/2}, via the top eigenvalue of
  // M^T M (faster than a full SVD at these sizes and accurate enough).
  Eigen::MatrixXd m = sqrt_pi_.asDiagonal() * a.transpose() *
                      sqrt_pi_.cwiseInverse().asDiagonal();
  Eigen::MatrixXd mtm = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (mtm + mtm.transpose()));
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

namespace {

Eigen::VectorXd sorted_descending(const Eigen::VectorXd& w) {
  Eigen::VectorXd s = w;
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

}  // namespace

double separation_dk(const ScoreVector& scores, int K) {
  const int n = scores.size();
  if (K < 1 || K >= n) throw BadK("K must satisfy 1 <= K < n");
  Eigen::VectorXd s = sorted_descending(scores.w());
  return (s[K - 1] - s[K]) / s[0];
}

double generalized_separation(const ScoreVector& scores, int K) {
  const int n = scores.size();
  if (K < 1 || K >= n) throw BadK("K must satisfy 1 <= K < n");
  Eigen::VectorXd s = sorted_descending(scores.w());
  const double wk = s[K - 1];
  const double wk1 = s[K];
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = wk + s[i];
    mean += wk1 * s[i] / (t * t);
  }
  mean /= n;
  return (wk - wk1) / wk1 * std::sqrt(mean);
}

Eigen::MatrixXd laplacian(const ComparisonGraph& graph) {
  const int n = graph.size();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (auto [i, j] : graph.edges()) {
    lap(i, i) += 1.0;
    lap(j, j) += 1.0;
    lap(i, j) -= 1.0;
    lap(j, i) -= 1.0;
  }
  return lap;
}

double lambda_min_perp(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  if (a.cols() != n) throw NotSymmetric("matrix is not square");
  if (n < 2) throw Error("need n >= 2 for a nontrivial 1-perp subspace");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw NotSymmetric("matrix is not symmetric");

  // Householder reflector mapping e_1 to 1/sqrt(n); its remaining columns
  // are an orthonormal basis of the 1-perp subspace.
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  v[0] -= 1.0;
  Eigen::MatrixXd h =
      Eigen::MatrixXd::Identity(n, n) - (2.0 / v.squaredNorm()) * v * v.transpose();
  Eigen::MatrixXd q = h.rightCols(n - 1);
  Eigen::MatrixXd b = q.transpose() * a * q;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (b + b.transpose()));
  return es.eigenvalues().minCoeff();
}

double spectral_gap_gamma(const TransitionMatrix& p,
                          const TransitionMatrix& pstar,
                          const Eigen::VectorXd& pistar) {
  const int n = pstar.n;
  if (p.n != n || pistar.size() != n)
    throw DimensionMismatch("matrix/vector sizes disagree");
  PiNormSpace space(pistar);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(pistar[i] * pstar.P(i, j) - pistar[j] * pstar.P(j, i)) >
          1e-10)
        throw NotReversible("detailed balance fails at (" + std::to_string(i) +
                            ", " + std::to_string(j) + ")");

  // Pi^{1/2} P* Pi^{-1/2} is symmetric by reversibility and shares the
  // spectrum of P*.
  Eigen::VectorXd sqrt_pi = pistar.array().sqrt().matrix();
  Eigen::MatrixXd sym = sqrt_pi.asDiagonal() * pstar.P *
                        sqrt_pi.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  const auto& ev = es.eigenvalues();  // ascending
  const double lambda2 = ev[n - 2];
  const double lambdan = ev[0];
  const double perturbation = space.mat_norm(p.P - pstar.P);
  return 1.0 - std::max(lambda2, -lambdan) - perturbation;
}

}  // namespace pairrank
