#include "pairrank/theory.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "pairrank/errors.hpp"

namespace pairrank {

PerturbationReport check_perturbation(const TransitionMatrix& p,
                                      const TransitionMatrix& phat,
                                      const TransitionMatrix& pstar) {
  const int n = pstar.n;
  if (p.n != n || phat.n != n)
    throw DimensionMismatch("transition matrices disagree on n");

  auto pi = stationary(p).pi;
  auto pihat = stationary(phat).pi;
  auto pistar = stationary(pstar).pi;
  for (int i = 0; i < n; ++i)
    if (!(pistar[i] > 0.0))
      throw NotReversible("P* stationary distribution is not strictly positive");

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(pistar[i] * pstar.P(i, j) - pistar[j] * pstar.P(j, i)) >
          1e-10)
        throw NotReversible("P* is not reversible");

  PiNormSpace space(pistar);

  Eigen::VectorXd sqrt_pi = pistar.array().sqrt().matrix();
  Eigen::MatrixXd sym = sqrt_pi.asDiagonal() * pstar.P *
                        sqrt_pi.cwiseInverse().asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  const auto& ev = es.eigenvalues();
  const double edge_eig = std::max(ev[n - 2], -ev[0]);

  PerturbationReport report;
  report.lhs = space.vec_norm(pi - pihat);
  const double numerator = space.vec_norm((p.P - phat.P).transpose() * pi);
  report.denom = 1.0 - edge_eig - space.mat_norm(p.P - phat.P);
  report.applicable = report.denom > 0.0;
  report.rhs = report.applicable
                   ? numerator / report.denom
                   : std::numeric_limits<double>::infinity();
  return report;
}

double kl_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");
  if (!(q > 0.0 && q < 1.0)) throw DegenerateQ("q must lie strictly in (0, 1)");
  double kl = 0.0;
  if (p > 0.0) kl += p * std::log(p / q);
  if (p < 1.0) kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return kl;
}

double chi2_bernoulli(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("p must lie in [0, 1]");
  if (!(q > 0.0 && q < 1.0)) throw DegenerateQ("q must lie strictly in (0, 1)");
  const double diff = p - q;
  return diff * diff / (q * (1.0 - q));
}

double tv_upper_via_pinsker(double kl) {
  if (!(kl >= 0.0)) throw Error("KL divergence must be nonnegative");
  return std::sqrt(kl / 2.0);
}

namespace {

double available_n(int n, double p, int L) {
  return 0.5 * static_cast<double>(n) * n * p * L;
}

ThresholdReport finish(ThresholdKind which, double required, double available,
                       bool connectivity_ok, std::string formula) {
  ThresholdReport report;
  report.which = which;
  report.required_samples = required;
  report.available_samples = available;
  report.satisfied = available >= required;
  report.connectivity_ok = connectivity_ok;
  report.formula = std::move(formula);
  return report;
}

}  // namespace

ThresholdReport lower_bound_dk(int n, double p, int L,
                               const ScoreVector& scores, int K, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw BadEps("eps must lie in (0, 1/2)");
  const double dk = separation_dk(scores, K);
  const double kappa = scores.kappa();
  const double c2 = 1.0 / (4.0 * kappa * kappa * kappa * kappa);
  const double numer = c2 * ((1.0 - eps) * n * std::log(double(n)) - 2.0);
  const double required =
      dk > 0.0 ? numer / (dk * dk) : std::numeric_limits<double>::infinity();
  return finish(
      ThresholdKind::lower_dk, required, available_n(n, p, L), true,
      "failure w.p. >= eps below N = c2 ((1-eps) n log n - 2) / Dk^2, "
      "c2 = w_min^4 / (4 w_max^4)");
}

ThresholdReport lower_bound_dkstar(int n, double p, int L,
                                   const ScoreVector& scores, int K,
                                   double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw BadEps("eps must lie in (0, 1/2)");
  const double dks = generalized_separation(scores, K);
  const double required = dks > 0.0
                              ? 0.25 * eps * eps * n / (dks * dks)
                              : std::numeric_limits<double>::infinity();
  return finish(ThresholdKind::lower_dkstar, required, available_n(n, p, L),
                true,
                "indistinguishable pair exists below N = (eps^2 / 4) n / (Dk*)^2");
}

ThresholdReport upper_bound_requirement(int n, double p, int L,
                                        const ScoreVector& scores, int K,
                                        ThresholdKind regime, double c0,
                                        double c1) {
  const double dk = separation_dk(scores, K);
  const double kappa = scores.kappa();
  double factor;
  std::string name;
  switch (regime) {
    case ThresholdKind::upper_fixed_kappa:
      factor = 1.0;
      name = "N >= c1 n log n / Dk^2 (fixed kappa)";
      break;
    case ThresholdKind::upper_spectral_kappa:
      factor = kappa * kappa;
      name = "N >= c1 kappa^2 n log n / Dk^2 (spectral)";
      break;
    case ThresholdKind::upper_mle_kappa:
      factor = kappa * kappa * kappa * kappa;
      name = "N >= c1 kappa^4 n log n / Dk^2 (regularized MLE)";
      break;
    default:
      throw BadRegime("regime must be one of the upper-bound kinds");
  }
  const double required =
      dk > 0.0 ? c1 * factor * n * std::log(double(n)) / (dk * dk)
               : std::numeric_limits<double>::infinity();
  const bool connectivity_ok = p > c0 * std::log(double(n)) / n;
  return finish(regime, required, available_n(n, p, L), connectivity_ok,
                name + "; requires p > c0 log n / n");
}

}  // namespace pairrank
