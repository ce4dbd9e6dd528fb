#pragma once

#include <string>

#include "pairrank/metrics.hpp"
#include "pairrank/scores.hpp"
#include "pairrank/spectral.hpp"

namespace pairrank {

// Result of evaluating the eigenvector perturbation bound
//   ||pi - pihat||_{pi*} <= ||pi^T (P - Phat)||_{pi*} / denom,
//   denom = 1 - max{lambda_2(P*), -lambda_n(P*)} - ||P - Phat||_{pi*}.
// The bound only applies when denom > 0.
struct PerturbationReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double denom = 0.0;
  bool applicable = false;
};

// Evaluates the bound exactly as written. P* must be reversible; its
// stationary distribution defines the norm. Stationary distributions are
// computed by power iteration.
PerturbationReport check_perturbation(const TransitionMatrix& p,
                                      const TransitionMatrix& phat,
                                      const TransitionMatrix& pstar);

// KL(Bern(p) || Bern(q)) with the 0 log(0/.) = 0 convention. q must lie
// strictly inside (0, 1).
double kl_bernoulli(double p, double q);

// chi^2(Bern(p) || Bern(q)) = (p - q)^2 / (q (1 - q)).
double chi2_bernoulli(double p, double q);

// Pinsker: TV <= sqrt(KL / 2).
double tv_upper_via_pinsker(double kl);

enum class ThresholdKind {
  upper_fixed_kappa,    // n^2 p L / 2 >= c1 n log n / Dk^2
  upper_spectral_kappa, // c1 kappa^2 n log n / Dk^2
  upper_mle_kappa,      // c1 kappa^4 n log n / Dk^2
  lower_dk,             // failure below c2 ((1-eps) n log n - 2) / Dk^2
  lower_dkstar,         // failure below (eps^2 / 4) n / (Dk*)^2
};

// Sample-size threshold evaluation. required_samples and
// available_samples are both in units of N = n^2 p L / 2, the expected
// total number of paired comparisons. The bounds hold up to unspecified
// absolute constants, which are exposed as explicit parameters, so
// satisfied/short is an order-wise indication, not a certified statement.
struct ThresholdReport {
  ThresholdKind which;
  double required_samples = 0.0;
  double available_samples = 0.0;
  bool satisfied = false;
  bool connectivity_ok = true;  // p > c0 log n / n (upper-bound regimes)
  std::string formula;
};

// Region where any ranking method fails with probability >= eps, in terms
// of the plain separation; c2 = w_min^4 / (4 w_max^4). Requires
// 0 < eps < 1/2.
ThresholdReport lower_bound_dk(int n, double p, int L,
                               const ScoreVector& scores, int K, double eps);

// Same, in terms of the generalized separation.
ThresholdReport lower_bound_dkstar(int n, double p, int L,
                                   const ScoreVector& scores, int K,
                                   double eps);

// Sufficient sample size for exact recovery in the selected regime, plus
// the connectivity precondition p > c0 log n / n.
ThresholdReport upper_bound_requirement(int n, double p, int L,
                                        const ScoreVector& scores, int K,
                                        ThresholdKind regime, double c0 = 1.0,
                                        double c1 = 1.0);

}  // namespace pairrank
