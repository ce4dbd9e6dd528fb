#pragma once

#include <Eigen/Dense>
#include <optional>

#include "pairrank/comparisons.hpp"
#include "pairrank/ranking.hpp"

namespace pairrank {

// Row-stochastic transition matrix built from comparison data:
//   P(i, j) = y(i, j) / d on edges, diagonal absorbs the remainder,
//   zeros elsewhere. Requires d >= d_max so the diagonal stays
//   nonnegative.
struct TransitionMatrix {
  int n = 0;
  double d = 0.0;
  Eigen::MatrixXd P;
};

TransitionMatrix build_transition(const ComparisonData& data, double d);

// The experimental normalization choice d = 2 * d_max.
double default_normalization(const ComparisonGraph& graph);

struct StationaryDistribution {
  Eigen::VectorXd pi;
  long iterations = 0;
  double residual = 0.0;  // final l1 change between iterates
};

inline constexpr double kStationaryTol = 1e-12;

inline long default_stationary_iters(int n) { return 100L * n + 10000L; }

// Power iteration from the uniform start with l1 normalization each step,
// until the l1 change drops below tol. The chain must be irreducible
// (connected support); a positive diagonal (d > d_max) makes it aperiodic
// so convergence is geometric.
StationaryDistribution stationary(const TransitionMatrix& tm,
                                  double tol = kStationaryTol,
                                  long max_iters = -1);

// Rank Centrality: transition matrix -> stationary distribution -> top-K.
RankingResult spectral_rank(const ComparisonData& data, int K,
                            std::optional<double> d = std::nullopt,
                            double tol = kStationaryTol, long max_iters = -1);

}  // namespace pairrank
