#include "pairrank/spectral.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pairrank/errors.hpp"

namespace pairrank {

TransitionMatrix build_transition(const ComparisonData& data, double d) {
  const auto& graph = data.graph();
  const int n = graph.size();
  if (!(d > 0.0)) throw NormalizationTooSmall("d must be positive");
  if (d < graph.max_degree())
    throw NormalizationTooSmall("d = " + std::to_string(d) +
                                " below max degree " +
                                std::to_string(graph.max_degree()));
  TransitionMatrix tm;
  tm.n = n;
  tm.d = d;
  tm.P = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];
    const double y_ij = data.y_upper(static_cast<int>(e));
    tm.P(i, j) = y_ij / d;
    tm.P(j, i) = (1.0 - y_ij) / d;
  }
  for (int i = 0; i < n; ++i) {
    double off = tm.P.row(i).sum();
    tm.P(i, i) = 1.0 - off;
  }
  return tm;
}

double default_normalization(const ComparisonGraph& graph) {
  if (graph.edge_count() == 0) throw EmptyGraph("graph has no edges");
  return 2.0 * graph.max_degree();
}

namespace {

// Connectivity of the chain's undirected support: an edge exists between i
// and j whenever either off-diagonal transition is positive.
bool support_connected(const Eigen::MatrixXd& P) {
  const int n = static_cast<int>(P.rows());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (P(i, j) > 0.0 || P(j, i) > 0.0) parent[find(i)] = find(j);
  for (int v = 1; v < n; ++v)
    if (find(v) != find(0)) return false;
  return true;
}

}  // namespace

StationaryDistribution stationary(const TransitionMatrix& tm, double tol,
                                  long max_iters) {
  const int n = tm.n;
  if (n < 1) throw Error("empty transition matrix");
  if (max_iters < 0) max_iters = default_stationary_iters(n);
  if (!support_connected(tm.P))
    throw Disconnected("chain support is not connected");

  Eigen::VectorXd pi = Eigen::VectorXd::Constant(n, 1.0 / n);
  Eigen::VectorXd next(n);
  double residual = std::numeric_limits<double>::infinity();
  for (long it = 1; it <= max_iters; ++it) {
    next.noalias() = tm.P.transpose() * pi;
    next /= next.sum();
    residual = (next - pi).lpNorm<1>();
    pi.swap(next);
    if (residual <= tol) return {std::move(pi), it, residual};
  }
  throw NoConvergence("power iteration: residual " + std::to_string(residual) +
                      " > tol after " + std::to_string(max_iters) +
                      " iterations");
}

RankingResult spectral_rank(const ComparisonData& data, int K,
                            std::optional<double> d, double tol,
                            long max_iters) {
  const int n = data.graph().size();
  if (K < 1 || K >= n) throw BadK("K must satisfy 1 <= K < n");
  const double dn = d ? *d : default_normalization(data.graph());
  auto tm = build_transition(data, dn);
  auto sd = stationary(tm, tol, max_iters);
  return make_ranking(sd.pi, K, RankingResult::Scale::pi);
}

}  // namespace pairrank
