#include "pairrank/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pairrank/errors.hpp"

namespace pairrank {

namespace {

// Union-find over 0..n-1.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

ComparisonGraph::ComparisonGraph(int n, std::vector<std::pair<int, int>> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw Error("graph needs at least one vertex");
  for (auto& [i, j] : edges_) {
    if (i > j) std::swap(i, j);
    if (i == j) throw Error("self-loop at vertex " + std::to_string(i));
    if (i < 0 || j >= n_) throw Error("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw Error("duplicate edge");

  adj_.assign(n_, {});
  incident_.assign(n_, {});
  DisjointSets sets(n_);
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    auto [i, j] = edges_[e];
    adj_[i].push_back(j);
    adj_[j].push_back(i);
    incident_[i].emplace_back(j, e);
    incident_[j].emplace_back(i, e);
    sets.unite(i, j);
  }
  for (auto& inc : incident_) std::sort(inc.begin(), inc.end());
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  connected_ = true;
  for (int v = 1; v < n_; ++v) {
    if (sets.find(v) != sets.find(0)) {
      connected_ = false;
      break;
    }
  }
}

int ComparisonGraph::min_degree() const {
  int d = n_;
  for (const auto& nb : adj_) d = std::min(d, static_cast<int>(nb.size()));
  return d;
}

int ComparisonGraph::max_degree() const {
  int d = 0;
  for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
  return d;
}

int ComparisonGraph::edge_index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j) return -1;
  const auto& inc = incident_[i];
  auto it = std::lower_bound(inc.begin(), inc.end(), std::make_pair(j, -1));
  if (it != inc.end() && it->first == j) return it->second;
  return -1;
}

ComparisonGraph erdos_renyi(int n, double p, const SeedSequence& seed) {
  if (n < 2) throw TooFewItems("graph generation needs n >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("edge probability must lie in [0, 1]");
  auto gen = seed.engine();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform01(gen) < p) edges.emplace_back(i, j);
  return ComparisonGraph(n, std::move(edges));
}

ComparisonGraph complete_graph(int n) {
  if (n < 2) throw TooFewItems("graph generation needs n >= 2");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return ComparisonGraph(n, std::move(edges));
}

}  // namespace pairrank
