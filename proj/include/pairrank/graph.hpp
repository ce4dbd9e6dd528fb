#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pairrank/rng.hpp"

namespace pairrank {

// Undirected comparison graph over items 0..n-1. Edges are stored in
// canonical (i < j) order, sorted; adjacency lists are kept alongside.
// No self-loops, no duplicates. Immutable after construction.
class ComparisonGraph {
 public:
  ComparisonGraph(int n, std::vector<std::pair<int, int>> edges);

  int size() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<std::vector<int>>& neighbors() const { return adj_; }

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int min_degree() const;
  int max_degree() const;

  bool contains_edge(int i, int j) const { return edge_index(i, j) >= 0; }

  // Index into edges() for the unordered pair {i, j}, or -1 if absent.
  int edge_index(int i, int j) const;

  bool connected() const { return connected_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  // per-node (neighbor, edge index) pairs, sorted by neighbor
  std::vector<std::vector<std::pair<int, int>>> incident_;
  bool connected_;
};

// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs is included
// independently with probability p. Deterministic given the seed.
ComparisonGraph erdos_renyi(int n, double p, const SeedSequence& seed);

ComparisonGraph complete_graph(int n);

}  // namespace pairrank
