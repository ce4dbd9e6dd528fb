#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "pairrank/graph.hpp"
#include "pairrank/rng.hpp"
#include "pairrank/scores.hpp"

namespace pairrank {

class ScoreVector;

// Per-edge empirical win frequencies: for the canonical edge (i, j) with
// i < j, y(i, j) is the fraction of the L comparisons won by j, and
// y(j, i) = 1 - y(i, j) exactly. Sampled data carries integer win counts
// so every frequency is an exact multiple of 1/L; exact (population)
// frequencies relax that invariant and report comparisons_per_edge() == 0.
class ComparisonData {
 public:
  static ComparisonData from_counts(ComparisonGraph graph, int L,
                                    std::vector<long> wins_upper);
  static ComparisonData exact(ComparisonGraph graph, Eigen::VectorXd y_upper);

  const ComparisonGraph& graph() const { return graph_; }

  // L for sampled data; 0 for exact frequencies.
  int comparisons_per_edge() const { return L_; }
  bool has_counts() const { return L_ > 0; }

  // Empirical probability that j beats i; the pair must be an edge.
  double y(int i, int j) const;

  // Frequency for edge index e in canonical (i < j) orientation.
  double y_upper(int e) const { return y_upper_[e]; }

  // Win count for edge index e (canonical orientation); counts-backed only.
  long wins_upper(int e) const;

 private:
  ComparisonData(ComparisonGraph graph, int L, std::vector<long> wins,
                 Eigen::VectorXd y_upper);

  ComparisonGraph graph_;
  int L_;
  std::vector<long> wins_upper_;
  Eigen::VectorXd y_upper_;
};

// For each edge, draws L independent Bernoulli(w_j / (w_i + w_j)) outcomes
// (probability that j beats i) and records the empirical frequency.
// Each edge uses its own derived seed, so the result does not depend on
// edge processing order.
ComparisonData sample_comparisons(const ComparisonGraph& graph,
                                  const ScoreVector& scores, int L,
                                  const SeedSequence& seed);

// The L -> infinity limit: y(i, j) = w_j / (w_i + w_j) exactly.
ComparisonData population_frequencies(const ComparisonGraph& graph,
                                      const ScoreVector& scores);

// Line-oriented text format: header "n L", then one line per directed
// pair "i j wins count" (0-based, count == L), both orientations per
// edge. Integer win counts avoid float round-trip loss. Only
// counts-backed data can be written.
void write_comparison_data(std::ostream& out, const ComparisonData& data);
ComparisonData read_comparison_data(std::istream& in);

}  // namespace pairrank
