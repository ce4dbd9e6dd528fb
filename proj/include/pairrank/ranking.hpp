#pragma once

#include <Eigen/Dense>
#include <vector>

namespace pairrank {

// An estimated score vector, the full induced ordering, and the selected
// top-K set. Ties break toward the smaller index.
struct RankingResult {
  enum class Scale { pi, exp_theta };

  Eigen::VectorXd estimate;
  std::vector<int> order;  // item indices, best first
  std::vector<int> top;    // first K of order
  Scale scale = Scale::pi;

  // Top-K as a sorted set for comparisons.
  std::vector<int> top_set() const;
};

// Ranks items by estimate, descending, with ascending-index tie-break.
// Requires 1 <= K < n.
RankingResult make_ranking(const Eigen::VectorXd& estimate, int K,
                           RankingResult::Scale scale);

// 1 if the selected top-K set equals true_topk exactly, else 0 (set
// equality, no partial credit).
double topk_accuracy(const RankingResult& result,
                     const std::vector<int>& true_topk);

// Mean exact-recovery accuracy over a batch of trials.
double topk_accuracy(const std::vector<RankingResult>& results,
                     const std::vector<int>& true_topk);

// The indices of the K largest entries of w (same tie-break), sorted.
std::vector<int> true_top_set(const Eigen::VectorXd& w, int K);

}  // namespace pairrank
