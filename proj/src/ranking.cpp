#include "pairrank/ranking.hpp"

#include <algorithm>
#include <numeric>

#include "pairrank/errors.hpp"

namespace pairrank {

std::vector<int> RankingResult::top_set() const {
  std::vector<int> s = top;
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

std::vector<int> order_descending(const Eigen::VectorXd& values) {
  std::vector<int> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  return order;
}

}  // namespace

RankingResult make_ranking(const Eigen::VectorXd& estimate, int K,
                           RankingResult::Scale scale) {
  const int n = static_cast<int>(estimate.size());
  if (K < 1 || K >= n) throw BadK("K must satisfy 1 <= K < n");
  RankingResult result;
  result.estimate = estimate;
  result.order = order_descending(estimate);
  result.top.assign(result.order.begin(), result.order.begin() + K);
  result.scale = scale;
  return result;
}

double topk_accuracy(const RankingResult& result,
                     const std::vector<int>& true_topk) {
  if (true_topk.size() != result.top.size())
    throw BadK("true top set size differs from selected K");
  std::vector<int> truth = true_topk;
  std::sort(truth.begin(), truth.end());
  return result.top_set() == truth ? 1.0 : 0.0;
}

double topk_accuracy(const std::vector<RankingResult>& results,
                     const std::vector<int>& true_topk) {
  if (results.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : results) sum += topk_accuracy(r, true_topk);
  return sum / static_cast<double>(results.size());
}

std::vector<int> true_top_set(const Eigen::VectorXd& w, int K) {
  const int n = static_cast<int>(w.size());
  if (K < 1 || K >= n) throw BadK("K must satisfy 1 <= K < n");
  auto order = order_descending(w);
  std::vector<int> top(order.begin(), order.begin() + K);
  std::sort(top.begin(), top.end());
  return top;
}

}  // namespace pairrank
