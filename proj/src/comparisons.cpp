#include "pairrank/comparisons.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pairrank/errors.hpp"

namespace pairrank {

ComparisonData::ComparisonData(ComparisonGraph graph, int L,
                               std::vector<long> wins, Eigen::VectorXd y_upper)
    : graph_(std::move(graph)),
      L_(L),
      wins_upper_(std::move(wins)),
      y_upper_(std::move(y_upper)) {}

ComparisonData ComparisonData::from_counts(ComparisonGraph graph, int L,
                                           std::vector<long> wins_upper) {
  if (L < 1) throw Error("comparisons per edge must be >= 1");
  if (wins_upper.size() != graph.edge_count())
    throw DimensionMismatch("one win count per edge required");
  Eigen::VectorXd y(static_cast<Eigen::Index>(wins_upper.size()));
  for (std::size_t e = 0; e < wins_upper.size(); ++e) {
    if (wins_upper[e] < 0 || wins_upper[e] > L)
      throw Error("win count outside [0, L]");
    y[static_cast<Eigen::Index>(e)] =
        static_cast<double>(wins_upper[e]) / static_cast<double>(L);
  }
  return ComparisonData(std::move(graph), L, std::move(wins_upper), std::move(y));
}

ComparisonData ComparisonData::exact(ComparisonGraph graph,
                                     Eigen::VectorXd y_upper) {
  if (static_cast<std::size_t>(y_upper.size()) != graph.edge_count())
    throw DimensionMismatch("one frequency per edge required");
  for (Eigen::Index e = 0; e < y_upper.size(); ++e)
    if (!(y_upper[e] >= 0.0 && y_upper[e] <= 1.0))
      throw Error("frequency outside [0, 1]");
  return ComparisonData(std::move(graph), 0, {}, std::move(y_upper));
}

double ComparisonData::y(int i, int j) const {
  int e = graph_.edge_index(i, j);
  if (e < 0)
    throw Error("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                ") is not an edge");
  return i < j ? y_upper_[e] : 1.0 - y_upper_[e];
}

long ComparisonData::wins_upper(int e) const {
  if (!has_counts()) throw Error("exact frequencies carry no win counts");
  return wins_upper_[static_cast<std::size_t>(e)];
}

ComparisonData sample_comparisons(const ComparisonGraph& graph,
                                  const ScoreVector& scores, int L,
                                  const SeedSequence& seed) {
  if (graph.size() != scores.size())
    throw DimensionMismatch("graph and scores disagree on n");
  if (L < 1) throw Error("comparisons per edge must be >= 1");
  const auto& w = scores.w();
  const auto n = static_cast<std::uint64_t>(graph.size());
  std::vector<long> wins(graph.edge_count());
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];
    // one independent stream per edge, keyed by the ordered pair
    auto gen = seed.child(static_cast<std::uint64_t>(i) * n + j).engine();
    const double pj = w[j] / (w[i] + w[j]);
    long count = 0;
    for (int l = 0; l < L; ++l) count += bernoulli(gen, pj) ? 1 : 0;
    wins[e] = count;
  }
  return ComparisonData::from_counts(graph, L, std::move(wins));
}

ComparisonData population_frequencies(const ComparisonGraph& graph,
                                      const ScoreVector& scores) {
  if (graph.size() != scores.size())
    throw DimensionMismatch("graph and scores disagree on n");
  const auto& w = scores.w();
  Eigen::VectorXd y(static_cast<Eigen::Index>(graph.edge_count()));
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];
    y[static_cast<Eigen::Index>(e)] = w[j] / (w[i] + w[j]);
  }
  return ComparisonData::exact(graph, std::move(y));
}

void write_comparison_data(std::ostream& out, const ComparisonData& data) {
  if (!data.has_counts())
    throw IoError("exact frequencies are not serializable (no integer counts)");
  const auto& graph = data.graph();
  const long L = data.comparisons_per_edge();
  out << graph.size() << ' ' << L << '\n';
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    auto [i, j] = graph.edges()[e];
    const long wins = data.wins_upper(static_cast<int>(e));
    out << i << ' ' << j << ' ' << wins << ' ' << L << '\n';
    out << j << ' ' << i << ' ' << (L - wins) << ' ' << L << '\n';
  }
  if (!out) throw IoError("write failed");
}

ComparisonData read_comparison_data(std::istream& in) {
  int n = 0;
  long L = 0;
  if (!(in >> n >> L)) throw IoError("bad header: expected 'n L'");
  if (n < 2 || L < 1) throw IoError("bad header values");

  std::vector<std::pair<int, int>> edges;
  std::vector<long> forward_wins;
  std::vector<std::pair<std::pair<int, int>, long>> reverse_lines;
  int i, j;
  long wins, count;
  while (in >> i >> j >> wins >> count) {
    if (i < 0 || i >= n || j < 0 || j >= n || i == j)
      throw IoError("bad pair indices");
    if (count != L) throw IoError("count column must equal L");
    if (wins < 0 || wins > L) throw IoError("wins outside [0, L]");
    if (i < j) {
      edges.emplace_back(i, j);
      forward_wins.push_back(wins);
    } else {
      reverse_lines.push_back({{j, i}, wins});
    }
  }
  if (!in.eof()) throw IoError("malformed data line");

  // Duplicate forward lines surface as duplicate edges in the graph ctor.
  ComparisonGraph graph(n, edges);
  std::vector<long> wins_sorted(graph.edge_count());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int idx = graph.edge_index(edges[e].first, edges[e].second);
    wins_sorted[static_cast<std::size_t>(idx)] = forward_wins[e];
  }
  // Pair up orientations and enforce the skew complement.
  std::vector<bool> seen(graph.edge_count(), false);
  for (auto& [pair, wv] : reverse_lines) {
    int idx = graph.edge_index(pair.first, pair.second);
    if (idx < 0) throw IoError("reverse line without forward line");
    if (seen[static_cast<std::size_t>(idx)])
      throw IoError("duplicate reverse line");
    seen[static_cast<std::size_t>(idx)] = true;
    if (wins_sorted[static_cast<std::size_t>(idx)] + wv != L)
      throw IoError("orientations do not sum to L");
  }
  for (std::size_t e = 0; e < graph.edge_count(); ++e)
    if (!seen[e]) throw IoError("missing reverse orientation line");
  return ComparisonData::from_counts(std::move(graph), static_cast<int>(L),
                                     std::move(wins_sorted));
}

}  // namespace pairrank
