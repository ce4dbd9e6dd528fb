#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <sstream>

#include "pairrank/comparisons.hpp"
#include "pairrank/errors.hpp"
#include "pairrank/graph.hpp"
#include "pairrank/rng.hpp"
#include "pairrank/scores.hpp"

using namespace pairrank;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

// Binomial pmf, the oracle for the edge-count distribution checks.
double binomial_pmf(int n, int k, double p) {
  double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                   std::lgamma(n - k + 1.0) + k * std::log(p) +
                   (n - k) * std::log1p(-p);
  return std::exp(log_pmf);
}

}  // namespace

TEST_SUITE_BEGIN("model");

TEST_CASE("score vector construction and accessors") {
  auto s = ScoreVector::from_scores(vec({1, 1, 1}));
  CHECK(s.kappa() == doctest::Approx(1.0));
  CHECK(s.theta().isZero(0.0));

  auto wide = ScoreVector::from_scores(vec({10, 5, 1e-6}));
  CHECK(wide.kappa() == doctest::Approx(1e7));
  CHECK(wide.w_min() == doctest::Approx(1e-6));
  CHECK(wide.w_max() == doctest::Approx(10.0));

  auto two = ScoreVector::from_scores(vec({2, 1}));
  CHECK(two.theta()[0] == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(two.theta()[1] == 0.0);
  CHECK(two.kappa() == doctest::Approx(2.0));
  CHECK(two.theta_bar() == doctest::Approx(0.5 * std::log(2.0)));

  CHECK_THROWS_AS(ScoreVector::from_scores(vec({1, 0})), NonPositiveScore);
  CHECK_THROWS_AS(ScoreVector::from_scores(vec({1, -2})), NonPositiveScore);
  CHECK_THROWS_AS(ScoreVector::from_scores(Eigen::VectorXd::Ones(1)), TooFewItems);
}

TEST_CASE("theta and w stay consistent both ways") {
  auto s = ScoreVector::from_log_scores(vec({0.3, -1.2, 2.0}));
  for (int i = 0; i < 3; ++i)
    CHECK(std::log(s.w()[i]) == doctest::Approx(s.theta()[i]).epsilon(1e-15));
  auto pi = s.pi_star();
  CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-15));
  // centered exp(theta) has zero log-mean
  CHECK(s.centered_exp_theta().array().log().sum() ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("er graph degenerate probabilities") {
  auto full = erdos_renyi(5, 1.0, SeedSequence(1));
  CHECK(full.edge_count() == 10);
  for (int v = 0; v < 5; ++v) CHECK(full.degree(v) == 4);
  CHECK(full.connected());

  auto empty = erdos_renyi(5, 0.0, SeedSequence(1));
  CHECK(empty.edge_count() == 0);
  CHECK_FALSE(empty.connected());
}

TEST_CASE("er graph edge count stays near the binomial mean") {
  const int n = 200;
  const double p = 0.25;
  const double pairs = n * (n - 1) / 2.0;
  const double mean = pairs * p;
  const double sd = std::sqrt(pairs * p * (1 - p));
  SeedSequence root(42);
  for (int s = 0; s < 100; ++s) {
    auto g = erdos_renyi(n, p, root.child(s));
    CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) <= 4 * sd);
  }
}

TEST_CASE("er graph edge counts pass a chi-square goodness-of-fit test") {
  // n = 6 gives Binomial(15, 0.3) edge counts; 300 seeds, bins with
  // expected mass >= 5, significance 0.01.
  const int n = 6, pairs = 15, seeds = 300;
  const double p = 0.3;
  // bins: {0..2}, {3}, {4}, {5}, {6}, {7..15}
  auto bin_of = [](int count) {
    if (count <= 2) return 0;
    if (count >= 7) return 5;
    return count - 2;
  };
  std::array<double, 6> expected{};
  for (int k = 0; k <= pairs; ++k)
    expected[static_cast<std::size_t>(bin_of(k))] += binomial_pmf(pairs, k, p);
  std::array<int, 6> observed{};
  SeedSequence root(2024);
  for (int s = 0; s < seeds; ++s) {
    auto g = erdos_renyi(n, p, root.child(s));
    observed[static_cast<std::size_t>(bin_of(static_cast<int>(g.edge_count())))]++;
  }
  double chi2 = 0.0;
  for (std::size_t b = 0; b < 6; ++b) {
    const double e = expected[b] * seeds;
    REQUIRE(e >= 5.0);
    chi2 += (observed[b] - e) * (observed[b] - e) / e;
  }
  // chi-square critical value, df = 5, alpha = 0.01
  CHECK(chi2 < 15.086);
}

TEST_CASE("graph generation is deterministic and splits are independent") {
  auto a = erdos_renyi(50, 0.2, SeedSequence(9).child(3));
  auto b = erdos_renyi(50, 0.2, SeedSequence(9).child(3));
  CHECK(a.edges() == b.edges());
  auto c = erdos_renyi(50, 0.2, SeedSequence(9).child(4));
  CHECK(a.edges() != c.edges());
}

TEST_CASE("degree concentration event holds at desk scale") {
  // np/2 <= d_min <= d_max <= 3np/2 in at least 99 of 100 seeds.
  const int n = 200;
  const double p = 0.25;
  int hold = 0;
  SeedSequence root(7);
  for (int s = 0; s < 100; ++s) {
    auto g = erdos_renyi(n, p, root.child(s));
    if (g.min_degree() >= n * p / 2 && g.max_degree() <= 3 * n * p / 2) ++hold;
  }
  CHECK(hold >= 99);
}

TEST_CASE("graph rejects malformed edges") {
  CHECK_THROWS_AS(ComparisonGraph(3, {{0, 0}}), Error);
  CHECK_THROWS_AS(ComparisonGraph(3, {{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(ComparisonGraph(3, {{0, 3}}), Error);
}

TEST_CASE("population frequencies") {
  auto g = complete_graph(2);
  SUBCASE("equal scores give one half") {
    auto d = population_frequencies(g, ScoreVector::from_scores(vec({1, 1})));
    CHECK(d.y(0, 1) == 0.5);
    CHECK(d.y(1, 0) == 0.5);
  }
  SUBCASE("direct substitution") {
    auto d = population_frequencies(g, ScoreVector::from_scores(vec({2, 1})));
    CHECK(d.y(0, 1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
  SUBCASE("logistic form") {
    const double e = std::exp(1.0);
    auto d = population_frequencies(g, ScoreVector::from_scores(vec({e, 1})));
    CHECK(d.y(0, 1) == doctest::Approx(1.0 / (1.0 + e)).epsilon(1e-15));
    // independently via exp(theta_j) / (exp(theta_i) + exp(theta_j))
    CHECK(d.y(0, 1) ==
          doctest::Approx(std::exp(0.0) / (std::exp(1.0) + std::exp(0.0)))
              .epsilon(1e-15));
  }
  CHECK_THROWS_AS(
      population_frequencies(g, ScoreVector::from_scores(vec({1, 1, 1}))),
      DimensionMismatch);
}

TEST_CASE("sampling matches the population limit and the skew complement") {
  auto g = complete_graph(2);
  auto scores = ScoreVector::from_scores(vec({2, 1}));
  const int L = 1000000;
  auto d = sample_comparisons(g, scores, L, SeedSequence(5));
  // 4 binomial standard deviations around 1/3
  const double sd = std::sqrt((1.0 / 3) * (2.0 / 3) / L);
  CHECK(std::abs(d.y(0, 1) - 1.0 / 3) <= 4 * sd);
  CHECK(d.y(0, 1) + d.y(1, 0) == 1.0);

  auto equal = sample_comparisons(g, ScoreVector::from_scores(vec({1, 1})), L,
                                  SeedSequence(6));
  CHECK(std::abs(equal.y(0, 1) - 0.5) <= 4 * std::sqrt(0.25 / L));
}

TEST_CASE("sampled frequencies are multiples of 1/L inside [0, 1]") {
  auto g = erdos_renyi(30, 0.4, SeedSequence(11));
  auto scores = uniform_scores(30, SeedSequence(12));
  const int L = 7;
  auto d = sample_comparisons(g, scores, L, SeedSequence(13));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    auto [i, j] = g.edges()[e];
    const double y = d.y(i, j);
    CHECK(y >= 0.0);
    CHECK(y <= 1.0);
    CHECK(d.y(i, j) + d.y(j, i) == 1.0);
    CHECK(static_cast<double>(d.wins_upper(static_cast<int>(e))) ==
          doctest::Approx(y * L));
  }
}

TEST_CASE("sampling is deterministic given the seed") {
  auto g = erdos_renyi(20, 0.5, SeedSequence(21));
  auto scores = uniform_scores(20, SeedSequence(22));
  auto a = sample_comparisons(g, scores, 10, SeedSequence(23));
  auto b = sample_comparisons(g, scores, 10, SeedSequence(23));
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    CHECK(a.y_upper(static_cast<int>(e)) == b.y_upper(static_cast<int>(e)));
}

TEST_CASE("uniform scores live in [0.5, 1]") {
  auto s = uniform_scores(500, SeedSequence(3));
  CHECK(s.w_min() >= 0.5);
  CHECK(s.w_max() <= 1.0);
  CHECK(s.kappa() <= 2.0);
}

TEST_CASE("two level scores") {
  auto s = two_level_scores(6, 2, 0.4);
  CHECK(s.w()[0] == 1.0);
  CHECK(s.w()[1] == 1.0);
  CHECK(s.w()[2] == doctest::Approx(0.6));
  CHECK(s.w()[5] == doctest::Approx(0.6));
}

TEST_CASE("comparison data text round trip") {
  auto g = erdos_renyi(12, 0.5, SeedSequence(31));
  auto scores = uniform_scores(12, SeedSequence(32));
  auto d = sample_comparisons(g, scores, 9, SeedSequence(33));

  std::stringstream ss;
  write_comparison_data(ss, d);
  auto back = read_comparison_data(ss);
  CHECK(back.graph().edges() == g.edges());
  CHECK(back.comparisons_per_edge() == 9);
  for (std::size_t e = 0; e < g.edge_count(); ++e)
    CHECK(back.y_upper(static_cast<int>(e)) == d.y_upper(static_cast<int>(e)));
}

TEST_CASE("comparison data reader rejects corrupt input") {
  SUBCASE("bad header") {
    std::stringstream ss("x y\n");
    CHECK_THROWS_AS(read_comparison_data(ss), IoError);
  }
  SUBCASE("orientations disagree") {
    std::stringstream ss("2 4\n0 1 3 4\n1 0 2 4\n");
    CHECK_THROWS_AS(read_comparison_data(ss), IoError);
  }
  SUBCASE("missing reverse line") {
    std::stringstream ss("2 4\n0 1 3 4\n");
    CHECK_THROWS_AS(read_comparison_data(ss), IoError);
  }
  SUBCASE("population data is not serializable") {
    auto g = complete_graph(2);
    auto d = population_frequencies(g, ScoreVector::from_scores(vec({2, 1})));
    std::stringstream ss;
    CHECK_THROWS_AS(write_comparison_data(ss, d), IoError);
  }
}

TEST_SUITE_END();
