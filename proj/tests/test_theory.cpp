#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "pairrank/comparisons.hpp"
#include "pairrank/errors.hpp"
#include "pairrank/ranking.hpp"
#include "pairrank/theory.hpp"

using namespace pairrank;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ComparisonGraph connected_er(int n, double p, SeedSequence seed) {
  for (int attempt = 0;; ++attempt) {
    auto g = erdos_renyi(n, p, seed.child(attempt));
    if (g.connected()) return g;
  }
}

Eigen::VectorXd layered(std::initializer_list<std::pair<int, double>> layers) {
  int n = 0;
  for (auto& [count, value] : layers) n += count;
  Eigen::VectorXd w(n);
  int at = 0;
  for (auto& [count, value] : layers)
    for (int i = 0; i < count; ++i) w[at++] = value;
  return w;
}

}  // namespace

TEST_SUITE_BEGIN("theory");

TEST_CASE("perturbation bound is tight at zero perturbation") {
  auto g = connected_er(8, 0.7, SeedSequence(1));
  auto scores = uniform_scores(8, SeedSequence(2));
  auto p = build_transition(sample_comparisons(g, scores, 10, SeedSequence(3)),
                            default_normalization(g));
  auto pstar = build_transition(population_frequencies(g, scores),
                                default_normalization(g));
  auto report = check_perturbation(p, p, pstar);
  CHECK(report.applicable);
  CHECK(report.lhs <= 1e-11);  // stationary solves agree to solver tolerance
  CHECK(report.rhs <= 1e-11);
}

TEST_CASE("sampled chain against the population chain") {
  auto g = connected_er(10, 0.8, SeedSequence(5));
  auto scores = uniform_scores(10, SeedSequence(6));
  const double d = default_normalization(g);
  auto pstar =
      build_transition(population_frequencies(g, scores), d);
  auto p = build_transition(sample_comparisons(g, scores, 30, SeedSequence(7)), d);
  auto report = check_perturbation(p, pstar, pstar);
  REQUIRE(report.applicable);
  CHECK(report.lhs <= report.rhs * (1.0 + 1e-9) + 1e-12);
  CHECK(report.lhs > 0.0);
}

TEST_CASE("randomized falsification finds no violations") {
  SeedSequence root(77);
  int applicable = 0;
  for (int t = 0; t < 200; ++t) {
    auto ts = root.child(t);
    auto gen = ts.engine();
    const int n = 5 + static_cast<int>(gen() % 16);
    auto g = connected_er(n, 0.7, ts.child(1));
    auto scores = uniform_scores(n, ts.child(2));
    const double d = default_normalization(g);
    const int L = 1 + static_cast<int>(gen() % 64);
    auto pstar = build_transition(population_frequencies(g, scores), d);
    auto pa = build_transition(sample_comparisons(g, scores, L, ts.child(3)), d);
    auto pb = build_transition(sample_comparisons(g, scores, L, ts.child(4)), d);
    auto report = check_perturbation(pa, pb, pstar);
    if (!report.applicable) continue;
    ++applicable;
    CHECK(report.lhs <= report.rhs * (1.0 + 1e-9) + 1e-12);
  }
  CHECK(applicable > 100);
}

TEST_CASE("stationary distributions agree with a dense eigensolve inside the check") {
  // independent oracle for the pi's used by check_perturbation
  auto g = connected_er(7, 0.9, SeedSequence(31));
  auto scores = uniform_scores(7, SeedSequence(32));
  const double d = default_normalization(g);
  auto p = build_transition(sample_comparisons(g, scores, 5, SeedSequence(33)), d);
  auto sd = stationary(p);
  Eigen::EigenSolver<Eigen::MatrixXd> es(p.P.transpose());
  Eigen::Index best = 0;
  double best_dist = 1e300;
  for (Eigen::Index i = 0; i < 7; ++i) {
    double dist = std::abs(es.eigenvalues()[i] - std::complex<double>(1, 0));
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  Eigen::VectorXd oracle = es.eigenvectors().col(best).real();
  oracle /= oracle.sum();
  CHECK((sd.pi - oracle).lpNorm<Eigen::Infinity>() <= 1e-9);
}

TEST_CASE("non-reversible reference chains are rejected") {
  auto g = complete_graph(3);
  auto scores = ScoreVector::from_scores(vec({3, 2, 1}));
  auto sampled = build_transition(
      sample_comparisons(g, scores, 3, SeedSequence(41)), 4.0);
  auto p = build_transition(population_frequencies(g, scores), 4.0);
  CHECK_THROWS_AS(check_perturbation(p, p, sampled), NotReversible);
}

TEST_CASE("bernoulli divergences") {
  SUBCASE("zero at equality") {
    CHECK(kl_bernoulli(0.5, 0.5) == 0.0);
    CHECK(chi2_bernoulli(0.5, 0.5) == 0.0);
    CHECK(tv_upper_via_pinsker(0.0) == 0.0);
  }
  SUBCASE("hand-computed chi squared") {
    // (p-q)^2/q + (p-q)^2/(1-q) summed over both outcomes
    const double p = 0.6, q = 0.5;
    const double direct = 0.01 / 0.5 + 0.01 / 0.5;
    CHECK(chi2_bernoulli(p, q) == doctest::Approx(direct).epsilon(1e-15));
    CHECK(chi2_bernoulli(p, q) == doctest::Approx(0.04).epsilon(1e-15));
  }
  SUBCASE("kl is nonnegative, zero only at p = q, and below chi squared") {
    auto gen = SeedSequence(55).engine();
    for (int t = 0; t < 10000; ++t) {
      const double p = uniform01(gen);
      const double q = 0.01 + 0.98 * uniform01(gen);
      const double kl = kl_bernoulli(p, q);
      CHECK(kl >= 0.0);
      if (std::abs(p - q) > 1e-3) CHECK(kl > 0.0);
      CHECK(kl <= chi2_bernoulli(p, q) + 1e-15);
    }
  }
  SUBCASE("boundary p values use the zero-log convention") {
    CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(std::log(2.0)));
    CHECK(kl_bernoulli(1.0, 0.5) == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("degenerate q rejected") {
    CHECK_THROWS_AS(kl_bernoulli(0.5, 0.0), DegenerateQ);
    CHECK_THROWS_AS(kl_bernoulli(0.5, 1.0), DegenerateQ);
    CHECK_THROWS_AS(chi2_bernoulli(0.5, 1.0), DegenerateQ);
  }
  SUBCASE("pinsker at a known value") {
    CHECK(tv_upper_via_pinsker(0.08) == doctest::Approx(0.2).epsilon(1e-15));
  }
}

TEST_CASE("lower bound in the plain separation") {
  const int n = 200, L = 20;
  const double p = 0.25;
  auto scores = two_level_scores(n, 10, 0.4);  // kappa = 1/0.6
  auto report = lower_bound_dk(n, p, L, scores, 10, 0.25);
  // arithmetic oracle: c2 ((1-eps) n ln n - 2) / Dk^2 in units of N
  const double kappa = 1.0 / 0.6;
  const double c2 = 1.0 / (4.0 * std::pow(kappa, 4));
  const double expected = c2 * (0.75 * n * std::log(double(n)) - 2.0) / (0.4 * 0.4);
  CHECK(report.required_samples == doctest::Approx(expected).epsilon(1e-12));
  CHECK(report.available_samples == doctest::Approx(0.5 * n * n * p * L));
  CHECK(report.satisfied == (report.available_samples >= report.required_samples));

  SUBCASE("kappa one gives c2 of one quarter") {
    auto flat = ScoreVector::from_scores(layered({{3, 2.0}, {3, 1.0}}));
    // kappa = 2 here; build a true kappa=1 case via equal scores but a gap:
    // impossible, so check the formula directly with kappa from scores
    auto eq = ScoreVector::from_scores(vec({1, 1, 1, 1}));
    auto r = lower_bound_dk(4, 0.5, 5, eq, 2, 0.1);
    // Dk = 0 so the threshold is infinite
    CHECK(std::isinf(r.required_samples));
    CHECK_FALSE(r.satisfied);
    (void)flat;
  }
  SUBCASE("eps validation") {
    CHECK_THROWS_AS(lower_bound_dk(n, p, L, scores, 10, 0.0), BadEps);
    CHECK_THROWS_AS(lower_bound_dk(n, p, L, scores, 10, 0.5), BadEps);
  }
}

TEST_CASE("c2 equals one quarter when scores are flat apart from the gap") {
  // kappa = 1 requires w_min = w_max, i.e. all equal; use a two-value
  // vector with ratio -> 1 to approach c2 -> 1/4.
  auto nearly = ScoreVector::from_scores(layered({{2, 1.0 + 1e-9}, {2, 1.0}}));
  auto r = lower_bound_dk(4, 0.5, 5, nearly, 2, 0.1);
  const double dk = separation_dk(nearly, 2);
  const double expected = 0.25 * (0.9 * 4 * std::log(4.0) - 2.0) / (dk * dk);
  CHECK(r.required_samples == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("lower bound in the generalized separation") {
  SUBCASE("worked example") {
    auto case3 = ScoreVector::from_scores(
        layered({{5, 10.0}, {5, 5.0}, {90, 1e-6}}));
    auto report = lower_bound_dkstar(100, 0.25, 20, case3, 5, 0.1);
    // (eps^2/2) n / (Dk*)^2 = 0.5 / 0.0118056 in units of n^2 p L
    CHECK(2.0 * report.required_samples ==
          doctest::Approx(42.35273).epsilon(1e-4));
  }
  SUBCASE("tied boundary gives an infinite threshold") {
    auto tied = ScoreVector::from_scores(vec({2, 2, 2, 1}));
    auto report = lower_bound_dkstar(4, 0.5, 5, tied, 2, 0.1);
    CHECK(std::isinf(report.required_samples));
  }
  SUBCASE("doubling eps quadruples the threshold") {
    auto scores = two_level_scores(20, 5, 0.3);
    auto r1 = lower_bound_dkstar(20, 0.5, 5, scores, 5, 0.1);
    auto r2 = lower_bound_dkstar(20, 0.5, 5, scores, 5, 0.2);
    CHECK(r2.required_samples ==
          doctest::Approx(4.0 * r1.required_samples).epsilon(1e-12));
  }
}

TEST_CASE("upper bound requirements") {
  const int n = 50, L = 10;
  const double p = 0.5;
  SUBCASE("direct substitution at unit constants") {
    auto scores = two_level_scores(n, 5, 1.0 - 1e-12);  // Dk -> 1
    auto report = upper_bound_requirement(n, p, L, scores, 5,
                                          ThresholdKind::upper_fixed_kappa);
    CHECK(report.required_samples ==
          doctest::Approx(n * std::log(double(n))).epsilon(1e-6));
    CHECK(report.connectivity_ok);
  }
  SUBCASE("general-kappa regimes differ by kappa squared") {
    auto scores = two_level_scores(n, 5, 0.5);
    auto spectral = upper_bound_requirement(
        n, p, L, scores, 5, ThresholdKind::upper_spectral_kappa);
    auto mle = upper_bound_requirement(n, p, L, scores, 5,
                                       ThresholdKind::upper_mle_kappa);
    const double kappa = scores.kappa();
    CHECK(mle.required_samples ==
          doctest::Approx(kappa * kappa * spectral.required_samples)
              .epsilon(1e-12));
  }
  SUBCASE("connectivity flag") {
    auto scores = two_level_scores(n, 5, 0.5);
    auto sparse = upper_bound_requirement(n, std::log(double(n)) / n / 2.0, L,
                                          scores, 5,
                                          ThresholdKind::upper_fixed_kappa);
    CHECK_FALSE(sparse.connectivity_ok);
  }
  SUBCASE("lower kinds are rejected") {
    auto scores = two_level_scores(n, 5, 0.5);
    CHECK_THROWS_AS(upper_bound_requirement(n, p, L, scores, 5,
                                            ThresholdKind::lower_dk),
                    BadRegime);
  }
}

TEST_CASE("swapped-boundary fixture: same separation, different top set, "
          "unreliable below threshold") {
  // Swapping the scores of the K-th and (K+1)-th ranked items yields a
  // vector with the identical generalized separation but a different
  // top-K set; below the lower-bound threshold no method distinguishes
  // the two reliably.
  const int n = 20, K = 5;
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) w[i] = i < K ? 1.02 : 1.0;
  Eigen::VectorXd swapped = w;
  std::swap(swapped[K - 1], swapped[K]);

  auto scores = ScoreVector::from_scores(w);
  auto alt = ScoreVector::from_scores(swapped);
  CHECK(generalized_separation(scores, K) ==
        doctest::Approx(generalized_separation(alt, K)).epsilon(1e-15));
  CHECK(true_top_set(w, K) != true_top_set(swapped, K));

  const double p = 0.5;
  const int L = 3;
  auto report = lower_bound_dkstar(n, p, L, scores, K, 0.25);
  REQUIRE_FALSE(report.satisfied);  // instance sits below the threshold

  SeedSequence root(1234);
  double exact = 0.0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    auto g = connected_er(n, p, root.child(t));
    auto data = sample_comparisons(g, scores, L, root.child(t).child(1));
    exact += topk_accuracy(spectral_rank(data, K), true_top_set(w, K));
  }
  CHECK(exact / trials <= 0.6);
}

TEST_CASE("thresholds are monotone in the separation and kappa") {
  const int n = 100, L = 10;
  const double p = 0.3;
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : {0.1, 0.2, 0.4}) {
    auto scores = two_level_scores(n, 10, delta);
    auto report = upper_bound_requirement(n, p, L, scores, 10,
                                          ThresholdKind::upper_fixed_kappa);
    CHECK(report.required_samples < previous);
    previous = report.required_samples;
  }
  // larger kappa at the same separation demands more samples
  auto narrow = ScoreVector::from_scores(layered({{5, 1.0}, {95, 0.8}}));
  auto wide = ScoreVector::from_scores(layered({{5, 1.0}, {94, 0.8}, {1, 0.1}}));
  auto r_narrow = upper_bound_requirement(n, p, L, narrow, 5,
                                          ThresholdKind::upper_spectral_kappa);
  auto r_wide = upper_bound_requirement(n, p, L, wide, 5,
                                        ThresholdKind::upper_spectral_kappa);
  CHECK(r_wide.required_samples > r_narrow.required_samples);
}

TEST_SUITE_END();
