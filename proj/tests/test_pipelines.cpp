#include "copent/pipelines.hpp"

#include "copent/entropy.hpp"
#include "copent/error.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace copent;

TEST_CASE("gaussian reference MI") {
  CHECK(gaussian_reference_mi(0.75) == doctest::Approx(0.4133393).epsilon(1e-7));
  CHECK(gaussian_reference_mi(0.0) == 0.0);
  CHECK(gaussian_reference_mi(-0.75) == gaussian_reference_mi(0.75));
  double prev = -1.0;
  for (double r = 0.0; r < 0.999; r += 0.01) {
    const double v = gaussian_reference_mi(r);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(gaussian_reference_mi(1.0), std::domain_error);
  CHECK_THROWS_AS(gaussian_reference_mi(-1.2), std::domain_error);
}

TEST_CASE("bivariate Gaussian simulation") {
  const SampleMatrix a = simulate_bivariate_gaussian(0.75, 500, 7);
  const SampleMatrix b = simulate_bivariate_gaussian(0.75, 500, 7);
  CHECK((a.values().array() == b.values().array()).all());
  CHECK(a.rows() == 500);
  CHECK(a.cols() == 2);

  const SampleMatrix strong = simulate_bivariate_gaussian(0.9, 5000, 3);
  CHECK(std::abs(oracle::pearson(strong.values().col(0), strong.values().col(1)) - 0.9) < 0.02);
  const SampleMatrix none = simulate_bivariate_gaussian(0.0, 5000, 4);
  CHECK(std::abs(oracle::pearson(none.values().col(0), none.values().col(1))) < 0.03);
  CHECK(std::abs(none.values().col(0).mean()) < 0.05);
  CHECK(std::abs(none.values().col(1).squaredNorm() / 5000.0 - 1.0) < 0.06);

  CHECK_THROWS_AS(simulate_bivariate_gaussian(1.0, 10, 1), std::domain_error);
  CHECK_THROWS_AS(simulate_bivariate_gaussian(0.5, 1, 1), std::invalid_argument);
}

TEST_CASE("substreams differ by repeat and column") {
  CHECK(substream_seed(1, 0, 0) != substream_seed(1, 0, 1));
  CHECK(substream_seed(1, 0, 0) != substream_seed(1, 1, 0));
  CHECK(substream_seed(1, 0, 0) != substream_seed(2, 0, 0));
  CHECK(substream_seed(5, 3, 2) == substream_seed(5, 3, 2));
}

TEST_CASE("vanishing jitter on tie-free data converges to plain copent") {
  const MatrixXd x = oracle::normal_matrix(300, 2, 15);
  const JitterPolicy tiny{1, 1e-9, 3};
  CHECK(std::abs(jittered_copent(x, tiny).value - copent::copent(x)) < 1e-6);
}

TEST_CASE("jitter resolves degenerate ties in discrete data") {
  MatrixXd x(899, 2);
  for (Index i = 0; i < 899; ++i) x(i, 0) = x(i, 1) = double(i % 2);
  CHECK_THROWS_AS(copent::copent(x), DegenerateTiesError);
  const JitteredEstimate est = jittered_copent(x, JitterPolicy{5, 1e-6, 1});
  CHECK(std::isfinite(est.value));
  CHECK(est.zero_columns.empty());
}

TEST_CASE("all-zero column falls back to absolute noise and is flagged") {
  MatrixXd x = oracle::normal_matrix(100, 2, 2);
  x.col(1).setZero();
  const JitteredEstimate est = jittered_copent(x, JitterPolicy{3, 1e-6, 9});
  CHECK(std::isfinite(est.value));
  CHECK(est.zero_columns == std::vector<Index>{1});
}

TEST_CASE("jittered_copent is deterministic and seed-dependent") {
  const MatrixXd x = oracle::normal_matrix(200, 3, 4).array().round();
  const JitterPolicy p{10, 1e-3, 77};
  CHECK(jittered_copent(x, p).value == jittered_copent(x, p).value);
  CHECK(jittered_copent(x, p).value != jittered_copent(x, JitterPolicy{10, 1e-3, 78}).value);
}

TEST_CASE("jitter policy validation") {
  const MatrixXd x = oracle::normal_matrix(30, 2, 1);
  CHECK_THROWS_AS(jittered_copent(x, JitterPolicy{0, 1e-6, 1}), std::invalid_argument);
  CHECK_THROWS_AS(jittered_copent(x, JitterPolicy{1, 0.0, 1}), std::invalid_argument);
}

namespace {

SampleMatrix ranking_data(Index n) {
  const MatrixXd z = oracle::normal_matrix(n, 3, 123);
  MatrixXd m(n, 3);
  m.col(0) = z.col(0);                      // target
  m.col(1) = z.col(0) + 1e-3 * z.col(1);    // near copy
  m.col(2) = z.col(2);                      // independent
  return SampleMatrix(m, {"target", "copy", "noise"});
}

}  // namespace

TEST_CASE("rank_features puts the near-copy first") {
  const SampleMatrix data = ranking_data(400);
  const FeatureRanking r = rank_features(data, 0, JitterPolicy{5, 1e-6, 1});
  REQUIRE(r.feature_ids == std::vector<Index>{1, 2});
  CHECK(r.scores[0] > r.scores[1]);
  CHECK(r.target_id == 0);
  CHECK(r.select_top(1) == std::vector<Index>{1});
  CHECK(r.select_at_or_above(2) == std::vector<Index>{1, 2});
  CHECK(r.select_at_or_above(1) == std::vector<Index>{1});
}

TEST_CASE("rank_features scores equal jittered_copent on extracted pairs") {
  const SampleMatrix data = ranking_data(300);
  const JitterPolicy p{4, 1e-6, 5};
  const FeatureRanking r = rank_features(data, 2, p);
  for (std::size_t i = 0; i < r.feature_ids.size(); ++i) {
    MatrixXd pair(300, 2);
    pair << data.values().col(r.feature_ids[i]), data.values().col(2);
    CHECK(r.scores[i] == jittered_copent(pair, p).value);
  }
}

TEST_CASE("rank_features does not depend on the thread count") {
  const SampleMatrix data = ranking_data(250);
  const JitterPolicy p{3, 1e-6, 5};
  const FeatureRanking one = rank_features(data, 0, p, {}, 1);
  const FeatureRanking four = rank_features(data, 0, p, {}, 4);
  CHECK(one.feature_ids == four.feature_ids);
  CHECK(one.scores == four.scores);
}

TEST_CASE("rank_features with one candidate and invalid targets") {
  MatrixXd m = oracle::normal_matrix(50, 2, 1);
  const SampleMatrix data(m);
  const FeatureRanking r = rank_features(data, 1, JitterPolicy{2, 1e-6, 1});
  CHECK(r.feature_ids == std::vector<Index>{0});
  CHECK_THROWS_AS(rank_features(data, 2, JitterPolicy{}), std::out_of_range);
  CHECK_THROWS_AS(rank_features(data, -1, JitterPolicy{}), std::out_of_range);
  CHECK_THROWS_AS(r.score_of(1), std::out_of_range);
}

TEST_CASE("rank_features breaks score ties by column index") {
  MatrixXd m = oracle::normal_matrix(60, 1, 3).replicate(1, 4);
  m.col(3) = oracle::normal_matrix(60, 1, 4);
  const FeatureRanking r = rank_features(SampleMatrix(m), 3, JitterPolicy{2, 1e-6, 1});
  // columns 0..2 are identical, and the target's noise is shared, but each
  // pair's feature noise is the same too, so scores tie exactly
  CHECK(r.scores[0] == r.scores[1]);
  CHECK(r.feature_ids == std::vector<Index>{0, 1, 2});
}
