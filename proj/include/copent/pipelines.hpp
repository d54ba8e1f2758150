#pragma once

#include "copent/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace copent {

// Tie-breaking noise: each round adds N(0, (max|column| * scale)^2) to every
// column and re-estimates; the result is the mean over rounds.
struct JitterPolicy {
  int repeats = 50;
  double scale = 1e-6;
  std::uint64_t seed = 1234;
};

struct JitteredEstimate {
  double value = 0.0;
  // Columns whose max |value| is zero; these got absolute noise of size `scale`.
  std::vector<Index> zero_columns;
};

struct FeatureRanking {
  std::vector<Index> feature_ids;  // 0-based, sorted by descending score
  std::vector<double> scores;
  Index target_id = 0;

  // Features scoring at least as high as `feature_id` (which must be ranked).
  std::vector<Index> select_at_or_above(Index feature_id) const;
  std::vector<Index> select_top(std::size_t q) const;
  double score_of(Index feature_id) const;
};

// MI of a bivariate Gaussian with correlation rho: -log(1 - rho^2) / 2.
double gaussian_reference_mi(double rho);

// n x 2 sample, zero means, unit variances, correlation rho.
SampleMatrix simulate_bivariate_gaussian(double rho, Index n, std::uint64_t seed);

// Per-(repeat, column) random substream. Exposed for tests and reuse.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t repeat, std::uint64_t column);

// Mean of `estimate` over `policy.repeats` noisy copies of x. The estimator may
// return several values (e.g. one per lag); they are averaged element-wise.
std::vector<double> jitter_average(const MatrixXd& x, const JitterPolicy& policy,
                                   const std::function<std::vector<double>(const MatrixXd&)>& estimate,
                                   std::vector<Index>* zero_columns = nullptr);

JitteredEstimate jittered_copent(const MatrixXd& x, const JitterPolicy& policy,
                                 const EstimatorConfig& config = {});
JitteredEstimate jittered_copent(const SampleMatrix& x, const JitterPolicy& policy,
                                 const EstimatorConfig& config = {});

// Scores every non-target column by jittered_copent([column, target]).
// Ties in score are broken by ascending column index.
FeatureRanking rank_features(const SampleMatrix& x, Index target, const JitterPolicy& policy,
                             const EstimatorConfig& config = {}, unsigned threads = 0);

}  // namespace copent
