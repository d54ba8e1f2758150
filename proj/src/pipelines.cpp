#include "copent/pipelines.hpp"

#include "copent/entropy.hpp"
#include "copent/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace copent {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void validate(const JitterPolicy& policy) {
  if (policy.repeats < 1) throw std::invalid_argument("JitterPolicy: repeats must be >= 1");
  if (!(policy.scale > 0.0) || !std::isfinite(policy.scale)) {
    throw std::invalid_argument("JitterPolicy: scale must be finite and > 0");
  }
}

}  // namespace

double gaussian_reference_mi(double rho) {
  if (!(std::abs(rho) < 1.0)) throw std::domain_error("gaussian_reference_mi: |rho| must be < 1");
  return -0.5 * std::log1p(-rho * rho);
}

SampleMatrix simulate_bivariate_gaussian(double rho, Index n, std::uint64_t seed) {
  if (!(std::abs(rho) < 1.0)) throw std::domain_error("simulate_bivariate_gaussian: |rho| must be < 1");
  if (n < 2) throw std::invalid_argument("simulate_bivariate_gaussian: n must be >= 2");
  // Cholesky factor of [[1, rho], [rho, 1]].
  const double off = rho;
  const double diag = std::sqrt(1.0 - rho * rho);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  MatrixXd x(n, 2);
  for (Index t = 0; t < n; ++t) {
    const double z1 = normal(gen);
    const double z2 = normal(gen);
    x(t, 0) = z1;
    x(t, 1) = off * z1 + diag * z2;
  }
  return SampleMatrix(std::move(x), {"x1", "x2"});
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t repeat, std::uint64_t column) {
  return splitmix64(splitmix64(splitmix64(seed) ^ repeat) ^ column);
}

std::vector<double> jitter_average(const MatrixXd& x, const JitterPolicy& policy,
                                   const std::function<std::vector<double>(const MatrixXd&)>& estimate,
                                   std::vector<Index>* zero_columns) {
  validate(policy);
  require_finite(x);

  VectorXd amplitude(x.cols());
  for (Index c = 0; c < x.cols(); ++c) {
    const double max_abs = x.col(c).cwiseAbs().maxCoeff();
    if (max_abs == 0.0) {
      if (zero_columns) zero_columns->push_back(c);
      amplitude(c) = policy.scale;
    } else {
      amplitude(c) = max_abs * policy.scale;
    }
  }

  std::vector<double> sum;
  MatrixXd noisy(x.rows(), x.cols());
  for (int r = 0; r < policy.repeats; ++r) {
    for (Index c = 0; c < x.cols(); ++c) {
      std::mt19937_64 gen(substream_seed(policy.seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c)));
      std::normal_distribution<double> normal;
      for (Index t = 0; t < x.rows(); ++t) noisy(t, c) = x(t, c) + amplitude(c) * normal(gen);
    }
    const std::vector<double> values = estimate(noisy);
    if (r == 0) {
      sum.assign(values.size(), 0.0);
    } else if (values.size() != sum.size()) {
      throw std::logic_error("jitter_average: estimator output size changed between rounds");
    }
    for (std::size_t i = 0; i < values.size(); ++i) sum[i] += values[i];
  }
  for (double& v : sum) v /= static_cast<double>(policy.repeats);
  return sum;
}

JitteredEstimate jittered_copent(const MatrixXd& x, const JitterPolicy& policy, const EstimatorConfig& config) {
  require_enough_samples(x.rows(), config.k, "jittered_copent");
  JitteredEstimate out;
  out.value = jitter_average(
                  x, policy, [&](const MatrixXd& noisy) { return std::vector<double>{copent(noisy, config)}; },
                  &out.zero_columns)
                  .front();
  return out;
}

JitteredEstimate jittered_copent(const SampleMatrix& x, const JitterPolicy& policy, const EstimatorConfig& config) {
  return jittered_copent(x.values(), policy, config);
}

FeatureRanking rank_features(const SampleMatrix& x, Index target, const JitterPolicy& policy,
                             const EstimatorConfig& config, unsigned threads) {
  if (target < 0 || target >= x.cols()) {
    throw std::out_of_range("rank_features: target column " + std::to_string(target) + " out of range [0, " +
                            std::to_string(x.cols()) + ")");
  }
  if (x.cols() < 2) throw std::invalid_argument("rank_features: need at least one non-target column");
  validate(policy);
  require_enough_samples(x.rows(), config.k, "rank_features");

  std::vector<Index> features;
  for (Index c = 0; c < x.cols(); ++c) {
    if (c != target) features.push_back(c);
  }
  std::vector<double> scores(features.size());
  parallel_for(
      features.size(),
      [&](std::size_t i) {
        MatrixXd pair(x.rows(), 2);
        pair << x.values().col(features[i]), x.values().col(target);
        scores[i] = jittered_copent(pair, policy, config).value;
      },
      threads);

  std::vector<std::size_t> order(features.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  FeatureRanking out;
  out.target_id = target;
  for (std::size_t i : order) {
    out.feature_ids.push_back(features[i]);
    out.scores.push_back(scores[i]);
  }
  return out;
}

double FeatureRanking::score_of(Index feature_id) const {
  const auto it = std::find(feature_ids.begin(), feature_ids.end(), feature_id);
  if (it == feature_ids.end()) throw std::out_of_range("FeatureRanking: feature not ranked");
  return scores[static_cast<std::size_t>(it - feature_ids.begin())];
}

std::vector<Index> FeatureRanking::select_at_or_above(Index feature_id) const {
  const double threshold = score_of(feature_id);
  std::vector<Index> out;
  for (std::size_t i = 0; i < feature_ids.size(); ++i) {
    if (scores[i] >= threshold) out.push_back(feature_ids[i]);
  }
  return out;
}

std::vector<Index> FeatureRanking::select_top(std::size_t q) const {
  q = std::min(q, feature_ids.size());
  return {feature_ids.begin(), feature_ids.begin() + static_cast<std::ptrdiff_t>(q)};
}

}  // namespace copent
