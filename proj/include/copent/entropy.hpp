#pragma once

#include "copent/copula.hpp"
#include "copent/error.hpp"
#include "copent/knn.hpp"
#include "copent/special.hpp"
#include "copent/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace copent {

inline void require_enough_samples(Index n, int k, const char* who) {
  if (k < 1) throw std::invalid_argument(std::string(who) + ": k must be >= 1");
  if (n < k + 1) {
    throw std::invalid_argument(std::string(who) + ": need at least k+1=" + std::to_string(k + 1) +
                                " samples, got " + std::to_string(n));
  }
}

/// Kozachenko-Leonenko / KSG k-NN differential entropy, in nats:
///
///   H = -psi(k) + psi(T) + log c_d + (d/T) * sum_i log(eps_i)
///
/// where eps_i is twice the distance from row i to its k-th nearest neighbor.
/// Throws DegenerateTiesError when some rows coincide (eps_i = 0).
template <typename Derived>
EntropyEstimate<typename Derived::Scalar> entropy_knn(const Eigen::MatrixBase<Derived>& x,
                                                      const EstimatorConfig& config = {},
                                                      KnnMethod method = KnnMethod::Auto) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.rows();
  const Index d = x.cols();
  require_enough_samples(n, config.k, "entropy_knn");
  if (d < 1) throw std::invalid_argument("entropy_knn: no columns");
  require_finite(x);

  const Vector<Scalar> dist = kth_neighbor_distances(x, config.k, config.norm, method);

  std::vector<Index> tied;
  for (Index i = 0; i < n; ++i) {
    if (dist(i) == Scalar(0)) tied.push_back(i);
  }
  if (!tied.empty()) throw DegenerateTiesError(std::move(tied));

  Scalar log_sum{0};
  for (Index i = 0; i < n; ++i) log_sum += std::log(Scalar(2) * dist(i));

  EntropyEstimate<Scalar> out;
  out.value = -digamma(Scalar(config.k)) + digamma(Scalar(n)) +
              unit_ball_log_volume<Scalar>(d, config.norm) + Scalar(d) / Scalar(n) * log_sum;
  out.k_used = config.k;
  out.norm_used = config.norm;
  out.n_samples = n;
  out.dimension = d;
  return out;
}

template <typename Scalar>
EntropyEstimate<Scalar> entropy_knn(const CopulaMatrix<Scalar>& u, const EstimatorConfig& config = {},
                                    KnnMethod method = KnnMethod::Auto) {
  return entropy_knn(u.values, config, method);
}

// Negative copula entropy, i.e. the mutual-information estimate of the columns.
template <typename Derived>
typename Derived::Scalar copent(const Eigen::MatrixBase<Derived>& x, const EstimatorConfig& config = {},
                                KnnMethod method = KnnMethod::Auto) {
  require_enough_samples(x.rows(), config.k, "copent");
  return -entropy_knn(empirical_copula(x).values, config, method).value;
}

inline double copent(const SampleMatrix& x, const EstimatorConfig& config = {},
                     KnnMethod method = KnnMethod::Auto) {
  return copent(x.values(), config, method);
}

}  // namespace copent
