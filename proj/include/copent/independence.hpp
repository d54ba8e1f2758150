#pragma once

#include "copent/entropy.hpp"
#include "copent/types.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace copent {

// Two aligned series. x is the effect candidate, y the candidate cause.
struct SeriesPair {
  VectorXd x;
  VectorXd y;

  SeriesPair(VectorXd x_, VectorXd y_);
  Index length() const { return x.size(); }
};

struct LagScanResult {
  std::vector<int> lags;
  std::vector<double> te_values;
  std::string direction = "y→x";
};

/// Conditional mutual information I(x; y | z) from three copula-entropy terms:
///
///   copent([x, z, y]) - copent([x, z]) - copent([y, z])
///
/// x and y may be vectors or single-column matrices; z may have several columns.
template <typename DX, typename DY, typename DZ>
typename DX::Scalar ci(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y,
                       const Eigen::MatrixBase<DZ>& z, const EstimatorConfig& config = {}) {
  using Scalar = typename DX::Scalar;
  const Index n = x.rows();
  if (y.rows() != n || z.rows() != n) {
    throw std::invalid_argument("ci: x, y, z must have the same number of rows");
  }
  if (x.cols() < 1 || y.cols() < 1 || z.cols() < 1) throw std::invalid_argument("ci: empty input");
  require_enough_samples(n, config.k, "ci");

  const Index dx = x.cols(), dy = y.cols(), dz = z.cols();
  Matrix<Scalar> xzy(n, dx + dz + dy), xz(n, dx + dz), yz(n, dy + dz);
  xzy << x, z, y;
  xz << x, z;
  yz << y, z;
  return copent(xzy, config) - copent(xz, config) - copent(yz, config);
}

/// Transfer entropy from y to x at the given lag, as I(x_{t+lag}; y_t | x_t).
template <typename DX, typename DY>
typename DX::Scalar transent(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y, int lag,
                             const EstimatorConfig& config = {}) {
  static_assert(DX::ColsAtCompileTime == 1 || DX::ColsAtCompileTime == Eigen::Dynamic);
  const Index n = x.rows();
  if (y.rows() != n || x.cols() != 1 || y.cols() != 1) {
    throw std::invalid_argument("transent: x and y must be series of equal length");
  }
  if (lag < 1) throw std::invalid_argument("transent: lag must be >= 1");
  if (lag >= n - config.k) {
    throw std::invalid_argument("transent: lag=" + std::to_string(lag) + " requires lag < T - k = " +
                                std::to_string(n - config.k));
  }
  const Index m = n - lag;
  return ci(x.bottomRows(m), y.topRows(m), x.topRows(m), config);
}

// te_values[j] = transent(x, y, j + 1) for lags 1..max_lag.
LagScanResult lag_scan(const SeriesPair& pair, int max_lag, const EstimatorConfig& config = {});

template <typename DX, typename DY>
LagScanResult lag_scan(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y, int max_lag,
                       const EstimatorConfig& config = {}) {
  return lag_scan(SeriesPair(VectorXd(x), VectorXd(y)), max_lag, config);
}

}  // namespace copent
