#include "copent/independence.hpp"

#include "copent/error.hpp"
#include "copent/parallel.hpp"

namespace copent {

SeriesPair::SeriesPair(VectorXd x_, VectorXd y_) : x(std::move(x_)), y(std::move(y_)) {
  if (x.size() != y.size()) throw std::invalid_argument("SeriesPair: x and y differ in length");
  if (x.size() < 2) throw std::invalid_argument("SeriesPair: need at least two time points");
  require_finite(x);
  require_finite(y);
}

LagScanResult lag_scan(const SeriesPair& pair, int max_lag, const EstimatorConfig& config) {
  if (max_lag < 1) throw std::invalid_argument("lag_scan: max_lag must be >= 1");
  if (max_lag >= pair.length() - config.k) {
    throw std::invalid_argument("lag_scan: max_lag=" + std::to_string(max_lag) +
                                " requires max_lag < T - k = " + std::to_string(pair.length() - config.k));
  }
  LagScanResult out;
  out.lags.resize(static_cast<std::size_t>(max_lag));
  out.te_values.resize(static_cast<std::size_t>(max_lag));
  parallel_for(out.lags.size(), [&](std::size_t j) {
    const int lag = static_cast<int>(j) + 1;
    out.lags[j] = lag;
    out.te_values[j] = transent(pair.x, pair.y, lag, config);
  });
  return out;
}

}  // namespace copent
