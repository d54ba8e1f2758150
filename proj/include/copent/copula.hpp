#pragma once

#include "copent/error.hpp"
#include "copent/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace copent {

// How tied values share a rank. Max is the <=-count: every member of a tie
// group gets the count of values <= it. Average assigns the group's mean rank.
enum class TieRule { Max, Average };

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& x) {
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      if (!std::isfinite(x(i, j))) throw NonFiniteError(i, j);
    }
  }
}

// Normalized ranks of each column: u(t, i) = #{s : x(s, i) <= x(t, i)} / T.
template <typename Derived>
CopulaMatrix<typename Derived::Scalar> empirical_copula(const Eigen::MatrixBase<Derived>& x,
                                                        TieRule ties = TieRule::Max) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.rows();
  if (n < 1 || x.cols() < 1) throw std::invalid_argument("empirical_copula: empty matrix");
  require_finite(x);

  CopulaMatrix<Scalar> u{Matrix<Scalar>(n, x.cols())};
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index col = 0; col < x.cols(); ++col) {
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return x(a, col) < x(b, col); });
    Index begin = 0;
    while (begin < n) {
      Index end = begin + 1;
      while (end < n && x(order[end], col) == x(order[begin], col)) ++end;
      const Scalar rank = ties == TieRule::Max ? Scalar(end) : Scalar(begin + 1 + end) / Scalar(2);
      const Scalar value = rank / Scalar(n);
      for (Index s = begin; s < end; ++s) u.values(order[s], col) = value;
      begin = end;
    }
  }
  return u;
}

inline CopulaMatrix<double> empirical_copula(const SampleMatrix& x, TieRule ties = TieRule::Max) {
  return empirical_copula(x.values(), ties);
}

}  // namespace copent
