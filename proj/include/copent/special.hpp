#pragma once

#include "copent/types.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace copent {

// Digamma for x > 0. Shifts the argument up to >= 10 with psi(x) = psi(x+1) - 1/x,
// then sums the asymptotic series through the B14 term (truncation < 1e-16).
template <typename Scalar>
Scalar digamma(Scalar x) {
  if (!(x > Scalar(0)) || !std::isfinite(x)) {
    throw std::domain_error("digamma: argument must be finite and > 0");
  }
  Scalar shift{0};
  while (x < Scalar(10)) {
    shift -= Scalar(1) / x;
    x += Scalar(1);
  }
  const Scalar inv = Scalar(1) / x;
  const Scalar inv2 = inv * inv;
  // Coefficients B_{2n} / (2n) for n = 1..7.
  const Scalar series =
      inv2 * (Scalar(1) / 12 -
      inv2 * (Scalar(1) / 120 -
      inv2 * (Scalar(1) / 252 -
      inv2 * (Scalar(1) / 240 -
      inv2 * (Scalar(1) / 132 -
      inv2 * (Scalar(691) / 32760 -
      inv2 * (Scalar(1) / 12)))))));
  return shift + std::log(x) - Scalar(0.5) * inv - series;
}

// log of the unit-ball volume constant c_d. For the max norm c_d = 1; for the
// Euclidean norm c_d = pi^{d/2} / Gamma(1 + d/2) / 2^d.
template <typename Scalar = double>
Scalar unit_ball_log_volume(Index d, Norm norm) {
  if (d < 1) throw std::invalid_argument("unit_ball_log_volume: dimension must be >= 1");
  if (norm == Norm::Max) return Scalar(0);
  const Scalar half_d = Scalar(d) / 2;
  return half_d * std::log(std::numbers::pi_v<Scalar>) - std::lgamma(Scalar(1) + half_d) -
         Scalar(d) * std::numbers::ln2_v<Scalar>;
}

}  // namespace copent
