#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace copent {

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

enum class Norm { Max, Euclidean };

std::string_view to_string(Norm norm);
Norm parse_norm(std::string_view text);

// k = neighbor order. Defaults follow the reference package: k=3, max norm.
struct EstimatorConfig {
  int k = 3;
  Norm norm = Norm::Max;
};

// Observation matrix: rows are samples, columns are variables.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  explicit SampleMatrix(MatrixXd values, std::vector<std::string> column_names = {});

  const MatrixXd& values() const { return values_; }
  const std::vector<std::string>& column_names() const { return names_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

  // Empty string when the column is unnamed.
  std::string name(Index col) const;

 private:
  MatrixXd values_;
  std::vector<std::string> names_;
};

// Pseudo-observations, entries are count/T in (0, 1].
template <typename Scalar>
struct CopulaMatrix {
  Matrix<Scalar> values;

  Index rows() const { return values.rows(); }
  Index cols() const { return values.cols(); }
};

template <typename Scalar>
struct EntropyEstimate {
  Scalar value{};
  int k_used = 0;
  Norm norm_used = Norm::Max;
  Index n_samples = 0;
  Index dimension = 0;
};

}  // namespace copent
