#include "copent/error.hpp"
#include "copent/types.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace copent {

std::string_view to_string(Norm norm) {
  return norm == Norm::Max ? "max" : "euclidean";
}

Norm parse_norm(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "max" || lower == "maximum" || lower == "chebychev" || lower == "chebyshev") {
    return Norm::Max;
  }
  if (lower == "euclidean") return Norm::Euclidean;
  throw std::invalid_argument("unknown norm '" + std::string(text) + "' (expected max or euclidean)");
}

SampleMatrix::SampleMatrix(MatrixXd values, std::vector<std::string> column_names)
    : values_(std::move(values)), names_(std::move(column_names)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw std::invalid_argument("SampleMatrix: need at least one row and one column");
  }
  if (!names_.empty() && static_cast<Index>(names_.size()) != values_.cols()) {
    throw std::invalid_argument("SampleMatrix: column_names size does not match column count");
  }
  for (Index j = 0; j < values_.cols(); ++j) {
    for (Index i = 0; i < values_.rows(); ++i) {
      if (!std::isfinite(values_(i, j))) throw NonFiniteError(i, j);
    }
  }
}

std::string SampleMatrix::name(Index col) const {
  if (col < 0 || col >= cols()) throw std::out_of_range("SampleMatrix::name: column out of range");
  return names_.empty() ? std::string{} : names_[static_cast<std::size_t>(col)];
}

namespace {

std::string join_rows(const std::vector<Index>& rows) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(rows.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += std::to_string(rows[i]);
  }
  if (rows.size() > shown) out += ", ... (" + std::to_string(rows.size()) + " total)";
  return out;
}

}  // namespace

DegenerateTiesError::DegenerateTiesError(std::vector<Index> rows)
    : DataError("degenerate ties: zero k-th neighbor distance at rows [" + join_rows(rows) +
                "] (0-based); duplicate rows need tie-breaking noise, use the jitter pipeline (--jitter)"),
      rows_(std::move(rows)) {}

NonFiniteError::NonFiniteError(Index row, Index col)
    : DataError("non-finite value at row " + std::to_string(row) + ", column " + std::to_string(col) +
                " (0-based)"),
      row_(row),
      col_(col) {}

ParseError::ParseError(std::string path, std::size_t row, std::size_t col, std::string what)
    : DataError(path + ": row " + std::to_string(row) + ", column " + std::to_string(col) + ": " + what),
      row_(row),
      col_(col) {}

}  // namespace copent
