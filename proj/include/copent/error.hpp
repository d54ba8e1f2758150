#pragma once

#include "copent/types.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace copent {

// Failures caused by the data itself rather than by how a function was called.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two or more rows coincide, so some k-th neighbor distance is zero and the
// log-distance term diverges. Remedy: jittered_copent.
class DegenerateTiesError : public DataError {
 public:
  explicit DegenerateTiesError(std::vector<Index> rows);
  const std::vector<Index>& rows() const { return rows_; }

 private:
  std::vector<Index> rows_;
};

class NonFiniteError : public DataError {
 public:
  NonFiniteError(Index row, Index col);
  Index row() const { return row_; }
  Index col() const { return col_; }

 private:
  Index row_;
  Index col_;
};

// row/col are 1-based file coordinates (row 1 = first data line).
class ParseError : public DataError {
 public:
  ParseError(std::string path, std::size_t row, std::size_t col, std::string what);
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace copent
