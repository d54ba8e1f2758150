#pragma once

#include "copent/types.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace copent {

enum class NaPolicy {
  DropRows,  // remove rows with a missing cell in any loaded column
  Fail,      // missing cell is a parse error
  RankLast,  // keep rows; missing cells rank above every observed value, in row order
};

// A column reference as written by a user: a header name or a 1-based index.
using ColumnRef = std::variant<std::string, Index>;

// "3" -> index 3, "pm2.5" -> name. Digit-only tokens are always indices.
ColumnRef parse_column_ref(const std::string& token);
std::vector<ColumnRef> parse_column_list(const std::string& comma_separated);

struct IngestOptions {
  char delimiter = ',';
  bool has_header = true;
  std::vector<std::string> na_tokens{"NA", ""};
  NaPolicy na_policy = NaPolicy::DropRows;
  // Columns to parse; other columns may hold arbitrary text. Empty = all.
  std::vector<ColumnRef> columns;
};

struct LoadedTable {
  SampleMatrix data;
  Index dropped_rows = 0;
  Index source_rows = 0;
};

LoadedTable load_csv(const std::string& path, const IngestOptions& options = {});
LoadedTable parse_csv(const std::string& text, const IngestOptions& options = {},
                      const std::string& source_name = "<memory>");

// Projection in the requested order. Indices are 1-based; names must be unique.
SampleMatrix select_columns(const SampleMatrix& x, const std::vector<ColumnRef>& columns);

// 0-based position of a reference within a header.
Index resolve_column(const std::vector<std::string>& names, Index column_count, const ColumnRef& ref);

}  // namespace copent
