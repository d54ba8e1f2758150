#include "copent/io.hpp"

#include "copent/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace copent {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Splits one record. Double-quoted fields may contain the delimiter; "" is a quote.
std::vector<std::string> split_record(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delimiter) {
      fields.push_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(trim(field));
  return fields;
}

bool parse_real(const std::string& text, double& out) {
  std::string_view view(text);
  if (!view.empty() && view.front() == '+') view.remove_prefix(1);
  if (view.empty()) return false;
  const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), out);
  return ec == std::errc() && ptr == view.data() + view.size() && std::isfinite(out);
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

ColumnRef parse_column_ref(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw std::invalid_argument("empty column reference");
  if (std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc()) throw std::invalid_argument("column index '" + t + "' out of range");
    return value;
  }
  return t;
}

std::vector<ColumnRef> parse_column_list(const std::string& comma_separated) {
  std::vector<ColumnRef> out;
  std::stringstream ss(comma_separated);
  std::string token;
  while (std::getline(ss, token, ',')) out.push_back(parse_column_ref(token));
  return out;
}

Index resolve_column(const std::vector<std::string>& names, Index column_count, const ColumnRef& ref) {
  if (const auto* index = std::get_if<Index>(&ref)) {
    if (*index < 1 || *index > column_count) {
      throw std::out_of_range("column index " + std::to_string(*index) + " outside 1.." +
                              std::to_string(column_count) + " (indices are 1-based)");
    }
    return *index - 1;
  }
  const auto& name = std::get<std::string>(ref);
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("unknown column name '" + name + "'");
  if (std::find(it + 1, names.end(), name) != names.end()) {
    throw std::invalid_argument("column name '" + name + "' is ambiguous");
  }
  return static_cast<Index>(it - names.begin());
}

namespace {

std::vector<Index> resolve_unique(const std::vector<std::string>& names, Index column_count,
                                  const std::vector<ColumnRef>& refs) {
  std::vector<Index> cols;
  std::set<Index> seen;
  for (const auto& ref : refs) {
    const Index c = resolve_column(names, column_count, ref);
    if (!seen.insert(c).second) {
      throw std::invalid_argument("column " + std::to_string(c + 1) + " selected more than once");
    }
    cols.push_back(c);
  }
  return cols;
}

}  // namespace

LoadedTable parse_csv(const std::string& text, const IngestOptions& options, const std::string& source_name) {
  if (options.na_policy == NaPolicy::DropRows && options.na_tokens.empty()) {
    throw std::invalid_argument("IngestOptions: DropRows needs at least one NA token");
  }
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  Index width = -1;
  if (options.has_header) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!is_blank(line)) break;
    }
    if (line_no == 0 || is_blank(line)) throw DataError(source_name + ": no header line");
    header = split_record(line, options.delimiter);
    width = static_cast<Index>(header.size());
  }

  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    auto fields = split_record(line, options.delimiter);
    if (width < 0) width = static_cast<Index>(fields.size());
    if (static_cast<Index>(fields.size()) != width) {
      throw ParseError(source_name, line_no, fields.size(),
                       "ragged row: expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()));
    }
    records.push_back(std::move(fields));
    record_lines.push_back(line_no);
  }
  if (records.empty()) throw DataError(source_name + ": no data rows");

  std::vector<Index> cols;
  if (options.columns.empty()) {
    cols.resize(static_cast<std::size_t>(width));
    for (Index c = 0; c < width; ++c) cols[static_cast<std::size_t>(c)] = c;
  } else {
    cols = resolve_unique(header, width, options.columns);
  }

  const auto is_na = [&](const std::string& s) {
    return std::find(options.na_tokens.begin(), options.na_tokens.end(), s) != options.na_tokens.end();
  };

  std::vector<std::vector<double>> kept;
  std::vector<std::vector<bool>> missing;
  Index dropped = 0;
  for (std::size_t r = 0; r < records.size(); ++r) {
    std::vector<double> row(cols.size(), 0.0);
    std::vector<bool> row_missing(cols.size(), false);
    bool drop = false;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::string& cell = records[r][static_cast<std::size_t>(cols[j])];
      const std::size_t file_col = static_cast<std::size_t>(cols[j]) + 1;
      if (is_na(cell)) {
        if (options.na_policy == NaPolicy::Fail) {
          throw ParseError(source_name, record_lines[r], file_col, "missing value '" + cell + "'");
        }
        if (options.na_policy == NaPolicy::DropRows) drop = true;
        row_missing[j] = true;
        continue;
      }
      if (!parse_real(cell, row[j])) {
        throw ParseError(source_name, record_lines[r], file_col, "cannot parse '" + cell + "' as a finite real");
      }
    }
    if (drop) {
      ++dropped;
      continue;
    }
    kept.push_back(std::move(row));
    missing.push_back(std::move(row_missing));
  }
  if (kept.empty()) throw DataError(source_name + ": every row was dropped for missing values");

  MatrixXd values(static_cast<Index>(kept.size()), static_cast<Index>(cols.size()));
  for (std::size_t r = 0; r < kept.size(); ++r) {
    for (std::size_t j = 0; j < cols.size(); ++j) values(static_cast<Index>(r), static_cast<Index>(j)) = kept[r][j];
  }

  if (options.na_policy == NaPolicy::RankLast) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      double base = 0.0;
      bool any = false;
      for (std::size_t r = 0; r < kept.size(); ++r) {
        if (missing[r][j]) continue;
        base = any ? std::max(base, kept[r][j]) : kept[r][j];
        any = true;
      }
      const double step = std::max(1.0, std::abs(base));
      double offset = 0.0;
      for (std::size_t r = 0; r < kept.size(); ++r) {
        if (!missing[r][j]) continue;
        offset += step;
        values(static_cast<Index>(r), static_cast<Index>(j)) = base + offset;
      }
    }
  }

  std::vector<std::string> names;
  if (!header.empty()) {
    for (Index c : cols) names.push_back(header[static_cast<std::size_t>(c)]);
  }
  LoadedTable out;
  out.data = SampleMatrix(std::move(values), std::move(names));
  out.dropped_rows = dropped;
  out.source_rows = static_cast<Index>(records.size());
  return out;
}

LoadedTable load_csv(const std::string& path, const IngestOptions& options) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_csv(buffer.str(), options, path);
}

SampleMatrix select_columns(const SampleMatrix& x, const std::vector<ColumnRef>& columns) {
  if (columns.empty()) throw std::invalid_argument("select_columns: empty selection");
  const std::vector<Index> cols = resolve_unique(x.column_names(), x.cols(), columns);
  MatrixXd values(x.rows(), static_cast<Index>(cols.size()));
  std::vector<std::string> names;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    values.col(static_cast<Index>(j)) = x.values().col(cols[j]);
    if (!x.column_names().empty()) names.push_back(x.column_names()[static_cast<std::size_t>(cols[j])]);
  }
  return SampleMatrix(std::move(values), std::move(names));
}

}  // namespace copent
