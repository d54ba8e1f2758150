#pragma once

#include "copent/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace copent {

inline constexpr const char* kToolVersion = "0.3.0";

struct ScalarResult {
  std::string quantity;  // "copent", "ci", "transent"
  double value = 0.0;
  std::string direction;  // transent only
  std::optional<int> lag;
};

struct RankingRow {
  Index feature = 0;  // 1-based column index, as shown to users
  std::string name;
  double score = 0.0;
  bool selected = false;
};

struct RankingResult {
  Index target = 0;  // 1-based
  std::string target_name;
  std::string threshold;  // how the selection was made, e.g. "feature:16" or "top:5"
  std::vector<RankingRow> rows;
};

struct LagTable {
  std::string direction;
  std::vector<int> lags;
  std::vector<double> values;
};

using ReportPayload = std::variant<ScalarResult, RankingResult, LagTable>;

struct JitterEcho {
  int repeats = 0;
  double scale = 0.0;
};

struct ConfigEcho {
  int k = 3;
  Norm norm = Norm::Max;
  std::optional<std::uint64_t> seed;
  std::optional<JitterEcho> jitter;
};

struct InputFingerprint {
  std::string source;
  Index rows = 0;
  Index cols = 0;
  Index dropped_rows = 0;
  std::vector<std::string> columns;
};

struct Report {
  std::string operation;
  ConfigEcho config;
  InputFingerprint input;
  ReportPayload payload;
  std::string tool_version = kToolVersion;
};

enum class ReportFormat { Json, Csv };

ReportFormat parse_report_format(const std::string& text);

// JSON: one object with sorted keys, shortest round-trip doubles.
// CSV: header then rows (lag,te / feature,score / quantity,value).
std::string write_report(const Report& report, ReportFormat format);

// Round-trip-exact textual form of a double, as used in both formats.
std::string format_double(double value);

}  // namespace copent
