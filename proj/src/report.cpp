#include "copent/report.hpp"

#include <json.hpp>

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace copent {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

json payload_json(const ReportPayload& payload) {
  return std::visit(
      overloaded{
          [](const ScalarResult& s) {
            json out{{"kind", "scalar"}, {"quantity", s.quantity}, {"value", s.value}};
            if (!s.direction.empty()) out["direction"] = s.direction;
            if (s.lag) out["lag"] = *s.lag;
            return out;
          },
          [](const RankingResult& r) {
            json rows = json::array();
            json selected = json::array();
            for (const auto& row : r.rows) {
              rows.push_back({{"feature", row.feature}, {"name", row.name}, {"score", row.score},
                              {"selected", row.selected}});
              if (row.selected) selected.push_back(row.feature);
            }
            return json{{"kind", "ranking"}, {"target", r.target},     {"target_name", r.target_name},
                        {"threshold", r.threshold}, {"rows", rows}, {"selected", selected}};
          },
          [](const LagTable& t) {
            json rows = json::array();
            for (std::size_t i = 0; i < t.lags.size(); ++i) rows.push_back({{"lag", t.lags[i]}, {"te", t.values[i]}});
            return json{{"kind", "lag_scan"}, {"direction", t.direction}, {"rows", rows}};
          },
      },
      payload);
}

std::string to_json(const Report& report) {
  json config{{"k", report.config.k}, {"norm", std::string(to_string(report.config.norm))}};
  config["seed"] = report.config.seed ? json(*report.config.seed) : json(nullptr);
  config["jitter"] = report.config.jitter
                         ? json{{"repeats", report.config.jitter->repeats}, {"scale", report.config.jitter->scale}}
                         : json(nullptr);
  const json input{{"source", report.input.source},
                   {"rows", report.input.rows},
                   {"cols", report.input.cols},
                   {"dropped_rows", report.input.dropped_rows},
                   {"columns", report.input.columns}};
  const json doc{{"operation", report.operation},
                 {"config", config},
                 {"input", input},
                 {"result", payload_json(report.payload)},
                 {"tool_version", report.tool_version}};
  return doc.dump(2) + "\n";
}

std::string to_csv(const Report& report) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const ScalarResult& s) { out << "quantity,value\n" << s.quantity << ',' << format_double(s.value) << '\n'; },
                 [&](const RankingResult& r) {
                   out << "feature,score\n";
                   for (const auto& row : r.rows) out << row.feature << ',' << format_double(row.score) << '\n';
                 },
                 [&](const LagTable& t) {
                   out << "lag,te\n";
                   for (std::size_t i = 0; i < t.lags.size(); ++i) out << t.lags[i] << ',' << format_double(t.values[i]) << '\n';
                 },
             },
             report.payload);
  return out.str();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

ReportFormat parse_report_format(const std::string& text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  throw std::invalid_argument("unknown format '" + text + "' (expected json or csv)");
}

std::string write_report(const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? to_json(report) : to_csv(report);
}

}  // namespace copent
