#include "cli.hpp"

#include "copent/copent.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace copent::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string input;
  std::string delimiter = ",";
  bool no_header = false;
  std::string na_policy = "drop";
  std::vector<std::string> na_tokens{"NA", ""};
  int k = 3;
  std::string norm = "max";
  std::uint64_t seed = JitterPolicy{}.seed;
  bool jitter = false;
  int repeats = JitterPolicy{}.repeats;
  double scale = JitterPolicy{}.scale;
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
};

struct Invocation {
  CommonOptions common;
  std::string cols;
  std::string x, y, z;
  int lag = 1;
  int max_lag = 0;
  std::string target;
  std::string threshold_feature;
  int top = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--input,-i", o.input, "CSV file (relative paths also searched in $COPENT_FIXTURE_DIR)")
      ->required();
  cmd->add_option("--delimiter", o.delimiter, "Field delimiter")->capture_default_str();
  cmd->add_flag("--no-header", o.no_header, "First line is data, not column names");
  cmd->add_option("--na-policy", o.na_policy, "Missing values: drop | fail | rank-last")
      ->check(CLI::IsMember({"drop", "fail", "rank-last"}))
      ->capture_default_str();
  cmd->add_option("--na-token", o.na_tokens, "Cell text treated as missing (repeatable)");
  cmd->add_option("--k", o.k, "Neighbor order")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--norm", o.norm, "max | euclidean")
      ->check(CLI::IsMember({"max", "euclidean"}))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Seed for jitter noise")->capture_default_str();
  cmd->add_flag("--jitter", o.jitter, "Average over noisy copies to break ties");
  cmd->add_option("--repeats", o.repeats, "Jitter rounds")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--scale", o.scale, "Jitter noise relative to max |column|")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--output,-o", o.output, "Write the report here instead of stdout");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)")->capture_default_str();
}

std::string resolve_input(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path) || fs::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv(kFixtureDirEnv)) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;
}

IngestOptions ingest_options(const CommonOptions& o, std::vector<ColumnRef> columns) {
  if (o.delimiter.size() != 1) throw UsageError("--delimiter must be a single character");
  IngestOptions opt;
  opt.delimiter = o.delimiter[0];
  opt.has_header = !o.no_header;
  opt.na_tokens = o.na_tokens;
  opt.na_policy = o.na_policy == "drop" ? NaPolicy::DropRows
                  : o.na_policy == "fail" ? NaPolicy::Fail
                                          : NaPolicy::RankLast;
  opt.columns = std::move(columns);
  return opt;
}

EstimatorConfig estimator(const CommonOptions& o) { return EstimatorConfig{o.k, parse_norm(o.norm)}; }

JitterPolicy jitter_policy(const CommonOptions& o) { return JitterPolicy{o.repeats, o.scale, o.seed}; }

Report base_report(const std::string& operation, const CommonOptions& o, const LoadedTable& table,
                   const std::string& source, bool jittered) {
  Report r;
  r.operation = operation;
  r.config.k = o.k;
  r.config.norm = parse_norm(o.norm);
  if (jittered) {
    r.config.seed = o.seed;
    r.config.jitter = JitterEcho{o.repeats, o.scale};
  }
  r.input.source = source;
  r.input.rows = table.data.rows();
  r.input.cols = table.data.cols();
  r.input.dropped_rows = table.dropped_rows;
  r.input.columns = table.data.column_names();
  return r;
}

std::vector<ColumnRef> single_ref(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  auto refs = parse_column_list(text);
  if (refs.size() != 1) throw UsageError(std::string(flag) + " takes exactly one column");
  return refs;
}

LoadedTable load(const CommonOptions& o, std::vector<ColumnRef> columns, std::string& source) {
  source = resolve_input(o.input);
  return load_csv(source, ingest_options(o, std::move(columns)));
}

Report cmd_copent(const Invocation& inv) {
  const auto& o = inv.common;
  auto cols = parse_column_list(inv.cols);
  if (cols.size() < 2) throw UsageError("copent needs at least 2 columns in --cols");
  std::string source;
  const LoadedTable table = load(o, cols, source);
  const EstimatorConfig config = estimator(o);
  const double value = o.jitter ? jittered_copent(table.data, jitter_policy(o), config).value
                                : copent(table.data, config);
  Report r = base_report("copent", o, table, source, o.jitter);
  r.payload = ScalarResult{"copent", value};
  return r;
}

Report cmd_ci(const Invocation& inv) {
  const auto& o = inv.common;
  auto x = single_ref(inv.x, "--x");
  auto y = single_ref(inv.y, "--y");
  if (inv.z.empty()) throw UsageError("ci needs at least one conditioning column in --z");
  auto z = parse_column_list(inv.z);
  std::vector<ColumnRef> cols{x[0], y[0]};
  cols.insert(cols.end(), z.begin(), z.end());
  std::string source;
  const LoadedTable table = load(o, cols, source);
  const EstimatorConfig config = estimator(o);
  const MatrixXd& m = table.data.values();
  const auto estimate = [&](const MatrixXd& d) {
    return ci(d.col(0), d.col(1), d.rightCols(d.cols() - 2), config);
  };
  const double value =
      o.jitter ? jitter_average(m, jitter_policy(o), [&](const MatrixXd& d) { return std::vector<double>{estimate(d)}; })
                     .front()
               : estimate(m);
  Report r = base_report("ci", o, table, source, o.jitter);
  r.payload = ScalarResult{"ci", value};
  return r;
}

void check_lag_bounds(int lag, Index rows, int k, const char* flag) {
  if (lag < 1) throw UsageError(std::string(flag) + " must be >= 1");
  if (lag >= rows - k) {
    throw UsageError(std::string(flag) + "=" + std::to_string(lag) + " out of bounds: series has " +
                     std::to_string(rows) + " rows, so lag must be < rows - k = " + std::to_string(rows - k));
  }
}

Report cmd_transent(const Invocation& inv) {
  const auto& o = inv.common;
  std::vector<ColumnRef> cols{single_ref(inv.x, "--x")[0], single_ref(inv.y, "--y")[0]};
  std::string source;
  const LoadedTable table = load(o, cols, source);
  check_lag_bounds(inv.lag, table.data.rows(), o.k, "--lag");
  const EstimatorConfig config = estimator(o);
  const auto estimate = [&](const MatrixXd& d) { return transent(d.col(0), d.col(1), inv.lag, config); };
  const MatrixXd& m = table.data.values();
  const double value =
      o.jitter ? jitter_average(m, jitter_policy(o), [&](const MatrixXd& d) { return std::vector<double>{estimate(d)}; })
                     .front()
               : estimate(m);
  Report r = base_report("transent", o, table, source, o.jitter);
  r.payload = ScalarResult{"transent", value, LagScanResult{}.direction, inv.lag};
  return r;
}

Report cmd_lagscan(const Invocation& inv) {
  const auto& o = inv.common;
  std::vector<ColumnRef> cols{single_ref(inv.x, "--x")[0], single_ref(inv.y, "--y")[0]};
  std::string source;
  const LoadedTable table = load(o, cols, source);
  check_lag_bounds(inv.max_lag, table.data.rows(), o.k, "--max-lag");
  const EstimatorConfig config = estimator(o);
  const MatrixXd& m = table.data.values();
  LagScanResult scan;
  if (o.jitter) {
    scan.te_values = jitter_average(m, jitter_policy(o), [&](const MatrixXd& d) {
      return lag_scan(d.col(0), d.col(1), inv.max_lag, config).te_values;
    });
    for (int lag = 1; lag <= inv.max_lag; ++lag) scan.lags.push_back(lag);
  } else {
    scan = lag_scan(m.col(0), m.col(1), inv.max_lag, config);
  }
  Report r = base_report("lagscan", o, table, source, o.jitter);
  r.payload = LagTable{scan.direction, scan.lags, scan.te_values};
  return r;
}

Report cmd_select(const Invocation& inv) {
  const auto& o = inv.common;
  const auto target_ref = single_ref(inv.target, "--target");
  if (!inv.threshold_feature.empty() && inv.top > 0) {
    throw UsageError("--threshold-feature and --top are mutually exclusive");
  }
  std::string source;
  const LoadedTable table = load(o, {}, source);
  const SampleMatrix& data = table.data;
  const Index target = resolve_column(data.column_names(), data.cols(), target_ref[0]);
  const FeatureRanking ranking = rank_features(data, target, jitter_policy(o), estimator(o), o.threads);

  std::vector<Index> selected;
  std::string threshold = "none";
  if (!inv.threshold_feature.empty()) {
    const Index feature = resolve_column(data.column_names(), data.cols(), parse_column_ref(inv.threshold_feature));
    if (feature == target) throw UsageError("--threshold-feature cannot be the target column");
    selected = ranking.select_at_or_above(feature);
    threshold = "feature:" + std::to_string(feature + 1);
  } else if (inv.top > 0) {
    selected = ranking.select_top(static_cast<std::size_t>(inv.top));
    threshold = "top:" + std::to_string(inv.top);
  }

  Report r = base_report("select", o, table, source, true);
  RankingResult result;
  result.target = target + 1;
  result.target_name = data.name(target);
  result.threshold = threshold;
  for (std::size_t i = 0; i < ranking.feature_ids.size(); ++i) {
    const Index f = ranking.feature_ids[i];
    const bool chosen = std::find(selected.begin(), selected.end(), f) != selected.end();
    result.rows.push_back(RankingRow{f + 1, data.name(f), ranking.scores[i], chosen});
  }
  r.payload = std::move(result);
  return r;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Copula-entropy estimators: mutual information, conditional independence, transfer entropy",
               "copent"};
  app.require_subcommand(1);
  Invocation inv;

  auto* copent_cmd = app.add_subcommand("copent", "Negative copula entropy (mutual information) of --cols");
  add_common(copent_cmd, inv.common);
  copent_cmd->add_option("--cols", inv.cols, "Comma-separated names or 1-based indices (>= 2)")->required();

  auto* ci_cmd = app.add_subcommand("ci", "Conditional mutual information I(x; y | z)");
  add_common(ci_cmd, inv.common);
  ci_cmd->add_option("--x", inv.x)->required();
  ci_cmd->add_option("--y", inv.y)->required();
  ci_cmd->add_option("--z", inv.z, "One or more conditioning columns")->required();

  auto* te_cmd = app.add_subcommand("transent", "Transfer entropy from --y (cause) to --x (effect)");
  add_common(te_cmd, inv.common);
  te_cmd->add_option("--x", inv.x, "Effect series")->required();
  te_cmd->add_option("--y", inv.y, "Candidate cause series")->required();
  te_cmd->add_option("--lag", inv.lag)->capture_default_str();

  auto* scan_cmd = app.add_subcommand("lagscan", "Transfer entropy from --y to --x for lags 1..max-lag");
  add_common(scan_cmd, inv.common);
  scan_cmd->add_option("--x", inv.x, "Effect series")->required();
  scan_cmd->add_option("--y", inv.y, "Candidate cause series")->required();
  scan_cmd->add_option("--max-lag", inv.max_lag)->required();

  auto* select_cmd = app.add_subcommand("select", "Rank every column by jittered copent against --target");
  add_common(select_cmd, inv.common);
  select_cmd->add_option("--target", inv.target, "Target column (name or 1-based index)")->required();
  select_cmd->add_option("--threshold-feature", inv.threshold_feature,
                         "Select features scoring at least as high as this column");
  select_cmd->add_option("--top", inv.top, "Select the q highest-scoring features");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "copent: error[usage]: " << one_line(e.what()) << '\n';
    return kUsage;
  }

  try {
    Report report;
    if (copent_cmd->parsed()) report = cmd_copent(inv);
    else if (ci_cmd->parsed()) report = cmd_ci(inv);
    else if (te_cmd->parsed()) report = cmd_transent(inv);
    else if (scan_cmd->parsed()) report = cmd_lagscan(inv);
    else report = cmd_select(inv);

    const std::string text = write_report(report, parse_report_format(inv.common.format));
    if (inv.common.output.empty()) {
      out << text;
    } else {
      std::ofstream file(inv.common.output, std::ios::binary);
      if (!file) throw DataError("cannot write '" + inv.common.output + "'");
      file << text;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "copent: error[usage]: " << one_line(e.what()) << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "copent: error[data]: " << one_line(e.what()) << '\n';
    return kData;
  } catch (const std::logic_error& e) {
    err << "copent: error[usage]: " << one_line(e.what()) << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "copent: error[data]: " << one_line(e.what()) << '\n';
    return kData;
  }
}

}  // namespace copent::cli
