#include "cli.hpp"

#include "copent/copent.hpp"
#include "oracles.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace copent;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "copent_cli_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_matrix(const std::string& name, const MatrixXd& m, const std::vector<std::string>& header) {
  const fs::path path = temp_dir() / name;
  std::ofstream f(path);
  for (std::size_t j = 0; j < header.size(); ++j) f << (j ? "," : "") << header[j];
  f << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) f << (j ? "," : "") << format_double(m(i, j));
    f << '\n';
  }
  return path.string();
}

double json_value(const std::string& text) { return nlohmann::json::parse(text)["result"]["value"].get<double>(); }

bool single_line_diagnostic(const std::string& err, const std::string& kind) {
  return err.rfind("copent: error[" + kind + "]: ", 0) == 0 && err.find('\n') == err.size() - 1;
}

}  // namespace

TEST_CASE("copent subcommand on a Gaussian fixture equals the library bit-exactly") {
  const SampleMatrix g = simulate_bivariate_gaussian(0.75, 500, 2021);
  const std::string path = write_matrix("gauss.csv", g.values(), {"x1", "x2"});
  const Outcome o = run_cli({"copent", "--input", path, "--cols", "1,2", "--k", "3", "--norm", "euclidean",
                             "--format", "json"});
  REQUIRE(o.code == 0);
  const double value = json_value(o.out);
  const LoadedTable reloaded = load_csv(path);
  CHECK(value == copent::copent(reloaded.data, {3, Norm::Euclidean}));
  // k=3 at T=500 sits below the analytic 0.413; only a loose band is asserted.
  CHECK(value > 0.2);
  CHECK(value < 0.6);

  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["operation"] == "copent");
  CHECK(doc["config"]["k"] == 3);
  CHECK(doc["config"]["norm"] == "euclidean");
  CHECK(doc["input"]["rows"] == 500);
  CHECK(doc["input"]["dropped_rows"] == 0);
}

TEST_CASE("identical invocations produce byte-identical reports") {
  const MatrixXd m = oracle::normal_matrix(200, 3, 5).array().round();
  const std::string path = write_matrix("ties.csv", m, {"a", "b", "c"});
  const std::vector<std::string> args{"copent", "--input", path, "--cols", "a,b,c", "--jitter", "--repeats", "5",
                                      "--seed", "99"};
  const Outcome first = run_cli(args);
  const Outcome second = run_cli(args);
  REQUIRE(first.code == 0);
  CHECK(first.out == second.out);
  JitterPolicy p{5, 1e-6, 99};
  CHECK(json_value(first.out) == jittered_copent(m, p).value);
  const auto doc = nlohmann::json::parse(first.out);
  CHECK(doc["config"]["seed"] == 99);
  CHECK(doc["config"]["jitter"]["repeats"] == 5);
}

TEST_CASE("degenerate ties without jitter exit 3 and point to --jitter") {
  MatrixXd m(6, 2);
  m << 1, 1, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5;
  const std::string path = write_matrix("dupes.csv", m, {"a", "b"});
  const Outcome o = run_cli({"copent", "--input", path, "--cols", "a,b", "--k", "1"});
  CHECK(o.code == 3);
  CHECK(single_line_diagnostic(o.err, "data"));
  CHECK(o.err.find("--jitter") != std::string::npos);
  CHECK(o.out.empty());
}

TEST_CASE("ci and transent subcommands match library calls") {
  const auto s = oracle::coupled_system(300, 4);
  MatrixXd m(300, 3);
  m << s.x, s.y, oracle::normal_matrix(300, 1, 6);
  const std::string path = write_matrix("series.csv", m, {"x", "y", "z"});
  const MatrixXd loaded = load_csv(path).data.values();

  const Outcome c = run_cli({"ci", "--input", path, "--x", "x", "--y", "y", "--z", "z"});
  REQUIRE(c.code == 0);
  CHECK(json_value(c.out) == ci(loaded.col(0), loaded.col(1), loaded.col(2)));

  const Outcome t = run_cli({"transent", "--input", path, "--x", "x", "--y", "2", "--lag", "2"});
  REQUIRE(t.code == 0);
  CHECK(json_value(t.out) == transent(loaded.col(0), loaded.col(1), 2));
  const auto doc = nlohmann::json::parse(t.out);
  CHECK(doc["result"]["direction"] == "y→x");
  CHECK(doc["result"]["lag"] == 2);
}

TEST_CASE("lagscan emits one CSV row per lag") {
  const auto s = oracle::coupled_system(200, 8);
  MatrixXd m(200, 2);
  m << s.x, s.y;
  const std::string path = write_matrix("scan.csv", m, {"pm2.5", "PRES"});
  const Outcome o = run_cli({"lagscan", "--input", path, "--x", "pm2.5", "--y", "PRES", "--max-lag", "24",
                             "--format", "csv"});
  REQUIRE(o.code == 0);
  std::istringstream lines(o.out);
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) rows.push_back(line);
  REQUIRE(rows.size() == 25);
  CHECK(rows[0] == "lag,te");
  const MatrixXd loaded = load_csv(path).data.values();
  const LagScanResult scan = lag_scan(loaded.col(0), loaded.col(1), 24);
  for (int lag = 1; lag <= 24; ++lag) {
    CHECK(rows[lag] == std::to_string(lag) + "," + format_double(scan.te_values[lag - 1]));
  }
}

TEST_CASE("lag bounds are usage errors") {
  const auto s = oracle::white_noise_pair(50, 1);
  MatrixXd m(50, 2);
  m << s.x, s.y;
  const std::string path = write_matrix("short.csv", m, {"x", "y"});
  const Outcome t = run_cli({"transent", "--input", path, "--x", "x", "--y", "y", "--lag", "60"});
  CHECK(t.code == 2);
  CHECK(single_line_diagnostic(t.err, "usage"));
  CHECK(t.err.find("out of bounds") != std::string::npos);
  const Outcome l = run_cli({"lagscan", "--input", path, "--x", "x", "--y", "y", "--max-lag", "47"});
  CHECK(l.code == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"copent", "--cols", "1,2"}).code == 2);  // no --input
  const auto s = oracle::white_noise_pair(50, 1);
  MatrixXd m(50, 2);
  m << s.x, s.y;
  const std::string path = write_matrix("usage.csv", m, {"x", "y"});
  const Outcome one_col = run_cli({"copent", "--input", path, "--cols", "1"});
  CHECK(one_col.code == 2);
  CHECK(single_line_diagnostic(one_col.err, "usage"));
  CHECK(run_cli({"copent", "--input", path, "--cols", "0,1"}).code == 2);
  CHECK(run_cli({"copent", "--input", path, "--cols", "x,x"}).code == 2);
  CHECK(run_cli({"copent", "--input", path, "--cols", "x,nope"}).code == 2);
  CHECK(run_cli({"copent", "--input", path, "--cols", "x,y", "--norm", "manhattan"}).code == 2);
  CHECK(run_cli({"transent", "--input", path, "--x", "x,y", "--y", "y"}).code == 2);
  CHECK(run_cli({"copent", "--help"}).code == 0);
}

TEST_CASE("data errors exit 3") {
  const Outcome missing = run_cli({"copent", "--input", "/nonexistent/data.csv", "--cols", "1,2"});
  CHECK(missing.code == 3);
  CHECK(single_line_diagnostic(missing.err, "data"));

  const fs::path bad = temp_dir() / "bad.csv";
  std::ofstream(bad) << "a,b\n1,2\n3,oops\n4,5\n";
  const Outcome parse = run_cli({"copent", "--input", bad.string(), "--cols", "a,b", "--k", "1"});
  CHECK(parse.code == 3);
  CHECK(parse.err.find("row 3, column 2") != std::string::npos);

  const fs::path na = temp_dir() / "na.csv";
  std::ofstream(na) << "a,b\n1,2\n3,NA\n4,5\n6,7\n";
  CHECK(run_cli({"copent", "--input", na.string(), "--cols", "a,b", "--k", "1", "--na-policy", "fail"}).code == 3);
  CHECK(run_cli({"copent", "--input", na.string(), "--cols", "a,b", "--k", "1"}).code == 0);
}

TEST_CASE("select ranks features against the target") {
  const MatrixXd z = oracle::normal_matrix(300, 3, 2);
  MatrixXd m(300, 4);
  m << z.col(0), z.col(1), z.col(0) + 1e-3 * z.col(2), z.col(0).array().round();
  const std::string path = write_matrix("select.csv", m, {"t", "noise", "copy", "coarse"});
  const Outcome o = run_cli({"select", "--input", path, "--target", "1", "--top", "1", "--repeats", "3"});
  REQUIRE(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["result"]["target"] == 1);
  CHECK(doc["result"]["rows"][0]["feature"] == 3);
  CHECK(doc["result"]["rows"][0]["name"] == "copy");
  CHECK(doc["result"]["selected"] == nlohmann::json::array({3}));
  CHECK(doc["result"]["threshold"] == "top:1");

  const FeatureRanking lib = rank_features(load_csv(path).data, 0, JitterPolicy{3, 1e-6, JitterPolicy{}.seed});
  for (std::size_t i = 0; i < lib.scores.size(); ++i) {
    CHECK(doc["result"]["rows"][i]["score"].get<double>() == lib.scores[i]);
  }

  const Outcome thr = run_cli({"select", "--input", path, "--target", "t", "--threshold-feature", "coarse",
                               "--repeats", "3", "--format", "csv"});
  REQUIRE(thr.code == 0);
  CHECK(thr.out.rfind("feature,score\n", 0) == 0);
  CHECK(run_cli({"select", "--input", path, "--target", "1", "--threshold-feature", "1"}).code == 2);
  CHECK(run_cli({"select", "--input", path, "--target", "9"}).code == 2);
}

TEST_CASE("--output writes the report file and fixture dir resolves relative inputs") {
  const auto s = oracle::white_noise_pair(80, 3);
  MatrixXd m(80, 2);
  m << s.x, s.y;
  write_matrix("envfixture.csv", m, {"x", "y"});
  ::setenv(cli::kFixtureDirEnv, temp_dir().c_str(), 1);
  const fs::path out = temp_dir() / "report.json";
  const Outcome o = run_cli({"copent", "--input", "envfixture.csv", "--cols", "x,y", "--output", out.string()});
  ::unsetenv(cli::kFixtureDirEnv);
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream f(out);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(json_value(buf.str()) == copent::copent(m));
}
