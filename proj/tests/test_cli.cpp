#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "jex/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* kBenchmarkConfig = R"({
  "n": 3,
  "marginals": [
    {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0},
    {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0},
    {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0}
  ],
  "allocation": {"strategy": "trivariate-lambda", "lambda": 0.4},
  "copulas": {
    "1,2": {"family": "independence", "dimension": 2},
    "1,3": {"family": "comonotone", "dimension": 2},
    "2,3": {"family": "countermonotone", "dimension": 2}
  },
  "seed": 7
})";

const char* kDistortedConfig = R"({
  "n": 3,
  "marginals": [
    {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0},
    {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0},
    {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0}
  ],
  "allocation": {"strategy": "trivariate-lambda", "lambda": 0.2},
  "copulas": {
    "1,2": {"family": "independence", "dimension": 2},
    "1,3": {"family": "comonotone", "dimension": 2},
    "2,3": {"family": "countermonotone", "dimension": 2}
  },
  "distortions": {
    "1": {"family": "linear-truncation", "a": 0.125, "b": 0.5},
    "2": {"family": "linear-truncation", "a": 0.125, "b": 0.5},
    "3": {"family": "linear-truncation", "a": 0.125, "b": 0.5}
  },
  "seed": 11
})";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("jex_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path file = path / name;
    std::ofstream out(file);
    out << content;
    return file.string();
  }
};

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = jex::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

TEST_CASE("check reports JE feasible and ME infeasible for the benchmark") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const RunResult result = run_cli({"check", config});
  REQUIRE(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j["je"]["feasible"] == true);
  CHECK(j["je"]["lhs"] == 1.5);
  CHECK(j["je"]["rhs"] == 2.0);
  CHECK(j["me"]["feasible"] == false);
  CHECK(j["me"]["lhs"] == 1.5);
  CHECK(!j.contains("gje"));
}

TEST_CASE("check includes the generalized report when distortions exist") {
  TempDir dir;
  const std::string config = dir.write("config.json", kDistortedConfig);
  const RunResult result = run_cli({"check", config});
  REQUIRE(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j["gje"]["feasible"] == true);
  CHECK(j["gje"]["lhs"] == 0.5);
  CHECK(j["gje"]["rhs"] == doctest::Approx(0.5625).epsilon(1e-12));
}

TEST_CASE("allocate prints the face masses keyed by face strings") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const RunResult result = run_cli({"allocate", config});
  REQUIRE(result.status == 0);
  const json j = json::parse(result.out);
  CHECK(j["p"]["1,2"] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(j["p"]["1,3"] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(j["p"]["2,3"] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("allocate rejects a lambda outside the feasible interval") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const RunResult result = run_cli(
      {"allocate", config, "--strategy", "trivariate-lambda", "--lambda", "0.6"});
  CHECK(result.status == 2);
  CHECK(result.err.find("lambda") != std::string::npos);
}

TEST_CASE("build summarizes masses; sampling is byte-identical per seed") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const RunResult build = run_cli({"build", config});
  REQUIRE(build.status == 0);
  const json j = json::parse(build.out);
  CHECK(j["origin_mass"] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(j["axis_mass"][0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(j["kind"] == "canonical");

  const RunResult a =
      run_cli({"sample", config, "--count", "1000", "--seed", "7"});
  const RunResult b =
      run_cli({"sample", config, "--count", "1000", "--seed", "7"});
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("x1,x2,x3,region\n", 0) == 0);

  const RunResult c =
      run_cli({"sample", config, "--count", "1000", "--seed", "8"});
  CHECK(a.out != c.out);

  // export-support emits the same point-cloud format.
  const RunResult e =
      run_cli({"export-support", config, "--count", "1000", "--seed", "7"});
  CHECK(e.out == a.out);
}

TEST_CASE("cdf evaluates CSV points") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const std::string points =
      dir.write("points.csv", "x1,x2,x3\n0,0,0\n0.5,0.5,0.5\n1,1,1\n");
  const RunResult result = run_cli({"cdf", config, "--points", points});
  REQUIRE(result.status == 0);
  std::istringstream lines(result.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x1,x2,x3,cdf");
  std::getline(lines, line);
  CHECK(line.find("0.1") != std::string::npos);  // origin mass at lambda 0.4
  std::getline(lines, line);
  // 1 - 0.75 + 0.2*(0.25 + 0.5 + 0) at the center.
  CHECK(line.find("0.4") != std::string::npos);
}

TEST_CASE("corr and cfcheck emit JSON summaries") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const RunResult corr =
      run_cli({"corr", config, "--count", "50000", "--seed", "3"});
  REQUIRE(corr.status == 0);
  const json cj = json::parse(corr.out);
  CHECK(cj["n"] == 3);
  CHECK(cj["pearson"].size() == 3);

  const RunResult cf = run_cli(
      {"cfcheck", config, "--t", "1,2,3", "--count", "20000", "--seed", "3"});
  REQUIRE(cf.status == 0);
  const json fj = json::parse(cf.out);
  CHECK(fj["magnitude"] == 0.0);
}

TEST_CASE("transform modes round-trip through CSV") {
  TempDir dir;
  const std::string config = dir.write("config.json", kBenchmarkConfig);
  const std::string sample_path = (dir.path / "sample.csv").string();
  REQUIRE(run_cli({"sample", config, "--count", "200", "--seed", "5",
                   "--output", sample_path})
              .status == 0);

  const std::string jm_path = (dir.path / "jm.csv").string();
  REQUIRE(run_cli({"transform", "--mode", "je2jm", "--input", sample_path,
                   "--output", jm_path})
              .status == 0);
  const std::string back_path = (dir.path / "back.csv").string();
  REQUIRE(run_cli({"transform", "--mode", "jm2je", "--input", jm_path,
                   "--output", back_path})
              .status == 0);

  std::ifstream original(sample_path);
  std::ifstream recovered(back_path);
  std::string line_a, line_b;
  std::getline(original, line_a);
  std::getline(recovered, line_b);
  CHECK(line_a == line_b);
  int rows = 0;
  while (std::getline(original, line_a) && std::getline(recovered, line_b)) {
    // Region tags survive the round trip.
    CHECK(line_a.substr(line_a.rfind(',')) == line_b.substr(line_b.rfind(',')));
    ++rows;
  }
  CHECK(rows == 200);

  const RunResult reflect = run_cli(
      {"transform", "--mode", "reflect", "--input", sample_path});
  CHECK(reflect.status == 0);

  const RunResult translate =
      run_cli({"transform", "--mode", "translate", "--shift", "1,1,1",
               "--input", sample_path});
  CHECK(translate.status == 0);

  const RunResult bad_shift =
      run_cli({"transform", "--mode", "translate", "--shift", "1,1",
               "--input", sample_path});
  CHECK(bad_shift.status == 2);

  // jm2je rejects rows that do not sum to zero.
  const RunResult bad_membership = run_cli(
      {"transform", "--mode", "jm2je", "--input", sample_path});
  CHECK(bad_membership.status == 2);
}

TEST_CASE("configs cover every marginal family") {
  TempDir dir;
  const std::string config = dir.write("mixed.json", R"({
    "n": 3,
    "marginals": [
      {"family": "scaled-exponential", "q0": 0.4, "rate": 2.0},
      {"family": "piecewise-linear", "q0": 0.4, "knots": [[0, 0.4], [1, 0.1], [2, 0]]},
      {"family": "point-mass-at-zero", "q0": 0.0}
    ],
    "allocation": {"strategy": "max-face-mass"},
    "copulas": {
      "1,2": {"family": "convex-mixture", "dimension": 2, "components": [
        {"weight": 0.5, "family": "independence", "dimension": 2},
        {"weight": 0.5, "family": "countermonotone", "dimension": 2}
      ]}
    },
    "seed": 99
  })");
  const RunResult build = run_cli({"build", config});
  REQUIRE(build.status == 0);
  const json j = json::parse(build.out);
  CHECK(j["faces"]["1,2"] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(j["faces"]["1,3"] == 0.0);
  const RunResult sample =
      run_cli({"sample", config, "--count", "100", "--seed", "1"});
  CHECK(sample.status == 0);

  const std::string mismatch = dir.write("mismatch.json", R"({
    "n": 2,
    "marginals": [
      {"family": "piecewise-linear", "q0": 0.5, "knots": [[0, 0.4], [2, 0]]},
      {"family": "scaled-uniform", "q0": 0.3, "scale": 1.0}
    ]
  })");
  CHECK(run_cli({"check", mismatch}).status == 2);
}

TEST_CASE("I/O failures exit 1, validation failures exit 2") {
  const RunResult missing = run_cli({"check", "/nonexistent/config.json"});
  CHECK(missing.status == 1);

  TempDir dir;
  const std::string broken = dir.write("broken.json", "{not json");
  CHECK(run_cli({"check", broken}).status == 2);

  const std::string infeasible = dir.write("infeasible.json", R"({
    "n": 3,
    "marginals": [
      {"family": "scaled-uniform", "q0": 1.0, "scale": 1.0},
      {"family": "scaled-uniform", "q0": 1.0, "scale": 1.0},
      {"family": "scaled-uniform", "q0": 1.0, "scale": 1.0}
    ]
  })");
  const RunResult build = run_cli({"build", infeasible});
  CHECK(build.status == 2);
  CHECK(build.err.find("JECondition") != std::string::npos);

  const RunResult unknown = run_cli({"frobnicate"});
  CHECK(unknown.status != 0);
}

TEST_CASE("constraint diagnostics name the violated constraint") {
  TempDir dir;
  // Marginals whose sum of q0 exceeds what scaled(0.2) can cover.
  const std::string config = dir.write("thin.json", R"({
    "n": 3,
    "marginals": [
      {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0},
      {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0},
      {"family": "scaled-uniform", "q0": 0.5, "scale": 1.0}
    ],
    "allocation": {"strategy": "scaled", "t": 0.2},
    "copulas": {
      "1,2": {"family": "independence", "dimension": 2},
      "1,3": {"family": "comonotone", "dimension": 2},
      "2,3": {"family": "countermonotone", "dimension": 2}
    }
  })");
  const RunResult result = run_cli({"build", config});
  CHECK(result.status == 2);
  CHECK(result.err.find("t in [") != std::string::npos);
}
