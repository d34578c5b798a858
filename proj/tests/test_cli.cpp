#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pathregret/io.hpp"
#include "pathregret/oracle.hpp"
#include "pathregret/regret.hpp"

using namespace pathregret;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args) {
  const std::string out_path = "/tmp/pathregret_cli_out.txt";
  const std::string err_path = "/tmp/pathregret_cli_err.txt";
  const std::string cmd =
      std::string(CLI_BIN_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  int code = -1;
  if (status != -1 && WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, slurp(out_path), slurp(err_path)};
}

std::string golden_instance() { return std::string(DATA_DIR) + "/symmetric_n2.json"; }

std::string write_tmp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("solve: golden symmetric instance") {
  const RunResult r = run("solve " + golden_instance());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("sink").at("kind") == "vertex");
  CHECK(j.at("sink").at("index") == 0);
  CHECK(j.at("sink").at("coordinate").get<double>() == doctest::Approx(0.0));
  CHECK(j.at("max_regret").get<double>() == doctest::Approx(0.0));

  // round trip: re-evaluating MR at the reported sink reproduces max_regret
  const Network net(load_instance(golden_instance()));
  const Analysis a = analyze(net);
  const double mr = max_regret_at(net, a, j.at("sink").at("coordinate").get<double>());
  CHECK(std::abs(mr - j.at("max_regret").get<double>()) <= 1e-9);

  // deterministic across runs
  const RunResult r2 = run("solve " + golden_instance());
  CHECK(r2.out == r.out);
}

TEST_CASE("solve: output file option") {
  const RunResult r = run("solve " + golden_instance() + " -o /tmp/pathregret_res.json");
  REQUIRE(r.exit_code == 0);
  std::ifstream in("/tmp/pathregret_res.json");
  REQUIRE(in.good());
  nlohmann::json j;
  in >> j;
  CHECK(j.contains("max_regret"));
}

TEST_CASE("solve: malformed file exits 1 with position info") {
  const std::string path = write_tmp("pathregret_bad.json", "{\"tau\": 1.0, nope");
  const RunResult r = run("solve " + path);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("malformed") != std::string::npos);
}

TEST_CASE("solve: invariant violation exits 2 naming the vertex") {
  const std::string path = write_tmp("pathregret_neg.json", R"({
    "tau": 1.0, "horizon": [0.0, 1.0],
    "vertices": [{"a": 1.0, "b": 0.0}, {"a": 1.0, "b": -2.0}],
    "edges": [{"length": 1.0, "capacity": 1.0}]
  })");
  const RunResult r = run("solve " + path);
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("negative weight") != std::string::npos);
  CHECK(r.err.find("vertex 1") != std::string::npos);
}

TEST_CASE("sample: row counts and basic properties") {
  const RunResult mr = run("sample " + golden_instance() + " --what mr --resolution 50");
  REQUIRE(mr.exit_code == 0);
  CHECK(count_lines(mr.out) == 50);
  std::istringstream rows(mr.out);
  std::string line;
  while (std::getline(rows, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    CHECK(std::stod(line.substr(comma + 1)) >= -1e-12);
  }

  const RunResult opt = run("sample " + golden_instance() + " --what opt --resolution 17");
  REQUIRE(opt.exit_code == 0);
  CHECK(count_lines(opt.out) == 17);
  // constant weights: the opt column is constant
  std::istringstream orows(opt.out);
  double first = 0;
  bool have = false;
  while (std::getline(orows, line)) {
    const double v = std::stod(line.substr(line.find(',') + 1));
    if (!have) {
      first = v;
      have = true;
    }
    CHECK(v == doctest::Approx(first));
  }

  const RunResult phi = run("sample " + golden_instance() + " --what phi --resolution 9");
  REQUIRE(phi.exit_code == 0);
  CHECK(count_lines(phi.out) == 9);

  const RunResult bad = run("sample " + golden_instance() + " --what bogus");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("check: passes on a healthy instance and is byte-stable") {
  const RunResult a = run("check " + golden_instance() + " --seed 7 --samples 40");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.find("overall: PASS") != std::string::npos);
  const RunResult b = run("check " + golden_instance() + " --seed 7 --samples 40");
  CHECK(a.out == b.out);
}

TEST_CASE("check: zero samples is a vacuous pass with a warning") {
  const RunResult r = run("check " + golden_instance() + " --samples 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("warning") != std::string::npos);
}

TEST_CASE("bench: reproducible piece-count columns") {
  const RunResult a = run("bench --n 12 --capacity-mode random --trials 2 --seed 3");
  REQUIRE(a.exit_code == 0);
  const RunResult b = run("bench --n 12 --capacity-mode random --trials 2 --seed 3");
  // timings differ; the leading columns up to max_pieces_mr must not
  const auto prefix = [](const std::string& s) {
    std::istringstream rows(s);
    std::string line, acc;
    while (std::getline(rows, line)) {
      size_t commas = 0, cut = 0;
      for (size_t i = 0; i < line.size(); ++i) {
        if (line[i] == ',') ++commas;
        if (commas == 6) {
          cut = i;
          break;
        }
      }
      acc += line.substr(0, cut ? cut : line.size());
      acc += '\n';
    }
    return acc;
  };
  CHECK(prefix(a.out) == prefix(b.out));
  CHECK(count_lines(a.out) == 3);  // header + 2 trials
}

TEST_CASE("bench: uniform capacities stay within the linear piece bound") {
  const RunResult r = run("bench --n 100 --capacity-mode uniform --trials 3 --seed 11");
  REQUIRE(r.exit_code == 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);  // header
  while (std::getline(rows, line)) {
    // n,mode,trial,max_pieces_f,...
    std::istringstream cells(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) std::getline(cells, cell, ',');
    CHECK(std::stoi(cell) <= 2 * 100 + 2);
  }
}
