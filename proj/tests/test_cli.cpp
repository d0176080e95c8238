#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rrbpc/cli.hpp"
#include "support.hpp"

using namespace rrbpc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rrbpc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("rrbpc_test_" + name);
}

}  // namespace

TEST_CASE("csv rows") {
  SolveResult r;
  r.status = SolveStatus::Optimal;
  r.lower_bound = 783.999999;
  r.upper_bound = 784;
  r.n_cc = 12;
  r.n_ngcc = 3;
  r.n_scc = 0;
  r.seconds = 1.234;
  r.nodes = 7;
  CHECK(csv_row("A-n32-k5", r, 800.0) == "A-n32-k5,784.00,784,12,3,0,1.23,7,2.00,optimal");
  CHECK(csv_row("A-n32-k5", r, std::nullopt) == "A-n32-k5,784.00,784,12,3,0,1.23,7,,optimal");
  r.upper_bound = std::numeric_limits<double>::infinity();
  r.status = SolveStatus::TimeLimit;
  CHECK(csv_row("x", r, std::nullopt) == "x,784.00,inf,12,3,0,1.23,7,,time-limit");
  CHECK(fields(csv_header()).size() == 10);
}

TEST_CASE("best-known files") {
  std::istringstream in("# comment\nA-n32-k5 784\n\nB2-n31-k5   1100\n");
  const auto table = parse_bks(in);
  CHECK(table.size() == 2);
  CHECK(table.at("B2-n31-k5") == 1100);
  std::istringstream bad("A-n32-k5\n");
  CHECK_THROWS_AS(parse_bks(bad), std::runtime_error);
}

TEST_CASE("cut mode names") {
  CHECK(parse_cut_mode("robust") == CutMode::Robust);
  CHECK(parse_cut_mode("resource-robust") == CutMode::ResourceRobust);
  CHECK(parse_cut_mode("non-robust") == CutMode::NonRobust);
  CHECK_THROWS_AS(parse_cut_mode("strong"), std::invalid_argument);
}

TEST_CASE("solving an instance prints header and row") {
  const auto res = run_cli({"--cuts", "resource-robust", "--bks", "450", testing::data_path("P-n16-k8.vrp")});
  REQUIRE(res.code == 0);
  const auto out = lines(res.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == csv_header());
  const auto f = fields(out[1]);
  REQUIRE(f.size() == 10);
  CHECK(f[0] == "P-n16-k8");
  CHECK(f[1] == "450.00");
  CHECK(f[2] == "450");
  CHECK(f[5] == "0");  // no SCCs in this mode
  CHECK(f[8] == "0.00");
  CHECK(f[9] == "optimal");
}

TEST_CASE("alpha renames and scales; root-only stays at one node") {
  const auto res = run_cli({"--alpha", "2", "--root-only", testing::data_path("B-n31-k5.vrp")});
  REQUIRE(res.code == 0);
  const auto f = fields(lines(res.out).at(1));
  CHECK(f[0] == "B2-n31-k5");
  CHECK(f[7] == "1");
  CHECK(std::stod(f[1]) <= 1100 + 1e-6);
}

TEST_CASE("report file gets one header across runs") {
  const auto path = temp_path("append.csv");
  std::filesystem::remove(path);
  const auto bks = temp_path("bks.txt");
  {
    std::ofstream b(bks);
    b << "P-n16-k8 450\n";
  }
  for (int k = 0; k < 2; ++k) {
    const auto res = run_cli({"--out", path.string(), "--bks", bks.string(), testing::data_path("P-n16-k8.vrp")});
    REQUIRE(res.code == 0);
    CHECK(res.out.empty());
  }
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = lines(text.str());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == csv_header());
  CHECK(fields(rows[1])[8] == "0.00");
  CHECK(rows[1] == rows[1]);
  std::filesystem::remove(path);
  std::filesystem::remove(bks);
}

TEST_CASE("time limit produces a time-limit row and exit code zero") {
  const auto res = run_cli({"--time-limit", "0.2", testing::data_path("A-n80-k10.vrp")});
  REQUIRE(res.code == 0);
  const auto f = fields(lines(res.out).at(1));
  CHECK(f[9] == "time-limit");
}

TEST_CASE("usage errors exit nonzero with a message") {
  SUBCASE("unknown flag") {
    const auto res = run_cli({"--frobnicate", testing::data_path("P-n16-k8.vrp")});
    CHECK(res.code != 0);
    CHECK_FALSE(res.err.empty());
  }
  SUBCASE("unknown cut mode") {
    CHECK(run_cli({"--cuts", "strong", testing::data_path("P-n16-k8.vrp")}).code != 0);
  }
  SUBCASE("missing instance") {
    CHECK(run_cli({}).code != 0);
  }
  SUBCASE("unreadable file") {
    const auto res = run_cli({"/nonexistent/x.vrp"});
    CHECK(res.code != 0);
    CHECK(res.err.find("x.vrp") != std::string::npos);
  }
  SUBCASE("bad ng size") {
    CHECK(run_cli({"--ng-size", "0", testing::data_path("P-n16-k8.vrp")}).code != 0);
  }
  SUBCASE("missing best-known file") {
    CHECK(run_cli({"--bks", "/nonexistent/bks.txt", testing::data_path("P-n16-k8.vrp")}).code != 0);
  }
}
