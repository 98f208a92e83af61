#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubiq_cli.hpp"

using namespace cubiq;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    path_ = std::filesystem::temp_directory_path() /
            ("cubiq_test_" + std::to_string(counter_++) + "_" + std::to_string(::getpid()) + ".txt");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, CheckOnThreeFromFile) {
  TempFile f("# 3Z\n1\n3\n");
  const auto r = run_cli({"check", f.path()});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "NotCubiquitous");
  EXPECT_EQ(j["witness"], Json::parse("[1]"));
  EXPECT_EQ(j["inequality"]["lhs"], 3);
  EXPECT_EQ(j["inequality"]["rhs"], 2);
}

TEST(Cli, TorusSpotValue) {
  const auto r = run_cli({"torus", "--", "-4", "-4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "bounds: true\n");
  EXPECT_EQ(run_cli({"torus", "--", "-2", "-4"}).code, 1);
  EXPECT_EQ(run_cli({"--format", "json", "torus", "--", "-2", "-2"}).out, "{\"bounds\":true}\n");
  EXPECT_EQ(run_cli({"torus", "--", "-2", "4"}).code, 65);
  EXPECT_EQ(run_cli({"torus", "--", "0"}).code, 65);
}

TEST(Cli, WuOnThree) {
  const auto r = run_cli({"wu", "--matrix", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "{\"W\":[3],\"R_o\":[1],\"lhs\":9,\"rhs\":1,\"status\":\"Obstructed\"}\n");
  EXPECT_EQ(run_cli({"wu", "--orthogonal", "--matrix", "1 1; 1 -1"}).code, 2);
  // Not non-acute.
  EXPECT_EQ(run_cli({"wu", "--matrix", "1 1 0; 1 0 0; 0 1 1"}).code, 65);
}

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run_cli({"check", "--matrix", "2 0; 0 2"}).code, 0);
  EXPECT_EQ(run_cli({"check", "--matrix", "1"}).code, 0);
  EXPECT_EQ(run_cli({"check", "--matrix", "1 0; 0 4"}).code, 1);
  const auto capped = run_cli({"check", "--cap", "4", "--matrix", "1 0; 0 3"});
  EXPECT_EQ(capped.code, 2);
  EXPECT_EQ(Json::parse(capped.out)["status"], "Inconclusive");
  EXPECT_EQ(run_cli({"--cap", "4", "check", "--matrix", "1 0; 0 3"}).code, 2);
  EXPECT_EQ(run_cli({"check", "--matrix", "1 0; 0 3"}).code, 1);
}

TEST(Cli, ObstructionKeptWhenBruteForceIsOverCap) {
  const auto r = run_cli({"check", "--cap", "4", "--matrix", "3"});
  EXPECT_EQ(r.code, 1);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["status"], "Obstructed");
  EXPECT_TRUE(j["witness"].is_null());
}

TEST(Cli, EnvironmentCap) {
  ::setenv(cli::kCapEnv, "4", 1);
  const auto capped = run_cli({"check", "--matrix", "1 0; 0 3"});
  ::setenv(cli::kCapEnv, "oops", 1);
  const auto bad = run_cli({"check", "--matrix", "1"});
  ::unsetenv(cli::kCapEnv);
  EXPECT_EQ(capped.code, 2);
  EXPECT_EQ(bad.code, 64);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 64);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 64);
  EXPECT_EQ(run_cli({"check"}).code, 64);
  TempFile f("1\n2\n");
  EXPECT_EQ(run_cli({"check", f.path(), "--matrix", "2"}).code, 64);
  EXPECT_EQ(run_cli({"check", "/nonexistent/cubiq/input"}).code, 64);
  EXPECT_EQ(run_cli({"--format", "xml", "check", "--matrix", "2"}).code, 64);
  EXPECT_EQ(run_cli({"--cap", "0", "check", "--matrix", "2"}).code, 64);
  EXPECT_EQ(run_cli({"det4", "1", "2"}).code, 64);
  const auto r = run_cli({"check"});
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_cli({"check", "--matrix", "1 x"}).code, 65);
  EXPECT_EQ(run_cli({"check", "--matrix", "1 2; 2 4"}).code, 65);
  EXPECT_EQ(run_cli({"check", "--matrix", "1 2; 3"}).code, 65);
  TempFile f("2\n1 0\n");
  const auto r = run_cli({"check", f.path()});
  EXPECT_EQ(r.code, 65);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> cases{
      {"check", "--matrix", "1 0; 0 4"}, {"classify", "--matrix", "1 1 0; 1 -1 0; 0 0 3"}, {"stats", "--matrix", "3"}};
  for (const auto& args : cases) EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  std::vector<std::string> parallel{"--jobs", "4", "check", "--matrix", "3 1 0; 0 3 1; 1 0 3"};
  EXPECT_EQ(run_cli(parallel).out, run_cli({"check", "--matrix", "3 1 0; 0 3 1; 1 0 3"}).out);
}

TEST(Cli, RowsAsVectors) {
  // Rows (1,1) and (1,-1) are the vectors either way; (2,0) and (1,2) differ.
  const auto cols = Json::parse(run_cli({"stats", "--matrix", "2 1; 0 2"}).out);
  const auto rows = Json::parse(run_cli({"--rows-as-vectors", "stats", "--matrix", "2 1; 0 2"}).out);
  EXPECT_EQ(cols["norms"], Json::parse("[4,5]"));
  EXPECT_EQ(rows["norms"], Json::parse("[5,4]"));
}

TEST(Cli, CatalogRoundTrips) {
  const auto blocks = catalog_blocks();
  for (int k = 1; k <= 2; ++k) {
    const auto r = run_cli({"catalog", "--block", std::to_string(k)});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(parse_matrix(r.out), blocks[static_cast<std::size_t>(k - 1)].matrix());
  }
  const auto both = run_cli({"catalog"});
  EXPECT_NE(both.out.find("# block 2"), std::string::npos);
}

TEST(Cli, HajosOutputs) {
  const auto r = run_cli({"--format", "text", "hajos", "--matrix", "2 0 0; 1 2 0; 1 1 2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_matrix(r.out), (IntMatrix{{2, 0, 0}, {1, 2, 0}, {1, 1, 2}}));
  const auto j = Json::parse(run_cli({"hajos", "--matrix", "2"}).out);
  EXPECT_EQ(j["det"], 2);
  EXPECT_EQ(j["hajos_basis"], Json::parse("[[2]]"));
  EXPECT_EQ(j["row_order"], Json::parse("[1]"));
  EXPECT_EQ(run_cli({"hajos", "--matrix", "1 0; 0 4"}).code, 1);
  EXPECT_EQ(run_cli({"hajos", "--matrix", "3"}).code, 2);
}

TEST(Cli, ClassifyJson) {
  const auto r = run_cli({"classify", "--matrix", "1 0 0 0; 0 2 0 0; 0 0 1 1; 0 0 1 -1"});
  EXPECT_EQ(r.code, 0);
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j["blocks"].size(), 3u);
  EXPECT_EQ(j["blocks"][0]["kind"], "Unit");
  EXPECT_EQ(j["blocks"][1]["kind"], "TwoTimes");
  EXPECT_EQ(j["blocks"][2]["kind"], "Hyper2x2");
  EXPECT_EQ(j["blocks"][2]["coordinates"], Json::parse("[3,4]"));
  // Block matrices re-parse through the text format.
  const IntMatrix hyper = IntMatrix::from_rows(j["blocks"][2]["matrix"].get<std::vector<Vector>>());
  EXPECT_EQ(parse_matrix(format_matrix(hyper)), hyper);
  EXPECT_EQ(j["verdict"]["status"], "Cubiquitous");
  EXPECT_EQ(run_cli({"classify", "--matrix", "3 0; 0 1"}).code, 1);
  EXPECT_EQ(run_cli({"classify", "--matrix", "1 1; 1 0"}).code, 65);
}

TEST(Cli, ReduceLines) {
  const auto r = run_cli({"reduce", "--matrix", "1 1 0 0; 1 -1 0 0; 0 0 2 0; 0 0 0 1"});
  EXPECT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(Json::parse(ls[0])["kind"], "Projection");
  EXPECT_EQ(Json::parse(ls[2])["kind"], "DoubleProjection");
  EXPECT_EQ(ls[3], "{\"steps\":3,\"dim\":0,\"result\":[]}");
}

TEST(Cli, Contract) {
  // Columns e1+e2, -e1+e3, e1-e2-e3.
  const std::string m = "1 -1 1; 1 0 -1; 0 1 -1";
  const auto sites = lines(run_cli({"contract", "--matrix", m}).out);
  EXPECT_NE(std::find(sites.begin(), sites.end(), "{\"coordinate\":1,\"s\":1,\"t\":2,\"u\":3}"), sites.end());
  const auto r = run_cli({"contract", "--matrix", m, "--site", "1", "1", "2", "3"});
  EXPECT_EQ(r.code, 0);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(Json::parse(ls[0])["result"], Json::parse("[[1,1],[-1,-1]]"));
  const auto summary = Json::parse(ls[1]);
  EXPECT_EQ(summary["W_before"], Json::parse("[1,0,0]"));
  EXPECT_EQ(summary["W_after"], Json::parse("[0,0]"));
  EXPECT_EQ(summary["wu_preserved"], true);
  EXPECT_EQ(run_cli({"contract", "--matrix", m, "--site", "1", "1", "1", "3"}).code, 65);
  EXPECT_EQ(run_cli({"contract", "--matrix", m, "--site", "0", "1", "2", "3"}).code, 64);
}

TEST(Cli, Det4) {
  EXPECT_EQ(run_cli({"det4", "1", "1", "1", "1"}).out, "-16\n");
  EXPECT_EQ(run_cli({"--format", "json", "det4", "3", "3", "3", "3"}).out, "{\"det\":0}\n");
  const auto table = lines(run_cli({"det4", "--zeros", "--bound", "10"}).out);
  ASSERT_FALSE(table.empty());
  EXPECT_EQ(table[0], "a,b,c,d");
  EXPECT_EQ(table.size(), det4_zero_solutions(10).size() + 1);
  EXPECT_NE(std::find(table.begin(), table.end(), "1,4,4,9"), table.end());
}

TEST(Cli, Stats) {
  const auto j = Json::parse(run_cli({"stats", "--matrix", "1 1; 1 -1"}).out);
  EXPECT_EQ(j["p"], Json::parse("[0,0,2]"));
  EXPECT_EQ(j["I"], -2);
  EXPECT_EQ(j["E"], Json::parse("[[1,2],[1,2]]"));
  EXPECT_EQ(j["orthogonal"], true);
}
