#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

using Json = nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = tbt::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  const Result r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(Json::parse(doc.dump()), doc);
  return doc;
}

TEST(Cli, KraftGamma) {
  const Json doc = run_json({"kraft", "gamma", "--c", "2", "--d", "3", "--minimal"});
  EXPECT_EQ(doc, (Json{{"gamma1", 6}, {"dim_orbit1", 19}}));
  EXPECT_EQ(run_json({"kraft", "gamma", "--blocks", "1/1"})["gamma1"], 1);
  EXPECT_EQ(run_json({"kraft", "gamma", "--c", "1", "--pi", "1,2"})["gamma1"], 0);
}

TEST(Cli, KraftDatum) {
  const Json doc = run_json({"kraft", "datum", "--blocks", "2/1,1/1"});
  EXPECT_EQ(doc["cycle_lcm"], 6);
  EXPECT_EQ(doc["datum"]["r"], 5);
  EXPECT_EQ(doc["j_minus"].size(), doc["gamma1"].get<std::size_t>());
}

TEST(Cli, Traverso) {
  EXPECT_EQ(run_json({"traverso", "--blocks", "2/1,1/1"}), (Json{{"codim", 1}, {"s_D", 5}, {"level", 2}}));
}

TEST(Cli, OrbitStabilizer) {
  const Json doc = run_json({"orbit", "--p", "2", "--n", "1", "--m", "1", "--c", "1", "--d", "1", "--base",
                             "minimal", "--seed", "identity"});
  EXPECT_EQ(doc["orbit_size"].get<std::uint64_t>() * doc["stabilizer_count"].get<std::uint64_t>(), 4u);
  const Json enumerated = run_json({"orbit", "--p", "2", "--m", "2", "--c", "1", "--d", "1", "--base",
                                    "ordinary", "--stabilizer", "enumerate"});
  EXPECT_EQ(enumerated["orbit_size"].get<std::uint64_t>() * enumerated["stabilizer_count"].get<std::uint64_t>(),
            enumerated["group_order"].get<std::uint64_t>());
}

TEST(Cli, TruncationFileRoundTrip) {
  const std::string path = ::testing::TempDir() + "tbt_cli_truncation.json";
  const Result first = run({"--out", path, "truncation", "--p", "3", "--m", "3", "--c", "1", "--d", "2"});
  ASSERT_EQ(first.code, 0) << first.err;
  std::ifstream in(path);
  const Json doc = Json::parse(in);
  EXPECT_EQ(doc["newton_polygon"]["slopes"], (Json{"2/3"}));

  const std::string trunc_path = ::testing::TempDir() + "tbt_cli_truncation_only.json";
  std::ofstream(trunc_path) << doc["truncation"].dump();
  const Json again = run_json({"truncation", "--file", trunc_path});
  EXPECT_EQ(again["truncation"], doc["truncation"]);
  EXPECT_EQ(again["A"], doc["A"]);
  std::remove(path.c_str());
  std::remove(trunc_path.c_str());
}

TEST(Cli, TruncationReportsUncertainCoefficients) {
  const Json doc = run_json({"truncation", "--p", "3", "--m", "2", "--c", "1", "--d", "2"});
  EXPECT_TRUE(doc["newton_polygon"].is_null());
  EXPECT_EQ(doc["uncertain"], (Json{1, 2, 3}));
}

TEST(Cli, AutAndFit) {
  const Json doc = run_json({"aut", "--p", "2", "--c", "1", "--d", "1", "--chi", "--fit-degrees", "1,3"});
  EXPECT_EQ(doc["aut_count"], 2);
  EXPECT_EQ(doc["fit"]["estimate"], 1);
  EXPECT_TRUE(doc["fit"]["reliable"]);
}

TEST(Cli, LevelExperiment) {
  const Json doc = run_json({"level-exp", "--p", "2", "--m", "2"});
  EXPECT_EQ(doc["violations"], 0);
  EXPECT_EQ(doc["minimal_separating_level"], 1);
}

TEST(Cli, CsvFormat) {
  const Result r = run({"--format", "csv", "traverso", "--blocks", "1/1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "codim,level,s_D");
}

TEST(Cli, Verify) {
  const Result r = run({"verify", "--only", "1,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_TRUE(doc["passed"]);
  EXPECT_EQ(doc["criteria"].size(), 2u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"kraft", "gamma", "--c", "2", "--d", "4", "--minimal"}).code, tbt::cli::kDomain);
  EXPECT_EQ(run({"traverso", "--blocks", "2-1"}).code, tbt::cli::kDomain);
  EXPECT_EQ(run({"frobnicate"}).code, tbt::cli::kDomain);
  EXPECT_EQ(run({"--budget", "3", "orbit", "--p", "3", "--m", "2", "--c", "1", "--d", "1"}).code,
            tbt::cli::kBudget);
  EXPECT_EQ(run({"orbit", "--seed", "/nonexistent/g.json"}).code, tbt::cli::kDomain);
  EXPECT_EQ(run({"--help"}).code, tbt::cli::kOk);
}

}  // namespace
