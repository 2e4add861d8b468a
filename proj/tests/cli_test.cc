#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "prefhist/cli.h"
#include "prefhist/enumeration.h"
#include "prefhist/ranked_operator.h"

namespace prefhist::cli {
namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string builtin_text() {
  std::ostringstream s;
  write_operator_table(s, builtin_counterexample());
  return s.str();
}

TEST(CliTest, UpdateCanonical) {
  const auto r = call({"update", "--atoms", "2", "--ranking", "canonical", "p0", "p1"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "{3}\np0 & p1\n");
}

TEST(CliTest, UpdateWithSetLiterals) {
  const auto r = call({"update", "--universe", "2", "{0}", "{0,1}"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "{0}\n");
}

TEST(CliTest, UpdateGeneral) {
  const auto r = call({"update-general", "--atoms", "2", "p0", "!p0"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "{0,2}\n!p0\n");
}

TEST(CliTest, CounterexampleWritesTable) {
  const auto r = call({"counterexample"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, builtin_text());
}

TEST(CliTest, CheckVerdicts) {
  const auto nd = call({"check", "--theorem", "nd", "-"}, builtin_text());
  EXPECT_EQ(nd.code, kVerdictFalse);
  EXPECT_NE(nd.out.find("violation loop"), std::string::npos);
  const auto tight = call({"check", "--theorem", "suggested-tight", "-"}, builtin_text());
  EXPECT_EQ(tight.code, kOk);
  EXPECT_EQ(tight.out, "theorem suggested-tight: PASS\n");
  const auto wide = call({"check", "--theorem", "suggested-wide", "-"}, builtin_text());
  EXPECT_EQ(wide.code, kVerdictFalse);
  EXPECT_NE(wide.out.find("left-loop"), std::string::npos);
  EXPECT_EQ(call({"check", "--theorem", "2d-wide", "-"}, builtin_text()).code, kInputError);
}

TEST(CliTest, OracleAndSynthesize) {
  EXPECT_EQ(call({"oracle", "-"}, builtin_text()).out, "representable: no\n");
  EXPECT_EQ(call({"oracle", "-"}, builtin_text()).code, kVerdictFalse);
  EXPECT_EQ(call({"synthesize", "-"}, builtin_text()).code, kVerdictFalse);

  std::ostringstream table;
  write_operator_table(table, table_from_ranking(FixedRanking::canonical(3, Universe::abstract(2))));
  EXPECT_EQ(call({"oracle", "-"}, table.str()).code, kOk);
  const auto synth = call({"synthesize", "-"}, table.str());
  ASSERT_EQ(synth.code, kOk);
  std::istringstream ranking(synth.out);
  EXPECT_EQ(table_from_ranking(read_fixed_ranking(ranking)),
            table_from_ranking(FixedRanking::canonical(3, Universe::abstract(2))));
}

TEST(CliTest, PostulatesPrintsSeedAndIsDeterministic) {
  const auto a = call({"postulates", "--ranking", "random", "--seed", "12"});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out.rfind("seed=12\n", 0), 0u);
  EXPECT_EQ(a.out, call({"postulates", "--ranking", "random", "--seed", "12"}).out);
  EXPECT_EQ(call({"postulates", "--ranking", "random"}).out.rfind("seed=0\n", 0), 0u);
}

TEST(CliTest, SweepSummaryAndFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "prefhist_cli_sweep";
  std::filesystem::remove_all(dir);
  const auto r = call({"sweep", "--n", "3", "--universe", "2", "--conditions", "suggested-tight", "--cap", "2",
                       "--out-dir", dir.string()});
  EXPECT_EQ(r.code, kVerdictFalse);
  EXPECT_NE(r.out.find("examined=19683 "), std::string::npos);
  ASSERT_TRUE(std::filesystem::exists(dir / "counterexample-0.table"));
  std::ifstream in(dir / "counterexample-0.table");
  EXPECT_NO_THROW(read_operator_table(in));
  std::filesystem::remove_all(dir);
}

TEST(CliTest, InputErrors) {
  EXPECT_EQ(call({}).code, kInputError);
  EXPECT_EQ(call({"bogus"}).code, kInputError);
  EXPECT_EQ(call({"update", "--atoms", "2", "p0 &"}).code, kInputError);
  EXPECT_EQ(call({"update", "--atoms", "2", "p0 & !p0"}).code, kInputError);
  EXPECT_EQ(call({"update", "p0"}).code, kInputError);
  EXPECT_EQ(call({"check", "/nonexistent/table"}).code, kInputError);
  EXPECT_EQ(call({"check", "-"}, "n=1 universe=2\n{0} => {0}\n").code, kInputError);
  const auto bad = call({"update-general", "--ranking", "-", "p0"},
                        "universe=2 maxlen=2\nh: 0 => 5\nh: 1 => 5\nh: 0 1 => 0\nh: 1 0 => 9\n"
                        "h: 0 0 => 9\nh: 1 1 => 9\n");
  EXPECT_EQ(bad.code, kInputError);
  EXPECT_NE(bad.err.find("strictly below"), std::string::npos);
}

}  // namespace
}  // namespace prefhist::cli
