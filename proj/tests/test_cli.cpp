#include <gtest/gtest.h>

#include <sstream>

#include "wdisp/cli/app.hpp"

using namespace wdisp;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args, const std::string& input = "") {
  std::ostringstream out, err;
  std::istringstream in(input);
  int code = cli::run(args, out, err, in);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, WittAdd) {
  auto r = invoke({"witt", "add", "--p", "2", "--len", "2", "--ring", "Z", "--x", "[1,0]", "--y", "[1,0]", "--format", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[2, -1]\n");
  auto j = Json::parse(invoke({"witt", "add", "--p", "2", "--ring", "Z", "--x", "[1,0]", "--y", "[1,0]"}).out);
  EXPECT_EQ(j["components"][1]["terms"][0]["coefficient"], "-1");
}

TEST(Cli, DisplayPointFromExample) {
  auto ex = invoke({"display", "example", "lubin-tate-h3"});
  ASSERT_EQ(ex.code, 0);
  auto r = invoke({"display", "point", "--format", "text"}, ex.out);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "[1 : u2 : u1]\n");
}

TEST(Cli, PeriodSections) {
  auto r = invoke({"period", "sections", "--h", "2", "--order", "2", "--p", "3", "--format", "text"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "A = [[1, 0], [u1, 1]]\n");
}

TEST(Cli, DisplayDocumentsRoundTrip) {
  for (const auto& name : example_names()) {
    auto ex = invoke({"display", "example", name});
    ASSERT_EQ(ex.code, 0) << name;
    auto inst = display_from_json(Json::parse(ex.out));
    EXPECT_EQ(display_to_json(inst.witt, inst.display).dump(2) + "\n", ex.out) << name;
  }
}

TEST(Cli, DisplayNewAndChange) {
  auto d = invoke({"display", "new", "--p", "3", "--h", "2", "--ring", "GF(9)", "--len", "2", "--matrix", "[[0,1],[1,\"z\"]]"});
  ASSERT_EQ(d.code, 0) << d.err;
  auto c = invoke({"display", "change", "--change", "{\"e\": [[\"z\"]]}", "--format", "text"}, d.out);
  EXPECT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("factor = [[z]]"), std::string::npos) << c.out;
  auto bad = invoke({"display", "change", "--change", "{\"e\": [[0]]}"}, d.out);
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, DisplayLengthIsInferred) {
  auto bare = invoke({"display", "new", "--p", "3", "--h", "2", "--ring", "Z/9[u1]", "--matrix", "[[0,1],[1,\"u1\"]]"});
  ASSERT_EQ(bare.code, 0) << bare.err;
  EXPECT_EQ(Json::parse(bare.out)["N"], 2);
  auto listed = invoke({"display", "new", "--p", "3", "--h", "2", "--matrix", "[[0,[1,0,0]],[1,0]]"});
  ASSERT_EQ(listed.code, 0) << listed.err;
  EXPECT_EQ(Json::parse(listed.out)["N"], 3);
}

TEST(Cli, EtaleQueriesExitZero) {
  auto r = invoke({"deform", "etale", "--ring", "Z/4[u1]/(2,u1)^4", "--map", "u1^2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["etale"], false);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"witt", "frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"witt", "add", "--p", "2", "--x", "[1,"}).code, 2);
  EXPECT_EQ(invoke({"witt", "add", "--p", "2", "--ring", "W", "--x", "[1]", "--y", "[1]"}).code, 2);
  EXPECT_EQ(invoke({"witt", "invert", "--p", "3", "--ring", "Z/27", "--x", "[3,1]"}).code, 1);
  EXPECT_EQ(invoke({"witt", "add", "--p", "4", "--x", "[1]", "--y", "[1]"}).code, 1);
  EXPECT_EQ(invoke({"display", "point"}, "").code, 2);
  EXPECT_EQ(invoke({"display", "example", "nope"}).code, 1);
  EXPECT_EQ(invoke({"moduli", "present", "--h", "3"}).code, 1);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, FixturesAreDeterministic) {
  CliRunner runner = [](const std::vector<std::string>& args, const std::string& input) {
    auto r = invoke(args, input);
    return CliOutcome{r.code, r.out};
  };
  auto res = criterion_13(runner, false);
  EXPECT_TRUE(res.pass) << res.detail;
}
