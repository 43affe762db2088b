#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gbm/harness.hpp"

using namespace gbm;
using namespace gbm::harness;
using json = nlohmann::ordered_json;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
  json j() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "gbmlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string before_timestamp(const std::string& s) { return s.substr(0, s.find("\"timestamp\"")); }

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(VerifyClosed, Sphere) {
  const CliRun r = run({"verify-closed", "--metric", "sphere", "--radius", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.j();
  EXPECT_NEAR(j["summary"]["total"].get<double>(), 2.0, 1e-6);
  EXPECT_EQ(j["verdict"], "match");
  EXPECT_EQ(j["command"], "verify-closed");
  EXPECT_EQ(j["config_echo"]["params"]["radius"], 1.0);
}

TEST(VerifyClosed, FlatTorusAndModelAlias) {
  const CliRun r = run({"verify-closed", "--model", "flat-torus"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.j()["summary"]["total"].get<double>(), 0.0, 1e-12);
}

TEST(VerifyClosed, UnknownOrOpenMetricIsAUsageError) {
  EXPECT_EQ(run({"verify-closed", "--metric", "klein-bottle"}).code, 1);
  EXPECT_EQ(run({"verify-closed", "--metric", "half-plane"}).code, 1);
  EXPECT_EQ(run({"verify-closed"}).code, 1);
}

TEST(VerifyClosed, StarvedQuadratureExitsInconclusive) {
  const CliRun r = run({"verify-closed", "--metric", "sphere", "--order", "2", "--tol", "1e-14"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.j()["verdict"], "inconclusive");
}

TEST(Polygon, Breakdowns) {
  struct Case {
    const char* name;
    double interior, edges, corners;
  };
  for (const Case& c : {Case{"square", 0, 0, 1}, Case{"spherical-triangle", 0.25, 0, 0.75},
                        Case{"hyperbolic-pentagon", -0.25, 0, 1.25}}) {
    const CliRun r = run({"polygon", "--polygon", c.name});
    ASSERT_EQ(r.code, 0) << c.name << r.err;
    const json s = r.j()["summary"];
    EXPECT_NEAR(s["interior"].get<double>(), c.interior, 1e-7) << c.name;
    EXPECT_NEAR(s["edges"].get<double>(), c.edges, 1e-7) << c.name;
    EXPECT_NEAR(s["corners"].get<double>(), c.corners, 1e-9) << c.name;
    EXPECT_NEAR(s["total"].get<double>(), 1.0, 1e-6) << c.name;
  }
  EXPECT_EQ(run({"polygon", "--polygon", "heptagon"}).code, 1);
}

TEST(Chi, Examples) {
  EXPECT_EQ(run({"chi", "--family", "punctured", "--g", "2"}).j()["rows"][0]["value"], "1/120");
  EXPECT_EQ(run({"chi", "--family", "sp", "--n", "2"}).j()["rows"][0]["value"], "-1/1440");
  EXPECT_EQ(run({"chi", "--family", "closed", "--g", "2"}).j()["rows"][0]["value"], "-1/240");
  const CliRun r = run({"chi", "--family", "zeta", "--g", "1", "--upto", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["verdict"], "success");
  ASSERT_EQ(r.j()["rows"].size(), 3u);
  EXPECT_EQ(r.j()["rows"][2]["value"], "-1/252");
}

TEST(Chi, ExpectAndRangeErrors) {
  EXPECT_EQ(run({"chi", "--family", "sp", "--n", "1", "--expect=-1/12"}).code, 0);
  EXPECT_EQ(run({"chi", "--family", "sp", "--n", "1", "--expect", "1/12"}).code, 2);
  EXPECT_NE(run({"chi", "--family", "punctured", "--g", "1"}).code, 0);
  EXPECT_EQ(run({"chi", "--family", "octonion", "--g", "2"}).code, 1);
}

TEST(Exhaust, ModularCurveFinalRowCarriesTheVerdict) {
  const CliRun r = run({"exhaust", "--model", "modular-curve", "--index", "12", "--cutoffs", "2,5,10,20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rows = r.j()["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[0]["verdict"].is_null());
  EXPECT_EQ(rows[3]["verdict"], "match");
  EXPECT_EQ(rows[3]["nearest"], -2);
  EXPECT_EQ(rows[1]["eps"], 0.2);
  EXPECT_EQ(r.j()["summary"]["expected_chi"], "-2/1");
}

TEST(Exhaust, ClosedModelGivesConstantTable) {
  const CliRun r = run({"exhaust", "--model", "flat-torus", "--eps", "0.5,0.1,0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : r.j()["rows"]) EXPECT_EQ(row["integral"], r.j()["rows"][0]["integral"]);
}

TEST(Exhaust, UsageErrors) {
  EXPECT_EQ(run({"exhaust", "--model", "thin-strip"}).code, 1);
  EXPECT_EQ(run({"exhaust", "--model", "thin-strip", "--eps", "0.1", "--cutoffs", "1"}).code, 1);
  EXPECT_EQ(run({"exhaust", "--model", "thin-strip", "--eps", "0.1,0.2"}).code, 1);
  EXPECT_EQ(run({"exhaust", "--model", "punctured-torus", "--eps", "1,0.5"}).code, 1);
  EXPECT_EQ(run({"exhaust", "--model", "thin-strip", "--eps", "abc"}).code, 1);
}

TEST(ModelCheck, AllChecksPass) {
  const CliRun r = run({"model-check"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = r.j();
  EXPECT_EQ(j["verdict"], "match");
  EXPECT_GE(j["rows"].size(), 10u);
  for (const auto& row : j["rows"]) EXPECT_TRUE(row["pass"].get<bool>()) << row.dump();
  EXPECT_EQ(run({"model-check", "--model", "modular-curve"}).code, 1);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code(Verdict::match), 0);
  EXPECT_EQ(exit_code(Verdict::mismatch), 2);
  EXPECT_EQ(exit_code(Verdict::inconclusive), 3);
  EXPECT_EQ(exit_code(Errc::model_consistency), 4);
  EXPECT_EQ(exit_code(Errc::inconsistency), 3);
  EXPECT_EQ(exit_code(Errc::configuration), 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"chi", "--format", "yaml"}).code, 1);
  EXPECT_EQ(run({"chi", "--help"}).code, 0);
}

TEST(Config, FileValuesSitUnderFlags) {
  const auto cfg = temp_file("gbm_exhaust.cfg", "# modular model\nmodel = modular-curve\ncutoffs = 2,5,10,20\norder = 10\n");
  const CliRun a = run({"exhaust", "--config", cfg.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.j()["rows"].size(), 4u);
  EXPECT_EQ(a.j()["config_echo"]["order"], 10);
  const CliRun b = run({"exhaust", "--config", cfg.string(), "--cutoffs", "10,20"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(b.j()["rows"].size(), 2u);
  EXPECT_EQ(b.j()["config_echo"]["target"], "modular-curve");
  // the same run spelled out on the command line
  const CliRun c = run({"exhaust", "--model", "modular-curve", "--cutoffs", "2,5,10,20", "--order", "10"});
  EXPECT_EQ(before_timestamp(a.out), before_timestamp(c.out));
}

TEST(Config, SectionNamedAfterTheCommandIsAccepted) {
  const auto cfg = temp_file("gbm_section.cfg", "[chi]\nfamily = closed\ng = 2\n");
  const CliRun r = run({"chi", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.j()["rows"][0]["value"], "-1/240");
  EXPECT_EQ(run({"polygon", "--config", cfg.string()}).code, 1);
}

TEST(Config, UnknownKeysAndMissingFilesAreUsageErrors) {
  EXPECT_EQ(run({"chi", "--config", temp_file("gbm_bad.cfg", "colour = blue\n").string()}).code, 1);
  EXPECT_EQ(run({"chi", "--config", "/nonexistent/gbm.cfg"}).code, 1);
}

TEST(Output, CsvMirrorsRows) {
  const CliRun j = run({"model-check"});
  const CliRun c = run({"model-check", "--format", "csv"});
  ASSERT_EQ(c.code, 0);
  std::istringstream in(c.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), j.j()["rows"].size() + 1);
  EXPECT_EQ(lines[0], "check,parameter,value,expected,tolerance,pass");
  EXPECT_EQ(c.out.find("timestamp"), std::string::npos);
  // commas inside a field are quoted
  EXPECT_NE(c.out.find("\"200 triples, depth 12\""), std::string::npos);
}

TEST(Output, OutFlagWritesTheFile) {
  const auto path = std::filesystem::temp_directory_path() / "gbm_out.json";
  std::filesystem::remove(path);
  const CliRun r = run({"chi", "--family", "sp", "--n", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json j = json::parse(in);
  EXPECT_EQ(j["rows"][0]["value"], "-1/1440");
}

TEST(OutputProperties, ReRunsAreByteIdenticalBeforeTheTimestamp) {
  const std::vector<std::vector<std::string>> commands{
      {"verify-closed", "--metric", "sphere"},
      {"polygon", "--polygon", "spherical-triangle"},
      {"exhaust", "--model", "thin-strip", "--cutoffs", "1,2,4"},
      {"chi", "--family", "bernoulli", "--n", "0", "--upto", "12"},
      {"model-check", "--seed", "9"},
  };
  for (const auto& cmd : commands) {
    const CliRun a = run(cmd), b = run(cmd);
    ASSERT_EQ(a.code, 0) << cmd[0] << a.err;
    EXPECT_EQ(before_timestamp(a.out), before_timestamp(b.out)) << cmd[0];
    const json j = a.j();
    EXPECT_EQ(j.back().type(), json::value_t::object);
    EXPECT_EQ(std::prev(j.end()).key(), "timestamp");
    EXPECT_TRUE(j["timestamp"].contains("runtime_ms"));
  }
}
