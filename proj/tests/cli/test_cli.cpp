#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "lclt/harness.hpp"

using lclt::cli::run_cli;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

std::string line_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l.rfind(key + ": ", 0) == 0) return l.substr(key.size() + 2);
  }
  return {};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lclt_cli_" + name);
}

}  // namespace

TEST(Pmf1d, ExactQuarter) {
  const CliRun r = run({"pmf1d", "--n", "4", "--x", "2", "--method", "exact"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "value: 1/4")) << r.out;
  EXPECT_TRUE(has_line(r.out, "linear: 0.25")) << r.out;
}

TEST(Pmf1d, ParityNoteAndZero) {
  const CliRun r = run({"pmf1d", "--n", "4", "--x", "3", "--method", "exact"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "value: 0"));
  EXPECT_NE(line_value(r.out, "note").find("parity"), std::string::npos);
}

TEST(Pmf1d, EstimatorWithBand) {
  const CliRun r = run({"pmf1d", "--n", "1000000", "--x", "1000", "--method", "lclt"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_value(r.out, "regime"), "Sublinear");
  const double band = std::stod(line_value(r.out, "error_band"));
  EXPECT_GT(band, 0.0);
  EXPECT_LT(band, 1e-5);

  const CliRun j = run({"pmf1d", "--n", "100", "--x", "10", "--method", "lclt-trunc", "--terms", "3",
                     "--format", "json"});
  EXPECT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc.at("method"), "lclt-trunc");
  EXPECT_TRUE(doc.contains("log"));
}

TEST(Pmf1d, NearBoundaryReportsInterval) {
  const CliRun r = run({"pmf1d", "--n", "10000", "--x", "9990", "--method", "lclt"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_value(r.out, "regime"), "NearBoundary");
  EXPECT_FALSE(line_value(r.out, "log_lower").empty()) << r.out;
}

TEST(Pmf2d, ExactQuarter) {
  const CliRun r = run({"pmf2d", "--n", "2", "--x", "0", "--y", "0", "--method", "exact"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(has_line(r.out, "value: 1/4")) << r.out;
}

TEST(Pmf2d, RegularAndRegimeError) {
  const CliRun ok = run({"pmf2d", "--n", "10000", "--x", "30", "--y", "40", "--method", "regular"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(line_value(ok.out, "regime"), "Regular");

  const CliRun bad = run({"pmf2d", "--n", "10000", "--x", "0", "--y", "3000", "--method", "regular"});
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.err.find("OutOfTheoremRange"), std::string::npos);
}

TEST(Pmf2d, IrregularPrintsExponentOnly) {
  const CliRun r = run({"pmf2d", "--n", "10000", "--x", "0", "--y", "3000", "--method", "irregular",
                     "--allow-out-of-guarantee"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(line_value(r.out, "contract"), "log-asymptotic");
  EXPECT_FALSE(line_value(r.out, "exponent").empty());
  EXPECT_TRUE(line_value(r.out, "linear").empty());
  EXPECT_EQ(line_value(r.out, "out_of_guarantee"), "true");
}

TEST(Budget, RationalModeRefusesLargeN) {
  EXPECT_EQ(run({"pmf1d", "--n", "3000", "--x", "2", "--precision", "rational"}).code, 3);
  EXPECT_EQ(run({"pmf2d", "--n", "30", "--x", "2", "--y", "0", "--precision", "rational"}).code, 3);
  EXPECT_EQ(run({"pmf2d", "--n", "30", "--x", "2", "--y", "0", "--precision", "log"}).code, 0);
}

TEST(Usage, InvalidFlags) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"pmf1d", "--n", "4"}).code, 2);
  EXPECT_EQ(run({"pmf1d", "--n", "4", "--x", "2", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"pmf1d", "--n", "4", "--x", "9"}).code, 2);
  EXPECT_EQ(run({"identities", "--which", "all", "--grid", "1:10"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Identities, PassAndReport) {
  const CliRun t = run({"identities", "--which", "taylor"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out.rfind("taylor: pass", 0), 0u) << t.out;
  EXPECT_EQ(run({"identities", "--which", "stirling", "--grid", "1:2000"}).code, 0);
  EXPECT_EQ(run({"identities", "--which", "beta", "--grid", "n<=500"}).code, 0);
  EXPECT_EQ(run({"identities", "--which", "gaussian-tail", "--grid", "2,5,1e8"}).code, 0);
}

TEST(Identities, FailureMapsToExitOne) {
  std::ostringstream out;
  const int code = lclt::cli::report_identities(
      {{"stirling", true, "ok"}, {"synthetic", false, "1 violation"}}, out);
  EXPECT_EQ(code, 1);
  EXPECT_TRUE(has_line(out.str(), "synthetic: FAIL (1 violation)"));
  std::ostringstream none;
  EXPECT_EQ(lclt::cli::report_identities({}, none), 0);
}

TEST(Sweep, InlineCsvIsByteStable) {
  const std::vector<std::string> args = {"sweep", "--dim", "1", "--profile", "x=n^0.6", "--ns",
                                         "4096:65536:x2", "--estimators", "lclt,lawler-limic"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind(lclt::harness::kCsvHeader, 0), 0u);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 1 + 5 * 2);
}

TEST(Sweep, PlanFileAndMalformedPlan) {
  const auto plan = temp_path("plan.json");
  const auto sink = temp_path("plan_out.json");
  std::ofstream(plan) << R"({"dim": 2, "ns": [100, 400], "profile": "x=0,y=0",
                          "estimators": ["regular"], "sink": ")" << sink.string() << R"("})";
  const CliRun r = run({"sweep", "--plan", plan.string(), "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::ifstream in(sink);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.size(), 2u);

  std::ofstream(plan) << R"({"dim": 1, "ns": [100], "profile": "x=0", "estimators": ["warp"]})";
  const CliRun bad = run({"sweep", "--plan", plan.string()});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("estimators"), std::string::npos) << bad.err;
  std::filesystem::remove(plan);
  std::filesystem::remove(sink);
}

TEST(Io, UnwritableOrMissingFiles) {
  EXPECT_EQ(run({"sweep", "--plan", "/nonexistent/plan.json"}).code, 5);
  EXPECT_EQ(run({"sweep", "--dim", "1", "--profile", "x=0", "--ns", "10", "--estimators", "lclt",
                 "--out", "/nonexistent/dir/out.csv"})
                .code,
            5);
  EXPECT_EQ(run({"anisotropy", "--n", "1000", "--r-grid", "10", "--out", "/nonexistent/a.csv"}).code, 5);
}

TEST(Anisotropy, AutoGridAndSummary) {
  const CliRun r = run({"anisotropy", "--n", "10000", "--r-grid", "auto"});
  EXPECT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("n,r,axis_x,axis_y,diag_x,diag_y,", 0), 0u);
  std::vector<std::string> radii;
  for (std::string l; std::getline(in, l);) {
    if (l.empty() || l[0] == '#') continue;
    const auto a = l.find(',');
    radii.push_back(l.substr(a + 1, l.find(',', a + 1) - a - 1));
  }
  EXPECT_EQ(radii, (std::vector<std::string>{"100", "630", "1000", "1584", "2511"}));
  EXPECT_TRUE(has_line(r.out, "# largest r with |log ratio| < 0.5: 1000")) << r.out;
  EXPECT_TRUE(has_line(r.out, "# smallest r with |log ratio| > 1: 1584")) << r.out;
}
