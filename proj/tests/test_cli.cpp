#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "table_io.hpp"

namespace {

using prwpv::cli::run;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in) << path;
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string golden(const std::string& name) { return slurp(std::string(PRWPV_GOLDEN_DIR) + "/" + name); }
std::string fixture(const std::string& name) { return std::string(PRWPV_FIXTURE_DIR) + "/" + name; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

}  // namespace

TEST(Compare, DefaultMatchesGolden) {
  const auto r = invoke({"compare"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("compare_default.csv"));
}

// The reference table was produced with a raw ceiling on an accumulated grid,
// which puts its 0.0500 row on the k = 6 step. The snapped ceiling keeps
// 100 * 0.05 on k = 5, so that one row's PRW and Bentkus entries differ.
TEST(Compare, DefaultAgreesWithReferenceTableOffTheIntegerRow) {
  const auto got = csv_rows(invoke({"compare"}).out);
  const auto want = csv_rows(slurp(fixture("table1.csv")));
  ASSERT_EQ(got.size(), 46u);
  ASSERT_EQ(want.size(), 46u);
  EXPECT_EQ(got[0], want[0]);
  int mismatched = 0;
  for (std::size_t i = 1; i < got.size(); ++i) {
    if (want[i][0] == "0.0500") {
      EXPECT_EQ(got[i], (std::vector<std::string>{"0.0500", "0.1094", "0.1881", "0.1565"}));
      EXPECT_EQ(want[i], (std::vector<std::string>{"0.0500", "0.2753", "0.1881", "0.3185"}));
      continue;
    }
    if (got[i] != want[i]) ++mismatched;
    EXPECT_EQ(got[i], want[i]) << "row " << i;
  }
  EXPECT_EQ(mismatched, 0);
}

TEST(Compare, SpotRow) {
  const auto rows = csv_rows(invoke({"compare"}).out);
  bool found = false;
  for (const auto& row : rows) {
    if (row[0] == "0.0379") {
      EXPECT_EQ(row, (std::vector<std::string>{"0.0379", "0.0379", "0.0643", "0.0645"}));
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Compare, SmallCaseGolden) {
  const auto r = invoke({"compare", "--grid", "0:0.001:0.002", "--n", "10", "--alpha", "0.5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("compare_n10_alpha05.csv"));
}

TEST(Compare, ZeroDigitsGivesZeroOrOne) {
  const auto rows = csv_rows(invoke({"compare", "--digits", "0"}).out);
  ASSERT_EQ(rows.size(), 46u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (const auto& cell : rows[i]) EXPECT_TRUE(cell == "0" || cell == "1") << cell;
  }
}

TEST(Compare, DigitsFromEnvironment) {
  ::setenv("PRWPV_DIGITS", "2", 1);
  const auto rows = csv_rows(invoke({"compare", "--grid", "0.0379:1:0.0379"}).out);
  ::unsetenv("PRWPV_DIGITS");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1], (std::vector<std::string>{"0.04", "0.04", "0.06", "0.06"}));
}

TEST(Compare, Json) {
  const auto r = invoke({"compare", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["command"], "compare");
  EXPECT_EQ(doc["n"], 100);
  ASSERT_EQ(doc["rows"].size(), 45u);
  EXPECT_DOUBLE_EQ(doc["rows"][25]["hoeffding_tight"].get<double>(), 0.0643);
}

TEST(Compare, BadGridIsUsageError) {
  for (const char* grid : {"0:0:1", "0.5:0.1:0.1", "abc", "0:0.1:1.5"}) {
    const auto r = invoke({"compare", "--grid", grid});
    EXPECT_EQ(r.code, 2) << grid;
    EXPECT_NE(r.err.find("error"), std::string::npos) << grid;
  }
}

TEST(Pvalue, Rhat) {
  const auto r = invoke({"pvalue", "--rhat", "0.05", "--n", "100", "--alpha", "0.1", "--method", "all"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "rhat,n,alpha,prw,hoeffding_tight,bentkus\n0.05,100,0.1,0.1094,0.1881,0.1565\n");
}

TEST(Pvalue, AllZeroLosses) {
  const auto r = invoke({"pvalue", "--losses", fixture("losses_zero.csv"), "--alpha", "0.1"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][1], "100");
  EXPECT_EQ(rows[1][3], "0.0000");
}

TEST(Pvalue, CrlfAndBomAccepted) {
  const auto path = write_temp("crlf.csv", "\xEF\xBB\xBFloss\r\n0.25\r\n0.75\r\n\r\n");
  const auto r = invoke({"pvalue", "--losses", path, "--alpha", "0.6", "--method", "prw",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["n"], 2);
  EXPECT_DOUBLE_EQ(doc["rhat"].get<double>(), 0.5);
  EXPECT_TRUE(doc["pvalues"].contains("prw"));
}

TEST(Pvalue, LossOutOfRangeCitesRow) {
  const auto r = invoke({"pvalue", "--losses", fixture("losses_out_of_range.csv"), "--alpha", "0.1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("row 3"), std::string::npos) << r.err;
}

TEST(Pvalue, MalformedInput) {
  EXPECT_EQ(invoke({"pvalue", "--losses", write_temp("hdr.csv", "value\n0.1\n"), "--alpha", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--losses", write_temp("nan.csv", "loss\n0.1\nx\n"), "--alpha", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--losses", write_temp("empty.csv", "loss\n"), "--alpha", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--losses", "/nonexistent/losses.csv", "--alpha", "0.1"}).code, 2);
}

TEST(Pvalue, FlagErrors) {
  EXPECT_EQ(invoke({"pvalue", "--rhat", "0.05", "--n", "100", "--alpha", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--rhat", "0.05", "--n", "100"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--rhat", "0.05", "--alpha", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--rhat", "1.2", "--n", "100", "--alpha", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--rhat", "0.05", "--n", "100", "--alpha", "0.1", "--method", "z"}).code, 2);
  EXPECT_EQ(invoke({"pvalue", "--rhat", "0.05", "--n", "100", "--alpha", "0.1", "--format", "xml"}).code, 2);
  const auto alpha = invoke({"pvalue", "--rhat", "0.05", "--n", "100", "--alpha", "1.5"});
  EXPECT_NE(alpha.err.find("--alpha"), std::string::npos) << alpha.err;
}

TEST(Pvalue, Unclamped) {
  const auto r = invoke({"pvalue", "--rhat", "0.09", "--n", "100", "--alpha", "0.1", "--method",
                         "prw", "--unclamped", "--digits", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(csv_rows(r.out)[1][3], "4.106741");
}

TEST(Plotdata, CappedFlagAndMonotoneColumns) {
  const auto r = invoke({"plotdata", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["gamma"], 10);
  EXPECT_DOUBLE_EQ(doc["t_max"].get<double>(), 0.09);
  const auto& rows = doc["rows"];
  ASSERT_EQ(rows.size(), 1001u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double rhat = rows[i]["rhat"].get<double>();
    EXPECT_EQ(rows[i]["capped"].get<bool>(), i > 90) << rhat;
    if (i == 0) continue;
    for (const char* col : {"prw", "hoeffding_tight", "bentkus"}) {
      EXPECT_GE(rows[i][col].get<double>(), rows[i - 1][col].get<double>()) << col << " " << rhat;
    }
  }
}

TEST(Plotdata, SingleObservationHasTwoSteps) {
  const auto rows = csv_rows(invoke({"plotdata", "--n", "1", "--alpha", "0.5", "--grid", "0:0.25:1"}).out);
  ASSERT_EQ(rows.size(), 6u);
  // gamma = 1, so the whole domain is the boundary point t = 0
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], "1");
  EXPECT_EQ(rows[1][4], "false");
  EXPECT_EQ(rows[2][4], "true");
}

TEST(Fwer, FixedSequenceGolden) {
  const auto r = invoke({"fwer", fixture("fwer_fixed_sequence.csv"), "--procedure", "fixed-sequence"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("fwer_fixed_sequence.csv"));
}

TEST(Fwer, FallbackGolden) {
  const auto r = invoke({"fwer", fixture("fwer_fallback.csv"), "--procedure", "fallback",
                         "--weights", "0.5,0.5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("fwer_fallback.csv"));
}

TEST(Fwer, BonferroniGolden) {
  const auto r = invoke({"fwer", fixture("fwer_bonferroni.csv"), "--procedure", "bonferroni"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, golden("fwer_bonferroni.csv"));
}

TEST(Fwer, Json) {
  const auto r = invoke({"fwer", fixture("fwer_fixed_sequence.csv"), "--procedure", "fixed-sequence",
                         "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["rejections"], 1);
  EXPECT_EQ(doc["hypotheses"][1]["rejected"], false);
}

TEST(Fwer, Errors) {
  EXPECT_EQ(invoke({"fwer", fixture("fwer_fallback.csv"), "--procedure", "fallback"}).code, 2);
  EXPECT_EQ(invoke({"fwer", fixture("fwer_fallback.csv"), "--procedure", "fallback", "--weights",
                    "0.5,0.4"}).code, 2);
  EXPECT_EQ(invoke({"fwer", fixture("fwer_fallback.csv"), "--procedure", "fallback", "--weights",
                    "1"}).code, 2);
  EXPECT_EQ(invoke({"fwer", fixture("fwer_fallback.csv"), "--procedure", "holm"}).code, 2);
  EXPECT_EQ(invoke({"fwer", fixture("fwer_fallback.csv")}).code, 2);
  EXPECT_EQ(invoke({"fwer", fixture("losses_zero.csv"), "--procedure", "bonferroni"}).code, 2);
}

TEST(Validate, PassesUnderNull) {
  const auto r = invoke({"validate", "--dist", "bernoulli:0.2", "--n", "50", "--alpha", "0.1",
                         "--method", "prw", "--reps", "100000", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][4], "true");
}

TEST(Validate, Deterministic) {
  const std::vector<std::string> args{"validate", "--dist", "beta:4:16", "--n", "20",
                                      "--reps", "5000", "--seed", "7", "--format", "json"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["reps"], 5000);
}

TEST(Validate, Errors) {
  const auto alt = invoke({"validate", "--dist", "bernoulli:0.05", "--n", "50", "--alpha", "0.1"});
  EXPECT_EQ(alt.code, 2);
  EXPECT_NE(alt.err.find("mean"), std::string::npos) << alt.err;
  EXPECT_EQ(invoke({"validate", "--dist", "bernoulli:0.2", "--reps", "0"}).code, 2);
  EXPECT_EQ(invoke({"validate", "--dist", "gauss:0:1"}).code, 2);
  EXPECT_EQ(invoke({"validate", "--dist", "beta:-1:2"}).code, 2);
  EXPECT_EQ(invoke({"validate"}).code, 2);
}

TEST(Usage, HelpAndUnknown) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"compare", "--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"compare", "--bogus"}).code, 2);
}

TEST(Binary, ExitCodesThroughTheShell) {
  const std::string exe = PRWPV_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(exe + " compare"), 0);
  EXPECT_EQ(status(exe + " pvalue --losses " + fixture("losses_out_of_range.csv") + " --alpha 0.1"), 2);
  EXPECT_EQ(status(exe + " validate --dist bernoulli:0.05"), 2);

  std::array<char, 4096> buf{};
  std::string text;
  FILE* pipe = ::popen((exe + " compare").c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) text += buf.data();
  EXPECT_EQ(::pclose(pipe), 0);
  EXPECT_EQ(text, golden("compare_default.csv"));
}

TEST(TableIo, RoundHalfAway) {
  using prwpv::cli::format_value;
  EXPECT_EQ(format_value(0.00005, 4), "0.0001");
  EXPECT_EQ(format_value(0.5, 0), "1");
  EXPECT_EQ(format_value(-0.0, 4), "0.0000");
  EXPECT_EQ(format_value(0.1, -1), "0.1");
}

TEST(TableIo, Grids) {
  using prwpv::cli::parse_grid;
  EXPECT_EQ(parse_grid("table").size(), 45u);
  EXPECT_EQ(parse_grid("0:0.001:1").size(), 1001u);
  EXPECT_EQ(parse_grid("0:0.25:1"), (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
}
