#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace quadrm::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliDist, HomogeneousText) {
  const auto r = invoke({"dist", "--family", "hrm2", "--q", "3", "--m", "4", "--format", "text"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "1 + 1560*Z^36 + 21060*Z^48 + 18800*Z^54 + 16848*Z^60 + 780*Z^72\n");
}

TEST(CliDist, ProjectiveJson) {
  const auto r = invoke({"dist", "--family", "prm2", "--q", "3", "--m", "4", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("family"), "prm2");
  std::map<int, std::string> rows;
  for (const auto& row : j.at("distribution")) rows[row.at("weight")] = row.at("frequency");
  EXPECT_EQ(rows.at(81), "9740258");
}

TEST(CliDist, CsvAndMethods) {
  const auto formula = invoke({"dist", "--family", "rm2", "--q", "3", "--m", "2", "--format", "csv"});
  ASSERT_EQ(formula.code, kExitOk);
  EXPECT_EQ(formula.out.rfind("weight,frequency\n0,1\n", 0), 0u);
  for (const char* method : {"coset", "brute"}) {
    const auto other = invoke({"dist", "--family", "rm2", "--q", "3", "--m", "2", "--format", "csv", "--method", method});
    EXPECT_EQ(other.code, kExitOk);
    EXPECT_EQ(other.out, formula.out) << method;
  }
  EXPECT_EQ(invoke({"dist", "--family", "hrm2", "--q", "3", "--m", "2", "--method", "coset"}).code, kExitUsage);
  const auto budget =
      invoke({"dist", "--family", "rm2", "--q", "3", "--m", "3", "--method", "brute", "--max-codewords", "10"});
  EXPECT_EQ(budget.code, kExitUsage);
  EXPECT_NE(budget.err.find("BudgetExceeded"), std::string::npos);
}

TEST(CliDist, ParameterErrors) {
  EXPECT_EQ(invoke({"dist", "--family", "rm2", "--q", "2", "--m", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"dist", "--family", "rm2", "--q", "6", "--m", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"dist", "--family", "rm7", "--q", "3", "--m", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"dist", "--q", "3", "--m", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"dist", "--family", "rm2", "--q", "3", "--m", "2", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
}

TEST(CliDist, DeterministicOutput) {
  const std::vector<std::string> args = {"dist", "--family", "rm2", "--q", "4", "--m", "3", "--format", "json"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(CliDist, WritesOutputFile) {
  const std::string path = ::testing::TempDir() + "quadrm_cli_out.txt";
  const auto r = invoke({"dist", "--family", "hrm2", "--q", "3", "--m", "2", "--output", path});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "1 + 12*Z^4 + 8*Z^6 + 6*Z^8");
  std::remove(path.c_str());
}

TEST(CliClassify, Examples) {
  const auto minus = invoke({"classify", "--q", "2", "--m", "2", "--coeffs", "c[1][1]=1; c[1][2]=1; c[2][2]=1"});
  EXPECT_EQ(minus.code, kExitOk);
  EXPECT_NE(minus.out.find("rank: 2\n"), std::string::npos);
  EXPECT_NE(minus.out.find("type: -1"), std::string::npos);
  EXPECT_NE(minus.out.find("zeros: 1\n"), std::string::npos);

  const auto zero = invoke({"classify", "--q", "5", "--m", "3", "--coeffs", "", "--format", "json"});
  ASSERT_EQ(zero.code, kExitOk);
  const auto j = nlohmann::json::parse(zero.out);
  EXPECT_EQ(j.at("rank"), 0);
  EXPECT_EQ(j.at("tau"), 1);
  EXPECT_EQ(j.at("zeros"), "125");

  // x1 x2 over GF(3) has symmetric coefficient c_12 = 1/2 = 2.
  const auto hyperbolic = invoke({"classify", "--q", "3", "--m", "2", "--coeffs", "c[1][2]=2", "--format", "json"});
  ASSERT_EQ(hyperbolic.code, kExitOk);
  const auto h = nlohmann::json::parse(hyperbolic.out);
  EXPECT_EQ(h.at("rank"), 2);
  EXPECT_EQ(h.at("tau"), 1);
  EXPECT_EQ(h.at("canonical"), "q=3 m=2; c[1][1]=1; c[2][2]=2");
}

TEST(CliClassify, ReadsFormFile) {
  const std::string path = ::testing::TempDir() + "quadrm_form.txt";
  {
    std::ofstream out(path);
    out << "q=2 m=3\nc[1][2]=1\nc[3][3]=1\n";
  }
  const auto r = invoke({"classify", "--file", path, "--format", "json"});
  std::remove(path.c_str());
  ASSERT_EQ(r.code, kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("rank"), 3);
  EXPECT_EQ(j.at("type"), "untyped");
  EXPECT_TRUE(j.at("tau").is_null());
}

TEST(CliClassify, InputErrors) {
  EXPECT_EQ(invoke({"classify", "--q", "3", "--m", "2", "--coeffs", "c[1][3]=1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", "--q", "3", "--m", "2", "--coeffs", "c[2][1]=1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", "--q", "3", "--m", "2", "--coeffs", "garbage"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", "--file", "/nonexistent/form.txt"}).code, kExitUsage);
  EXPECT_EQ(invoke({"classify", "--q", "4", "--m", "8", "--coeffs", "c[1][2]=1", "--max-points", "100"}).code,
            kExitUsage);
}

TEST(CliCount, Examples) {
  const auto table = invoke({"count", "--q", "2", "--m", "2"});
  EXPECT_EQ(table.code, kExitOk);
  EXPECT_NE(table.out.find("total 8\n"), std::string::npos);
  EXPECT_EQ(invoke({"count", "--q", "3", "--m", "4", "--rank", "1"}).out, "80\n");
  EXPECT_EQ(invoke({"count", "--q", "2", "--m", "3", "--rank", "3"}).out, "28\n");
  EXPECT_EQ(invoke({"count", "--q", "3", "--m", "2", "--rank", "2", "--type", "minus"}).out, "6\n");
  EXPECT_EQ(invoke({"count", "--q", "2", "--m", "3", "--rank", "3", "--type", "plus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"count", "--q", "3", "--m", "2", "--rank", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"count", "--q", "3", "--m", "2", "--rank", "5", "--type", "plus"}).code, kExitUsage);
}

TEST(CliCount, JsonAndExhaustiveAgree) {
  const auto formula = invoke({"count", "--q", "3", "--m", "3", "--format", "json"});
  const auto exhaustive = invoke({"count", "--q", "3", "--m", "3", "--format", "json", "--exhaustive"});
  ASSERT_EQ(formula.code, kExitOk);
  EXPECT_EQ(formula.out, exhaustive.out);
  const auto j = nlohmann::json::parse(formula.out);
  EXPECT_EQ(j.at("entries").size(), 5u);
  EXPECT_EQ(invoke({"count", "--q", "3", "--m", "3", "--exhaustive", "--max-forms", "5"}).code, kExitUsage);
}

TEST(CliSpectrum, FormulaMatchesOracle) {
  for (const std::vector<std::string>& extra :
       {std::vector<std::string>{}, {"--c-class", "square"}, {"--merged"}}) {
    std::vector<std::string> args = {"spectrum", "--q", "3", "--m", "2", "--rank", "1", "--type", "plus"};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto formula = invoke(args);
    args.push_back("--oracle");
    const auto oracle = invoke(args);
    EXPECT_EQ(formula.code, kExitOk);
    EXPECT_EQ(formula.out, oracle.out);
  }
  const auto weights = invoke({"spectrum", "--q", "3", "--m", "2", "--rank", "1", "--coset-weights", "--format", "json"});
  ASSERT_EQ(weights.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(weights.out).at("population"), "27");
  EXPECT_EQ(invoke({"spectrum", "--q", "3", "--m", "2", "--rank", "2", "--type", "plus", "--c-class", "square"}).code,
            kExitUsage);
}

TEST(CliVerify, Scopes) {
  const auto census = invoke({"verify", "--scope", "census", "--q", "2", "--m", "4"});
  EXPECT_EQ(census.code, kExitOk);
  EXPECT_NE(census.out.find("PASS census q=2 m=4 (1024 forms classified)"), std::string::npos);
  const auto codes = invoke({"verify", "--scope", "codes", "--q", "3", "--m", "2"});
  EXPECT_EQ(codes.code, kExitOk);
  EXPECT_NE(codes.out.find("formula = coset-assembled = brute force"), std::string::npos);
  const auto spectra = invoke({"verify", "--scope", "spectra", "--q", "3", "--m", "2"});
  EXPECT_EQ(spectra.code, kExitOk);
  EXPECT_EQ(spectra.out.find("FAIL"), std::string::npos);
  const auto all = invoke({"verify", "--q", "2..4", "--m", "1,2", "--format", "json"});
  EXPECT_EQ(all.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(all.out).at("failed"), 0);
}

TEST(CliVerify, BudgetSkipsAndBadRanges) {
  const auto skipped = invoke({"verify", "--scope", "codes", "--q", "3", "--m", "3", "--max-codewords", "10"});
  EXPECT_EQ(skipped.code, kExitOk);
  EXPECT_NE(skipped.out.find("brute force skipped"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--q", "6", "--m", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--q", "3", "--m", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--q", "5..2", "--m", "2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--q", "x", "--m", "2"}).code, kExitUsage);
}

TEST(CliDescribeField, ModulusConstantTermFirst) {
  const auto r = invoke({"describe-field", "--q", "4"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("modulus: 1,1,1\n"), std::string::npos);
  EXPECT_EQ(invoke({"--describe-field", "9"}).out, invoke({"describe-field", "--q", "9"}).out);
  const auto j = nlohmann::json::parse(invoke({"describe-field", "--q", "8", "--format", "json"}).out);
  EXPECT_EQ(j.at("modulus"), "1,1,0,1");
  EXPECT_EQ(invoke({"describe-field", "--q", "12"}).code, kExitUsage);
}

TEST(CliHelp, HelpExitsCleanly) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}

}  // namespace
}  // namespace quadrm::cli
