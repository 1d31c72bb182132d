#include <gtest/gtest.h>

#include <cstdlib>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "puresig/cli.hpp"
#include "puresig/exactnum.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "puresig");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = puresig::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Every "a/b" string and every integer survives the Rational parser unchanged.
void expect_round_trip(const nlohmann::json& j) {
  static const std::regex frac(R"(-?\d+/\d+)");
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (std::regex_match(s, frac)) EXPECT_EQ(puresig::Rational::parse(s).to_string(), s);
  } else if (j.is_number_integer()) {
    const auto s = j.dump();
    EXPECT_EQ(puresig::Rational::parse(s).to_compact_string(), s);
  } else if (j.is_structured()) {
    for (const auto& v : j) expect_round_trip(v);
  }
}

TEST(Cli, LadderTableForN3) {
  const auto r = run({"binomial", "ladder", "--n", "3", "--format", "table"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::vector<std::string> body;
  while (std::getline(lines, line)) body.push_back(line);
  ASSERT_EQ(body.size(), 8u);  // header, rule, six rows
  EXPECT_TRUE(std::regex_search(body[2], std::regex(R"(\b4\s+2\s+2\s+4\b)"))) << body[2];
  EXPECT_NE(body[7].find("(3,inf]"), std::string::npos);
}

TEST(Cli, LadderCsvColumns) {
  const auto r = run({"binomial", "ladder", "--n", "4", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t_repr,p_repr,q_0,q_1,q_2,q_3,q_4");
}

TEST(Cli, CounterexampleJson) {
  const auto r = run({"repeated", "counterexample222"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["phi"], nlohmann::json({"0/1", "1/1", "1/3", "1/1", "0/1"}));
  EXPECT_EQ(j["command"], "repeated counterexample222");
  EXPECT_TRUE(j.contains("version"));
  expect_round_trip(j);
}

TEST(Cli, VerifyAllExitsZero) {
  const auto r = run({"verify", "all", "--nmax", "8"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["results"]["invariant_failures"], 0);
  expect_round_trip(j);
}

TEST(Cli, OutputsAreDeterministicAndRoundTrip) {
  const std::vector<std::vector<std::string>> cmds = {
      {"pst", "pvalue", "--p", "1/2,1/2", "--x", "0,3"},
      {"pst", "epv", "--p", "1/3,1/3,1/3", "--n", "3"},
      {"pst", "sweep33", "--k", "3", "--n", "2"},
      {"glrt", "pvalue", "--x", "1,3"},
      {"binomial", "identities", "--n", "6"},
      {"binomial", "threshold-scan", "--n-max", "61"},
      {"obd", "--n", "5", "--p", "3/4"},
      {"obd", "decompose", "--n", "2", "--p", "2/3"},
      {"obd", "sweep7x", "--n", "3", "--grid-denominator", "8"},
      {"repeated", "lstar", "--rows", "0,2;2,0"},
      {"repeated", "hybrid", "--rows", "1,1;1,1", "--alpha", "1/4", "--beta", "1/2"},
      {"repeated", "level", "--k", "2", "--n", "2", "--alpha", "1/4", "--beta", "1/4", "--grid-denominator", "8"},
      {"repeated", "sweep81", "--k", "2", "--n", "2", "--chains", "3"},
  };
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    ASSERT_EQ(a.code, 0) << c[0] << " " << c[1] << ": " << a.err;
    EXPECT_EQ(a.out, b.out);
    expect_round_trip(nlohmann::json::parse(a.out));
  }
}

TEST(Cli, SpecificValues) {
  auto j = nlohmann::json::parse(run({"pst", "pvalue", "--p", "1/2,1/2", "--x", "0,3"}).out);
  EXPECT_EQ(j["results"]["p_value"], "1/4");
  j = nlohmann::json::parse(run({"glrt", "pvalue", "--x", "1,3"}).out);
  EXPECT_EQ(j["results"]["L"], "2/9");
  EXPECT_EQ(j["results"]["p_value"], "7/8");
  j = nlohmann::json::parse(run({"obd", "show", "--n", "4", "--p", "1/2"}).out);
  EXPECT_EQ(j["results"]["mean"], "45/16");
}

TEST(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"nosuch"}).code, 1);
  EXPECT_EQ(run({"binomial", "ladder"}).code, 1);
  const auto f = run({"obd", "show", "--n", "3", "--p", "0.5"});
  EXPECT_EQ(f.code, 1);
  EXPECT_FALSE(f.err.empty());
  EXPECT_EQ(run({"pst", "pvalue", "--p", "1/2,1/3", "--x", "1,1"}).code, 1);
}

TEST(Cli, SpaceTooLargeReportsCardinality) {
  const auto r = run({"--max-outcomes", "100", "pst", "epv", "--p", "1/3,1/3,1/3", "--n", "20"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SPACE_TOO_LARGE"), std::string::npos);
  EXPECT_NE(r.err.find("231"), std::string::npos) << r.err;
}

TEST(Cli, MaxOutcomesEnvFallback) {
  ::setenv("PURESIG_MAX_OUTCOMES", "100", 1);
  const auto r = run({"pst", "epv", "--p", "1/3,1/3,1/3", "--n", "20"});
  ::unsetenv("PURESIG_MAX_OUTCOMES");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("SPACE_TOO_LARGE"), std::string::npos);
  EXPECT_EQ(run({"pst", "epv", "--p", "1/3,1/3,1/3", "--n", "20"}).code, 0);
}

}  // namespace
