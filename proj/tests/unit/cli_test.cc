// Copyright 2026 The borel_eb Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "borel_eb/bt_core.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace borel_eb::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunArgs(std::vector<std::string> args, const char* env_seed = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(std::move(args), out, err, env_seed);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path TempPath(const std::string& name) {
  const char* dir = std::getenv("BOREL_EB_TEST_TMPDIR");
  return std::filesystem::path(dir ? dir : std::filesystem::temp_directory_path().string()) /
         name;
}

void WriteFile(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
}

TEST(FormatTest, LocaleIndependentDigits) {
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(0.1291374343), "0.129137");
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatTwoDecimals(0.634), "0.63");
  EXPECT_EQ(FormatTwoDecimals(0.0), "0.00");
}

TEST(SampleCommandTest, HeaderOnlyForZeroCount) {
  const Result r = RunArgs({"sample", "--theta", "0.5", "--count", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "index,x\n");
}

TEST(SampleCommandTest, DeterministicPerSeed) {
  const auto args = std::vector<std::string>{"sample", "--theta", "0.7", "--r", "3",
                                             "--count", "200", "--seed", "17"};
  const Result a = RunArgs(args);
  const Result b = RunArgs(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "18";
  EXPECT_NE(RunArgs(other).out, a.out);
}

TEST(SampleCommandTest, InvalidThetaExitsTwo) {
  const Result r = RunArgs({"sample", "--theta", "1.2"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("theta"), std::string::npos);
  EXPECT_EQ(RunArgs({"sample", "--theta", "0.5", "--method", "magic"}).code,
            kExitUsage);
}

TEST(SampleCommandTest, MethodsAgreeInDistribution) {
  std::map<std::int64_t, std::int64_t> counts[2];
  const char* methods[] = {"gw", "inverse"};
  const int draws = 100000;
  for (int m = 0; m < 2; ++m) {
    const Result r = RunArgs({"sample", "--theta", "0.5", "--count",
                              std::to_string(draws), "--method", methods[m],
                              "--seed", "5"});
    ASSERT_EQ(r.code, 0);
    const auto rows = ParseCsv(r.out);
    ASSERT_EQ(rows.size(), static_cast<std::size_t>(draws + 1));
    for (std::size_t i = 1; i < rows.size(); ++i) ++counts[m][std::stoll(rows[i][1])];
  }
  double tv = 0.0;
  std::map<std::int64_t, std::int64_t> keys = counts[0];
  for (const auto& [k, c] : counts[1]) keys[k] += 0;
  for (const auto& [k, unused] : keys) {
    tv += std::abs(static_cast<double>(counts[0][k]) - counts[1][k]) / draws;
  }
  EXPECT_LT(0.5 * tv, 0.01);
}

TEST(EstimateCommandTest, Mle) {
  const Result r = RunArgs({"estimate", "--x", "10", "--r", "5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "x,estimator,theta_hat\n10,mle,0.5\n");
}

TEST(EstimateCommandTest, Bayes) {
  const Result r = RunArgs({"estimate", "--x", "5", "--estimator", "bayes",
                            "--gamma", "3", "--prior-a", "0.5", "--prior-b",
                            "1"});
  ASSERT_EQ(r.code, 0);
  const auto rows = ParseCsv(r.out);
  EXPECT_EQ(FormatTwoDecimals(std::stod(rows[1][2])), "0.63");
}

TEST(EstimateCommandTest, DomainAndFlagErrors) {
  EXPECT_EQ(RunArgs({"estimate", "--x", "4", "--r", "5"}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"estimate", "--x", "7", "--estimator", "oracle"}).code,
            kExitUsage);
  EXPECT_EQ(RunArgs({"estimate", "--x", "7", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(RunArgs({}).code, kExitUsage);
  EXPECT_EQ(RunArgs({"estimate", "--x", "7", "--prior-a", "0.9",
                     "--prior-b", "0.2", "--estimator", "bayes"})
                .code,
            kExitUsage);
}

TEST(EstimateCommandTest, HelpExitsZero) {
  EXPECT_EQ(RunArgs({"--help"}).code, 0);
}

TEST(EstimateCommandTest, NpebFromFile) {
  const auto path = TempPath("freq_ok.csv");
  WriteFile(path, "kind,x,count\nr,10,4\nsum,13,2\nsum,20,2\n");
  const Result raw = RunArgs({"estimate", "--x", "10", "--estimator",
                              "npeb-file", "--table", path.string(), "--rule",
                              "raw"});
  ASSERT_EQ(raw.code, 0) << raw.err;
  const auto rows = ParseCsv(raw.out);
  EXPECT_NEAR(std::stod(rows[1][2]), std::log(1.6 * std::pow(1.3, 4) * 2.0) / 3,
              1e-6);
  // Present observation counted: tau = 1.6 * 1.3^4 * (5/5)/(2/5).
  const Result rel = RunArgs({"estimate", "--x", "10", "--estimator",
                              "npeb-file", "--table", path.string()});
  ASSERT_EQ(rel.code, 0);
  EXPECT_NEAR(std::stod(ParseCsv(rel.out)[1][2]),
              std::log(1.6 * std::pow(1.3, 4) * 2.5) / 3, 1e-6);
}

TEST(EstimateCommandTest, MalformedTableExitsThree) {
  const auto bad_header = TempPath("freq_bad_header.csv");
  WriteFile(bad_header, "x,count\n10,4\n");
  const auto bad_kind = TempPath("freq_bad_kind.csv");
  WriteFile(bad_kind, "kind,x,count\nq,10,4\n");
  const auto bad_totals = TempPath("freq_bad_totals.csv");
  WriteFile(bad_totals, "kind,x,count\nr,10,4\nsum,13,3\n");
  const auto bad_number = TempPath("freq_bad_number.csv");
  WriteFile(bad_number, "kind,x,count\nr,ten,4\n");
  for (const auto& p : {bad_header, bad_kind, bad_totals, bad_number}) {
    EXPECT_EQ(RunArgs({"estimate", "--x", "10", "--estimator", "npeb-file",
                       "--table", p.string()})
                  .code,
              kExitInputFile)
        << p;
  }
  EXPECT_EQ(RunArgs({"estimate", "--x", "10", "--estimator", "npeb-file",
                     "--table", TempPath("missing.csv").string()})
                .code,
            kExitInputFile);
}

TEST(FrequencyTableFileTest, WriteThenRead) {
  const FrequencyTable t(5, 3, {{5, 2}, {9, 1}}, {{8, 1}, {12, 1}, {15, 1}});
  std::stringstream ss;
  WriteFrequencyTable(ss, t);
  const FrequencyTable back = ReadFrequencyTable(ss, 5, 3);
  EXPECT_EQ(back.counts_r(), t.counts_r());
  EXPECT_EQ(back.counts_sum(), t.counts_sum());
}

TEST(RiskCommandTest, BayesHasNoRegret) {
  const Result r = RunArgs({"risk", "--estimator", "bayes"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ParseCsv(r.out);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "risk,min_risk,regret,x_low,x_high,tail_mass_note");
  EXPECT_LT(std::stod(rows[1][2]), 1e-8);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.0622, 0.001);
  EXPECT_EQ(rows[1][3], "5");
  EXPECT_EQ(rows[1][4], "200");
}

TEST(RiskCommandTest, MleRegret) {
  const Result r = RunArgs({"risk", "--estimator", "mle", "--range", "5-200"});
  ASSERT_EQ(r.code, 0);
  const auto rows = ParseCsv(r.out);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.1327, 0.002);
  EXPECT_NEAR(std::stod(rows[1][1]), 0.0622, 0.001);
  const Result short_range =
      RunArgs({"risk", "--estimator", "mle", "--xmin", "5", "--xmax", "15"});
  EXPECT_NEAR(std::stod(ParseCsv(short_range.out)[1][2]), 0.1292, 0.002);
  EXPECT_EQ(RunArgs({"risk", "--range", "3-200"}).code, kExitUsage);
}

TEST(ReproduceCommandTest, TableOne) {
  const Result r = RunArgs({"reproduce", "one"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 17u);
  EXPECT_EQ(rows[0][0] + "," + rows[0][1] + "," + rows[0][2] + "," + rows[0][3],
            "x,theta_npeb_f,theta_U,theta_MLE");
  const char* theta_u[] = {"0.63", "0.64", "0.65", "0.65", "0.66", "0.67",
                           "0.67", "0.68", "0.69", "0.69", "0.70", "0.71",
                           "0.71", "0.72", "0.73", "0.73"};
  const char* theta_mle[] = {"0.00", "0.17", "0.29", "0.38", "0.44", "0.50",
                             "0.55", "0.58", "0.62", "0.64", "0.67", "0.69",
                             "0.71", "0.72", "0.74", "0.75"};
  for (int i = 0; i < 16; ++i) {
    EXPECT_EQ(rows[i + 1][0], std::to_string(5 + i));
    EXPECT_EQ(rows[i + 1][5], theta_u[i]) << "x=" << 5 + i;
    EXPECT_EQ(rows[i + 1][6], theta_mle[i]) << "x=" << 5 + i;
  }
}

TEST(ReproduceCommandTest, TableTwoShapeAndMleColumn) {
  const Result r = RunArgs({"reproduce", "two", "--reps", "20"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ParseCsv(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')),
            "n,range,mean_regret,std_of_mean,mle_regret");
  const char* ns[] = {"50", "50", "75", "75", "100", "100"};
  for (int i = 0; i < 6; ++i) {
    EXPECT_EQ(rows[i + 1][0], ns[i]);
    EXPECT_EQ(rows[i + 1][1], i % 2 == 0 ? "5-15" : "5-200");
    EXPECT_NEAR(std::stod(rows[i + 1][4]), i % 2 == 0 ? 0.1292 : 0.1327, 0.002);
  }
}

TEST(ReproduceCommandTest, DeterministicAndWorkerIndependent) {
  const Result a = RunArgs({"reproduce", "two", "--reps", "12", "--n", "50",
                            "--seed", "9"});
  const Result b = RunArgs({"reproduce", "two", "--reps", "12", "--n", "50",
                            "--seed", "9", "--workers", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(ConfigTest, PrecedenceFlagsOverConfigOverEnv) {
  const auto cfg = TempPath("borel.conf");
  WriteFile(cfg, "# demo\ngamma = 2\nseed = 33\nprior-a = 0.3\n");
  const Result from_cfg =
      RunArgs({"--config", cfg.string(), "estimate", "--x", "9", "--estimator",
               "bayes"});
  ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
  const Result explicit_flags =
      RunArgs({"estimate", "--x", "9", "--estimator", "bayes", "--gamma", "2",
               "--prior-a", "0.3"});
  EXPECT_EQ(from_cfg.out, explicit_flags.out);
  const Result overridden =
      RunArgs({"--config", cfg.string(), "estimate", "--x", "9", "--estimator",
               "bayes", "--gamma", "3", "--prior-a", "0.5"});
  EXPECT_EQ(overridden.out, RunArgs({"estimate", "--x", "9", "--estimator",
                                     "bayes"}).out);

  // Seed: config beats the environment, the environment beats the default.
  const auto sample = std::vector<std::string>{"sample", "--theta", "0.6",
                                               "--count", "50"};
  auto with_cfg = sample;
  with_cfg.insert(with_cfg.begin(), {"--config", cfg.string()});
  auto seed33 = sample;
  seed33.insert(seed33.end(), {"--seed", "33"});
  auto seed44 = sample;
  seed44.insert(seed44.end(), {"--seed", "44"});
  EXPECT_EQ(RunArgs(with_cfg, "44").out, RunArgs(seed33).out);
  EXPECT_EQ(RunArgs(sample, "44").out, RunArgs(seed44).out);
  EXPECT_NE(RunArgs(sample).out, RunArgs(seed44).out);
}

TEST(ConfigTest, MissingOrBrokenConfig) {
  EXPECT_EQ(RunArgs({"--config", TempPath("nope.conf").string(), "sample",
                     "--theta", "0.5"})
                .code,
            kExitInputFile);
  const auto broken = TempPath("broken.conf");
  WriteFile(broken, "gamma 3\n");
  EXPECT_EQ(RunArgs({"--config", broken.string(), "sample", "--theta", "0.5"}).code,
            kExitInputFile);
}

TEST(OutputTest, WritesToFile) {
  const auto path = TempPath("sample_out.csv");
  std::filesystem::remove(path);
  const Result r = RunArgs({"sample", "--theta", "0.5", "--count", "3", "--out",
                            path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  const std::string text = content.str();
  EXPECT_EQ(text.substr(0, 8), "index,x\n");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

}  // namespace
}  // namespace borel_eb::cli
