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
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "borel_eb/bt_core.h"
#include "borel_eb/eb_sim.h"
#include "borel_eb/errors.h"
#include "borel_eb/priors_quadrature.h"
#include "borel_eb/random.h"
#include "borel_eb/risk.h"

namespace borel_eb::cli {

namespace {

const char* const kSubcommands[] = {"sample", "estimate", "risk", "reproduce"};

struct Options {
  int r = 5;
  int gamma = 3;
  double prior_a = 0.5;
  double prior_b = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string rule = "relfreq";

  // sample
  double theta = 0.0;
  std::int64_t count = 1000;
  std::string method = "gw";

  // estimate / risk
  std::int64_t x = 0;
  std::string estimator = "mle";
  std::string table;
  std::int64_t xmin = -1;
  std::int64_t xmax = -1;
  std::string range;

  // reproduce
  std::string which;
  std::string n_list;
  int reps = 100;
  int workers = 1;
};

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(Trim(cur));
  return parts;
}

template <typename T>
T ParseNumber(const std::string& text, const std::string& what) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw DomainError("cannot parse " + what + " from '" + text + "'");
  }
  return value;
}

std::pair<std::int64_t, std::int64_t> ParseRange(const std::string& text) {
  const auto parts = Split(text, '-');
  if (parts.size() != 2) {
    throw DomainError("range must look like LOW-HIGH, got '" + text + "'");
  }
  return {ParseNumber<std::int64_t>(parts[0], "range low"),
          ParseNumber<std::int64_t>(parts[1], "range high")};
}

std::string RangeLabel(std::int64_t lo, std::int64_t hi) {
  return std::to_string(lo) + "-" + std::to_string(hi);
}

bool HasFlag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Removes `--config PATH` / `--config=PATH` from args and returns PATH.
std::string ExtractConfigPath(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      --i;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      --i;
    }
  }
  return path;
}

UniformPrior PriorFrom(const Options& o) {
  return UniformPrior(o.prior_a, o.prior_b);
}

FrequencyTable LoadTable(const Options& o) {
  if (o.table.empty()) {
    throw DomainError("estimator npeb-file requires --table FILE");
  }
  std::ifstream in(o.table);
  if (!in) throw InputFileError("cannot open frequency table '" + o.table + "'");
  return ReadFrequencyTable(in, o.r, o.gamma);
}

double EstimateOne(const Options& o, std::int64_t x,
                   const FrequencyTable* table, const QuadratureSpec& quad) {
  if (o.estimator == "mle") return Mle(o.r, x);
  if (o.estimator == "bayes") {
    return BayesLinex(PriorFrom(o), o.r, o.gamma, x, quad);
  }
  if (o.estimator == "npeb-file") {
    return EmpiricalBayesEstimate(*table, x, ParseMarginalRule(o.rule));
  }
  throw DomainError("unknown estimator '" + o.estimator +
                    "' (expected mle, bayes or npeb-file)");
}

void CmdSample(const Options& o, std::ostream& out) {
  const BtParams params(o.theta, o.r);
  if (o.count < 0) throw DomainError("--count must be >= 0");
  if (o.method != "gw" && o.method != "inverse") {
    throw DomainError("--method must be gw or inverse");
  }
  RandomStream rng(o.seed);
  out << "index,x\n";
  for (std::int64_t i = 0; i < o.count; ++i) {
    const std::int64_t x = o.method == "gw"
                               ? SampleTotalProgeny(params.theta(), o.r, rng)
                               : SampleInverse(params, rng);
    out << i << ',' << x << '\n';
  }
}

void CmdEstimate(const Options& o, std::ostream& out) {
  if (o.x < o.r) {
    throw DomainError("x = " + std::to_string(o.x) + " is below r = " +
                      std::to_string(o.r));
  }
  std::unique_ptr<FrequencyTable> table;
  if (o.estimator == "npeb-file") {
    table = std::make_unique<FrequencyTable>(LoadTable(o));
  }
  const double v = EstimateOne(o, o.x, table.get(), QuadratureSpec{});
  out << "x,estimator,theta_hat\n"
      << o.x << ',' << o.estimator << ',' << FormatDouble(v) << '\n';
}

std::pair<std::int64_t, std::int64_t> RiskRange(const Options& o) {
  std::int64_t lo = o.xmin >= 0 ? o.xmin : o.r;
  std::int64_t hi = o.xmax >= 0 ? o.xmax : 200;
  if (!o.range.empty()) std::tie(lo, hi) = ParseRange(o.range);
  return {lo, hi};
}

void CmdRisk(const Options& o, std::ostream& out) {
  const auto [lo, hi] = RiskRange(o);
  const UniformPrior prior = PriorFrom(o);
  const LinexSpec spec(o.gamma);
  const QuadratureSpec quad;
  std::unique_ptr<FrequencyTable> table;
  if (o.estimator == "npeb-file") {
    table = std::make_unique<FrequencyTable>(LoadTable(o));
  }
  if (lo < o.r || hi < lo) {
    throw DomainError("range must satisfy r <= low <= high");
  }
  const EstimatorTable est = EstimatorTable::Tabulate(
      o.r, lo, hi,
      [&](std::int64_t x) { return EstimateOne(o, x, table.get(), quad); });
  const RiskReport rep = EvaluateRisk(prior, o.r, spec, est, lo, hi, quad);
  out << "risk,min_risk,regret,x_low,x_high,tail_mass_note\n"
      << FormatDouble(rep.risk) << ',' << FormatDouble(rep.min_risk) << ','
      << FormatDouble(rep.regret) << ',' << rep.x_low << ',' << rep.x_high
      << ",marginal_mass_outside_range=" << FormatDouble(rep.tail_mass)
      << '\n';
}

SimConfig SimConfigFrom(const Options& o) {
  SimConfig cfg;
  cfg.r = o.r;
  cfg.gamma = o.gamma;
  cfg.prior = PriorFrom(o);
  cfg.seed = o.seed;
  cfg.reps = o.reps;
  cfg.workers = o.workers;
  cfg.rule = ParseMarginalRule(o.rule);
  cfg.x_low = o.r;
  return cfg;
}

void CmdReproduceOne(const Options& o, std::ostream& out) {
  SimConfig cfg = SimConfigFrom(o);
  const auto ns = Split(o.n_list.empty() ? "100" : o.n_list, ',');
  if (ns.size() != 1) throw DomainError("table one takes a single --n");
  cfg.n = ParseNumber<int>(ns[0], "--n");
  const std::int64_t lo = o.xmin >= 0 ? o.xmin : o.r;
  const std::int64_t hi = o.xmax >= 0 ? o.xmax : 20;
  cfg.x_high = std::max<std::int64_t>(hi, cfg.x_low);
  const auto rows = ReproduceTableOne(cfg, lo, hi);
  out << "x,theta_npeb_f,theta_U,theta_MLE,theta_npeb_f_2dp,theta_U_2dp,"
         "theta_MLE_2dp\n";
  for (const auto& row : rows) {
    out << row.x << ',' << FormatDouble(row.theta_npeb_f) << ','
        << FormatDouble(row.theta_u) << ',' << FormatDouble(row.theta_mle)
        << ',' << FormatTwoDecimals(row.theta_npeb_f) << ','
        << FormatTwoDecimals(row.theta_u) << ','
        << FormatTwoDecimals(row.theta_mle) << '\n';
  }
}

void CmdReproduceTwo(const Options& o, std::ostream& out) {
  const SimConfig cfg = SimConfigFrom(o);
  std::vector<int> ns;
  for (const auto& s : Split(o.n_list.empty() ? "50,75,100" : o.n_list, ',')) {
    ns.push_back(ParseNumber<int>(s, "--n"));
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
  if (o.range.empty()) {
    ranges = {{o.r, 15}, {o.r, 200}};
  } else {
    for (const auto& s : Split(o.range, ',')) ranges.push_back(ParseRange(s));
  }
  const auto rows = ReproduceTableTwo(cfg, ns, ranges);
  out << "n,range,mean_regret,std_of_mean,mle_regret\n";
  for (const auto& row : rows) {
    out << row.n << ',' << RangeLabel(row.x_low, row.x_high) << ','
        << FormatDouble(row.report.mean_regret) << ','
        << FormatDouble(row.report.std_of_mean) << ','
        << FormatDouble(row.report.mle_regret) << '\n';
  }
}

void AddModelFlags(CLI::App* sub, Options& o) {
  sub->add_option("--r", o.r, "Number of ancestors r")->capture_default_str();
  sub->add_option("--gamma", o.gamma, "LINEX asymmetry (positive integer)")
      ->capture_default_str();
  sub->add_option("--prior-a", o.prior_a, "Lower end of the uniform prior")
      ->capture_default_str();
  sub->add_option("--prior-b", o.prior_b, "Upper end of the uniform prior")
      ->capture_default_str();
}

void AddOutFlag(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "Output CSV path (default: stdout)");
}

}  // namespace

std::string FormatDouble(double v, int significant) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, significant);
  return std::string(buf, res.ptr);
}

std::string FormatTwoDecimals(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

FrequencyTable ReadFrequencyTable(std::istream& in, int r, int gamma) {
  std::string line;
  if (!std::getline(in, line) || Trim(line) != "kind,x,count") {
    throw InputFileError("frequency table must start with 'kind,x,count'");
  }
  FrequencyTable::Counts counts_r;
  FrequencyTable::Counts counts_sum;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const auto fields = Split(line, ',');
    if (fields.size() != 3) {
      throw InputFileError("line " + std::to_string(line_no) +
                           ": expected 3 fields");
    }
    std::int64_t x = 0;
    std::int64_t count = 0;
    try {
      x = ParseNumber<std::int64_t>(fields[1], "x");
      count = ParseNumber<std::int64_t>(fields[2], "count");
    } catch (const DomainError& e) {
      throw InputFileError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (count < 0) {
      throw InputFileError("line " + std::to_string(line_no) +
                           ": negative count");
    }
    if (fields[0] == "r") {
      counts_r[x] += count;
    } else if (fields[0] == "sum") {
      counts_sum[x] += count;
    } else {
      throw InputFileError("line " + std::to_string(line_no) +
                           ": kind must be 'r' or 'sum'");
    }
  }
  try {
    return FrequencyTable(r, gamma, std::move(counts_r), std::move(counts_sum));
  } catch (const DomainError& e) {
    throw InputFileError(std::string("invalid frequency table: ") + e.what());
  }
}

void WriteFrequencyTable(std::ostream& out, const FrequencyTable& table) {
  out << "kind,x,count\n";
  for (const auto& [x, c] : table.counts_r()) out << "r," << x << ',' << c << '\n';
  for (const auto& [y, c] : table.counts_sum()) {
    out << "sum," << y << ',' << c << '\n';
  }
}

std::map<std::string, std::string> ReadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFileError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (Trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputFileError("config line " + std::to_string(line_no) +
                           ": expected key = value");
    }
    std::string key = Trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    values[key] = Trim(line.substr(eq + 1));
  }
  return values;
}

int Run(std::vector<std::string> args, std::ostream& out, std::ostream& err,
        const char* env_seed) {
  Options o;
  CLI::App app{"Borel-Tanner empirical Bayes estimation under LINEX loss",
               "borel_eb"};
  app.require_subcommand(1);
  app.add_option("--config", "key = value file; flags override it");

  CLI::App* sample = app.add_subcommand("sample", "Draw Borel-Tanner variates");
  sample->add_option("--theta", o.theta, "Reproduction parameter in (0,1)")
      ->required();
  sample->add_option("--r", o.r, "Number of ancestors r")->capture_default_str();
  sample->add_option("--count", o.count, "Number of draws")->capture_default_str();
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--method", o.method, "gw (branching process) or inverse")
      ->capture_default_str();
  AddOutFlag(sample, o);

  CLI::App* estimate = app.add_subcommand("estimate", "Point estimate of theta");
  estimate->add_option("--x", o.x, "Observed total progeny")->required();
  estimate->add_option("--estimator", o.estimator, "mle, bayes or npeb-file")
      ->capture_default_str();
  estimate->add_option("--table", o.table, "Frequency table CSV (npeb-file)");
  estimate->add_option("--rule", o.rule, "Empirical marginal rule: relfreq or raw")
      ->capture_default_str();
  AddModelFlags(estimate, o);
  AddOutFlag(estimate, o);

  CLI::App* risk = app.add_subcommand("risk", "Bayes risk and regret");
  risk->add_option("--estimator", o.estimator, "mle, bayes or npeb-file")
      ->capture_default_str();
  risk->add_option("--table", o.table, "Frequency table CSV (npeb-file)");
  risk->add_option("--rule", o.rule, "Empirical marginal rule: relfreq or raw")
      ->capture_default_str();
  risk->add_option("--xmin", o.xmin, "First x of the risk sum (default r)");
  risk->add_option("--xmax", o.xmax, "Last x of the risk sum (default 200)");
  risk->add_option("--range", o.range, "LOW-HIGH; overrides --xmin/--xmax");
  AddModelFlags(risk, o);
  AddOutFlag(risk, o);

  CLI::App* reproduce =
      app.add_subcommand("reproduce", "Regenerate the estimate or regret table");
  reproduce->add_option("table", o.which, "one or two")
      ->required()
      ->check(CLI::IsMember({"one", "two"}));
  reproduce->add_option("--n", o.n_list,
                        "Past-sample size(s), comma separated "
                        "(default 100 for one, 50,75,100 for two)");
  reproduce->add_option("--seed", o.seed, "Master seed");
  reproduce->add_option("--reps", o.reps, "Replications per cell")
      ->capture_default_str();
  reproduce->add_option("--workers", o.workers, "Worker threads")
      ->capture_default_str();
  reproduce->add_option("--rule", o.rule, "Empirical marginal rule: relfreq or raw")
      ->capture_default_str();
  reproduce->add_option("--xmin", o.xmin, "Table one: first x (default r)");
  reproduce->add_option("--xmax", o.xmax, "Table one: last x (default 20)");
  reproduce->add_option("--range", o.range,
                        "Table two: comma-separated LOW-HIGH ranges "
                        "(default r-15,r-200)");
  AddModelFlags(reproduce, o);
  AddOutFlag(reproduce, o);

  try {
    const std::string config_path = ExtractConfigPath(args);
    const auto sub_it = std::find_if(args.begin(), args.end(), [](const auto& a) {
      return std::find(std::begin(kSubcommands), std::end(kSubcommands), a) !=
             std::end(kSubcommands);
    });
    if (sub_it != args.end()) {
      CLI::App* sub = app.get_subcommand(*sub_it);
      // Precedence: flags > config file > BOREL_EB_SEED > defaults.
      if (!config_path.empty()) {
        for (const auto& [key, value] : ReadConfigFile(config_path)) {
          const std::string flag = "--" + key;
          if (sub->get_option_no_throw(flag) != nullptr && !HasFlag(args, flag)) {
            args.push_back(flag);
            args.push_back(value);
          }
        }
      }
      if (env_seed != nullptr && *env_seed != '\0' &&
          sub->get_option_no_throw("--seed") != nullptr &&
          !HasFlag(args, "--seed")) {
        args.push_back("--seed");
        args.push_back(env_seed);
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const InputFileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputFile;
  }

  try {
    std::ostringstream buffer;
    if (sample->parsed()) {
      CmdSample(o, buffer);
    } else if (estimate->parsed()) {
      CmdEstimate(o, buffer);
    } else if (risk->parsed()) {
      CmdRisk(o, buffer);
    } else if (o.which == "one") {
      CmdReproduceOne(o, buffer);
    } else {
      CmdReproduceTwo(o, buffer);
    }
    if (o.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw InputFileError("cannot write '" + o.out + "'");
      file << buffer.str();
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputFileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputFile;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << " (estimates " << FormatDouble(e.coarse())
        << " vs " << FormatDouble(e.fine()) << ")\n";
    return kExitNumeric;
  } catch (const SimulationOverflow& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace borel_eb::cli
