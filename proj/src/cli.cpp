/*
 * Copyright 2026 The uqcal Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "uqcal/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uqcal/analysis.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/io.hpp"
#include "uqcal/metrics.hpp"
#include "uqcal/rng.hpp"
#include "uqcal/synth.hpp"

namespace uqcal::cli {
namespace {

namespace fs = std::filesystem;

// Raised for flag values CLI11 accepts syntactically but that are invalid.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ConfigFlags {
  std::size_t bins = 10;
  double confidence = 0.95;
  double eta = 50.0;
  double alpha = 0.05;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--bins", bins, "Bins and confidence levels for binned metrics")
        ->capture_default_str();
    cmd.add_option("--confidence", confidence, "Nominal confidence level lambda")
        ->capture_default_str();
    cmd.add_option("--eta", eta, "CWC penalty strength")->capture_default_str();
    cmd.add_option("--alpha", alpha, "Interval score alpha")->capture_default_str();
  }

  // --bins sets both the bin count and the number of midpoint levels
  // (j - 0.5) / bins used by CalS, ECPE, QCE and the pinball loss.
  MetricConfig to_config() const {
    if (bins == 0) throw UsageError("--bins must be at least 1");
    MetricConfig cfg;
    cfg.n_bins = bins;
    cfg.nominal_level = confidence;
    cfg.eta = eta;
    cfg.alpha = alpha;
    cfg.levels = ConfidenceLevels::midpoints(bins);
    cfg.tau_grid.assign(cfg.levels.levels().begin(), cfg.levels.levels().end());
    try {
      cfg.validate();
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input file '" + path + "'");
  return in;
}

void emit(const std::string& body, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << body;
    return;
  }
  std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw DataError("cannot open output file '" + output_path + "'");
  file << body;
  if (!file) throw DataError("failed writing output file '" + output_path + "'");
}

std::string first_line(const std::string& path) {
  auto in = open_input(path);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::size_t thread_count_from_env() {
  const char* raw = std::getenv("UQCAL_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  std::string_view text(raw);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw UsageError("UQCAL_THREADS must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

struct TargetSource {
  std::string label;
  std::vector<double> y;
};

// `synthetic:<name>:<n>` or a CSV path whose first column is y.
TargetSource load_targets(const std::string& source, std::uint64_t seed, std::size_t index) {
  constexpr std::string_view kPrefix = "synthetic:";
  if (source.rfind(kPrefix, 0) == 0) {
    const std::string rest = source.substr(kPrefix.size());
    const auto colon = rest.find(':');
    if (colon == std::string::npos) {
      throw UsageError("synthetic targets must look like synthetic:<name>:<n>, got '" + source + "'");
    }
    const std::string name = rest.substr(0, colon);
    const std::string count = rest.substr(colon + 1);
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
    if (ec != std::errc() || ptr != count.data() + count.size() || n < 2) {
      throw UsageError("synthetic sample count must be an integer >= 2, got '" + count + "'");
    }
    // Feature draws get their own stream, separate from the per-repeat ones.
    const auto target_seed = derive_seed({seed, 0x7461726765747300ULL, index});
    return {source, synth_target(name, n, target_seed)};
  }
  auto in = open_input(source);
  return {source, read_targets_csv(in)};
}

int cmd_evaluate(const std::string& input, const std::string& format, const ConfigFlags& flags,
                 const std::string& output, std::ostream& out) {
  const auto cfg = flags.to_config();
  auto in = open_input(input);
  if (format == "interval") {
    const auto ints = read_interval_csv(in, cfg.nominal_level);
    emit(dump_json(evaluate_report_json(evaluate_intervals(ints, cfg), FileFormat::kInterval)),
         output, out);
  } else {
    const auto preds = read_gaussian_csv(in);
    emit(dump_json(evaluate_report_json(evaluate_all(preds, cfg), FileFormat::kGaussian)), output,
         out);
  }
  return kExitOk;
}

int cmd_perturb(const std::string& input, const std::string& format,
                const std::string& scenario_text, const std::string& output, std::ostream& out) {
  const auto scenario = parse_scenario(scenario_text);
  if (!scenario) throw UsageError("unknown scenario '" + scenario_text + "'");
  if (format == "interval" || first_line(input) == kIntervalHeader) {
    throw DataError("perturb supports only gaussian prediction files (y,y_hat,sigma)");
  }
  auto in = open_input(input);
  const auto perturbed = apply_scenario(read_gaussian_csv(in), *scenario);
  std::ostringstream body;
  write_gaussian_csv(body, perturbed);
  emit(body.str(), output, out);
  return kExitOk;
}

int cmd_benchmark(const std::vector<std::string>& targets, const std::string& scenario_text,
                  std::size_t repeats, std::uint64_t seed, double threshold,
                  const ConfigFlags& flags, const std::string& output, std::ostream& out) {
  const auto cfg = flags.to_config();
  const auto scenario = parse_scenario(scenario_text);
  if (!scenario) throw UsageError("unknown scenario '" + scenario_text + "'");
  if (repeats == 0) throw UsageError("--repeats must be at least 1");
  if (!(threshold >= 0.0)) throw UsageError("--threshold must be non-negative");
  if (targets.empty()) throw UsageError("at least one --targets source is required");

  std::vector<std::vector<double>> sources;
  std::vector<std::string> labels;
  std::vector<std::size_t> sizes;
  for (std::size_t d = 0; d < targets.size(); ++d) {
    auto src = load_targets(targets[d], seed, d);
    labels.push_back(std::move(src.label));
    sizes.push_back(src.y.size());
    sources.push_back(std::move(src.y));
  }

  DetectionStudyOptions options;
  options.metrics = cfg;
  options.threshold = threshold;
  options.threads = thread_count_from_env();
  const auto summary = detection_study(sources, *scenario, repeats, seed, options);
  emit(dump_json(benchmark_report_json(summary, cfg, threshold, labels, sizes)), output, out);
  return kExitOk;
}

int cmd_rank(const std::string& directory, const std::string& output, std::ostream& out) {
  if (!fs::is_directory(directory)) {
    throw DataError("'" + directory + "' is not a directory of evaluate reports");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(directory)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw DataError("no .json reports found in '" + directory + "'");

  std::vector<MetricReport> reports;
  std::vector<std::string> labels;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    Json doc;
    try {
      doc = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.filename().string() + ": " + e.what());
    }
    try {
      reports.push_back(report_from_json(doc));
    } catch (const DataError& e) {
      throw DataError(path.filename().string() + ": " + e.what());
    }
    labels.push_back(path.stem().string());
  }

  std::vector<std::string> offenders;
  for (std::size_t d = 1; d < reports.size(); ++d) {
    if (!(reports[d].config == reports.front().config)) offenders.push_back(labels[d]);
  }
  if (!offenders.empty()) {
    std::string msg = "reports differ in configuration from '" + labels.front() + "':";
    for (const auto& o : offenders) msg += " " + o;
    throw DataError(msg);
  }
  const auto& cfg = reports.front().config;
  NormalizedTable table;
  try {
    table = normalize_across_datasets(reports, cfg.nominal_level);
  } catch (const ConfigError& e) {
    throw DataError(e.what());
  }
  emit(dump_json(rank_report_json(table, labels, cfg)), output, out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regression calibration metrics and controlled-miscalibration benchmark", "uqcal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string input, output, format = "gaussian", scenario, directory;
  ConfigFlags eval_flags, bench_flags;

  auto* evaluate = app.add_subcommand("evaluate", "Compute calibration metrics for a prediction file");
  evaluate->add_option("--input", input, "Prediction CSV")->required();
  evaluate->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"gaussian", "interval"}))
      ->capture_default_str();
  eval_flags.add_to(*evaluate);
  evaluate->add_option("--output", output, "Report path (default: stdout)");

  std::uint64_t perturb_seed = 0;
  auto* perturb = app.add_subcommand("perturb", "Apply a miscalibration scenario to a prediction file");
  perturb->add_option("--input", input, "Gaussian prediction CSV")->required();
  perturb->add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"gaussian", "interval"}));
  perturb->add_option("--scenario", scenario, "s1 | s2 | s3 | s4")->required();
  perturb->add_option("--seed", perturb_seed, "Accepted for symmetry; scenarios are deterministic");
  perturb->add_option("--output", output, "Output CSV (default: stdout)");

  std::vector<std::string> targets;
  std::size_t repeats = 100;
  std::uint64_t seed = 0;
  double threshold = kDefaultChangeThreshold;
  std::string bench_scenario = "s4";
  auto* benchmark = app.add_subcommand("benchmark", "Run the controlled-miscalibration detection study");
  benchmark->add_option("--targets", targets, "Target CSV or synthetic:<name>:<n> (repeatable)")
      ->required();
  benchmark->add_option("--scenario", bench_scenario, "s1 | s2 | s3 | s4")->capture_default_str();
  benchmark->add_option("--repeats", repeats, "Stochastic repetitions")->capture_default_str();
  benchmark->add_option("--seed", seed, "Base seed")->capture_default_str();
  benchmark->add_option("--threshold", threshold, "Relative change counted as a verdict")
      ->capture_default_str();
  bench_flags.add_to(*benchmark);
  benchmark->add_option("--output", output, "Report path (default: stdout)");

  auto* rank = app.add_subcommand("rank", "Normalize evaluate reports across datasets and rank them");
  rank->add_option("--input,directory", directory, "Directory of evaluate reports")->required();
  rank->add_option("--output", output, "Report path (default: stdout)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("uqcal");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(input, format, eval_flags, output, out);
    if (*perturb) return cmd_perturb(input, format, scenario, output, out);
    if (*benchmark) {
      return cmd_benchmark(targets, bench_scenario, repeats, seed, threshold, bench_flags, output,
                           out);
    }
    if (*rank) return cmd_rank(directory, output, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace uqcal::cli
