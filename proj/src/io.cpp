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

#include "uqcal/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "uqcal/errors.hpp"

namespace uqcal {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw DataError("line " + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v, std::chars_format::general);
  if (field.empty() || ec != std::errc() || ptr != end) {
    fail(line, "cannot parse '" + std::string(field) + "' as a number");
  }
  if (!std::isfinite(v)) fail(line, "non-finite value '" + std::string(field) + "'");
  return v;
}

struct ThreeColumns {
  std::array<std::vector<double>, 3> cols;
  std::vector<std::size_t> lines;
};

// Reads the header and every record of a three-column numeric CSV.
ThreeColumns read_three_columns(std::istream& in, std::string_view header) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) fail(line_no, "missing header, expected '" + std::string(header) + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (line != header) {
    fail(line_no, "header '" + line + "' does not match expected '" + std::string(header) + "'");
  }

  ThreeColumns out;
  auto& cols = out.cols;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != 3) {
      fail(line_no, "expected 3 fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t k = 0; k < 3; ++k) cols[k].push_back(parse_number(fields[k], line_no));
    out.lines.push_back(line_no);
  }
  if (cols[0].empty()) fail(line_no, "no data rows");
  return out;
}

Json optional_number(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

std::vector<double> json_vector(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw DataError(std::string("report config is missing array '") + key + "'");
  }
  return j.at(key).get<std::vector<double>>();
}

}  // namespace

GaussianPredictionSet read_gaussian_csv(std::istream& in) {
  auto [cols, lines] = read_three_columns(in, kGaussianHeader);
  for (std::size_t i = 0; i < cols[2].size(); ++i) {
    if (!(cols[2][i] > 0.0)) fail(lines[i], "sigma must be strictly positive");
  }
  return {std::move(cols[0]), std::move(cols[1]), std::move(cols[2])};
}

IntervalPredictionSet read_interval_csv(std::istream& in, double nominal_level) {
  auto [cols, lines] = read_three_columns(in, kIntervalHeader);
  for (std::size_t i = 0; i < cols[0].size(); ++i) {
    if (cols[1][i] > cols[2][i]) fail(lines[i], "lower bound exceeds upper bound");
  }
  return {std::move(cols[0]), std::move(cols[1]), std::move(cols[2]), nominal_level};
}

std::vector<double> read_targets_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) fail(line_no, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.empty() || header.front() != "y") fail(line_no, "first header column must be 'y'");

  std::vector<double> y;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      fail(line_no, "expected " + std::to_string(header.size()) + " fields, found " +
                        std::to_string(fields.size()));
    }
    y.push_back(parse_number(fields.front(), line_no));
  }
  if (y.empty()) fail(line_no, "no data rows");
  return y;
}

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_gaussian_csv(std::ostream& out, const GaussianPredictionSet& preds) {
  out << kGaussianHeader << '\n';
  for (std::size_t i = 0; i < preds.size(); ++i) {
    out << format_double(preds.y()[i]) << ',' << format_double(preds.y_hat()[i]) << ','
        << format_double(preds.sigma()[i]) << '\n';
  }
}

Json config_to_json(const MetricConfig& cfg) {
  Json j;
  j["n_bins"] = cfg.n_bins;
  j["confidence"] = cfg.nominal_level;
  j["eta"] = cfg.eta;
  j["alpha"] = cfg.alpha;
  j["levels"] = std::vector<double>(cfg.levels.levels().begin(), cfg.levels.levels().end());
  j["level_weights"] =
      std::vector<double>(cfg.levels.weights().begin(), cfg.levels.weights().end());
  j["tau_grid"] = cfg.tau_grid;
  return j;
}

MetricConfig config_from_json(const Json& j) {
  try {
    MetricConfig cfg;
    cfg.n_bins = j.at("n_bins").get<std::size_t>();
    cfg.nominal_level = j.at("confidence").get<double>();
    cfg.eta = j.at("eta").get<double>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.levels = ConfidenceLevels(json_vector(j, "levels"), json_vector(j, "level_weights"));
    cfg.tau_grid = json_vector(j, "tau_grid");
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report config: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("invalid report config: ") + e.what());
  }
}

Json metrics_to_json(const MetricReport& report) {
  Json j = Json::object();
  for (const auto& v : report.values) j[std::string(metric_name(v.metric))] = optional_number(v.value);
  return j;
}

Json evaluate_report_json(const MetricReport& report, FileFormat format) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = "evaluate";
  j["format"] = format == FileFormat::kGaussian ? "gaussian" : "interval";
  j["config"] = config_to_json(report.config);
  j["n_samples"] = report.n_samples;
  j["metrics"] = metrics_to_json(report);
  return j;
}

MetricReport report_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("metrics") || !j.contains("config") ||
      !j.contains("n_samples")) {
    throw DataError("not an evaluate report: expected 'config', 'n_samples' and 'metrics'");
  }
  MetricReport report;
  report.config = config_from_json(j.at("config"));
  try {
    report.n_samples = j.at("n_samples").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed n_samples: ") + e.what());
  }
  const auto& metrics = j.at("metrics");
  if (!metrics.is_object()) throw DataError("'metrics' must be an object");
  for (const auto& [name, value] : metrics.items()) {
    const auto m = metric_from_name(name);
    if (!m) throw DataError("unknown metric '" + name + "' in report");
    if (value.is_null()) {
      report.values.push_back({*m, std::nullopt});
    } else if (value.is_number()) {
      report.values.push_back({*m, value.get<double>()});
    } else {
      throw DataError("metric '" + name + "' must be a number or null");
    }
  }
  return report;
}

Json verdicts_to_json(std::span<const ScenarioVerdict> verdicts) {
  Json arr = Json::array();
  for (const auto& v : verdicts) {
    Json j;
    j["metric"] = metric_name(v.metric);
    j["before"] = optional_number(v.before);
    j["after"] = optional_number(v.after);
    j["relative_change"] = optional_number(v.relative_change);
    j["classification"] = classification_name(v.classification);
    arr.push_back(std::move(j));
  }
  return arr;
}

Json benchmark_report_json(const DetectionSummary& summary, const MetricConfig& cfg,
                           double threshold, std::span<const std::string> dataset_labels,
                           std::span<const std::size_t> dataset_sizes) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = "benchmark";
  Json config = config_to_json(cfg);
  config["seed"] = summary.base_seed;
  config["repeats"] = summary.repeats;
  config["scenario"] = scenario_name(summary.scenario);
  config["threshold"] = threshold;
  j["config"] = std::move(config);

  Json datasets = Json::array();
  for (std::size_t d = 0; d < summary.n_datasets; ++d) {
    Json ds;
    ds["label"] = d < dataset_labels.size() ? dataset_labels[d] : std::to_string(d);
    ds["n_samples"] = d < dataset_sizes.size() ? dataset_sizes[d] : 0;
    datasets.push_back(std::move(ds));
  }
  j["datasets"] = std::move(datasets);

  Json frequency = Json::object();
  Json counts = Json::object();
  for (std::size_t k = 0; k < summary.metrics.size(); ++k) {
    const std::string name(metric_name(summary.metrics[k]));
    Json row = Json::array();
    Json count_row = Json::array();
    for (std::size_t d = 0; d < summary.n_datasets; ++d) {
      row.push_back(summary.frequency(k, d));
      const auto& c = summary.counts[k][d];
      count_row.push_back(Json{{"degraded", c.degraded},
                               {"improved", c.improved},
                               {"negligible", c.negligible},
                               {"undefined", c.undefined}});
    }
    frequency[name] = std::move(row);
    counts[name] = std::move(count_row);
  }
  j["detection_frequency"] = std::move(frequency);
  j["verdict_counts"] = std::move(counts);
  return j;
}

Json rank_report_json(const NormalizedTable& table, std::span<const std::string> dataset_labels,
                      const MetricConfig& cfg) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = "rank";
  j["config"] = config_to_json(cfg);
  j["datasets"] = std::vector<std::string>(dataset_labels.begin(), dataset_labels.end());

  std::vector<std::string> names;
  for (Metric m : table.metrics) names.emplace_back(metric_name(m));
  j["metrics"] = names;

  Json means = Json::object();
  for (std::size_t k = 0; k < names.size(); ++k) means[names[k]] = optional_number(table.column_means[k]);
  j["column_means"] = std::move(means);

  Json normalized = Json::object();
  Json ranks = Json::object();
  for (std::size_t k = 0; k < names.size(); ++k) {
    std::vector<std::optional<double>> column(table.n_datasets());
    Json col = Json::array();
    for (std::size_t d = 0; d < table.n_datasets(); ++d) {
      column[d] = table.values[d][k];
      col.push_back(optional_number(column[d]));
    }
    normalized[names[k]] = std::move(col);
    Json rank_col = Json::array();
    for (const auto& r : average_ranks(column)) rank_col.push_back(optional_number(r));
    ranks[names[k]] = std::move(rank_col);
  }
  j["normalized"] = std::move(normalized);
  j["ranks"] = std::move(ranks);

  if (table.n_datasets() >= 3) {
    const auto corr = rank_agreement(table);
    Json matrix = Json::object();
    for (std::size_t a = 0; a < names.size(); ++a) {
      Json row = Json::object();
      for (std::size_t b = 0; b < names.size(); ++b) row[names[b]] = optional_number(corr[a][b]);
      matrix[names[a]] = std::move(row);
    }
    j["rank_agreement"] = std::move(matrix);
  } else {
    j["rank_agreement"] = nullptr;
  }
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace uqcal
