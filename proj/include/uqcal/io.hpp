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

#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uqcal/analysis.hpp"
#include "uqcal/metrics.hpp"
#include "uqcal/prediction_set.hpp"

namespace uqcal {

inline constexpr std::string_view kToolName = "uqcal";
inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kGaussianHeader = "y,y_hat,sigma";
inline constexpr std::string_view kIntervalHeader = "y,lower,upper";

using Json = nlohmann::ordered_json;

enum class FileFormat { kGaussian, kInterval };

// CSV ------------------------------------------------------------------------
//
// One header line matching kGaussianHeader / kIntervalHeader exactly, then one
// record per line. Numbers use '.' as decimal separator; parsing does not
// depend on the C locale. Errors are DataError messages that name the line.

GaussianPredictionSet read_gaussian_csv(std::istream& in);
IntervalPredictionSet read_interval_csv(std::istream& in, double nominal_level);
/// Target vector from a CSV whose first header column is "y"; other columns
/// are ignored.
std::vector<double> read_targets_csv(std::istream& in);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);
void write_gaussian_csv(std::ostream& out, const GaussianPredictionSet& preds);

// JSON reports ---------------------------------------------------------------

Json config_to_json(const MetricConfig& cfg);
MetricConfig config_from_json(const Json& j);

/// Metric map with undefined values as null, in report order.
Json metrics_to_json(const MetricReport& report);

/// Complete evaluate report: tool, version, command, format, config, n_samples
/// and metrics.
Json evaluate_report_json(const MetricReport& report, FileFormat format);
/// Inverse of evaluate_report_json. Throws DataError on schema violations.
MetricReport report_from_json(const Json& j);

Json verdicts_to_json(std::span<const ScenarioVerdict> verdicts);

/// Benchmark report: config echo (with seed, repeats, scenario, threshold),
/// dataset labels and sizes, detection-frequency matrix and verdict counts.
Json benchmark_report_json(const DetectionSummary& summary, const MetricConfig& cfg,
                           double threshold, std::span<const std::string> dataset_labels,
                           std::span<const std::size_t> dataset_sizes);

/// Rank report: normalized table, per-metric dataset ranks and the rank
/// agreement matrix (null when fewer than three datasets).
Json rank_report_json(const NormalizedTable& table, std::span<const std::string> dataset_labels,
                      const MetricConfig& cfg);

/// Pretty-printed JSON with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace uqcal
