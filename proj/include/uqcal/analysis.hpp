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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uqcal/metrics.hpp"
#include "uqcal/synth.hpp"

namespace uqcal {

inline constexpr double kDefaultChangeThreshold = 0.03;

/// Per-metric values divided by their cross-dataset mean. PICP enters as
/// |PICP - lambda|.
struct NormalizedTable {
  std::vector<Metric> metrics;
  /// values[dataset][metric]; empty where the raw value was undefined or the
  /// column could not be normalized.
  std::vector<std::vector<std::optional<double>>> values;
  /// Raw column mean used as divisor; empty marks an undefined column (zero
  /// mean or no defined entries).
  std::vector<std::optional<double>> column_means;

  std::size_t n_datasets() const { return values.size(); }
};

/// Columns are divided by |mean| so that the within-column ordering of
/// datasets is kept even when a mean is negative (NLL). Throws ConfigError
/// for an empty list or reports with differing metric sets.
NormalizedTable normalize_across_datasets(std::span<const MetricReport> reports, double lambda);

enum class Classification { kImproved, kDegraded, kNegligible, kUndefined };

std::string_view classification_name(Classification c);

struct ScenarioVerdict {
  Metric metric;
  std::optional<double> before;
  std::optional<double> after;
  /// (after - before) / |before|; empty when the baseline is ~0 and the
  /// absolute-change fallback decided, or when either side is undefined.
  std::optional<double> relative_change;
  Classification classification;
};

/// Lower-is-better comparison of two reports. PICP is compared through its
/// gap |PICP - lambda|. A relative change above `threshold` is a degradation,
/// below -threshold an improvement. Baselines with |before| < 1e-12 use the
/// absolute change against 1e-9 instead. Throws ConfigError if the reports'
/// configs or metric sets differ.
std::vector<ScenarioVerdict> classify_change(const MetricReport& before, const MetricReport& after,
                                             double lambda,
                                             double threshold = kDefaultChangeThreshold);

struct DetectionCounts {
  std::size_t degraded = 0;
  std::size_t improved = 0;
  std::size_t negligible = 0;
  std::size_t undefined = 0;

  friend bool operator==(const DetectionCounts&, const DetectionCounts&) = default;
};

struct DetectionSummary {
  Scenario scenario;
  std::size_t repeats = 0;
  std::uint64_t base_seed = 0;
  std::vector<Metric> metrics;
  std::size_t n_datasets = 0;
  /// counts[metric][dataset]
  std::vector<std::vector<DetectionCounts>> counts;

  /// Fraction of repeats in which the metric flagged a degradation.
  double frequency(std::size_t metric_index, std::size_t dataset) const;
  std::vector<std::vector<double>> frequencies() const;

  friend bool operator==(const DetectionSummary&, const DetectionSummary&) = default;
};

struct DetectionStudyOptions {
  MetricConfig metrics;
  double threshold = kDefaultChangeThreshold;
  /// 0 picks the hardware concurrency. Results do not depend on it.
  std::size_t threads = 1;
  std::optional<double> epsilon_floor;
};

/// Seed of the calibrated draw for repeat r on dataset d. Depends only on
/// its three inputs, so adding datasets leaves existing streams intact.
std::uint64_t repeat_seed(std::uint64_t base_seed, std::size_t repeat, std::size_t dataset);

/// For every repeat and target vector: generate calibrated predictions,
/// evaluate, perturb with `scenario`, evaluate again and classify the change.
/// Throws ConfigError if repeats is 0.
DetectionSummary detection_study(std::span<const std::vector<double>> y_sources,
                                 Scenario scenario, std::size_t repeats,
                                 std::uint64_t base_seed,
                                 const DetectionStudyOptions& options = {});

using CorrelationMatrix = std::vector<std::vector<std::optional<double>>>;

/// Average ranks (1 = smallest) of the defined entries of one column.
std::vector<std::optional<double>> average_ranks(std::span<const std::optional<double>> column);

/// Spearman correlation of x and y over positions where both are defined.
/// Two constant columns correlate at 1; a single constant column, or fewer
/// than three shared positions, is undefined.
std::optional<double> spearman(std::span<const std::optional<double>> x,
                               std::span<const std::optional<double>> y);

/// Metric-by-metric Spearman correlations of the dataset orderings. Requires
/// at least three datasets (ConfigError otherwise). Diagonal is 1.
CorrelationMatrix rank_agreement(const NormalizedTable& table);

}  // namespace uqcal
