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

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uqcal/prediction_set.hpp"

namespace uqcal {

/// Hyperparameters shared by the metric suite. Defaults: 10 bins, 95%
/// nominal level, eta = 50, ten midpoint levels (j - 0.5) / 10 with unit
/// weights, IS alpha = 0.05 and the same ten levels as the quantile grid.
struct MetricConfig {
  std::size_t n_bins = 10;
  double nominal_level = 0.95;
  double eta = 50.0;
  ConfidenceLevels levels = ConfidenceLevels::midpoints(10);
  double alpha = 0.05;
  std::vector<double> tau_grid = default_tau_grid();

  static std::vector<double> default_tau_grid();

  /// Throws ConfigError on any violated invariant.
  void validate() const;

  friend bool operator==(const MetricConfig&, const MetricConfig&) = default;
};

enum class Metric {
  kPicp,
  kMpiw,
  kNmpiw,
  kCwc,
  kIntervalScore,
  kCrps,
  kNll,
  kCalS,
  kCalSRmse,
  kEnce,
  kEcpe,
  kUce,
  kQce,
  kRmse,
  kSharpness,
  kPinball,
};

/// Every metric in report order.
inline constexpr std::array kAllMetrics = {
    Metric::kPicp, Metric::kMpiw,     Metric::kNmpiw, Metric::kCwc,
    Metric::kIntervalScore, Metric::kCrps, Metric::kNll, Metric::kCalS,
    Metric::kCalSRmse, Metric::kEnce, Metric::kEcpe, Metric::kUce,
    Metric::kQce, Metric::kRmse, Metric::kSharpness, Metric::kPinball,
};

/// Subset computable from prediction intervals alone.
inline constexpr std::array kIntervalMetrics = {
    Metric::kPicp, Metric::kMpiw, Metric::kNmpiw, Metric::kCwc, Metric::kIntervalScore,
};

std::string_view metric_name(Metric m);
std::optional<Metric> metric_from_name(std::string_view name);

struct MetricValue {
  Metric metric;
  /// Empty when the metric is undefined for the input (e.g. NMPIW with a
  /// zero target range).
  std::optional<double> value;

  friend bool operator==(const MetricValue&, const MetricValue&) = default;
};

struct MetricReport {
  MetricConfig config;
  std::size_t n_samples = 0;
  std::vector<MetricValue> values;

  bool contains(Metric m) const;
  /// Value of m; empty if m is undefined. Throws ConfigError if m is absent.
  std::optional<double> value(Metric m) const;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

// Interval metrics ---------------------------------------------------------

double picp(const IntervalPredictionSet& ints);
double mpiw(const IntervalPredictionSet& ints);
/// Throws ConfigError if target_range <= 0.
double nmpiw(const IntervalPredictionSet& ints, double target_range);
/// Coverage width-based criterion with the nominal level of `ints` as the
/// coverage target. Returns the NMPIW value unchanged when PICP >= level.
double cwc(const IntervalPredictionSet& ints, double eta, double target_range);
double interval_score(const IntervalPredictionSet& ints, double alpha);

// Distributional metrics ---------------------------------------------------

/// Mean CRPS of Gaussian forecasts in closed form,
/// sigma [z (2 Phi(z) - 1) + 2 phi(z) - 1 / sqrt(pi)].
double crps_gaussian(const GaussianPredictionSet& preds);
double nll_gaussian(const GaussianPredictionSet& preds);

/// Weighted squared gap between each level p_j and the fraction of PIT
/// values at or below it.
double cals(const GaussianPredictionSet& preds, const ConfidenceLevels& levels);
double cals_rmse(const GaussianPredictionSet& preds, const ConfidenceLevels& levels);

double ence(const GaussianPredictionSet& preds, std::size_t n_bins);
/// Mean |p_j - PICP_j| over central Gaussian intervals at every level.
double ecpe(const GaussianPredictionSet& preds, const ConfidenceLevels& levels);
double uce(const GaussianPredictionSet& preds, std::size_t n_bins);
double qce(const GaussianPredictionSet& preds, double tau, std::size_t n_bins);
double qce_mean(const GaussianPredictionSet& preds, std::span<const double> tau_grid,
                std::size_t n_bins);

double rmse(const GaussianPredictionSet& preds);
double sharpness(const GaussianPredictionSet& preds);
/// Check loss of the Gaussian quantiles y_hat + sigma Phi^-1(tau), averaged
/// over samples and the grid.
double pinball(const GaussianPredictionSet& preds, std::span<const double> tau_grid);

/// max(y) - min(y).
double target_range(std::span<const double> y);

/// Every metric in kAllMetrics. Intervals for PICP, MPIW, NMPIW, CWC and IS
/// are central Gaussian intervals at cfg.nominal_level; the target range is
/// taken from y. A zero range leaves NMPIW and CWC undefined.
MetricReport evaluate_all(const GaussianPredictionSet& preds, const MetricConfig& cfg);

/// The kIntervalMetrics subset for interval-only input.
MetricReport evaluate_intervals(const IntervalPredictionSet& ints, const MetricConfig& cfg);

}  // namespace uqcal
