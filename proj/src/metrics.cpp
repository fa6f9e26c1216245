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

#include "uqcal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "uqcal/binning.hpp"
#include "uqcal/errors.hpp"
#include "uqcal/normal.hpp"

namespace uqcal {
namespace {

constexpr std::array<std::string_view, kAllMetrics.size()> kNames = {
    "PICP", "MPIW", "NMPIW", "CWC",  "IS",   "CRPS", "NLL",       "CalS",
    "CalS_RMSE", "ENCE", "ECPE", "UCE", "QCE", "RMSE", "Sharpness", "Pinball",
};

bool is_probability(double p) { return p > 0.0 && p < 1.0; }

double squared_residual(const GaussianPredictionSet& preds, std::size_t i) {
  const double r = preds.y()[i] - preds.y_hat()[i];
  return r * r;
}

double variance(const GaussianPredictionSet& preds, std::size_t i) {
  return preds.sigma()[i] * preds.sigma()[i];
}

std::optional<double> finite_or_empty(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

}  // namespace

std::vector<double> MetricConfig::default_tau_grid() {
  const auto mid = ConfidenceLevels::midpoints(10);
  return {mid.levels().begin(), mid.levels().end()};
}

void MetricConfig::validate() const {
  if (n_bins == 0) throw ConfigError("n_bins must be at least 1");
  if (!is_probability(nominal_level)) throw ConfigError("nominal level must lie in (0, 1)");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta must be positive");
  if (!is_probability(alpha)) throw ConfigError("alpha must lie in (0, 1)");
  if (tau_grid.empty()) throw ConfigError("tau grid must not be empty");
  for (double t : tau_grid) {
    if (!is_probability(t)) throw ConfigError("tau grid values must lie in (0, 1)");
  }
}

std::string_view metric_name(Metric m) { return kNames[static_cast<std::size_t>(m)]; }

std::optional<Metric> metric_from_name(std::string_view name) {
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    if (kNames[k] == name) return kAllMetrics[k];
  }
  return std::nullopt;
}

bool MetricReport::contains(Metric m) const {
  return std::any_of(values.begin(), values.end(),
                     [m](const MetricValue& v) { return v.metric == m; });
}

std::optional<double> MetricReport::value(Metric m) const {
  for (const auto& v : values) {
    if (v.metric == m) return v.value;
  }
  throw ConfigError("report does not contain metric " + std::string(metric_name(m)));
}

double picp(const IntervalPredictionSet& ints) {
  std::size_t covered = 0;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    if (ints.lower()[i] <= ints.y()[i] && ints.y()[i] <= ints.upper()[i]) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(ints.size());
}

double mpiw(const IntervalPredictionSet& ints) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ints.size(); ++i) sum += ints.upper()[i] - ints.lower()[i];
  return sum / static_cast<double>(ints.size());
}

double nmpiw(const IntervalPredictionSet& ints, double target_range) {
  if (!(target_range > 0.0)) throw ConfigError("target range must be positive");
  return mpiw(ints) / target_range;
}

double cwc(const IntervalPredictionSet& ints, double eta, double target_range) {
  const double normalized_width = nmpiw(ints, target_range);
  const double coverage = picp(ints);
  const double level = ints.nominal_level();
  if (coverage >= level) return normalized_width;
  return normalized_width * (1.0 + std::exp(-eta * (coverage - level)));
}

double interval_score(const IntervalPredictionSet& ints, double alpha) {
  if (!is_probability(alpha)) throw DomainError("alpha must lie in (0, 1)");
  const double penalty = 2.0 / alpha;
  double sum = 0.0;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    const double lo = ints.lower()[i];
    const double hi = ints.upper()[i];
    const double y = ints.y()[i];
    double score = hi - lo;
    if (y < lo) score += penalty * (lo - y);
    if (y > hi) score += penalty * (y - hi);
    sum += score;
  }
  return sum / static_cast<double>(ints.size());
}

double crps_gaussian(const GaussianPredictionSet& preds) {
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double s = preds.sigma()[i];
    const double z = (preds.y()[i] - preds.y_hat()[i]) / s;
    sum += s * (z * (2.0 * standard_normal_cdf(z) - 1.0) + 2.0 * standard_normal_pdf(z) -
                kInvSqrtPi);
  }
  return sum / static_cast<double>(preds.size());
}

double nll_gaussian(const GaussianPredictionSet& preds) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double var = variance(preds, i);
    sum += squared_residual(preds, i) / (2.0 * var) + 0.5 * std::log(kTwoPi * var);
  }
  return sum / static_cast<double>(preds.size());
}

namespace {

// Fraction of PIT values at or below each level.
std::vector<double> empirical_frequencies(const GaussianPredictionSet& preds,
                                          const ConfidenceLevels& levels) {
  auto u = pit(preds);
  std::sort(u.begin(), u.end());
  std::vector<double> freq(levels.size());
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const auto count = std::upper_bound(u.begin(), u.end(), levels.levels()[j]) - u.begin();
    freq[j] = static_cast<double>(count) / static_cast<double>(u.size());
  }
  return freq;
}

}  // namespace

double cals(const GaussianPredictionSet& preds, const ConfidenceLevels& levels) {
  const auto freq = empirical_frequencies(preds, levels);
  double sum = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double gap = levels.levels()[j] - freq[j];
    sum += levels.weights()[j] * gap * gap;
  }
  return sum;
}

double cals_rmse(const GaussianPredictionSet& preds, const ConfidenceLevels& levels) {
  const auto freq = empirical_frequencies(preds, levels);
  double sum = 0.0;
  for (std::size_t j = 0; j < levels.size(); ++j) {
    const double gap = levels.levels()[j] - freq[j];
    sum += gap * gap;
  }
  return std::sqrt(sum / static_cast<double>(levels.size()));
}

double ence(const GaussianPredictionSet& preds, std::size_t n_bins) {
  const auto partition = partition_equal_count_by_sigma(preds.sigma(), n_bins);
  double sum = 0.0;
  for (const auto& bin : partition.bins) {
    double mean_var = 0.0;
    double mse = 0.0;
    for (std::size_t i : bin) {
      mean_var += variance(preds, i);
      mse += squared_residual(preds, i);
    }
    const double rmv = std::sqrt(mean_var / static_cast<double>(bin.size()));
    const double bin_rmse = std::sqrt(mse / static_cast<double>(bin.size()));
    sum += std::abs(rmv - bin_rmse) / rmv;
  }
  return sum / static_cast<double>(partition.n_bins());
}

double ecpe(const GaussianPredictionSet& preds, const ConfidenceLevels& levels) {
  double sum = 0.0;
  for (double p : levels.levels()) {
    sum += std::abs(p - picp(gaussian_to_intervals(preds, p)));
  }
  return sum / static_cast<double>(levels.size());
}

double uce(const GaussianPredictionSet& preds, std::size_t n_bins) {
  std::vector<double> var(preds.size());
  for (std::size_t i = 0; i < var.size(); ++i) var[i] = variance(preds, i);
  const auto partition = partition_equal_width_by_variance(var, n_bins);
  const auto n = static_cast<double>(preds.size());
  double sum = 0.0;
  for (const auto& bin : partition.bins) {
    double err = 0.0;
    double uncert = 0.0;
    for (std::size_t i : bin) {
      err += squared_residual(preds, i);
      uncert += var[i];
    }
    const auto size = static_cast<double>(bin.size());
    sum += (size / n) * std::abs(err / size - uncert / size);
  }
  return sum;
}

double qce(const GaussianPredictionSet& preds, double tau, std::size_t n_bins) {
  const double threshold = chi2_1_quantile(tau);
  const auto partition = partition_equal_count_by_sigma(preds.sigma(), n_bins);
  // Accumulate |B_j| * gap_j in extended precision and divide once, so equal
  // per-bin gaps (e.g. full coverage) come back exactly.
  long double sum = 0.0L;
  for (const auto& bin : partition.bins) {
    std::size_t inside = 0;
    for (std::size_t i : bin) {
      const double nees = squared_residual(preds, i) / variance(preds, i);
      if (nees <= threshold) ++inside;
    }
    const auto size = static_cast<double>(bin.size());
    const double gap = std::abs(static_cast<double>(inside) / size - tau);
    sum += static_cast<long double>(bin.size()) * gap;
  }
  return static_cast<double>(sum / static_cast<long double>(preds.size()));
}

double qce_mean(const GaussianPredictionSet& preds, std::span<const double> tau_grid,
                std::size_t n_bins) {
  if (tau_grid.empty()) throw ConfigError("tau grid must not be empty");
  double sum = 0.0;
  for (double tau : tau_grid) sum += qce(preds, tau, n_bins);
  return sum / static_cast<double>(tau_grid.size());
}

double rmse(const GaussianPredictionSet& preds) {
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) sum += squared_residual(preds, i);
  return std::sqrt(sum / static_cast<double>(preds.size()));
}

double sharpness(const GaussianPredictionSet& preds) {
  double sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) sum += variance(preds, i);
  return std::sqrt(sum / static_cast<double>(preds.size()));
}

double pinball(const GaussianPredictionSet& preds, std::span<const double> tau_grid) {
  if (tau_grid.empty()) throw ConfigError("tau grid must not be empty");
  double sum = 0.0;
  for (double tau : tau_grid) {
    const double z = standard_normal_quantile(tau);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const double diff = preds.y()[i] - (preds.y_hat()[i] + preds.sigma()[i] * z);
      sum += diff >= 0.0 ? tau * diff : (tau - 1.0) * diff;
    }
  }
  return sum / (static_cast<double>(preds.size()) * static_cast<double>(tau_grid.size()));
}

double target_range(std::span<const double> y) {
  if (y.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  return *hi - *lo;
}

MetricReport evaluate_all(const GaussianPredictionSet& preds, const MetricConfig& cfg) {
  cfg.validate();
  const auto ints = gaussian_to_intervals(preds, cfg.nominal_level);
  const double range = target_range(preds.y());
  const bool has_range = range > 0.0;

  MetricReport report{cfg, preds.size(), {}};
  report.values.reserve(kAllMetrics.size());
  auto put = [&](Metric m, std::optional<double> v) {
    report.values.push_back({m, v ? finite_or_empty(*v) : std::nullopt});
  };

  put(Metric::kPicp, picp(ints));
  put(Metric::kMpiw, mpiw(ints));
  put(Metric::kNmpiw, has_range ? std::optional(nmpiw(ints, range)) : std::nullopt);
  put(Metric::kCwc, has_range ? std::optional(cwc(ints, cfg.eta, range)) : std::nullopt);
  put(Metric::kIntervalScore, interval_score(ints, cfg.alpha));
  put(Metric::kCrps, crps_gaussian(preds));
  put(Metric::kNll, nll_gaussian(preds));
  put(Metric::kCalS, cals(preds, cfg.levels));
  put(Metric::kCalSRmse, cals_rmse(preds, cfg.levels));
  put(Metric::kEnce, ence(preds, cfg.n_bins));
  put(Metric::kEcpe, ecpe(preds, cfg.levels));
  put(Metric::kUce, uce(preds, cfg.n_bins));
  put(Metric::kQce, qce_mean(preds, cfg.tau_grid, cfg.n_bins));
  put(Metric::kRmse, rmse(preds));
  put(Metric::kSharpness, sharpness(preds));
  put(Metric::kPinball, pinball(preds, cfg.tau_grid));
  return report;
}

MetricReport evaluate_intervals(const IntervalPredictionSet& ints, const MetricConfig& cfg) {
  cfg.validate();
  const double range = target_range(ints.y());
  const bool has_range = range > 0.0;

  MetricReport report{cfg, ints.size(), {}};
  report.values = {
      {Metric::kPicp, picp(ints)},
      {Metric::kMpiw, mpiw(ints)},
      {Metric::kNmpiw, has_range ? std::optional(nmpiw(ints, range)) : std::nullopt},
      {Metric::kCwc, has_range ? finite_or_empty(cwc(ints, cfg.eta, range)) : std::nullopt},
      {Metric::kIntervalScore, interval_score(ints, cfg.alpha)},
  };
  return report;
}

}  // namespace uqcal
