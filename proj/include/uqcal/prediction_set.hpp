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
#include <span>
#include <vector>

namespace uqcal {

/// Truths paired with Gaussian predictive distributions N(y_hat_i, sigma_i^2).
///
/// Immutable once built. Construction validates that the three columns have
/// the same nonzero length, every entry is finite and every sigma is strictly
/// positive; a DataError is thrown otherwise.
class GaussianPredictionSet {
 public:
  GaussianPredictionSet(std::vector<double> y, std::vector<double> y_hat,
                        std::vector<double> sigma);

  std::span<const double> y() const { return y_; }
  std::span<const double> y_hat() const { return y_hat_; }
  std::span<const double> sigma() const { return sigma_; }
  std::size_t size() const { return y_.size(); }

  friend bool operator==(const GaussianPredictionSet&, const GaussianPredictionSet&) = default;

 private:
  std::vector<double> y_;
  std::vector<double> y_hat_;
  std::vector<double> sigma_;
};

/// Truths paired with prediction intervals [lower_i, upper_i] issued at a
/// nominal confidence level.
class IntervalPredictionSet {
 public:
  IntervalPredictionSet(std::vector<double> y, std::vector<double> lower,
                        std::vector<double> upper, double nominal_level);

  std::span<const double> y() const { return y_; }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }
  double nominal_level() const { return nominal_level_; }
  std::size_t size() const { return y_.size(); }

 private:
  std::vector<double> y_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  double nominal_level_;
};

/// Strictly increasing probabilities in (0, 1) with non-negative weights.
class ConfidenceLevels {
 public:
  ConfidenceLevels(std::vector<double> levels, std::vector<double> weights);
  /// Unit weights.
  explicit ConfidenceLevels(std::vector<double> levels);

  /// m midpoints (j - 0.5) / m, j = 1..m, with unit weights.
  static ConfidenceLevels midpoints(std::size_t m = 10);

  std::span<const double> levels() const { return levels_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return levels_.size(); }

  friend bool operator==(const ConfidenceLevels&, const ConfidenceLevels&) = default;

 private:
  std::vector<double> levels_;
  std::vector<double> weights_;
};

/// Central intervals y_hat_i -/+ z sigma_i with z = Phi^-1((1 + level) / 2).
IntervalPredictionSet gaussian_to_intervals(const GaussianPredictionSet& preds, double level);

/// Probability integral transform Phi((y_i - y_hat_i) / sigma_i).
std::vector<double> pit(const GaussianPredictionSet& preds);

}  // namespace uqcal
