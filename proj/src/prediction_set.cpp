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

#include "uqcal/prediction_set.hpp"

#include <cmath>
#include <string>

#include "uqcal/errors.hpp"
#include "uqcal/normal.hpp"

namespace uqcal {
namespace {

void require_finite(std::span<const double> v, const char* column) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw DataError(std::string("non-finite value in column '") + column + "' at index " +
                      std::to_string(i));
    }
  }
}

void require_same_length(std::size_t n, std::size_t m, const char* column) {
  if (n != m) {
    throw DataError(std::string("column '") + column + "' has length " + std::to_string(m) +
                    ", expected " + std::to_string(n));
  }
}

}  // namespace

GaussianPredictionSet::GaussianPredictionSet(std::vector<double> y, std::vector<double> y_hat,
                                             std::vector<double> sigma)
    : y_(std::move(y)), y_hat_(std::move(y_hat)), sigma_(std::move(sigma)) {
  if (y_.empty()) throw DataError("prediction set must hold at least one sample");
  require_same_length(y_.size(), y_hat_.size(), "y_hat");
  require_same_length(y_.size(), sigma_.size(), "sigma");
  require_finite(y_, "y");
  require_finite(y_hat_, "y_hat");
  require_finite(sigma_, "sigma");
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (!(sigma_[i] > 0.0)) {
      throw DataError("sigma must be strictly positive, got " + std::to_string(sigma_[i]) +
                      " at index " + std::to_string(i));
    }
  }
}

IntervalPredictionSet::IntervalPredictionSet(std::vector<double> y, std::vector<double> lower,
                                             std::vector<double> upper, double nominal_level)
    : y_(std::move(y)),
      lower_(std::move(lower)),
      upper_(std::move(upper)),
      nominal_level_(nominal_level) {
  if (y_.empty()) throw DataError("prediction set must hold at least one sample");
  require_same_length(y_.size(), lower_.size(), "lower");
  require_same_length(y_.size(), upper_.size(), "upper");
  require_finite(y_, "y");
  require_finite(lower_, "lower");
  require_finite(upper_, "upper");
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (lower_[i] > upper_[i]) {
      throw DataError("lower bound exceeds upper bound at index " + std::to_string(i));
    }
  }
  if (!(nominal_level_ > 0.0 && nominal_level_ < 1.0)) {
    throw DomainError("nominal level must lie in (0, 1)");
  }
}

ConfidenceLevels::ConfidenceLevels(std::vector<double> levels, std::vector<double> weights)
    : levels_(std::move(levels)), weights_(std::move(weights)) {
  if (levels_.empty()) throw ConfigError("at least one confidence level is required");
  if (levels_.size() != weights_.size()) {
    throw ConfigError("confidence levels and weights differ in length");
  }
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (!(levels_[j] > 0.0 && levels_[j] < 1.0)) {
      throw ConfigError("confidence levels must lie in (0, 1)");
    }
    if (j > 0 && !(levels_[j] > levels_[j - 1])) {
      throw ConfigError("confidence levels must be strictly increasing");
    }
    if (!(weights_[j] >= 0.0) || !std::isfinite(weights_[j])) {
      throw ConfigError("confidence level weights must be finite and non-negative");
    }
  }
}

ConfidenceLevels::ConfidenceLevels(std::vector<double> levels)
    : ConfidenceLevels(levels, std::vector<double>(levels.size(), 1.0)) {}

ConfidenceLevels ConfidenceLevels::midpoints(std::size_t m) {
  std::vector<double> levels(m);
  for (std::size_t j = 0; j < m; ++j) {
    levels[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(m);
  }
  return ConfidenceLevels(std::move(levels));
}

IntervalPredictionSet gaussian_to_intervals(const GaussianPredictionSet& preds, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("interval level must lie in (0, 1)");
  const double z = standard_normal_quantile(0.5 * (1.0 + level));
  const auto n = preds.size();
  std::vector<double> lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double half = z * preds.sigma()[i];
    lower[i] = preds.y_hat()[i] - half;
    upper[i] = preds.y_hat()[i] + half;
  }
  return {std::vector<double>(preds.y().begin(), preds.y().end()), std::move(lower),
          std::move(upper), level};
}

std::vector<double> pit(const GaussianPredictionSet& preds) {
  std::vector<double> out(preds.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = standard_normal_cdf((preds.y()[i] - preds.y_hat()[i]) / preds.sigma()[i]);
  }
  return out;
}

}  // namespace uqcal
