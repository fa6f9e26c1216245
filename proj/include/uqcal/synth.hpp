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
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "uqcal/prediction_set.hpp"

namespace uqcal {

struct CalibratedGenConfig {
  std::uint64_t seed = 0;
  /// Lower bound on generated sigmas. Defaults to 1e-6 times the target range.
  std::optional<double> epsilon_floor;
};

/// Draws perfectly calibrated Gaussian predictions for the targets y:
///
///   sigma_epi_i  = 0.05 R + sin^2(2 pi y_i / R)
///   sigma_alea_i ~ N(0, (0.05 R)^2)
///   sigma_i      = max(sigma_epi_i + sigma_alea_i, eps)
///   y_hat_i      ~ N(y_i, sigma_i^2)
///
/// with R = max(y) - min(y). Requires at least two targets and R > 0
/// (DomainError otherwise). Output is a pure function of (y, cfg).
GaussianPredictionSet generate_calibrated(std::span<const double> y,
                                          const CalibratedGenConfig& cfg);

enum class Scenario {
  kS1ConstSigma,   // sigma * 0.9
  kS2HeteroSigma,  // sigma * g_i, g linear 0.9 -> 1.1 over row order
  kS3ConstMean,    // y_hat * 0.9
  kS4HeteroBoth,   // y_hat * h_i, sigma * (2 - h_i), h linear 0.9 -> 1.1
};

inline constexpr std::array kAllScenarios = {Scenario::kS1ConstSigma, Scenario::kS2HeteroSigma,
                                             Scenario::kS3ConstMean, Scenario::kS4HeteroBoth};

/// "S1-const-sigma", ...
std::string_view scenario_name(Scenario s);
/// Accepts "s1".."s4" (any case) or the full scenario name.
std::optional<Scenario> parse_scenario(std::string_view text);

/// n factors evenly spaced over [from, to]; a single factor equals `from`.
std::vector<double> linear_factors(std::size_t n, double from, double to);

/// Returns a perturbed copy; the input is left untouched.
GaussianPredictionSet apply_scenario(const GaussianPredictionSet& preds, Scenario s);

enum class TargetFunction { kEuclidean, kArctan, kFriedman1, kFriedman2, kFriedman3 };

std::optional<TargetFunction> parse_target_function(std::string_view name);
std::string_view target_function_name(TargetFunction f);
std::size_t feature_count(TargetFunction f);

/// Noise-free target for one feature vector of length feature_count(f).
double evaluate_target(TargetFunction f, std::span<const double> x);

/// n noise-free targets with features drawn uniformly: [0, 1]^d for
/// euclidean, arctan and friedman1 (5 features); the conventional ranges
/// x0 in [0, 100], x1 in [40 pi, 560 pi], x2 in [0, 1], x3 in [1, 11] for
/// friedman2 and friedman3. Throws ConfigError for an unknown name.
std::vector<double> synth_target(std::string_view name, std::size_t n, std::uint64_t seed);
std::vector<double> synth_target(TargetFunction f, std::size_t n, std::uint64_t seed);

}  // namespace uqcal
