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

#include "uqcal/synth.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "uqcal/errors.hpp"
#include "uqcal/metrics.hpp"
#include "uqcal/rng.hpp"

namespace uqcal {

GaussianPredictionSet generate_calibrated(std::span<const double> y,
                                          const CalibratedGenConfig& cfg) {
  if (y.size() < 2) throw DomainError("calibrated generator needs at least two targets");
  const double range = target_range(y);
  if (!(range > 0.0) || !std::isfinite(range)) {
    throw DomainError("calibrated generator needs a positive, finite target range");
  }
  const double eps = cfg.epsilon_floor.value_or(1e-6 * range);
  if (!(eps > 0.0)) throw ConfigError("epsilon floor must be positive");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double base = 0.05 * range;

  RandomStream rng(cfg.seed);
  std::vector<double> y_hat(y.size());
  std::vector<double> sigma(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double s = std::sin(kTwoPi * y[i] / range);
    const double epistemic = base + s * s;
    const double aleatoric = rng.normal(0.0, base);
    sigma[i] = std::max(epistemic + aleatoric, eps);
    y_hat[i] = rng.normal(y[i], sigma[i]);
  }
  return {std::vector<double>(y.begin(), y.end()), std::move(y_hat), std::move(sigma)};
}

std::string_view scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kS1ConstSigma: return "S1-const-sigma";
    case Scenario::kS2HeteroSigma: return "S2-hetero-sigma";
    case Scenario::kS3ConstMean: return "S3-const-mean";
    case Scenario::kS4HeteroBoth: return "S4-hetero-both";
  }
  return "unknown";
}

std::optional<Scenario> parse_scenario(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Scenario s : kAllScenarios) {
    std::string full(scenario_name(s));
    std::transform(full.begin(), full.end(), full.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == full || lower == full.substr(0, 2)) return s;
  }
  return std::nullopt;
}

std::vector<double> linear_factors(std::size_t n, double from, double to) {
  std::vector<double> out(n, from);
  if (n < 2) return out;
  const double step = (to - from) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = from + step * static_cast<double>(i);
  out.back() = to;
  return out;
}

GaussianPredictionSet apply_scenario(const GaussianPredictionSet& preds, Scenario s) {
  std::vector<double> y_hat(preds.y_hat().begin(), preds.y_hat().end());
  std::vector<double> sigma(preds.sigma().begin(), preds.sigma().end());
  const std::size_t n = preds.size();

  switch (s) {
    case Scenario::kS1ConstSigma:
      for (double& v : sigma) v *= 0.9;
      break;
    case Scenario::kS2HeteroSigma: {
      const auto g = linear_factors(n, 0.9, 1.1);
      for (std::size_t i = 0; i < n; ++i) sigma[i] *= g[i];
      break;
    }
    case Scenario::kS3ConstMean:
      for (double& v : y_hat) v *= 0.9;
      break;
    case Scenario::kS4HeteroBoth: {
      const auto h = linear_factors(n, 0.9, 1.1);
      for (std::size_t i = 0; i < n; ++i) {
        y_hat[i] *= h[i];
        sigma[i] *= 2.0 - h[i];
      }
      break;
    }
  }
  return {std::vector<double>(preds.y().begin(), preds.y().end()), std::move(y_hat),
          std::move(sigma)};
}

namespace {

constexpr std::array<std::string_view, 5> kTargetNames = {"euclidean", "arctan", "friedman1",
                                                           "friedman2", "friedman3"};
constexpr std::array<TargetFunction, 5> kTargets = {
    TargetFunction::kEuclidean, TargetFunction::kArctan, TargetFunction::kFriedman1,
    TargetFunction::kFriedman2, TargetFunction::kFriedman3};

// Uniform feature ranges per function, in feature order.
struct Range {
  double lo, hi;
};

std::vector<Range> feature_ranges(TargetFunction f) {
  constexpr double kPi = std::numbers::pi;
  switch (f) {
    case TargetFunction::kEuclidean: return {{0, 1}, {0, 1}};
    case TargetFunction::kArctan: return {{0, 1}};
    case TargetFunction::kFriedman1: return {{0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}};
    case TargetFunction::kFriedman2:
    case TargetFunction::kFriedman3:
      return {{0, 100}, {40 * kPi, 560 * kPi}, {0, 1}, {1, 11}};
  }
  return {};
}

}  // namespace

std::optional<TargetFunction> parse_target_function(std::string_view name) {
  for (std::size_t k = 0; k < kTargetNames.size(); ++k) {
    if (kTargetNames[k] == name) return kTargets[k];
  }
  return std::nullopt;
}

std::string_view target_function_name(TargetFunction f) {
  return kTargetNames[static_cast<std::size_t>(f)];
}

std::size_t feature_count(TargetFunction f) { return feature_ranges(f).size(); }

double evaluate_target(TargetFunction f, std::span<const double> x) {
  if (x.size() != feature_count(f)) {
    throw ConfigError("target function " + std::string(target_function_name(f)) + " expects " +
                      std::to_string(feature_count(f)) + " features");
  }
  switch (f) {
    case TargetFunction::kEuclidean: return std::hypot(x[0], x[1]);
    case TargetFunction::kArctan: return std::atan(x[0]);
    case TargetFunction::kFriedman1:
      return 10.0 * std::sin(std::numbers::pi * x[0] * x[1]) +
             20.0 * (x[2] - 0.5) * (x[2] - 0.5) + 10.0 * x[3] + 5.0 * x[4];
    case TargetFunction::kFriedman2: {
      const double t = x[1] * x[2] - 1.0 / (x[1] * x[3]);
      return std::sqrt(x[0] * x[0] + t * t);
    }
    case TargetFunction::kFriedman3: {
      const double t = x[1] * x[2] - 1.0 / (x[1] * x[3]);
      return std::atan(t / x[0]);
    }
  }
  return 0.0;
}

std::vector<double> synth_target(TargetFunction f, std::size_t n, std::uint64_t seed) {
  const auto ranges = feature_ranges(f);
  RandomStream rng(seed);
  std::vector<double> x(ranges.size());
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < ranges.size(); ++k) x[k] = rng.uniform(ranges[k].lo, ranges[k].hi);
    y[i] = evaluate_target(f, x);
  }
  return y;
}

std::vector<double> synth_target(std::string_view name, std::size_t n, std::uint64_t seed) {
  const auto f = parse_target_function(name);
  if (!f) throw ConfigError("unknown synthetic target '" + std::string(name) + "'");
  return synth_target(*f, n, seed);
}

}  // namespace uqcal
