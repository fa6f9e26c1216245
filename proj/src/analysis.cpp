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

#include "uqcal/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "uqcal/errors.hpp"
#include "uqcal/rng.hpp"

namespace uqcal {
namespace {

constexpr double kNearZeroBaseline = 1e-12;
constexpr double kAbsoluteThreshold = 1e-9;

std::vector<Metric> metric_list(const MetricReport& r) {
  std::vector<Metric> out;
  out.reserve(r.values.size());
  for (const auto& v : r.values) out.push_back(v.metric);
  return out;
}

// Value on the lower-is-better scale.
std::optional<double> oriented(Metric m, std::optional<double> v, double lambda) {
  if (v && m == Metric::kPicp) return std::abs(*v - lambda);
  return v;
}

}  // namespace

NormalizedTable normalize_across_datasets(std::span<const MetricReport> reports, double lambda) {
  if (reports.empty()) throw ConfigError("normalization needs at least one report");
  NormalizedTable table;
  table.metrics = metric_list(reports.front());
  for (std::size_t d = 1; d < reports.size(); ++d) {
    if (metric_list(reports[d]) != table.metrics) {
      throw ConfigError("report " + std::to_string(d) + " has a different metric set");
    }
  }

  const std::size_t n_metrics = table.metrics.size();
  table.values.assign(reports.size(), std::vector<std::optional<double>>(n_metrics));
  for (std::size_t d = 0; d < reports.size(); ++d) {
    for (std::size_t k = 0; k < n_metrics; ++k) {
      table.values[d][k] = oriented(table.metrics[k], reports[d].values[k].value, lambda);
    }
  }

  table.column_means.assign(n_metrics, std::nullopt);
  for (std::size_t k = 0; k < n_metrics; ++k) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& row : table.values) {
      if (row[k]) {
        sum += *row[k];
        ++defined;
      }
    }
    const double mean = defined > 0 ? sum / static_cast<double>(defined) : 0.0;
    if (defined == 0 || mean == 0.0) {
      for (auto& row : table.values) row[k].reset();
      continue;
    }
    table.column_means[k] = mean;
    const double scale = std::abs(mean);
    for (auto& row : table.values) {
      if (row[k]) *row[k] /= scale;
    }
  }
  return table;
}

std::string_view classification_name(Classification c) {
  switch (c) {
    case Classification::kImproved: return "improved";
    case Classification::kDegraded: return "degraded";
    case Classification::kNegligible: return "negligible";
    case Classification::kUndefined: return "undefined";
  }
  return "undefined";
}

std::vector<ScenarioVerdict> classify_change(const MetricReport& before, const MetricReport& after,
                                             double lambda, double threshold) {
  if (!(before.config == after.config)) {
    throw ConfigError("cannot compare reports produced with different configurations");
  }
  if (metric_list(before) != metric_list(after)) {
    throw ConfigError("cannot compare reports with different metric sets");
  }

  std::vector<ScenarioVerdict> out;
  out.reserve(before.values.size());
  for (std::size_t k = 0; k < before.values.size(); ++k) {
    const Metric m = before.values[k].metric;
    ScenarioVerdict v{m, oriented(m, before.values[k].value, lambda),
                      oriented(m, after.values[k].value, lambda), std::nullopt,
                      Classification::kUndefined};
    if (v.before && v.after) {
      const double b = *v.before;
      const double a = *v.after;
      double change;
      double limit;
      if (std::abs(b) < kNearZeroBaseline) {
        change = a - b;
        limit = kAbsoluteThreshold;
      } else {
        change = (a - b) / std::abs(b);
        limit = threshold;
        v.relative_change = change;
      }
      if (change > limit) {
        v.classification = Classification::kDegraded;
      } else if (change < -limit) {
        v.classification = Classification::kImproved;
      } else {
        v.classification = Classification::kNegligible;
      }
    }
    out.push_back(v);
  }
  return out;
}

double DetectionSummary::frequency(std::size_t metric_index, std::size_t dataset) const {
  return static_cast<double>(counts.at(metric_index).at(dataset).degraded) /
         static_cast<double>(repeats);
}

std::vector<std::vector<double>> DetectionSummary::frequencies() const {
  std::vector<std::vector<double>> out(metrics.size(), std::vector<double>(n_datasets));
  for (std::size_t k = 0; k < metrics.size(); ++k) {
    for (std::size_t d = 0; d < n_datasets; ++d) out[k][d] = frequency(k, d);
  }
  return out;
}

std::uint64_t repeat_seed(std::uint64_t base_seed, std::size_t repeat, std::size_t dataset) {
  return derive_seed({base_seed, static_cast<std::uint64_t>(repeat),
                      static_cast<std::uint64_t>(dataset)});
}

DetectionSummary detection_study(std::span<const std::vector<double>> y_sources,
                                 Scenario scenario, std::size_t repeats,
                                 std::uint64_t base_seed, const DetectionStudyOptions& options) {
  if (repeats == 0) throw ConfigError("repeats must be at least 1");
  if (y_sources.empty()) throw ConfigError("detection study needs at least one target vector");
  options.metrics.validate();

  const std::size_t n_datasets = y_sources.size();
  const std::size_t n_tasks = repeats * n_datasets;
  std::vector<std::vector<Classification>> outcomes(n_tasks);

  auto run_task = [&](std::size_t task) {
    const std::size_t r = task / n_datasets;
    const std::size_t d = task % n_datasets;
    const CalibratedGenConfig gen{repeat_seed(base_seed, r, d), options.epsilon_floor};
    const auto calibrated = generate_calibrated(y_sources[d], gen);
    const auto before = evaluate_all(calibrated, options.metrics);
    const auto after = evaluate_all(apply_scenario(calibrated, scenario), options.metrics);
    const auto verdicts =
        classify_change(before, after, options.metrics.nominal_level, options.threshold);
    auto& slot = outcomes[task];
    slot.reserve(verdicts.size());
    for (const auto& v : verdicts) slot.push_back(v.classification);
  };

  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency()
                                             : options.threads;
  threads = std::clamp<std::size_t>(threads, 1, n_tasks);

  if (threads == 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < n_tasks; t = next++) {
          try {
            run_task(t);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_tasks;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  DetectionSummary summary;
  summary.scenario = scenario;
  summary.repeats = repeats;
  summary.base_seed = base_seed;
  summary.metrics.assign(kAllMetrics.begin(), kAllMetrics.end());
  summary.n_datasets = n_datasets;
  summary.counts.assign(summary.metrics.size(), std::vector<DetectionCounts>(n_datasets));
  for (std::size_t t = 0; t < n_tasks; ++t) {
    const std::size_t d = t % n_datasets;
    for (std::size_t k = 0; k < outcomes[t].size(); ++k) {
      auto& c = summary.counts[k][d];
      switch (outcomes[t][k]) {
        case Classification::kDegraded: ++c.degraded; break;
        case Classification::kImproved: ++c.improved; break;
        case Classification::kNegligible: ++c.negligible; break;
        case Classification::kUndefined: ++c.undefined; break;
      }
    }
  }
  return summary;
}

std::vector<std::optional<double>> average_ranks(std::span<const std::optional<double>> column) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < column.size(); ++i) {
    if (column[i]) idx.push_back(i);
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return *column[a] < *column[b]; });

  std::vector<std::optional<double>> ranks(column.size());
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    while (end < idx.size() && *column[idx[end]] == *column[idx[start]]) ++end;
    // Positions start..end-1 share the mean of ranks start+1..end.
    const double rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) ranks[idx[k]] = rank;
    start = end;
  }
  return ranks;
}

std::optional<double> spearman(std::span<const std::optional<double>> x,
                               std::span<const std::optional<double>> y) {
  if (x.size() != y.size()) throw ConfigError("spearman: columns differ in length");
  std::vector<std::optional<double>> xs, ys;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
  }
  if (xs.size() < 3) return std::nullopt;

  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mean = 0.5 * (n + 1.0);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = *rx[i] - mean;
    const double dy = *ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 && syy == 0.0) return 1.0;
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix rank_agreement(const NormalizedTable& table) {
  if (table.n_datasets() < 3) {
    throw ConfigError("rank agreement needs at least three datasets, got " +
                      std::to_string(table.n_datasets()));
  }
  const std::size_t m = table.metrics.size();
  std::vector<std::vector<std::optional<double>>> columns(
      m, std::vector<std::optional<double>>(table.n_datasets()));
  for (std::size_t d = 0; d < table.n_datasets(); ++d) {
    for (std::size_t k = 0; k < m; ++k) columns[k][d] = table.values[d][k];
  }

  CorrelationMatrix out(m, std::vector<std::optional<double>>(m));
  for (std::size_t a = 0; a < m; ++a) {
    out[a][a] = 1.0;
    for (std::size_t b = a + 1; b < m; ++b) {
      out[a][b] = out[b][a] = spearman(columns[a], columns[b]);
    }
  }
  return out;
}

}  // namespace uqcal
