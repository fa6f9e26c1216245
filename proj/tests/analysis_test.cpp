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

#include <gtest/gtest.h>

#include <optional>
#include <utility>
#include <vector>

#include "uqcal/errors.hpp"

namespace uqcal {
namespace {

using Opt = std::optional<double>;
using Col = std::vector<Opt>;

MetricReport report(std::vector<std::pair<Metric, Opt>> entries, MetricConfig cfg = {}) {
  MetricReport r;
  r.config = std::move(cfg);
  r.n_samples = 10;
  for (auto [m, v] : entries) r.values.push_back({m, v});
  return r;
}

TEST(Normalize, Examples) {
  const std::vector<MetricReport> one{report({{Metric::kNll, 3.0}})};
  const auto t1 = normalize_across_datasets(one, 0.95);
  EXPECT_EQ(t1.values[0][0], 1.0);

  const std::vector<MetricReport> two{report({{Metric::kCrps, 1.0}, {Metric::kPicp, 0.93}}),
                                      report({{Metric::kCrps, 3.0}, {Metric::kPicp, 0.99}})};
  const auto t2 = normalize_across_datasets(two, 0.95);
  EXPECT_EQ(t2.values[0][0], 0.5);
  EXPECT_EQ(t2.values[1][0], 1.5);
  EXPECT_EQ(t2.column_means[0], 2.0);
  // PICP gaps 0.02 and 0.04 with mean 0.03.
  EXPECT_NEAR(*t2.column_means[1], 0.03, 1e-15);
  EXPECT_NEAR(*t2.values[0][1], 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(*t2.values[1][1], 4.0 / 3.0, 1e-12);
}

TEST(Normalize, UndefinedColumnsAndErrors) {
  const std::vector<MetricReport> zeros{report({{Metric::kRmse, 0.0}, {Metric::kCwc, {}}}),
                                        report({{Metric::kRmse, 0.0}, {Metric::kCwc, 2.0}})};
  const auto t = normalize_across_datasets(zeros, 0.95);
  EXPECT_FALSE(t.values[0][0].has_value());
  EXPECT_FALSE(t.column_means[0].has_value());
  EXPECT_FALSE(t.values[0][1].has_value());
  EXPECT_EQ(t.values[1][1], 1.0);

  EXPECT_THROW(normalize_across_datasets(std::vector<MetricReport>{}, 0.95), ConfigError);
  const std::vector<MetricReport> mixed{report({{Metric::kRmse, 1.0}}),
                                        report({{Metric::kNll, 1.0}})};
  EXPECT_THROW(normalize_across_datasets(mixed, 0.95), ConfigError);
}

TEST(Normalize, ColumnMeanOneAndOrderPreserved) {
  std::vector<MetricReport> reports;
  for (double v : {0.3, 2.0, 1.1, 5.5}) reports.push_back(report({{Metric::kEnce, v}}));
  const auto t = normalize_across_datasets(reports, 0.95);
  double sum = 0;
  for (const auto& row : t.values) sum += *row[0];
  EXPECT_NEAR(sum / 4, 1.0, 1e-15);
  EXPECT_LT(*t.values[0][0], *t.values[2][0]);
  EXPECT_LT(*t.values[2][0], *t.values[1][0]);
  EXPECT_LT(*t.values[1][0], *t.values[3][0]);
}

Classification classify_one(Metric m, double before, double after, double lambda = 0.95) {
  return classify_change(report({{m, before}}), report({{m, after}}), lambda)[0].classification;
}

TEST(ClassifyChange, Examples) {
  EXPECT_EQ(classify_one(Metric::kCrps, 1.0, 1.05), Classification::kDegraded);
  EXPECT_EQ(classify_one(Metric::kCrps, 1.0, 1.02), Classification::kNegligible);
  EXPECT_EQ(classify_one(Metric::kCrps, 1.0, 0.96), Classification::kImproved);
  EXPECT_EQ(classify_one(Metric::kCrps, 1.0, 1.0299), Classification::kNegligible);
  EXPECT_EQ(classify_one(Metric::kPicp, 0.95, 0.90), Classification::kDegraded);
  EXPECT_EQ(classify_one(Metric::kPicp, 0.90, 0.95), Classification::kImproved);
  // Coverage above the target is a growing gap, too.
  EXPECT_EQ(classify_one(Metric::kPicp, 0.96, 0.99), Classification::kDegraded);
  // Negative-valued NLL uses |before|.
  EXPECT_EQ(classify_one(Metric::kNll, -2.0, -1.8), Classification::kDegraded);
  EXPECT_EQ(classify_one(Metric::kNll, -2.0, -2.2), Classification::kImproved);
  // Near-zero baseline falls back to an absolute threshold.
  EXPECT_EQ(classify_one(Metric::kQce, 0.0, 1e-10), Classification::kNegligible);
  EXPECT_EQ(classify_one(Metric::kQce, 0.0, 1e-8), Classification::kDegraded);
}

TEST(ClassifyChange, VerdictFields) {
  const auto v = classify_change(report({{Metric::kUce, 2.0}, {Metric::kCwc, {}}}),
                                 report({{Metric::kUce, 2.5}, {Metric::kCwc, 1.0}}), 0.95);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0].metric, Metric::kUce);
  EXPECT_DOUBLE_EQ(*v[0].relative_change, 0.25);
  EXPECT_EQ(v[1].classification, Classification::kUndefined);
  EXPECT_FALSE(v[1].relative_change.has_value());

  const auto zero = classify_change(report({{Metric::kUce, 0.0}}), report({{Metric::kUce, 1.0}}),
                                    0.95);
  EXPECT_FALSE(zero[0].relative_change.has_value());
}

TEST(ClassifyChange, AntisymmetricBeyondThreshold) {
  for (auto [a, b] : {std::pair{1.0, 1.5}, {2.0, 0.5}, {0.3, 0.2}}) {
    const auto fwd = classify_one(Metric::kEnce, a, b);
    const auto back = classify_one(Metric::kEnce, b, a);
    EXPECT_NE(fwd, Classification::kNegligible);
    EXPECT_EQ(fwd == Classification::kDegraded, back == Classification::kImproved);
  }
}

TEST(ClassifyChange, Errors) {
  MetricConfig other;
  other.eta = 10;
  EXPECT_THROW(classify_change(report({{Metric::kNll, 1.0}}), report({{Metric::kNll, 1.0}}, other),
                               0.95),
               ConfigError);
  EXPECT_THROW(classify_change(report({{Metric::kNll, 1.0}}), report({{Metric::kRmse, 1.0}}),
                               0.95),
               ConfigError);
}

std::vector<std::vector<double>> small_targets() {
  return {synth_target("friedman1", 120, 1), synth_target("arctan", 90, 2)};
}

TEST(DetectionStudy, FrequenciesAndCounts) {
  const auto targets = small_targets();
  const auto s = detection_study(targets, Scenario::kS4HeteroBoth, 1, 3);
  ASSERT_EQ(s.metrics.size(), kAllMetrics.size());
  ASSERT_EQ(s.n_datasets, 2u);
  for (std::size_t k = 0; k < s.metrics.size(); ++k) {
    for (std::size_t d = 0; d < 2; ++d) {
      const double f = s.frequency(k, d);
      EXPECT_TRUE(f == 0.0 || f == 1.0);
      const auto& c = s.counts[k][d];
      EXPECT_EQ(c.degraded + c.improved + c.negligible + c.undefined, 1u);
    }
  }
}

TEST(DetectionStudy, DeterministicAcrossThreadCounts) {
  const auto targets = small_targets();
  DetectionStudyOptions one, four, all;
  one.threads = 1;
  four.threads = 4;
  all.threads = 0;
  const auto a = detection_study(targets, Scenario::kS2HeteroSigma, 12, 77, one);
  const auto b = detection_study(targets, Scenario::kS2HeteroSigma, 12, 77, four);
  const auto c = detection_study(targets, Scenario::kS2HeteroSigma, 12, 77, all);
  const auto d = detection_study(targets, Scenario::kS2HeteroSigma, 12, 78, one);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_FALSE(a == d);
}

TEST(DetectionStudy, AddingDatasetsKeepsExistingStreams) {
  auto targets = small_targets();
  const auto both = detection_study(targets, Scenario::kS1ConstSigma, 8, 5);
  targets.pop_back();
  const auto first = detection_study(targets, Scenario::kS1ConstSigma, 8, 5);
  for (std::size_t k = 0; k < first.metrics.size(); ++k) {
    EXPECT_EQ(first.counts[k][0], both.counts[k][0]);
  }
}

TEST(DetectionStudy, Errors) {
  const auto targets = small_targets();
  EXPECT_THROW(detection_study(targets, Scenario::kS1ConstSigma, 0, 1), ConfigError);
  EXPECT_THROW(detection_study(std::vector<std::vector<double>>{}, Scenario::kS1ConstSigma, 1, 1),
               ConfigError);
  // Worker failures propagate from the pool.
  const std::vector<std::vector<double>> flat{{1.0, 1.0, 1.0}};
  DetectionStudyOptions opts;
  opts.threads = 3;
  EXPECT_THROW(detection_study(flat, Scenario::kS1ConstSigma, 5, 1, opts), DomainError);
}

TEST(Ranks, AverageTies) {
  const Col c{3.0, 1.0, 3.0, {}, 2.0};
  const auto r = average_ranks(c);
  EXPECT_EQ(r[0], 3.5);
  EXPECT_EQ(r[1], 1.0);
  EXPECT_EQ(r[2], 3.5);
  EXPECT_FALSE(r[3].has_value());
  EXPECT_EQ(r[4], 2.0);
}

TEST(Ranks, Spearman) {
  const Col x{1.0, 2.0, 3.0, 4.0};
  const Col up{10.0, 20.0, 30.0, 1000.0};
  const Col down{4.0, 3.0, 2.0, 1.0};
  EXPECT_DOUBLE_EQ(*spearman(x, x), 1.0);
  EXPECT_DOUBLE_EQ(*spearman(x, up), 1.0);
  EXPECT_DOUBLE_EQ(*spearman(x, down), -1.0);
  // Textbook value: d = (0, -1, 1, 0) -> 1 - 6 * 2 / (4 * 15) = 0.8.
  EXPECT_NEAR(*spearman(x, Col{1.0, 3.0, 2.0, 4.0}), 0.8, 1e-15);
  EXPECT_FALSE(spearman(Col{1.0, 2.0}, Col{1.0, 2.0}).has_value());
  EXPECT_FALSE(spearman(x, Col{1.0, 1.0, 1.0, 1.0}).has_value());
  EXPECT_THROW(spearman(x, Col{1.0}), ConfigError);
}

TEST(Ranks, AgreementMatrix) {
  std::vector<MetricReport> reports;
  for (double v : {1.0, 2.0, 3.0}) {
    reports.push_back(report({{Metric::kCrps, v}, {Metric::kNll, v * v}, {Metric::kEnce, -v}}));
  }
  const auto m = rank_agreement(normalize_across_datasets(reports, 0.95));
  ASSERT_EQ(m.size(), 3u);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_EQ(m[a][a], 1.0);
    for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(m[a][b], m[b][a]);
  }
  EXPECT_DOUBLE_EQ(*m[0][1], 1.0);
  EXPECT_DOUBLE_EQ(*m[0][2], -1.0);

  reports.pop_back();
  EXPECT_THROW(rank_agreement(normalize_across_datasets(reports, 0.95)), ConfigError);
}

}  // namespace
}  // namespace uqcal
