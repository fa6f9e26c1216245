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

enum class BinStrategy { kEqualCountBySigma, kEqualWidthByVariance };

/// Disjoint, non-empty bins of sample indices covering 0..N-1.
struct BinPartition {
  std::vector<std::vector<std::size_t>> bins;
  BinStrategy strategy;

  std::size_t n_bins() const { return bins.size(); }
};

/// Sorts samples by sigma (stable, so ties keep index order) and cuts the
/// order into n_bins runs. The first N mod n_bins runs hold one extra sample.
/// Throws ConfigError if n_bins is 0 or exceeds N.
BinPartition partition_equal_count_by_sigma(std::span<const double> sigma, std::size_t n_bins);

/// Splits [min, max] of the variances into n_bins equal-width intervals,
/// left-closed except for the last which is closed on both ends. Empty bins
/// are dropped. Identical variances collapse into a single bin.
BinPartition partition_equal_width_by_variance(std::span<const double> variance,
                                               std::size_t n_bins);

}  // namespace uqcal
