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

#include "uqcal/binning.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uqcal/errors.hpp"

namespace uqcal {

BinPartition partition_equal_count_by_sigma(std::span<const double> sigma, std::size_t n_bins) {
  const std::size_t n = sigma.size();
  if (n_bins == 0) throw ConfigError("number of bins must be at least 1");
  if (n_bins > n) {
    throw ConfigError("number of bins (" + std::to_string(n_bins) +
                      ") exceeds number of samples (" + std::to_string(n) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] < sigma[b]; });

  BinPartition out{{}, BinStrategy::kEqualCountBySigma};
  out.bins.reserve(n_bins);
  const std::size_t base = n / n_bins;
  const std::size_t extra = n % n_bins;
  auto it = order.begin();
  for (std::size_t j = 0; j < n_bins; ++j) {
    const std::size_t size = base + (j < extra ? 1 : 0);
    out.bins.emplace_back(it, it + static_cast<std::ptrdiff_t>(size));
    it += static_cast<std::ptrdiff_t>(size);
  }
  return out;
}

BinPartition partition_equal_width_by_variance(std::span<const double> variance,
                                               std::size_t n_bins) {
  if (n_bins == 0) throw ConfigError("number of bins must be at least 1");
  BinPartition out{{}, BinStrategy::kEqualWidthByVariance};
  if (variance.empty()) return out;

  const auto [min_it, max_it] = std::minmax_element(variance.begin(), variance.end());
  const double lo = *min_it;
  const double width = (*max_it - lo) / static_cast<double>(n_bins);

  std::vector<std::vector<std::size_t>> bins(width > 0.0 ? n_bins : 1);
  for (std::size_t i = 0; i < variance.size(); ++i) {
    std::size_t j = 0;
    if (width > 0.0) {
      j = static_cast<std::size_t>((variance[i] - lo) / width);
      j = std::min(j, n_bins - 1);
    }
    bins[j].push_back(i);
  }
  for (auto& b : bins) {
    if (!b.empty()) out.bins.push_back(std::move(b));
  }
  return out;
}

}  // namespace uqcal
