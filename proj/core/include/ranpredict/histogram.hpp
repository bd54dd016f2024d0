// Copyright 2026 The ranpredict Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ranpredict {

/// Equal-frequency binning of one feature column.
///
/// Bin k holds training values in (bin_edges[k], bin_edges[k + 1]]; bin 0
/// also holds bin_edges[0] itself. Interior edges sit halfway between the
/// largest value of one bin and the smallest value of the next, so a split
/// between bins is also a valid midpoint split on the raw values.
struct BinLayout {
  std::vector<double> bin_edges;  // n_bins + 1 entries, [min, ..., max]
  std::vector<double> lower;      // smallest training value in each bin
  std::vector<double> upper;      // largest training value in each bin

  std::size_t n_bins() const { return lower.size(); }
  std::size_t bin_of(double v) const;
};

// Quantile cut points over the sorted values; repeated cut points collapse,
// so the result has at most n_bins bins and exactly one bin per distinct
// value whenever n_bins >= the number of distinct values. Throws ConfigError
// for n_bins < 2 or an empty column.
BinLayout make_bin_layout(std::span<const double> values, std::size_t n_bins);

struct Histogram {
  BinLayout layout;
  std::vector<std::size_t> count;
  std::vector<double> sum_gradient;
  std::vector<double> sum_hessian;

  std::size_t n_bins() const { return layout.n_bins(); }
  const std::vector<double>& bin_edges() const { return layout.bin_edges; }
};

Histogram build_histogram(std::span<const double> values, std::span<const double> gradients,
                          std::span<const double> hessians, std::size_t n_bins);

}  // namespace ranpredict
