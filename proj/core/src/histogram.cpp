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

#include "ranpredict/histogram.hpp"

#include <algorithm>

#include "ranpredict/error.hpp"
#include "tree_builder.hpp"

namespace ranpredict {

std::size_t BinLayout::bin_of(double v) const {
  // Interior edges are bin_edges[1 .. n_bins-1]; v <= edge goes left.
  const auto first = bin_edges.begin() + 1;
  const auto last = bin_edges.end() - 1;
  if (first >= last) return 0;
  return static_cast<std::size_t>(std::lower_bound(first, last, v) - first);
}

BinLayout make_bin_layout(std::span<const double> values, std::size_t n_bins) {
  if (n_bins < 2) throw ConfigError("histogram: n_bins must be >= 2");
  if (values.empty()) throw ConfigError("histogram: empty column");

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<double> distinct;
  std::vector<std::size_t> counts;
  for (double v : sorted) {
    if (distinct.empty() || distinct.back() != v) {
      distinct.push_back(v);
      counts.push_back(1);
    } else {
      ++counts.back();
    }
  }

  BinLayout layout;
  const std::size_t n = sorted.size();
  if (distinct.size() <= n_bins) {
    layout.lower = distinct;
    layout.upper = distinct;
  } else {
    // Close a bin once the running count reaches the next k * n / n_bins
    // quantile; targets already passed are skipped, which merges cut points
    // that would fall inside one heavy value.
    std::size_t cumulative = 0;
    std::size_t next_cut = 1;
    double bin_start = distinct.front();
    for (std::size_t d = 0; d < distinct.size(); ++d) {
      cumulative += counts[d];
      const bool last = d + 1 == distinct.size();
      const double target = static_cast<double>(next_cut) * static_cast<double>(n) /
                            static_cast<double>(n_bins);
      if (last || (next_cut < n_bins && static_cast<double>(cumulative) >= target)) {
        layout.lower.push_back(bin_start);
        layout.upper.push_back(distinct[d]);
        if (!last) bin_start = distinct[d + 1];
        while (next_cut < n_bins &&
               static_cast<double>(cumulative) >= static_cast<double>(next_cut) *
                                                      static_cast<double>(n) /
                                                      static_cast<double>(n_bins)) {
          ++next_cut;
        }
      }
    }
  }

  const std::size_t nb = layout.lower.size();
  layout.bin_edges.resize(nb + 1);
  layout.bin_edges.front() = layout.lower.front();
  layout.bin_edges.back() = layout.upper.back();
  for (std::size_t k = 1; k < nb; ++k) {
    layout.bin_edges[k] = detail::split_midpoint(layout.upper[k - 1], layout.lower[k]);
  }
  return layout;
}

Histogram build_histogram(std::span<const double> values, std::span<const double> gradients,
                          std::span<const double> hessians, std::size_t n_bins) {
  if (gradients.size() != values.size() || hessians.size() != values.size()) {
    throw DimensionError("histogram: values, gradients and hessians differ in length");
  }
  Histogram h;
  h.layout = make_bin_layout(values, n_bins);
  const std::size_t nb = h.layout.n_bins();
  h.count.assign(nb, 0);
  h.sum_gradient.assign(nb, 0.0);
  h.sum_hessian.assign(nb, 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t b = h.layout.bin_of(values[i]);
    ++h.count[b];
    h.sum_gradient[b] += gradients[i];
    h.sum_hessian[b] += hessians[i];
  }
  return h;
}

}  // namespace ranpredict
