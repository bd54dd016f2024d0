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

struct EvalResult {
  double mse = 0.0;
  double rmse = 0.0;
  double r2 = 0.0;
};

// All take actual values first, predictions second. Length mismatch throws
// DimensionError; empty input throws DimensionError.
double mse(std::span<const double> y, std::span<const double> y_hat);
double rmse(std::span<const double> y, std::span<const double> y_hat);
// 1 - SS_res / SS_tot. Throws DegenerateTargetError when n < 2 or y is
// constant.
double r2(std::span<const double> y, std::span<const double> y_hat);
EvalResult evaluate(std::span<const double> y, std::span<const double> y_hat);

inline constexpr std::size_t kDefaultErrorBins = 50;

/// Histogram of residuals y - y_hat over equal-width bins spanning
/// [min, max] of the residuals. The maximum lands in the last bin. When all
/// residuals are equal the range is widened by 0.5 on each side.
struct ErrorHistogram {
  std::vector<double> bin_edges;  // counts.size() + 1, strictly increasing
  std::vector<std::size_t> counts;
};

ErrorHistogram error_histogram(std::span<const double> y, std::span<const double> y_hat,
                               std::size_t n_bins = kDefaultErrorBins);

}  // namespace ranpredict
