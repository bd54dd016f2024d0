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

#include "ranpredict/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ranpredict/error.hpp"

namespace ranpredict {

namespace {

void check_lengths(std::span<const double> y, std::span<const double> y_hat, const char* who) {
  if (y.size() != y_hat.size()) {
    throw DimensionError(std::string(who) + ": actual and predicted lengths differ (" +
                         std::to_string(y.size()) + " vs " + std::to_string(y_hat.size()) + ")");
  }
  if (y.empty()) throw DimensionError(std::string(who) + ": empty input");
}

double sum_squared_residuals(std::span<const double> y, std::span<const double> y_hat) {
  double ss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = y[i] - y_hat[i];
    ss += d * d;
  }
  return ss;
}

}  // namespace

double mse(std::span<const double> y, std::span<const double> y_hat) {
  check_lengths(y, y_hat, "mse");
  return sum_squared_residuals(y, y_hat) / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> y_hat) {
  return std::sqrt(mse(y, y_hat));
}

double r2(std::span<const double> y, std::span<const double> y_hat) {
  check_lengths(y, y_hat, "r2");
  if (y.size() < 2) throw DegenerateTargetError("r2: need at least 2 samples");
  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(y.size());
  double ss_tot = 0.0;
  for (double v : y) ss_tot += (v - mean) * (v - mean);
  if (ss_tot == 0.0) throw DegenerateTargetError("r2: target is constant (SS_tot = 0)");
  return 1.0 - sum_squared_residuals(y, y_hat) / ss_tot;
}

EvalResult evaluate(std::span<const double> y, std::span<const double> y_hat) {
  EvalResult r;
  r.mse = mse(y, y_hat);
  r.rmse = std::sqrt(r.mse);
  r.r2 = r2(y, y_hat);
  return r;
}

ErrorHistogram error_histogram(std::span<const double> y, std::span<const double> y_hat,
                               std::size_t n_bins) {
  check_lengths(y, y_hat, "error_histogram");
  if (n_bins < 1) throw ConfigError("error_histogram: n_bins must be >= 1");

  std::vector<double> err(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) err[i] = y[i] - y_hat[i];
  auto [lo_it, hi_it] = std::minmax_element(err.begin(), err.end());
  double lo = *lo_it;
  double hi = *hi_it;
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }

  ErrorHistogram h;
  h.counts.assign(n_bins, 0);
  h.bin_edges.resize(n_bins + 1);
  const double width = (hi - lo) / static_cast<double>(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) h.bin_edges[k] = lo + static_cast<double>(k) * width;
  h.bin_edges[n_bins] = hi;
  for (double e : err) {
    auto bin = static_cast<std::size_t>(std::floor((e - lo) / width));
    bin = std::min(bin, n_bins - 1);
    ++h.counts[bin];
  }
  return h;
}

}  // namespace ranpredict
