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

#include "ranpredict/dataset.hpp"
#include "ranpredict/random.hpp"
#include "ranpredict/tree.hpp"

namespace ranpredict::detail {

// Parameters of the exact (presorted) split search shared by CART trees,
// forest members and second-order boosting.
//
// For every row the builder sees a gradient g and hessian h. A node with
// sums G, H scores G^2 / (H + lambda); a split's gain is
// gain_factor * (score(L) + score(R) - score(parent)). The stored node value
// is value_sign * G / (H + lambda) + value_offset.
//
//   CART:      g = y - offset, h = 1, lambda = 0, factor 1, sign +1
//   boosting:  g = pred - y,   h = 1, lambda,     factor 1/2, sign -1
struct ExactSplitConfig {
  int max_depth = 8;
  std::size_t min_samples_leaf = 1;
  double lambda = 0.0;
  double gain_factor = 1.0;
  double value_sign = 1.0;
  double value_offset = 0.0;
  // Features examined per node; 0 or >= n_cols means all of them.
  std::size_t features_per_node = 0;
  // When set, leaf values are the mean of these targets over the node's
  // rows instead of the closed form above.
  const std::vector<double>* mean_targets = nullptr;
};

// Relative tolerance for "strictly better" comparisons between split gains
// and for accepting a split at all. Scaled by the node's sum of g^2 / h.
inline constexpr double kGainTolerance = 1e-12;

// Grows one tree over the given sample rows (duplicates allowed, as
// produced by bootstrap sampling). rng is only consulted when
// features_per_node restricts the candidate set.
Tree build_exact_tree(const FeatureMatrix& x, std::span<const double> grad,
                      std::span<const double> hess, std::span<const std::size_t> sample_rows,
                      const ExactSplitConfig& config, Rng* rng);

// Midpoint of two increasing values, nudged so that lo <= t < hi holds.
double split_midpoint(double lo, double hi);

// Mean that is exact for constant inputs.
double stable_mean(std::span<const double> v);

}  // namespace ranpredict::detail
