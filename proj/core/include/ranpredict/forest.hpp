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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ranpredict/dataset.hpp"
#include "ranpredict/tree.hpp"

namespace ranpredict {

struct ForestParams {
  std::size_t n_trees = 100;
  int max_depth = 8;
  std::size_t min_samples_leaf = 5;
  // Per-node candidate features: ceil(feature_fraction * n_cols).
  double feature_fraction = 1.0 / 3.0;
  bool bootstrap = true;
  std::uint64_t seed = 42;
  // Worker threads for training; 0 picks hardware concurrency. Results do
  // not depend on this value.
  unsigned n_threads = 0;

  void validate() const;
};

struct ForestModel {
  std::vector<Tree> trees;
  ForestParams params;
  std::vector<std::string> feature_names;

  std::size_t n_features() const { return feature_names.size(); }
  // Unweighted mean of the member trees.
  double predict_row(std::span<const double> x) const;
};

/// Bagged CART ensemble. Tree b draws its bootstrap sample and its per-node
/// feature subsets from a PRNG stream keyed by (seed, b).
ForestModel fit_forest(const FeatureMatrix& x, const TargetVector& y,
                       const ForestParams& params = {});

TargetVector predict(const ForestModel& model, const FeatureMatrix& x);

}  // namespace ranpredict
